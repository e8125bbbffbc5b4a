// Acceptance suite: one criterion per subcommand argument, each printing
// PASS/FAIL lines for its sub-checks. Exit code 0 iff everything passed.

#include <cmath>
#include <cstring>
#include <iostream>
#include <sstream>
#include <vector>

#include "rhd/run.hpp"
#include "rhd/scenarios.hpp"
#include "rhd/verify.hpp"

namespace {

struct Gate {
  bool all_ok = true;

  void check(bool ok, const std::string& label, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << label << "  (" << detail
              << ")\n"
              << std::flush;
    all_ok = all_ok && ok;
  }
};

std::string order_text(const std::vector<rhd::ConvergenceRow>& rows) {
  std::ostringstream os;
  os << "orders";
  for (std::size_t i = 1; i < rows.size(); ++i) {
    os << " " << rows[i].l1_order;
  }
  return os.str();
}

bool orders_within(const std::vector<rhd::ConvergenceRow>& rows, double lo,
                   double hi) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].l1_order >= lo && rows[i].l1_order <= hi)) return false;
  }
  return true;
}

// Criterion 1: 1D smooth-wave convergence, SSP-MS.
void criterion_convergence_1d(Gate& gate) {
  rhd::RunConfig base;
  base.scenario = "smooth1d";
  base.scheme = rhd::TimeScheme::sspms3;
  base.limiter = rhd::LimiterMode::irp;
  base.monitor = false;

  {
    base.degree = 1;
    const auto rows = rhd::convergence_table(base, {40, 80, 160, 320});
    std::ostringstream os;
    os << order_text(rows) << ", l1(320) = " << rows.back().l1;
    gate.check(orders_within(rows, 1.9, 2.2) && rows.back().l1 < 2 * 1.12e-5 &&
                   rows.back().l1 > 0.5 * 1.12e-5,
               "convergence 1D, degree 1", os.str());
  }
  {
    base.degree = 2;
    const auto rows = rhd::convergence_table(base, {40, 80, 160, 320});
    std::ostringstream os;
    os << order_text(rows) << ", l1(320) = " << rows.back().l1;
    gate.check(orders_within(rows, 2.9, 3.1) && rows.back().l1 < 2 * 1.99e-8 &&
                   rows.back().l1 > 0.5 * 1.99e-8,
               "convergence 1D, degree 2", os.str());
  }
  {
    base.degree = 3;
    base.dt_coeff = 0.1 / 3.0;  // dt = (0.1/3) dx^(4/3)
    base.dt_power = 4.0 / 3.0;
    const auto rows = rhd::convergence_table(base, {20, 40, 80, 160});
    std::ostringstream os;
    os << order_text(rows) << ", l1(160) = " << rows.back().l1;
    gate.check(orders_within(rows, 3.85, 4.15) &&
                   rows.back().l1 < 2 * 3.04e-10 &&
                   rows.back().l1 > 0.5 * 3.04e-10,
               "convergence 1D, degree 3", os.str());
  }
}

// Criterion 2: 2D smooth-wave convergence, SSP-MS, degree 2.
void criterion_convergence_2d(Gate& gate) {
  rhd::RunConfig base;
  base.scenario = "smooth2d";
  base.scheme = rhd::TimeScheme::sspms3;
  base.limiter = rhd::LimiterMode::irp;
  base.monitor = false;
  base.degree = 2;
  const auto rows = rhd::convergence_table(base, {20, 40, 80});
  std::ostringstream os;
  os << order_text(rows) << ", l1(80) = " << rows.back().l1;
  gate.check(orders_within(rows, 2.9, 3.3) && rows.back().l1 < 2 * 4.90e-6 &&
                 rows.back().l1 > 0.5 * 4.90e-6,
             "convergence 2D, degree 2", os.str());
}

// Criterion 3: minimum-entropy preservation on the first Riemann problem,
// and the qualitative BP-only violation.
void criterion_min_entropy(Gate& gate) {
  rhd::RunConfig config;
  config.scenario = "riemann1d_1";
  config.degree = 3;
  config.cells = {320, 0};
  config.limiter = rhd::LimiterMode::irp;

  const rhd::RunSummary irp = rhd::run(config);
  const double s0 = irp.s0;
  bool series_ok = !irp.smin_series.empty();
  for (const auto& rec : irp.smin_series) {
    series_ok = series_ok && rec.points >= s0 - 1e-10 &&
                rec.averages >= s0 - 1e-10;
  }
  {
    std::ostringstream os;
    os << "floor " << s0 << ", min over points " << irp.smin_points_min
       << ", min over averages " << irp.smin_averages_min << ", "
       << irp.smin_series.size() << " records";
    gate.check(series_ok && irp.irp_verdict,
               "IRP run keeps both entropy minima at the floor", os.str());
  }

  config.limiter = rhd::LimiterMode::bp;
  const rhd::RunSummary bp = rhd::run(config);
  std::ostringstream os;
  os << "min over points " << bp.smin_points_min << " vs floor " << s0;
  gate.check(bp.smin_points_min < s0 - 1e-6,
             "BP-only run drops the pointwise minimum below the floor",
             os.str());
}

// Criterion 4: ultra-relativistic robustness and wave positions.
void criterion_ultrarelativistic(Gate& gate) {
  rhd::RunConfig config;
  config.scenario = "riemann1d_2";
  config.degree = 3;
  config.cells = {400, 0};
  config.limiter = rhd::LimiterMode::irp;
  config.monitor = false;
  config.outdir = "acceptance_out/rp2";

  try {
    const rhd::RunSummary summary = rhd::run(config);
    const auto rows = rhd::read_snapshot(config.outdir + "/snapshot_0000.dat");
    const double dx = 1.0 / 400.0;
    double best_drop = 0.0, shock = 0.0;
    double best_rise = 0.0, contact = 0.0;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      if (rows[i].position[0] <= 0.7) continue;
      const double step = rows[i + 1].primitive[0] - rows[i].primitive[0];
      const double mid = 0.5 * (rows[i].position[0] + rows[i + 1].position[0]);
      if (-step > best_drop) {
        best_drop = -step;
        shock = mid;
      }
      if (step > best_rise) {
        best_rise = step;
        contact = mid;
      }
    }
    const double shock_expected = 0.5 + 0.9963757 * 0.45;
    const double contact_expected = 0.5 + 0.986956 * 0.45;
    std::ostringstream os;
    os << summary.steps << " steps, shock at " << shock << " (expected "
       << shock_expected << "), contact at " << contact << " (expected "
       << contact_expected << ")";
    gate.check(std::abs(shock - shock_expected) <= 2 * dx &&
                   std::abs(contact - contact_expected) <= 3 * dx,
               "ultra-relativistic run completes with the quoted wave speeds",
               os.str());
  } catch (const rhd::Error& e) {
    gate.check(false, "ultra-relativistic run completes", e.what());
  }
}

// Criterion 5: theorem property battery.
void criterion_theorem_battery(Gate& gate) {
  const auto results = rhd::run_verification({});
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  rhd::print_verification(results, std::cout);
  gate.check(all, "theorem property battery",
             std::to_string(results.size()) + " checks");
}

// Criterion 6: limiter contracts at full sample counts (also part of the
// battery; kept as its own criterion gate).
void criterion_limiter_contracts(Gate& gate) {
  rhd::VerifyOptions options;
  const auto results = rhd::run_verification(options);
  for (const auto& r : results) {
    if (r.name.find("limiter conservation") != std::string::npos) {
      gate.check(r.pass, "limiter conservation, soundness, idempotence",
                 r.detail);
      return;
    }
  }
  gate.check(false, "limiter conservation, soundness, idempotence",
             "check not found");
}

// Criterion 7: 2D Riemann robustness at quarter resolution.
void criterion_riemann_2d(Gate& gate) {
  rhd::RunConfig config;
  config.scenario = "rp2d_1";
  config.degree = 3;
  config.cells = {100, 100};
  config.limiter = rhd::LimiterMode::irp;
  try {
    const rhd::RunSummary summary = rhd::run(config);
    std::ostringstream os;
    os << summary.steps << " steps to t = " << summary.t_end
       << ", min over points " << summary.smin_points_min;
    gate.check(summary.irp_verdict && summary.t_end >= 0.8 - 1e-12,
               "2D Riemann robustness with a true IRP verdict", os.str());
  } catch (const rhd::Error& e) {
    gate.check(false, "2D Riemann robustness", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  Gate gate;
  const std::string which = argc > 1 ? argv[1] : "all";
  const auto want = [&](const char* name) {
    return which == "all" || which == name;
  };
  try {
    if (want("1")) criterion_convergence_1d(gate);
    if (want("2")) criterion_convergence_2d(gate);
    if (want("3")) criterion_min_entropy(gate);
    if (want("4")) criterion_ultrarelativistic(gate);
    if (want("5")) criterion_theorem_battery(gate);
    if (want("6")) criterion_limiter_contracts(gate);
    if (want("7")) criterion_riemann_2d(gate);
  } catch (const std::exception& e) {
    gate.check(false, "acceptance run aborted", e.what());
  }
  std::cout << (gate.all_ok ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED")
            << "\n";
  return gate.all_ok ? 0 : 1;
}

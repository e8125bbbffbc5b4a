#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rhd/run.hpp"

#ifndef RHD_GIT_REVISION
#define RHD_GIT_REVISION "unknown"
#endif

namespace rhd {

namespace {

/// Shortest decimal that round-trips a double.
std::string full(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

template <int Dim>
void write_snapshot_impl(const std::string& path, const DgSolution<Dim>& sol,
                         const Eos<double>& eos, const RunConfig& config) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write snapshot '" + path + "'");
  out << "# rhd snapshot k=" << sol.degree << " cells=" << config.cells[0];
  if (Dim == 2) out << "x" << config.cells[1];
  out << " t=" << full(sol.time) << " gamma=" << full(eos.gamma())
      << " scheme=" << time_scheme_name(config.scheme)
      << " limiter=" << limiter_mode_name(config.limiter)
      << " rev=" << RHD_GIT_REVISION << "\n";
  if (Dim == 1) {
    out << "# x D m E rho v p S\n";
  } else {
    out << "# x y D mx my E rho vx vy p S\n";
  }
  for (int c = 0; c < sol.mesh.num_cells(); ++c) {
    const Cons<double, Dim> u = sol.average(c);
    const auto prim = cons_to_prim<double, Dim>(u, eos);
    const double s = std::log(prim.p) - eos.gamma() * std::log(prim.rho);
    const Vec<double, Dim> pos =
        cell_position<Dim>(sol.mesh, c, Vec<double, Dim>::Zero());
    for (int a = 0; a < Dim; ++a) out << full(pos[a]) << " ";
    for (int i = 0; i < Dim + 2; ++i) out << full(u[i]) << " ";
    out << full(prim.rho) << " ";
    for (int a = 0; a < Dim; ++a) out << full(prim.v[a]) << " ";
    out << full(prim.p) << " " << full(s) << "\n";
  }
}

}  // namespace

template <>
void write_snapshot<1>(const std::string& path, const DgSolution<1>& sol,
                       const Eos<double>& eos, const RunConfig& config) {
  write_snapshot_impl<1>(path, sol, eos, config);
}

template <>
void write_snapshot<2>(const std::string& path, const DgSolution<2>& sol,
                       const Eos<double>& eos, const RunConfig& config) {
  write_snapshot_impl<2>(path, sol, eos, config);
}

std::vector<SnapshotRow> read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read snapshot '" + path + "'");
  std::vector<SnapshotRow> rows;
  std::string line;
  int dim = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("# x y ") == 0) dim = 2;
      else if (line.find("# x ") == 0) dim = 1;
      continue;
    }
    if (dim == 0) throw Error("snapshot '" + path + "': missing column header");
    std::istringstream ss(line);
    std::vector<double> values;
    double v;
    while (ss >> v) values.push_back(v);
    const std::size_t expected = dim == 1 ? 8 : 11;
    if (values.size() != expected) {
      throw Error("snapshot '" + path + "': malformed row");
    }
    SnapshotRow row;
    row.position.assign(values.begin(), values.begin() + dim);
    row.conserved.assign(values.begin() + dim, values.begin() + 2 * dim + 2);
    row.primitive.assign(values.begin() + 2 * dim + 2, values.end() - 1);
    row.entropy = values.back();
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_smin_series(const std::string& path,
                       const std::vector<SMinRecord>& series) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write S_min series '" + path + "'");
  out << "# t smin_points smin_averages\n";
  for (const auto& rec : series) {
    out << full(rec.t) << " " << full(rec.points) << " " << full(rec.averages)
        << "\n";
  }
}

void write_summary_json(const std::string& path, const RunSummary& summary,
                        const RunConfig& config) {
  nlohmann::json j;
  j["scenario"] = summary.scenario;
  j["degree"] = summary.degree;
  j["cells"] = {summary.cells[0], summary.cells[1]};
  j["scheme"] = time_scheme_name(config.scheme);
  j["limiter"] = limiter_mode_name(config.limiter);
  j["gamma"] = summary.gamma;
  j["s0"] = summary.s0;
  j["steps"] = summary.steps;
  j["t_end"] = summary.t_end;
  if (summary.has_error_norms) {
    j["l1_density_error"] = summary.l1;
    j["l2_density_error"] = summary.l2;
  }
  if (!summary.smin_series.empty()) {
    j["smin"] = {{"points_min", summary.smin_points_min},
                 {"points_max", summary.smin_points_max},
                 {"averages_min", summary.smin_averages_min},
                 {"averages_max", summary.smin_averages_max}};
  }
  j["irp_verdict"] = summary.irp_verdict;
  j["wall_seconds"] = summary.wall_seconds;
  j["seed"] = config.seed;
  std::ofstream out(path);
  if (!out) throw Error("cannot write summary '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace rhd

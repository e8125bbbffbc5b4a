#include "rhd/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "rhd/flux.hpp"
#include "rhd/limiter.hpp"
#include "rhd/residual.hpp"
#include "rhd/sampling.hpp"
#include "rhd/time_stepper.hpp"

namespace rhd {

namespace {

/// Tracks the worst (smallest) margin seen by a check; a check passes when
/// its worst margin stays above the stated tolerance.
struct Margin {
  double worst = std::numeric_limits<double>::infinity();
  void update(double value) { worst = std::min(worst, value); }
  bool ok() const { return worst >= 0.0; }
  std::string text() const {
    std::ostringstream os;
    os << "worst margin " << worst;
    return os.str();
  }
};

int scaled(double scale, int count) {
  return std::max(1, static_cast<int>(count * scale));
}

double random_gamma(std::mt19937_64& rng) {
  static constexpr double choices[] = {4.0 / 3.0, 5.0 / 3.0, 2.0};
  return choices[std::uniform_int_distribution<int>(0, 2)(rng)];
}

template <int Dim>
HalfspaceProbe<double, Dim> random_probe(std::mt19937_64& rng) {
  const Vec<double, Dim> v =
      uniform(rng, 0.0, 0.999) * random_direction<Dim>(rng);
  return {v, log_uniform(rng, 1e-6, 1e3)};
}

// ---------------------------------------------------------------------------
// state_eos

CheckResult check_round_trip(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  Margin margin;
  SampleRanges ranges;
  ranges.v_max = 0.9999;
  constexpr double tol = 1e-9;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto v = random_primitive<1>(rng, ranges);
    const auto u = prim_to_cons<double, 1>(v, eos);
    const auto w = cons_to_prim<double, 1>(u, eos);
    // Tolerances open up where rounding the conserved state itself moves
    // the exact pressure root beyond 1e-9 relative (ultra-relativistic
    // corners); see recovery_pressure_noise.
    const double v2 = v.v.squaredNorm();
    const double s = total_energy<double, 1>(u) + v.p;
    const double noise = 16.0 * recovery_pressure_noise(v, eos);
    margin.update(std::max(tol, noise * v2 / (s * (1.0 - v2))) -
                  std::abs(w.rho - v.rho) / v.rho);
    margin.update(std::max(tol, noise / v.p) - std::abs(w.p - v.p) / v.p);
    margin.update(std::max(tol, noise / s) -
                  (w.v - v.v).norm() / std::max(v.v.norm(), 1e-12));
  }
  return {"recovery round trip", margin.ok(),
          std::to_string(n) + " samples, " + margin.text(), 0.0};
}

CheckResult check_pressure_bracket(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  Margin margin;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto u = random_admissible<1>(rng, eos);
    margin.update(-pressure_residual<double, 1>(0.0, u, eos));
    margin.update(pressure_residual<double, 1>(
        eos.gamma_m1() * total_energy<double, 1>(u), u, eos));
  }
  return {"pressure-equation bracket", margin.ok(),
          std::to_string(n) + " samples, " + margin.text(), 0.0};
}

CheckResult check_guess_independence(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  Margin margin;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto u = random_admissible<1>(rng, eos);
    const double e = total_energy<double, 1>(u);
    const double hi = eos.gamma_m1() * e;
    const double p_ref = cons_to_prim<double, 1>(u, eos).p;
    const double same_tol =
        std::max(4.0 * eos.gamma_m1() *
                     (1e-14 * std::max(1.0, e) + 8.0 * eps * e),
                 1e-13 * p_ref);
    for (const double guess : {1e-3 * hi, 0.5 * hi, 0.999 * hi}) {
      const double p = cons_to_prim<double, 1>(u, eos, 1e-14, 200, nullptr,
                                               guess)
                           .p;
      margin.update(same_tol - std::abs(p - p_ref));
    }
  }
  return {"recovery guess independence", margin.ok(),
          std::to_string(n) + " samples, " + margin.text(), 0.0};
}

// ---------------------------------------------------------------------------
// invariant_region

CheckResult check_region_monotonic(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto u = random_admissible<2>(rng, eos);
    const double s = specific_entropy<double, 2>(u, eos);
    const double sigma1 = s - uniform(rng, 0.0, 3.0);
    const double sigma2 = sigma1 - uniform(rng, 0.0, 3.0);
    const InvariantRegion<double> upper{sigma1, eos};
    const InvariantRegion<double> lower{sigma2, eos};
    if (upper.contains<2>(u) && !lower.contains<2>(u)) ++failures;
  }
  return {"region monotone in the floor", failures == 0,
          std::to_string(n) + " samples, " + std::to_string(failures) +
              " failures",
          0.0};
}

CheckResult check_second_form_forward(std::uint64_t seed, int n_states,
                                      int n_probes) {
  std::mt19937_64 rng(seed);
  Margin margin;
  for (int i = 0; i < n_states; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto u = random_admissible<2>(rng, eos);
    const double sigma =
        specific_entropy<double, 2>(u, eos) - uniform(rng, 0.0, 2.0);
    for (int j = 0; j < n_probes; ++j) {
      const auto probe = random_probe<2>(rng);
      const double gap = halfspace_gap<double, 2>(u, probe, sigma, eos);
      const double scale =
          halfspace_gap_scale<double, 2>(u, probe, sigma, eos);
      margin.update(gap + 1e-12 * scale);
    }
  }
  return {"second equivalent form, forward", margin.ok(),
          std::to_string(n_states) + "x" + std::to_string(n_probes) +
              " samples, " + margin.text(),
          0.0};
}

CheckResult check_second_form_witness(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  Margin margin;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto prim = random_primitive<2>(rng);
    const auto u = prim_to_cons<double, 2>(prim, eos);
    const double sigma =
        specific_entropy<double, 2>(prim, eos) + uniform(rng, 1e-6, 3.0);
    // The deterministic witness (v(U), rho(U)) exposes S(U) < sigma.
    const HalfspaceProbe<double, 2> witness(prim.v, prim.rho);
    margin.update(-halfspace_gap<double, 2>(u, witness, sigma, eos));
  }
  return {"second equivalent form, witness", margin.ok(),
          std::to_string(n) + " samples, " + margin.text(), 0.0};
}

CheckResult check_region_convexity(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto u1 = random_admissible<2>(rng, eos);
    const auto u2 = random_admissible<2>(rng, eos);
    const double s1 = specific_entropy<double, 2>(u1, eos);
    const double s2 = specific_entropy<double, 2>(u2, eos);
    const double floor = std::min(s1, s2);
    const double lambda = uniform(rng, 0.0, 1.0);
    const Cons<double, 2> mix = lambda * u1 + (1.0 - lambda) * u2;
    const InvariantRegion<double> region{floor, eos};
    if (!region.contains<2>(mix, 1e-11 * std::max(1.0, std::abs(floor)))) {
      ++failures;
    }
  }
  return {"region convexity (mixed floors)", failures == 0,
          std::to_string(n) + " pairs, " + std::to_string(failures) +
              " failures",
          0.0};
}

CheckResult check_average_admissibility(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const int count = std::uniform_int_distribution<int>(2, 8)(rng);
    std::vector<Cons<double, 2>> states;
    std::vector<double> weights;
    double s0 = std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (int j = 0; j < count; ++j) {
      states.push_back(random_admissible<2>(rng, eos));
      s0 = std::min(s0, specific_entropy<double, 2>(states.back(), eos));
      weights.push_back(uniform(rng, 0.01, 1.0));
      total += weights.back();
    }
    Cons<double, 2> avg = Cons<double, 2>::Zero();
    for (int j = 0; j < count; ++j) avg += (weights[j] / total) * states[j];
    const InvariantRegion<double> region{s0, eos};
    if (!region.contains<2>(avg, 1e-11 * std::max(1.0, std::abs(s0)))) {
      ++failures;
    }
  }
  return {"weighted averages stay in region", failures == 0,
          std::to_string(n) + " samples, " + std::to_string(failures) +
              " failures",
          0.0};
}

CheckResult check_margin_concavity(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  Margin margin;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto u1 = random_admissible<2>(rng, eos);
    const auto u2 = random_admissible<2>(rng, eos);
    const Cons<double, 2> mid = 0.5 * (u1 + u2);
    const double lhs = energy_margin<double, 2>(mid);
    const double rhs = 0.5 * (energy_margin<double, 2>(u1) +
                              energy_margin<double, 2>(u2));
    const double scale = std::abs(lhs) + std::abs(rhs) + 1.0;
    margin.update(lhs - rhs + 1e-12 * scale);
  }
  return {"energy margin concavity", margin.ok(),
          std::to_string(n) + " pairs, " + margin.text(), 0.0};
}

template <int Dim>
std::pair<int, double> hessian_eigen_scan(std::mt19937_64& rng, int n,
                                          bool violation) {
  SampleRanges ranges;
  ranges.rho_min = 0.2;
  ranges.rho_max = 5.0;
  ranges.p_min = 0.2;
  ranges.p_max = 5.0;
  ranges.v_max = 0.8;
  int failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto u = random_admissible<Dim>(rng, eos, ranges);
    const auto h = violation ? std::function<double(double)>(
                                   [](double s) { return -s; })
                             : std::function<double(double)>(
                                   [](double s) { return s; });
    const auto hess = entropy_hessian<double, Dim>(h, u, eos);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, Dim + 2, Dim + 2>>
        solver(hess);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (violation) {
      if (!(min_eig < 0)) ++failures;
    } else {
      worst = std::min(worst, min_eig);
      if (!(min_eig > 0)) ++failures;
    }
  }
  return {failures, worst};
}

CheckResult check_hessian_definite(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  const auto [fail1, worst1] = hessian_eigen_scan<1>(rng, n / 2, false);
  const auto [fail2, worst2] = hessian_eigen_scan<2>(rng, n - n / 2, false);
  std::ostringstream os;
  os << n << " states, smallest eigenvalue " << std::min(worst1, worst2);
  return {"entropy Hessian positive definite (H = S)", fail1 + fail2 == 0,
          os.str(), 0.0};
}

CheckResult check_hessian_violation(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  const int fail1 = hessian_eigen_scan<1>(rng, n / 2, true).first;
  const int fail2 = hessian_eigen_scan<2>(rng, n - n / 2, true).first;
  return {"entropy Hessian indefinite (H = -S)", fail1 + fail2 == 0,
          std::to_string(n) + " states, " + std::to_string(fail1 + fail2) +
              " failures",
          0.0};
}

// ---------------------------------------------------------------------------
// flux

CheckResult check_constructive_inequality(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  Margin margin;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto u = random_admissible<2>(rng, eos);
    const double sigma =
        specific_entropy<double, 2>(u, eos) - uniform(rng, 0.0, 2.0);
    const auto probe = random_probe<2>(rng);
    const double theta = uniform(rng, -1.0, 1.0);
    const int dir = std::uniform_int_distribution<int>(0, 1)(rng);
    const Cons<double, 2> shifted =
        u + theta * physical_flux<double, 2>(u, dir, eos);
    const double gap =
        halfspace_gap<double, 2>(shifted, probe, sigma, eos) +
        theta * std::exp(sigma) * probe.v[dir] *
            std::pow(probe.rho, eos.gamma());
    const double scale =
        halfspace_gap_scale<double, 2>(shifted, probe, sigma, eos) +
        std::exp(sigma) * std::pow(probe.rho, eos.gamma());
    margin.update(gap + 1e-10 * scale);
  }
  return {"constructive flux inequality", margin.ok(),
          std::to_string(n) + " samples, " + margin.text(), 0.0};
}

CheckResult check_elementary_inequality(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  Margin margin;
  for (int i = 0; i < n; ++i) {
    const double gamma = uniform(rng, 1.0 + 1e-9, 2.0);
    const double eta = std::exp(uniform(rng, -10.0, 5.0)) - 0.5 + 1e-12;
    const double lhs = std::pow(eta * gamma + 1.0, 1.0 / gamma);
    const double rhs = std::sqrt(2.0 * eta + 1.0);
    margin.update(lhs - rhs + 1e-12 * (lhs + rhs));
  }
  return {"splitting elementary inequality", margin.ok(),
          std::to_string(n) + " samples, " + margin.text(), 0.0};
}

CheckResult check_lf_flux_identities(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  Margin margin;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto ua = random_admissible<2>(rng, eos);
    const auto ub = random_admissible<2>(rng, eos);
    const UnitNormal<double, 2> xi(random_direction<2>(rng));
    const UnitNormal<double, 2> minus_xi(Vec<double, 2>(-xi.xi));
    const double alpha = uniform(rng, 1.0, 2.0);
    const Cons<double, 2> consistency =
        lf_flux<double, 2>(ua, ua, xi, alpha, eos) -
        normal_flux<double, 2>(ua, xi.xi, eos);
    const Cons<double, 2> conservation =
        lf_flux<double, 2>(ua, ub, xi, alpha, eos) +
        lf_flux<double, 2>(ub, ua, minus_xi, alpha, eos);
    const double scale = ua.norm() + ub.norm() + 1.0;
    margin.update(1e-12 * scale - consistency.norm());
    margin.update(1e-12 * scale - conservation.norm());
  }
  return {"LF flux consistency and conservation", margin.ok(),
          std::to_string(n) + " samples, " + margin.text(), 0.0};
}

CheckResult check_rotation_invariance(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  Margin margin;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto u = random_admissible<2>(rng, eos);
    const UnitNormal<double, 2> xi(random_direction<2>(rng));
    const auto lhs = normal_flux<double, 2>(u, xi.xi, eos);
    const auto rhs = rotate_from_normal<double, 2>(
        physical_flux<double, 2>(rotate_to_normal<double, 2>(u, xi), 0, eos),
        xi);
    margin.update(1e-12 * (lhs.norm() + 1.0) - (lhs - rhs).norm());
  }
  return {"rotational invariance of the flux", margin.ok(),
          std::to_string(n) + " samples, " + margin.text(), 0.0};
}

template <int Dim>
std::pair<Cons<double, Dim>, double> random_region_state(
    std::mt19937_64& rng, const Eos<double>& eos) {
  const auto u = random_admissible<Dim>(rng, eos);
  return {u, specific_entropy<double, Dim>(u, eos)};
}

CheckResult check_split_average_1d(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto [u1, s1] = random_region_state<1>(rng, eos);
    const auto [u2, s2] = random_region_state<1>(rng, eos);
    const double alpha = uniform(rng, 1.0, 2.0);
    const auto avg = lf_split_average<double, 1>(u1, u2, 0, alpha, eos);
    const double floor = std::min(s1, s2);
    const InvariantRegion<double> region{floor, eos};
    if (!region.contains<1>(avg, 1e-11 * std::max(1.0, std::abs(floor)))) {
      ++failures;
    }
  }
  return {"splitting average stays in region (1D)", failures == 0,
          std::to_string(n) + " samples, " + std::to_string(failures) +
              " failures",
          0.0};
}

template <int Dim>
CheckResult check_split_average_cartesian(std::uint64_t seed, int n,
                                          const char* label) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const int q = std::uniform_int_distribution<int>(1, 3)(rng);
    std::array<double, Dim> spacing;
    double inv_sum = 0.0;
    for (int a = 0; a < Dim; ++a) {
      spacing[a] = log_uniform(rng, 0.1, 10.0);
      inv_sum += 1.0 / spacing[a];
    }
    std::vector<double> weights(q);
    double total = 0.0;
    for (auto& w : weights) {
      w = uniform(rng, 0.1, 1.0);
      total += w;
    }
    for (auto& w : weights) w /= total;
    const double alpha = uniform(rng, 1.0, 2.0);

    double floor = std::numeric_limits<double>::infinity();
    Cons<double, Dim> acc = Cons<double, Dim>::Zero();
    for (int a = 0; a < Dim; ++a) {
      for (int j = 0; j < q; ++j) {
        const auto [ua, sa] = random_region_state<Dim>(rng, eos);
        const auto [ub, sb] = random_region_state<Dim>(rng, eos);
        floor = std::min({floor, sa, sb});
        acc += weights[j] / spacing[a] *
               lf_split_average<double, Dim>(ua, ub, a, alpha, eos);
      }
    }
    const Cons<double, Dim> avg = acc / inv_sum;
    const InvariantRegion<double> region{floor, eos};
    if (!region.template contains<Dim>(
            avg, 1e-11 * std::max(1.0, std::abs(floor)))) {
      ++failures;
    }
  }
  return {label, failures == 0,
          std::to_string(n) + " samples, " + std::to_string(failures) +
              " failures",
          0.0};
}

CheckResult check_split_average_fan(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const int edges = std::uniform_int_distribution<int>(3, 7)(rng);
    std::vector<FanFace<double, 2>> faces;
    Vec<double, 2> closure = Vec<double, 2>::Zero();
    for (int j = 0; j < edges - 1; ++j) {
      FanFace<double, 2> face;
      face.s = uniform(rng, 0.5, 2.0);
      face.xi = random_direction<2>(rng);
      closure += face.s * face.xi;
      faces.push_back(face);
    }
    if (closure.norm() < 1e-3) {
      --i;
      continue;
    }
    FanFace<double, 2> last;
    last.s = closure.norm();
    last.xi = -closure.normalized();
    faces.push_back(last);

    const double alpha = uniform(rng, 1.0, 2.0);
    double floor = std::numeric_limits<double>::infinity();
    for (auto& face : faces) {
      const int q = std::uniform_int_distribution<int>(1, 3)(rng);
      std::vector<double> weights(q);
      double total = 0.0;
      for (auto& w : weights) {
        w = uniform(rng, 0.1, 1.0);
        total += w;
      }
      for (int p = 0; p < q; ++p) {
        const auto [u, s] = random_region_state<2>(rng, eos);
        floor = std::min(floor, s);
        face.states.emplace_back(weights[p] / total, u);
      }
    }
    const auto avg = fan_split_average<double, 2>(faces, alpha, eos);
    const InvariantRegion<double> region{floor, eos};
    if (!region.contains<2>(avg, 1e-11 * std::max(1.0, std::abs(floor)))) {
      ++failures;
    }
  }
  return {"splitting average over closed fans", failures == 0,
          std::to_string(n) + " fans, " + std::to_string(failures) +
              " failures",
          0.0};
}

// ---------------------------------------------------------------------------
// dg_core

CheckResult check_decomposition_exactness() {
  Margin margin;
  for (int k = 0; k <= 3; ++k) {
    for (const auto& [dx, dy] : {std::pair{1.0, 1.0}, std::pair{0.3, 2.7}}) {
      const auto points = decomposition_points_2d(k, dx, dy);
      double wsum = 0.0;
      double wmin = 1.0;
      for (const auto& p : points) {
        wsum += p.weight;
        wmin = std::min(wmin, p.weight);
      }
      margin.update(wmin);
      margin.update(1e-13 - std::abs(wsum - 1.0));
      for (int a = 0; a <= k; ++a) {
        for (int b = 0; a + b <= k; ++b) {
          // Exact normalised cell average of xi^a eta^b over [-1,1]^2.
          const auto line = [](int e) {
            return e % 2 == 1 ? 0.0 : 1.0 / (e + 1);
          };
          const double exact = line(a) * line(b);
          double approx = 0.0;
          for (const auto& p : points) {
            approx += p.weight * std::pow(p.xi, a) * std::pow(p.eta, b);
          }
          margin.update(1e-13 - std::abs(approx - exact));
        }
      }
    }
  }
  return {"2D cell-average decomposition exactness", margin.ok(),
          "all monomials of total degree <= k, k = 0..3, " + margin.text(),
          0.0};
}

CheckResult check_first_order_min_entropy(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  Margin margin;
  const double alpha = 1.0;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const auto ul = random_admissible<1>(rng, eos);
    const auto uc = random_admissible<1>(rng, eos);
    const auto ur = random_admissible<1>(rng, eos);
    const double lambda = uniform(rng, 1e-3, 1.0);  // alpha dt / dx
    const auto flux = [&](const Cons<double, 1>& a,
                          const Cons<double, 1>& b) -> Cons<double, 1> {
      return 0.5 * (physical_flux<double, 1>(a, 0, eos) +
                    physical_flux<double, 1>(b, 0, eos) - alpha * (b - a));
    };
    const Cons<double, 1> next =
        uc - lambda / alpha * (flux(uc, ur) - flux(ul, uc));
    const double smin = std::min({specific_entropy<double, 1>(ul, eos),
                                  specific_entropy<double, 1>(uc, eos),
                                  specific_entropy<double, 1>(ur, eos)});
    margin.update(specific_entropy<double, 1>(next, eos) - smin + 1e-10);
  }
  return {"first-order local minimum entropy", margin.ok(),
          std::to_string(n) + " triples, " + margin.text(), 0.0};
}

/// Random DG field on a small periodic mesh whose cell averages all sit in
/// the region floored at the minimum average entropy.
template <int Dim>
DgSolution<Dim> random_field(std::mt19937_64& rng, const Mesh<Dim>& mesh,
                             int k, const Eos<double>& eos, double& s0) {
  DgSolution<Dim> sol;
  sol.mesh = mesh;
  sol.degree = k;
  sol.coeffs.setZero((Dim + 2) * (Dim == 1 ? num_modes_1d(k) : num_modes_2d(k)),
                     mesh.num_cells());
  SampleRanges ranges;
  ranges.rho_min = 1e-3;
  ranges.rho_max = 1e2;
  ranges.p_min = 1e-3;
  ranges.p_max = 1e2;
  ranges.v_max = 0.95;
  s0 = std::numeric_limits<double>::infinity();
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto avg = random_admissible<Dim>(rng, eos, ranges);
    s0 = std::min(s0, specific_entropy<double, Dim>(avg, eos));
    auto block = sol.cell(c);
    block.row(0) = avg.transpose();
    const double amplitude = uniform(rng, 0.0, 0.5);
    for (int m = 1; m < block.rows(); ++m) {
      for (int comp = 0; comp < Dim + 2; ++comp) {
        block(m, comp) = amplitude * noise(rng) *
                         (std::abs(avg[comp]) + 1e-3);
      }
    }
  }
  return sol;
}

template <int Dim>
CheckResult check_forward_euler_pp(std::uint64_t seed, int n,
                                   const char* label) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int i = 0; i < n; ++i) {
    const Eos<double> eos(random_gamma(rng));
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    Mesh<Dim> mesh;
    if constexpr (Dim == 1) {
      mesh = make_mesh_1d(0.0, 1.0, 8);
    } else {
      mesh = make_mesh_2d({0.0, 0.0}, {1.0, 1.3}, {4, 3});
    }
    double s0 = 0.0;
    DgSolution<Dim> sol = random_field<Dim>(rng, mesh, k, eos, s0);

    LimiterConfig config;
    config.mode = LimiterMode::irp;
    config.s0 = s0;
    const IrpLimiter<Dim> limiter(mesh, k, eos, config);
    limiter(sol);

    // The theorem speaks about the cell-average scheme, so only the face
    // fluxes enter; higher moments and volume points are not constrained.
    SpatialOperator<Dim> op(mesh, k, eos);
    op.set_averages_only(true);
    const double dt = max_stable_dt<Dim>(mesh, k, 1.0, 1.0);
    sol.coeffs += dt * op(sol);

    const InvariantRegion<double> region{s0, eos};
    for (int c = 0; c < mesh.num_cells(); ++c) {
      if (!region.template contains<Dim>(sol.average(c), 1e-10)) {
        ++failures;
        break;
      }
    }
  }
  return {label, failures == 0,
          std::to_string(n) + " randomized fields, " +
              std::to_string(failures) + " failures",
          0.0};
}

// ---------------------------------------------------------------------------
// limiter contracts

template <int Dim>
bool limiter_contract_case(std::mt19937_64& rng, const Eos<double>& eos,
                           int k, std::string& why) {
  Mesh<Dim> mesh;
  if constexpr (Dim == 1) {
    mesh = make_mesh_1d(0.0, 1.0, 4);
  } else {
    mesh = make_mesh_2d({0.0, 0.0}, {1.0, 1.0}, {2, 2});
  }
  double s0 = 0.0;
  DgSolution<Dim> sol = random_field<Dim>(rng, mesh, k, eos, s0);
  const Eigen::MatrixXd before = sol.coeffs;

  LimiterConfig config;
  config.mode = LimiterMode::irp;
  config.s0 = s0;
  const IrpLimiter<Dim> limiter(mesh, k, eos, config);
  limiter(sol);

  // Conservation: averages bit-identical.
  for (int c = 0; c < mesh.num_cells(); ++c) {
    for (int comp = 0; comp < Dim + 2; ++comp) {
      const int row = comp * sol.num_modes();
      if (sol.coeffs(row, c) != before(row, c)) {
        why = "average changed";
        return false;
      }
    }
  }
  // Soundness: every decomposition point in the region (epsilon slack).
  const InvariantRegion<double> region{s0, eos};
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const Eigen::MatrixXd values = limiter.point_basis() * sol.cell(c);
    for (int p = 0; p < values.rows(); ++p) {
      const Cons<double, Dim> u = values.row(p).transpose();
      if (!region.template contains<Dim>(u, 1e-9 * std::max(1.0, std::abs(s0)))) {
        why = "point escaped region";
        return false;
      }
    }
  }
  // Idempotence: a second pass changes nothing beyond round-off.
  DgSolution<Dim> again = sol;
  limiter(again);
  const double drift = (again.coeffs - sol.coeffs).norm();
  if (drift > 1e-11 * (1.0 + sol.coeffs.norm())) {
    why = "second pass moved the solution";
    return false;
  }
  return true;
}

CheckResult check_limiter_contracts(std::uint64_t seed, int n_per_degree) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  std::string why;
  for (int k = 1; k <= 3; ++k) {
    for (int i = 0; i < n_per_degree; ++i) {
      const Eos<double> eos(random_gamma(rng));
      if (!limiter_contract_case<1>(rng, eos, k, why)) ++failures;
      if (!limiter_contract_case<2>(rng, eos, k, why)) ++failures;
    }
  }
  std::string detail = std::to_string(n_per_degree) +
                       " cells/degree/dimension, " + std::to_string(failures) +
                       " failures";
  if (failures > 0) detail += " (" + why + ")";
  return {"limiter conservation, soundness, idempotence", failures == 0,
          detail, 0.0};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const double scale = options.sample_scale;
  const std::uint64_t seed = options.seed;
  std::vector<std::function<CheckResult()>> checks = {
      [=] { return check_round_trip(seed + 1, scaled(scale, 100000)); },
      [=] { return check_pressure_bracket(seed + 2, scaled(scale, 100000)); },
      [=] { return check_guess_independence(seed + 3, scaled(scale, 2000)); },
      [=] { return check_region_monotonic(seed + 4, scaled(scale, 10000)); },
      [=] {
        return check_second_form_forward(seed + 5, scaled(scale, 10000),
                                         100);
      },
      [=] { return check_second_form_witness(seed + 6, scaled(scale, 10000)); },
      [=] { return check_region_convexity(seed + 7, scaled(scale, 10000)); },
      [=] {
        return check_average_admissibility(seed + 8, scaled(scale, 10000));
      },
      [=] { return check_margin_concavity(seed + 9, scaled(scale, 100000)); },
      [=] { return check_hessian_definite(seed + 10, scaled(scale, 1000)); },
      [=] { return check_hessian_violation(seed + 11, scaled(scale, 1000)); },
      [=] {
        return check_constructive_inequality(seed + 12, scaled(scale, 100000));
      },
      [=] {
        return check_elementary_inequality(seed + 13, scaled(scale, 100000));
      },
      [=] { return check_lf_flux_identities(seed + 14, scaled(scale, 10000)); },
      [=] { return check_rotation_invariance(seed + 15, scaled(scale, 10000)); },
      [=] { return check_split_average_1d(seed + 16, scaled(scale, 10000)); },
      [=] {
        return check_split_average_cartesian<2>(
            seed + 17, scaled(scale, 10000),
            "splitting average stays in region (2D Cartesian)");
      },
      [=] {
        return check_split_average_cartesian<3>(
            seed + 18, scaled(scale, 1000),
            "splitting average stays in region (3D Cartesian)");
      },
      [=] { return check_split_average_fan(seed + 19, scaled(scale, 10000)); },
      [] { return check_decomposition_exactness(); },
      [=] {
        return check_first_order_min_entropy(seed + 20, scaled(scale, 10000));
      },
      [=] {
        return check_forward_euler_pp<1>(
            seed + 21, scaled(scale, 1000),
            "forward-Euler averages stay in region (1D)");
      },
      [=] {
        return check_forward_euler_pp<2>(
            seed + 22, scaled(scale, 1000),
            "forward-Euler averages stay in region (2D)");
      },
      // 125 draws x (4 + 4) cells = 1000 randomized cells per degree.
      [=] { return check_limiter_contracts(seed + 23, scaled(scale, 125)); },
  };

  std::vector<CheckResult> results;
  results.reserve(checks.size());
  for (const auto& check : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult result;
    try {
      result = check();
    } catch (const std::exception& e) {
      result.name = "check #" + std::to_string(results.size() + 1);
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    results.push_back(std::move(result));
  }
  return results;
}

bool print_verification(const std::vector<CheckResult>& results,
                        std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.detail;
    char buf[32];
    std::snprintf(buf, sizeof(buf), ", %.2fs)", r.seconds);
    out << buf << "\n";
    all = all && r.pass;
  }
  out << (all ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  return all;
}

}  // namespace rhd

#pragma once

#include <Eigen/Dense>
#include <limits>
#include <sstream>

#include "rhd/dg_solution.hpp"
#include "rhd/invariant_region.hpp"
#include "rhd/parallel.hpp"

namespace rhd {

enum class LimiterMode { none, bp, irp, irp_qtilde };

struct LimiterConfig {
  LimiterMode mode = LimiterMode::irp;
  double s0 = 0.0;
  double bisection_tol = 1e-12;
  int max_iter = 200;

  void validate() const {
    if (!(bisection_tol > 0) || max_iter < 1) {
      throw ConfigError("LimiterConfig: need bisection_tol > 0, max_iter >= 1");
    }
  }
};

/// Scaling factors applied to one cell; 1 means the step was the identity.
struct CellThetas {
  double theta1 = 1.0;
  double theta2 = 1.0;
  double theta3 = 1.0;
};

namespace detail {

/// Scale every mode above the average toward the average.
inline void scale_modes(Eigen::Ref<Eigen::MatrixXd> block, double theta,
                        int comp_begin, int comp_end) {
  if (theta == 1.0) return;
  block.block(1, comp_begin, block.rows() - 1, comp_end - comp_begin) *= theta;
}

}  // namespace detail

/// Step (i): scale the density polynomial toward its average until its
/// minimum over the decomposition points reaches eps1 = min(1e-13, avg).
/// `point_values` (points x components) is updated in place.
inline double limit_density_positivity(Eigen::Ref<Eigen::MatrixXd> block,
                                       Eigen::Ref<Eigen::MatrixXd> point_values) {
  const double avg = block(0, 0);
  if (!(avg > 0)) {
    throw InvalidAverage("limiter step (i): cell-average density <= 0");
  }
  const double eps1 = std::min(1e-13, avg);
  const double dmin = point_values.col(0).minCoeff();
  if (dmin >= eps1) return 1.0;
  const double theta = std::min(1.0, std::abs((avg - eps1) / (avg - dmin)));
  detail::scale_modes(block, theta, 0, 1);
  point_values.col(0) =
      (avg + theta * (point_values.col(0).array() - avg)).matrix();
  return theta;
}

/// Step (ii): scale the full state vector toward the average until the
/// energy margin q at every decomposition point reaches
/// eps2 = min(1e-13, q(avg)). Concavity of q makes the linear scaling
/// sufficient.
template <int Dim>
double limit_energy_margin(Eigen::Ref<Eigen::MatrixXd> block,
                           Eigen::Ref<Eigen::MatrixXd> point_values) {
  const Cons<double, Dim> avg = block.row(0).transpose();
  const double q_avg = energy_margin<double, Dim>(avg);
  if (!(q_avg > 0)) {
    throw InvalidAverage("limiter step (ii): cell-average energy margin <= 0");
  }
  const double eps2 = std::min(1e-13, q_avg);
  double q_min = std::numeric_limits<double>::infinity();
  for (int p = 0; p < point_values.rows(); ++p) {
    const Cons<double, Dim> u = point_values.row(p).transpose();
    q_min = std::min(q_min, energy_margin<double, Dim>(u));
  }
  if (q_min >= eps2) return 1.0;
  const double theta = std::min(1.0, std::abs((q_avg - eps2) / (q_avg - q_min)));
  detail::scale_modes(block, theta, 0, Dim + 2);
  point_values = ((1.0 - theta) * avg.transpose()).replicate(
                     point_values.rows(), 1) +
                 theta * point_values;
  return theta;
}

/// Step (iii): enforce the entropy floor S >= s0 at the decomposition
/// points. Where a point violates the floor, the scaling factor solves
/// S((1-t) avg + t point) = s0 by bisection on [0, 1]; the returned factor
/// is the largest sampled t on the feasible side, so the limited value
/// satisfies the floor as evaluated. The cell factor is the minimum over
/// points.
template <int Dim>
double limit_entropy_floor(Eigen::Ref<Eigen::MatrixXd> block,
                           Eigen::Ref<Eigen::MatrixXd> point_values,
                           double s0, const Eos<double>& eos,
                           double tol = 1e-12, int max_iter = 200) {
  const Cons<double, Dim> avg = block.row(0).transpose();
  if (!is_admissible<double, Dim>(avg)) {
    throw InvalidAverage("limiter step (iii): cell average not admissible");
  }
  const auto prim_avg = cons_to_prim<double, Dim>(avg, eos);
  const double s_avg = specific_entropy<double, Dim>(prim_avg, eos);
  // The floor is only decidable up to the entropy resolution of the state's
  // conserved representation (a cold floor state near p -> 0 resolves S to
  // far less than 1e-12). Averages inherit up to one point-band of dip
  // from the whole update stencil, whose states can resolve S a few times
  // more coarsely than this cell's average does; genuine scheme faults show
  // up orders of magnitude beyond this band.
  const double avg_slack =
      std::max(1e-12 * std::max(1.0, std::abs(s0)),
               256.0 * entropy_resolution<double, Dim>(prim_avg, eos));
  if (s_avg < s0 - avg_slack) {
    std::ostringstream os;
    os << "limiter step (iii): cell-average entropy " << s_avg
       << " below floor " << s0 << " by " << (s0 - s_avg) << " (slack "
       << avg_slack << "); scheme induction broken";
    throw InvalidAverage(os.str());
  }
  double theta = 1.0;
  // Consecutive recoveries see nearby states, so each root seeds the next.
  double guess = prim_avg.p;
  for (int p = 0; p < point_values.rows(); ++p) {
    const Cons<double, Dim> u = point_values.row(p).transpose();
    const auto prim =
        cons_to_prim<double, Dim>(u, eos, 1e-14, 200, nullptr, guess);
    guess = prim.p;
    const double s = specific_entropy<double, Dim>(prim, eos);
    // The contract asks for S >= s0 - tol at the output points, and S is
    // only resolvable to its representation noise: values within that band
    // of the floor need no solve. Without this, every cell of an
    // undisturbed region sitting exactly at the floor would bisect at
    // every stage.
    const double band =
        std::max(tol, 8.0 * entropy_resolution<double, Dim>(prim, eos));
    if (s >= s0 - band) continue;
    // S at t=0 is >= s0 and S at t=1 is < s0; keep the feasible endpoint.
    double lo = 0.0, hi = 1.0;
    double mix_guess = prim.p;
    int it = 0;
    for (; it < max_iter && hi - lo > tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      const Cons<double, Dim> mix = (1.0 - mid) * avg + mid * u;
      const auto prim_mix =
          cons_to_prim<double, Dim>(mix, eos, 1e-14, 200, nullptr, mix_guess);
      mix_guess = prim_mix.p;
      if (specific_entropy<double, Dim>(prim_mix, eos) >= s0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    if (hi - lo > tol) {
      throw NonConvergence("limiter step (iii): bisection cap reached");
    }
    theta = std::min(theta, lo);
  }
  if (theta < 1.0) {
    detail::scale_modes(block, theta, 0, Dim + 2);
    point_values = ((1.0 - theta) * avg.transpose()).replicate(
                       point_values.rows(), 1) +
                   theta * point_values;
  }
  return theta;
}

/// Alternative entropy step from the concave surrogate
/// D (S(U) - s0): a single closed-form scaling that is at most as large as
/// the exact-solve factor, hence also sufficient.
template <int Dim>
double limit_entropy_floor_qtilde(Eigen::Ref<Eigen::MatrixXd> block,
                                  Eigen::Ref<Eigen::MatrixXd> point_values,
                                  double s0, const Eos<double>& eos) {
  const Cons<double, Dim> avg = block.row(0).transpose();
  if (!is_admissible<double, Dim>(avg)) {
    throw InvalidAverage("limiter step (iii): cell average not admissible");
  }
  const auto prim_avg = cons_to_prim<double, Dim>(avg, eos);
  const double s_avg = specific_entropy<double, Dim>(prim_avg, eos);
  const double avg_slack =
      std::max(1e-12 * std::max(1.0, std::abs(s0)),
               256.0 * entropy_resolution<double, Dim>(prim_avg, eos));
  if (s_avg < s0 - avg_slack) {
    throw InvalidAverage("limiter step (iii): cell-average entropy below floor");
  }
  const double qt_avg = lab_density<double, Dim>(avg) * (s_avg - s0);
  double qt_min = std::numeric_limits<double>::infinity();
  for (int p = 0; p < point_values.rows(); ++p) {
    const Cons<double, Dim> u = point_values.row(p).transpose();
    const auto prim = cons_to_prim<double, Dim>(u, eos);
    const double s = specific_entropy<double, Dim>(prim, eos);
    const double band = 8.0 * entropy_resolution<double, Dim>(prim, eos);
    if (s >= s0 - band) continue;
    qt_min = std::min(qt_min, lab_density<double, Dim>(u) * (s - s0));
  }
  if (qt_min >= 0) return 1.0;
  const double theta = std::min(1.0, std::abs(qt_avg / (qt_avg - qt_min)));
  detail::scale_modes(block, theta, 0, Dim + 2);
  point_values = ((1.0 - theta) * avg.transpose()).replicate(
                     point_values.rows(), 1) +
                 theta * point_values;
  return theta;
}

/// Cell-by-cell scaling limiter at the decomposition point set: density
/// positivity, energy-margin positivity, then the entropy floor. Cell
/// averages are left bit-identical.
template <int Dim>
class IrpLimiter {
 public:
  /// The limiting point set is the decomposition set (whose membership the
  /// region-preservation theorems require) together with the volume
  /// quadrature points of the residual: a limited polynomial admissible
  /// only on the decomposition set can still dip out of the admissible set
  /// at interior quadrature points, which would abort the volume-term
  /// recovery mid-run. Extra points only shrink the scaling factors; the
  /// cell averages and the theorems' hypotheses are unaffected.
  IrpLimiter(const Mesh<Dim>& mesh, int k, const Eos<double>& eos,
             const LimiterConfig& config, int threads = 1)
      : eos_(eos), config_(config), threads_(resolve_threads(threads)) {
    config.validate();
    const QuadRule gauss = gauss_legendre(k + 1);
    if constexpr (Dim == 1) {
      const QuadRule lob = gauss_lobatto(lobatto_points_for_degree(k));
      Eigen::VectorXd nodes(lob.size() + gauss.size());
      nodes << lob.nodes, gauss.nodes;
      phi_points_ = basis_matrix_1d(k, nodes);
    } else {
      const auto pts = decomposition_points_2d(k, mesh.dx(0), mesh.dx(1));
      const int nv = gauss.size() * gauss.size();
      Eigen::MatrixXd ref(pts.size() + nv, 2);
      for (std::size_t p = 0; p < pts.size(); ++p) {
        ref(static_cast<int>(p), 0) = pts[p].xi;
        ref(static_cast<int>(p), 1) = pts[p].eta;
      }
      for (int qy = 0; qy < gauss.size(); ++qy) {
        for (int qx = 0; qx < gauss.size(); ++qx) {
          const int row = static_cast<int>(pts.size()) + qy * gauss.size() + qx;
          ref(row, 0) = gauss.nodes[qx];
          ref(row, 1) = gauss.nodes[qy];
        }
      }
      phi_points_ = basis_matrix_2d(k, ref);
    }
  }

  /// Basis matrix (points x modes) of the limiting point set.
  const Eigen::MatrixXd& point_basis() const { return phi_points_; }

  CellThetas limit_cell(Eigen::Ref<Eigen::MatrixXd> block, int cell) const {
    CellThetas thetas;
    if (config_.mode == LimiterMode::none) return thetas;
    try {
      Eigen::MatrixXd values = phi_points_ * block;
      thetas.theta1 = limit_density_positivity(block, values);
      thetas.theta2 = limit_energy_margin<Dim>(block, values);
      if (config_.mode == LimiterMode::irp) {
        thetas.theta3 = limit_entropy_floor<Dim>(
            block, values, config_.s0, eos_, config_.bisection_tol,
            config_.max_iter);
      } else if (config_.mode == LimiterMode::irp_qtilde) {
        thetas.theta3 =
            limit_entropy_floor_qtilde<Dim>(block, values, config_.s0, eos_);
      }
    } catch (const InvalidAverage& e) {
      std::ostringstream os;
      os << e.what() << " [cell " << cell << "]";
      throw InvalidAverage(os.str());
    }
    return thetas;
  }

  /// Limit every cell in place; returns the smallest factors seen.
  CellThetas operator()(DgSolution<Dim>& sol) const {
    CellThetas global;
    if (config_.mode == LimiterMode::none || sol.degree == 0) return global;
    const int n = sol.mesh.num_cells();
    std::vector<CellThetas> per_cell(n);
    parallel_for(n, threads_, [&](int c) {
      per_cell[c] = limit_cell(sol.cell(c), c);
    });
    for (const auto& t : per_cell) {
      global.theta1 = std::min(global.theta1, t.theta1);
      global.theta2 = std::min(global.theta2, t.theta2);
      global.theta3 = std::min(global.theta3, t.theta3);
    }
    return global;
  }

  const LimiterConfig& config() const { return config_; }
  const Eos<double>& eos() const { return eos_; }

 private:
  Eos<double> eos_;
  LimiterConfig config_;
  int threads_;
  Eigen::MatrixXd phi_points_;
};

/// Basis matrix at exactly the decomposition point set: the Gauss-Lobatto
/// nodes in 1D and the two tensor families on rectangles. This is the set
/// the minimum-entropy monitor samples.
template <int Dim>
Eigen::MatrixXd decomposition_basis(const Mesh<Dim>& mesh, int k) {
  if constexpr (Dim == 1) {
    return basis_matrix_1d(k,
                           gauss_lobatto(lobatto_points_for_degree(k)).nodes);
  } else {
    const auto pts = decomposition_points_2d(k, mesh.dx(0), mesh.dx(1));
    Eigen::MatrixXd ref(pts.size(), 2);
    for (std::size_t p = 0; p < pts.size(); ++p) {
      ref(static_cast<int>(p), 0) = pts[p].xi;
      ref(static_cast<int>(p), 1) = pts[p].eta;
    }
    return basis_matrix_2d(k, ref);
  }
}

/// Minima of the specific entropy over decomposition points and over cell
/// averages, with the entropy resolution of the states attaining them
/// (the honest slack for floor comparisons); states outside the admissible
/// set report -infinity.
struct EntropyMinima {
  double points = std::numeric_limits<double>::infinity();
  double averages = std::numeric_limits<double>::infinity();
  double points_resolution = 0.0;
  double averages_resolution = 0.0;
};

template <int Dim>
EntropyMinima min_entropy(const DgSolution<Dim>& sol,
                          const Eigen::MatrixXd& point_basis,
                          const Eos<double>& eos) {
  EntropyMinima out;
  const auto scan = [&eos](const Cons<double, Dim>& u, double& minimum,
                           double& resolution) {
    try {
      const auto prim = cons_to_prim<double, Dim>(u, eos);
      const double s = specific_entropy<double, Dim>(prim, eos);
      if (s < minimum) {
        minimum = s;
        resolution = entropy_resolution<double, Dim>(prim, eos);
      }
    } catch (const Error&) {
      minimum = -std::numeric_limits<double>::infinity();
    }
  };
  for (int c = 0; c < sol.mesh.num_cells(); ++c) {
    const Eigen::MatrixXd values = point_basis * sol.cell(c);
    for (int p = 0; p < values.rows(); ++p) {
      scan(values.row(p).transpose(), out.points, out.points_resolution);
    }
    scan(sol.average(c), out.averages, out.averages_resolution);
  }
  return out;
}

}  // namespace rhd

#pragma once

#include <deque>
#include <sstream>

#include "rhd/limiter.hpp"
#include "rhd/residual.hpp"

namespace rhd {

enum class TimeScheme { fe, ssprk3, sspms3 };

/// Explicit strong-stability-preserving integration of the semi-discrete DG
/// system. Every update is a convex combination of forward-Euler steps, and
/// the limiter runs after every update: callers hand in a limited solution
/// and advance() returns one, so face traces always come from limited
/// polynomials and the inductive region-preservation argument applies stage
/// by stage.
template <int Dim>
class TimeStepper {
 public:
  explicit TimeStepper(TimeScheme scheme) : scheme_(scheme) {}

  TimeScheme scheme() const { return scheme_; }

  /// SSP-MS needs four uniformly spaced stored levels before the multi-step
  /// formula activates; until then (and for any step whose dt differs from
  /// the stored spacing, e.g. a shortened final step) it falls back to
  /// SSP-RK with the same dt.
  void reset_history() { history_.clear(); }

  template <typename Op>
  void advance(DgSolution<Dim>& sol, double dt, const Op& op,
               const IrpLimiter<Dim>& limiter) {
    switch (scheme_) {
      case TimeScheme::fe: {
        const Eigen::MatrixXd rhs = op(sol);
        sol.coeffs += dt * rhs;
        finish_stage(sol, limiter);
        break;
      }
      case TimeScheme::ssprk3: {
        const Eigen::MatrixXd rhs0 = op(sol);
        rk3_from_first_stage(sol, dt, rhs0, op, limiter);
        break;
      }
      case TimeScheme::sspms3: {
        if (!history_.empty() &&
            std::abs(history_.back().dt - dt) >
                1e-12 * std::max(std::abs(dt), 1.0)) {
          history_.clear();
        }
        const Eigen::MatrixXd rhs0 = op(sol);
        history_.push_back({sol.coeffs, rhs0, dt});
        if (history_.size() == 4) {
          const Level& old = history_.front();
          sol.coeffs = (16.0 / 27.0) * (sol.coeffs + 3.0 * dt * rhs0) +
                       (11.0 / 27.0) *
                           (old.coeffs + (12.0 / 11.0) * dt * old.rhs);
          finish_stage(sol, limiter);
          history_.pop_front();
        } else {
          rk3_from_first_stage(sol, dt, rhs0, op, limiter);
        }
        break;
      }
    }
    sol.time += dt;
    audit_entropy(sol, limiter);
  }

 private:
  struct Level {
    Eigen::MatrixXd coeffs;
    Eigen::MatrixXd rhs;
    double dt;
  };

  template <typename Op>
  void rk3_from_first_stage(DgSolution<Dim>& sol, double dt,
                            const Eigen::MatrixXd& rhs0, const Op& op,
                            const IrpLimiter<Dim>& limiter) {
    const Eigen::MatrixXd un = sol.coeffs;
    sol.coeffs = un + dt * rhs0;
    finish_stage(sol, limiter);
    sol.coeffs = 0.75 * un + 0.25 * (sol.coeffs + dt * op(sol));
    finish_stage(sol, limiter);
    sol.coeffs = (1.0 / 3.0) * un + (2.0 / 3.0) * (sol.coeffs + dt * op(sol));
    finish_stage(sol, limiter);
  }

  /// After each forward-Euler-type update: audit the averages, then limit.
  /// A positivity loss in an average is a CFL breach or an implementation
  /// fault (the limiter never changes averages), reported as IrpViolation
  /// before the limiter would trip over it.
  void finish_stage(DgSolution<Dim>& sol, const IrpLimiter<Dim>& limiter) {
    if (limiter.config().mode != LimiterMode::none) {
      for (int c = 0; c < sol.mesh.num_cells(); ++c) {
        const Cons<double, Dim> avg = sol.average(c);
        const char* quantity = nullptr;
        if (!(lab_density<double, Dim>(avg) > 0)) {
          quantity = "density";
        } else if (!(energy_margin<double, Dim>(avg) > 0)) {
          quantity = "energy margin";
        }
        if (quantity != nullptr) {
          std::ostringstream os;
          os << "stage average left the admissible set: " << quantity
             << " [cell " << c << ", t=" << sol.time << "]";
          throw IrpViolation(os.str());
        }
      }
    }
    limiter(sol);
  }

  /// Post-step entropy audit (only meaningful for the entropy-floored
  /// limiter modes; BP does not claim to preserve the floor). The slack
  /// widens to the entropy resolution of the average's conserved
  /// representation, below which the floor is not decidable.
  void audit_entropy(const DgSolution<Dim>& sol,
                     const IrpLimiter<Dim>& limiter) const {
    const LimiterMode mode = limiter.config().mode;
    if (mode != LimiterMode::irp && mode != LimiterMode::irp_qtilde) return;
    const double floor = limiter.config().s0;
    for (int c = 0; c < sol.mesh.num_cells(); ++c) {
      const auto prim =
          cons_to_prim<double, Dim>(sol.average(c), limiter.eos());
      const double slack = std::max(
          1e-10, 256.0 * entropy_resolution<double, Dim>(prim, limiter.eos()));
      if (specific_entropy<double, Dim>(prim, limiter.eos()) <
          floor - slack) {
        std::ostringstream os;
        os << "post-step average left the invariant region: entropy [cell "
           << c << ", t=" << sol.time << "]";
        throw IrpViolation(os.str());
      }
    }
  }

  TimeScheme scheme_;
  std::deque<Level> history_;
};

}  // namespace rhd

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

#include "rhd/eos.hpp"
#include "rhd/errors.hpp"

namespace rhd {

template <typename Scalar, int Dim>
using Vec = Eigen::Matrix<Scalar, Dim, 1>;

/// Laboratory-frame conserved state (D, m..., E) as a dense vector, so that
/// the convex combinations the schemes are built from are plain arithmetic.
template <typename Scalar, int Dim>
using Cons = Eigen::Matrix<Scalar, Dim + 2, 1>;

template <typename Scalar, int Dim>
Scalar lab_density(const Cons<Scalar, Dim>& u) {
  return u[0];
}

template <typename Scalar, int Dim>
auto momentum(const Cons<Scalar, Dim>& u) {
  return u.template segment<Dim>(1);
}

template <typename Scalar, int Dim>
Scalar total_energy(const Cons<Scalar, Dim>& u) {
  return u[Dim + 1];
}

template <typename Scalar, int Dim>
Cons<Scalar, Dim> make_cons(Scalar d, const Vec<Scalar, Dim>& m, Scalar e) {
  Cons<Scalar, Dim> u;
  u[0] = d;
  u.template segment<Dim>(1) = m;
  u[Dim + 1] = e;
  return u;
}

/// Rest-frame primitive state (rho, v, p).
template <typename Scalar, int Dim>
struct Primitive {
  Scalar rho;
  Vec<Scalar, Dim> v;
  Scalar p;
};

template <typename Scalar, int Dim>
Scalar lorentz_factor(const Vec<Scalar, Dim>& v) {
  const Scalar v2 = v.squaredNorm();
  if (!(v2 < Scalar(1))) {
    throw DomainError("lorentz_factor: |v| >= 1");
  }
  return Scalar(1) / std::sqrt(Scalar(1) - v2);
}

/// Specific enthalpy h = 1 + e + p/rho with e = p / ((gamma - 1) rho).
template <typename Scalar, int Dim>
Scalar specific_enthalpy(const Primitive<Scalar, Dim>& v,
                         const Eos<Scalar>& eos) {
  return Scalar(1) + v.p / v.rho * (eos.gamma() / eos.gamma_m1());
}

/// Forward map (rho, v, p) -> (rho W, rho h W^2 v, rho h W^2 - p).
template <typename Scalar, int Dim>
Cons<Scalar, Dim> prim_to_cons(const Primitive<Scalar, Dim>& v,
                               const Eos<Scalar>& eos) {
  if (!(v.rho > Scalar(0)) || !(v.p > Scalar(0))) {
    throw DomainError("prim_to_cons: rho and p must be positive");
  }
  if (!(v.v.squaredNorm() < Scalar(1))) {
    throw DomainError("prim_to_cons: |v| >= 1");
  }
  const Scalar w = lorentz_factor(v.v);
  const Scalar w2 = w * w;
  const Scalar h = specific_enthalpy(v, eos);
  const Scalar rhw2 = v.rho * h * w2;
  return make_cons<Scalar, Dim>(v.rho * w, Vec<Scalar, Dim>(rhw2 * v.v),
                                rhw2 - v.p);
}

/// Residual of the scalar pressure equation whose positive root recovers p:
///   f(p) = |m|^2/(E+p) + D sqrt(1 - |m|^2/(E+p)^2) + p/(gamma-1) - E.
/// f is strictly increasing in p, so the root is unique.
template <typename Scalar, int Dim>
Scalar pressure_residual(Scalar p, const Cons<Scalar, Dim>& u,
                         const Eos<Scalar>& eos) {
  const Scalar d = lab_density<Scalar, Dim>(u);
  const Scalar e = total_energy<Scalar, Dim>(u);
  const Scalar m2 = momentum<Scalar, Dim>(u).squaredNorm();
  const Scalar mnorm = std::sqrt(m2);
  const Scalar s = e + p;
  // (s - m)(s + m) / s^2 is 1 - |v|^2 without cancellation near |v| = 1.
  const Scalar arg = (s - mnorm) * (s + mnorm) / (s * s);
  if (!(arg > Scalar(0))) {
    throw DomainError("pressure_residual: E + p <= |m|");
  }
  return m2 / s + d * std::sqrt(arg) + p / eos.gamma_m1() - e;
}

/// Diagnostics a caller can opt into when recovering primitives.
struct RecoveryReport {
  int iterations = 0;
  bool velocity_clamped = false;
};

namespace detail {

/// Round-off cases with 1 - |v|^2 in (-1e-15, 0] are clamped to 1e-15;
/// larger violations indicate genuine inadmissibility.
template <typename Scalar>
Scalar clamp_subluminal(Scalar one_minus_v2, bool& clamped) {
  if (one_minus_v2 > Scalar(0)) {
    return one_minus_v2;
  }
  if (one_minus_v2 > Scalar(-1e-15)) {
    clamped = true;
    return Scalar(1e-15);
  }
  throw RecoveryError("cons_to_prim: recovered |v| >= 1 beyond round-off");
}

template <typename Scalar, int Dim>
std::string describe_state(const Cons<Scalar, Dim>& u) {
  std::ostringstream os;
  os << "(D=" << lab_density<Scalar, Dim>(u)
     << ", |m|=" << momentum<Scalar, Dim>(u).norm()
     << ", E=" << total_energy<Scalar, Dim>(u) << ")";
  return os.str();
}

}  // namespace detail

/// Recover (rho, v, p) from a conserved state by solving the pressure
/// equation on the bracket [0, (gamma-1)E], which is analytically valid for
/// every admissible state. Newton steps are safeguarded by bisection, so the
/// returned root does not depend on the initial guess.
template <typename Scalar, int Dim>
Primitive<Scalar, Dim> cons_to_prim(const Cons<Scalar, Dim>& u,
                                    const Eos<Scalar>& eos,
                                    Scalar tol = Scalar(1e-14),
                                    int max_iter = 200,
                                    RecoveryReport* report = nullptr,
                                    Scalar initial_guess = Scalar(-1)) {
  const Scalar d = lab_density<Scalar, Dim>(u);
  const Scalar e = total_energy<Scalar, Dim>(u);
  const auto m = momentum<Scalar, Dim>(u);
  const Scalar m2 = m.squaredNorm();
  const Scalar mnorm = std::sqrt(m2);

  if (!std::isfinite(d) || !std::isfinite(e) || !m.allFinite()) {
    throw RecoveryError("cons_to_prim: non-finite state");
  }
  if (!(d > Scalar(0)) || !(e > mnorm)) {
    throw RecoveryError("cons_to_prim: state outside admissible set " +
                        detail::describe_state<Scalar, Dim>(u));
  }

  const Scalar gm1 = eos.gamma_m1();
  Scalar lo = Scalar(0);
  Scalar hi = gm1 * e;

  // f(0) >= 0 is exactly the complement of E > sqrt(D^2 + |m|^2).
  const Scalar f_lo = pressure_residual<Scalar, Dim>(lo, u, eos);
  if (!(f_lo < Scalar(0))) {
    throw RecoveryError("cons_to_prim: bracketing failed, state outside "
                        "admissible set " +
                        detail::describe_state<Scalar, Dim>(u));
  }

  const Scalar f_tol = tol * std::max(Scalar(1), e);
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  Scalar p = (initial_guess > lo && initial_guess < hi)
                 ? initial_guess
                 : std::min(hi, std::max(gm1 * (e - d), Scalar(0.1) * hi));

  int it = 0;
  bool converged = false;
  Scalar step = hi - lo;
  for (; it < max_iter; ++it) {
    const Scalar s = e + p;
    // (s - m)(s + m) / s^2 evaluates 1 - |v|^2 without cancellation near
    // the luminal limit.
    const Scalar one_minus_v2 = (s - mnorm) * (s + mnorm) / (s * s);
    const Scalar root_term = d * std::sqrt(one_minus_v2);
    const Scalar f = m2 / s + root_term + p / gm1 - e;
    // Once the residual sits at its own round-off floor, no further
    // iteration can sharpen the root; this floor always implies the
    // contract bound tol * max(1, E).
    const Scalar f_floor =
        Scalar(4) * eps * (m2 / s + root_term + p / gm1 + e);
    if (std::abs(f) <= f_floor) {
      converged = true;
      break;
    }
    // Contract criterion, tightened by a step criterion so the recovered
    // pressure is also accurate in its own scale where conditioning allows.
    if (std::abs(f) <= f_tol &&
        std::abs(step) <= Scalar(4) * eps * std::max(p, Scalar(1e-300))) {
      converged = true;
      break;
    }
    if (f < Scalar(0)) {
      lo = p;
    } else {
      hi = p;
    }
    if (hi - lo <= eps * hi) {
      // Bracket has collapsed to adjacent doubles; accept it.
      p = Scalar(0.5) * (lo + hi);
      converged = std::abs(f) <= f_tol;
      break;
    }
    // f' = 1/(gamma-1) - |v|^2 (1 - D W / (E + p)) > 0.
    const Scalar v2 = m2 / (s * s);
    const Scalar w = Scalar(1) / std::sqrt(one_minus_v2);
    const Scalar fp = Scalar(1) / gm1 - v2 * (Scalar(1) - d * w / s);
    Scalar next = p - f / fp;
    step = next - p;
    if (!(next > lo) || !(next < hi)) {
      next = Scalar(0.5) * (lo + hi);
      step = next - p;
    }
    p = next;
  }
  if (!converged) {
    throw NonConvergence("cons_to_prim: no convergence after " +
                         std::to_string(max_iter) + " iterations at state " +
                         detail::describe_state<Scalar, Dim>(u));
  }

  Primitive<Scalar, Dim> out;
  out.p = p;
  const Scalar s_final = e + p;
  out.v = m / s_final;
  bool clamped = false;
  const Scalar one_minus_v2 = detail::clamp_subluminal(
      (s_final - mnorm) * (s_final + mnorm) / (s_final * s_final), clamped);
  out.rho = d * std::sqrt(one_minus_v2);
  if (!(out.rho > Scalar(0)) || !(out.p > Scalar(0))) {
    throw RecoveryError("cons_to_prim: recovered non-positive rho or p at " +
                        detail::describe_state<Scalar, Dim>(u));
  }
  if (report != nullptr) {
    report->iterations = it;
    report->velocity_clamped = clamped;
  }
  return out;
}

/// Acoustic wave speed c_s = sqrt(gamma p / (rho h)), always in (0, 1).
template <typename Scalar, int Dim>
Scalar sound_speed(const Primitive<Scalar, Dim>& v, const Eos<Scalar>& eos) {
  if (!(v.rho > Scalar(0)) || !(v.p > Scalar(0))) {
    throw DomainError("sound_speed: rho and p must be positive");
  }
  const Scalar h = specific_enthalpy(v, eos);
  return std::sqrt(eos.gamma() * v.p / (v.rho * h));
}

/// Absolute accuracy attainable in double precision for the pressure
/// recovered from the conserved image of v: rounding (D, m, E) perturbs the
/// exact root of the pressure equation by about eps * E * (1 + |v|^2) / f',
/// where f' = 1/(gamma-1) - |v|^2 (1 - 1/h) is the slope at the root (which
/// degenerates as gamma -> 2, |v| -> 1). No solver can recover p more
/// tightly than this from a stored conserved state.
template <typename Scalar, int Dim>
Scalar recovery_pressure_noise(const Primitive<Scalar, Dim>& v,
                               const Eos<Scalar>& eos) {
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar v2 = v.v.squaredNorm();
  const Scalar h = specific_enthalpy(v, eos);
  const Scalar slope =
      Scalar(1) / eos.gamma_m1() - v2 * (Scalar(1) - Scalar(1) / h);
  const Scalar energy = v.rho * h / (Scalar(1) - v2) - v.p;
  return eps * energy * (Scalar(1) + v2) / slope;
}

/// Resolution of the specific entropy S = log(p rho^-gamma) of a state,
/// seen through its conserved representation: dominated by the pressure
/// noise when the floor state is cold (p << E - |m|-ish scales).
template <typename Scalar, int Dim>
Scalar entropy_resolution(const Primitive<Scalar, Dim>& v,
                          const Eos<Scalar>& eos) {
  return recovery_pressure_noise<Scalar, Dim>(v, eos) / v.p;
}

}  // namespace rhd

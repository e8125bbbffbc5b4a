#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "rhd/state.hpp"

namespace rhd {

/// Specific entropy S = log(p rho^-gamma), recovered from the conserved
/// state. Only defined on the admissible set; recovery errors propagate.
template <typename Scalar, int Dim>
Scalar specific_entropy(const Cons<Scalar, Dim>& u, const Eos<Scalar>& eos) {
  const auto v = cons_to_prim<Scalar, Dim>(u, eos);
  return std::log(v.p) - eos.gamma() * std::log(v.rho);
}

template <typename Scalar, int Dim>
Scalar specific_entropy(const Primitive<Scalar, Dim>& v,
                        const Eos<Scalar>& eos) {
  return std::log(v.p) - eos.gamma() * std::log(v.rho);
}

/// Margin of the total energy over the rest-plus-momentum bound,
///   q(U) = E - sqrt(D^2 + |m|^2).
/// Strictly concave; positivity of q together with D > 0 characterises the
/// admissible set, playing the role pressure positivity plays in the
/// non-relativistic limiters.
template <typename Scalar, int Dim>
Scalar energy_margin(const Cons<Scalar, Dim>& u) {
  const Scalar d = lab_density<Scalar, Dim>(u);
  const Scalar m2 = momentum<Scalar, Dim>(u).squaredNorm();
  return total_energy<Scalar, Dim>(u) - std::sqrt(d * d + m2);
}

/// Strict admissibility test D > 0 and E > sqrt(D^2 + |m|^2), with zero
/// slack. Callers wanting slack use the limiter's epsilon parameters.
template <typename Scalar, int Dim>
bool is_admissible(const Cons<Scalar, Dim>& u) {
  if (!u.allFinite()) return false;
  return lab_density<Scalar, Dim>(u) > Scalar(0) &&
         energy_margin<Scalar, Dim>(u) > Scalar(0);
}

/// Probe point (v_*, rho_*) parameterising the family of half-spaces whose
/// intersection is the invariant region: v_* in the open unit ball,
/// rho_* > 0.
template <typename Scalar, int Dim>
struct HalfspaceProbe {
  HalfspaceProbe(const Vec<Scalar, Dim>& v_star, Scalar rho_star)
      : v(v_star), rho(rho_star) {
    if (!(v.squaredNorm() < Scalar(1)) || !(rho > Scalar(0))) {
      throw DomainError("HalfspaceProbe: need |v_*| < 1 and rho_* > 0");
    }
  }
  Vec<Scalar, Dim> v;
  Scalar rho;
};

/// Linear-in-U functional whose nonnegativity over all probes characterises
/// membership of the entropy-floored region:
///   E - m.v_* - D sqrt(1-|v_*|^2)
///     + e^sigma (rho_*^g - g/(g-1) D rho_*^(g-1) sqrt(1-|v_*|^2)).
template <typename Scalar, int Dim>
Scalar halfspace_gap(const Cons<Scalar, Dim>& u,
                     const HalfspaceProbe<Scalar, Dim>& probe, Scalar sigma,
                     const Eos<Scalar>& eos) {
  const Scalar g = eos.gamma();
  const Scalar d = lab_density<Scalar, Dim>(u);
  const Scalar root = std::sqrt(Scalar(1) - probe.v.squaredNorm());
  const Scalar rg1 = std::pow(probe.rho, g - Scalar(1));
  return total_energy<Scalar, Dim>(u) -
         momentum<Scalar, Dim>(u).dot(probe.v) - d * root +
         std::exp(sigma) *
             (rg1 * probe.rho - g / eos.gamma_m1() * d * rg1 * root);
}

/// Sum of the absolute values of the terms of halfspace_gap; the natural
/// scale for round-off-tolerant comparisons against zero.
template <typename Scalar, int Dim>
Scalar halfspace_gap_scale(const Cons<Scalar, Dim>& u,
                           const HalfspaceProbe<Scalar, Dim>& probe,
                           Scalar sigma, const Eos<Scalar>& eos) {
  const Scalar g = eos.gamma();
  const Scalar d = std::abs(lab_density<Scalar, Dim>(u));
  const Scalar root = std::sqrt(Scalar(1) - probe.v.squaredNorm());
  const Scalar rg1 = std::pow(probe.rho, g - Scalar(1));
  return std::abs(total_energy<Scalar, Dim>(u)) +
         std::abs(momentum<Scalar, Dim>(u).dot(probe.v)) + d * root +
         std::exp(sigma) * (rg1 * probe.rho + g / eos.gamma_m1() * d * rg1 * root);
}

/// Entropy-floored invariant region: admissible states with S >= floor.
/// Membership is decided through the computable first equivalent form
/// (D > 0, E > sqrt(D^2+|m|^2), S >= floor); the probe form exists for
/// property tests, never for membership.
template <typename Scalar>
struct InvariantRegion {
  Scalar floor;
  Eos<Scalar> eos;

  template <int Dim>
  bool contains(const Cons<Scalar, Dim>& u, Scalar slack = Scalar(0)) const {
    if (!is_admissible<Scalar, Dim>(u)) return false;
    try {
      return specific_entropy<Scalar, Dim>(u, eos) >= floor - slack;
    } catch (const Error&) {
      return false;
    }
  }
};

template <typename Scalar, int Dim>
bool in_invariant_region(const Cons<Scalar, Dim>& u,
                         const InvariantRegion<Scalar>& region) {
  return region.template contains<Dim>(u);
}

/// Central finite-difference Hessian of U -> -D H(S(U)), symmetrised.
/// The generated pair (-D H(S), -D v_i H(S)) is a strictly convex entropy
/// pair exactly when H' > 0 and H' - gamma H'' > 0, which this
/// discretisation lets tests probe without symbolic derivatives.
/// Step h_i = cbrt(machine eps) * max(1, |u_i|) per component unless a
/// scale override is supplied.
template <typename Scalar, int Dim>
Eigen::Matrix<Scalar, Dim + 2, Dim + 2> entropy_hessian(
    const std::function<Scalar(Scalar)>& h_of_s, const Cons<Scalar, Dim>& u,
    const Eos<Scalar>& eos,
    Scalar step_scale = std::cbrt(std::numeric_limits<Scalar>::epsilon())) {
  constexpr int N = Dim + 2;
  const auto entropy_fn = [&](const Cons<Scalar, Dim>& w) {
    return -lab_density<Scalar, Dim>(w) *
           h_of_s(specific_entropy<Scalar, Dim>(w, eos));
  };
  Eigen::Matrix<Scalar, N, 1> h;
  for (int i = 0; i < N; ++i) {
    h[i] = step_scale * std::max(Scalar(1), std::abs(u[i]));
  }
  Eigen::Matrix<Scalar, N, N> hess;
  const Scalar f0 = entropy_fn(u);
  for (int i = 0; i < N; ++i) {
    Cons<Scalar, Dim> up = u, dn = u;
    up[i] += h[i];
    dn[i] -= h[i];
    hess(i, i) = (entropy_fn(up) - Scalar(2) * f0 + entropy_fn(dn)) /
                 (h[i] * h[i]);
  }
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      Cons<Scalar, Dim> pp = u, pm = u, mp = u, mm = u;
      pp[i] += h[i]; pp[j] += h[j];
      pm[i] += h[i]; pm[j] -= h[j];
      mp[i] -= h[i]; mp[j] += h[j];
      mm[i] -= h[i]; mm[j] -= h[j];
      const Scalar v = (entropy_fn(pp) - entropy_fn(pm) - entropy_fn(mp) +
                        entropy_fn(mm)) /
                       (Scalar(4) * h[i] * h[j]);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  return Scalar(0.5) * (hess + hess.transpose()).eval();
}

}  // namespace rhd

#pragma once

#include <vector>

#include "rhd/invariant_region.hpp"
#include "rhd/state.hpp"

namespace rhd {

/// Unit edge/face normal, checked to unit length within 1e-14.
template <typename Scalar, int Dim>
struct UnitNormal {
  explicit UnitNormal(const Vec<Scalar, Dim>& direction) : xi(direction) {
    if (std::abs(xi.norm() - Scalar(1)) > Scalar(1e-14)) {
      throw DomainError("UnitNormal: |xi| != 1");
    }
  }
  Vec<Scalar, Dim> xi;
};

/// Physical flux along coordinate direction i, from known primitives:
///   F_i = (D v_i, v_i m + p e_i, m_i).
template <typename Scalar, int Dim>
Cons<Scalar, Dim> physical_flux(const Cons<Scalar, Dim>& u,
                                const Primitive<Scalar, Dim>& prim, int i) {
  const Scalar vi = prim.v[i];
  Cons<Scalar, Dim> f;
  f[0] = lab_density<Scalar, Dim>(u) * vi;
  f.template segment<Dim>(1) = vi * momentum<Scalar, Dim>(u);
  f[1 + i] += prim.p;
  f[Dim + 1] = momentum<Scalar, Dim>(u)[i];
  return f;
}

template <typename Scalar, int Dim>
Cons<Scalar, Dim> physical_flux(const Cons<Scalar, Dim>& u, int i,
                                const Eos<Scalar>& eos) {
  return physical_flux<Scalar, Dim>(u, cons_to_prim<Scalar, Dim>(u, eos), i);
}

/// Directional flux xi . F(U) = (D v.xi, (v.xi) m + p xi, m.xi).
template <typename Scalar, int Dim>
Cons<Scalar, Dim> normal_flux(const Cons<Scalar, Dim>& u,
                              const Primitive<Scalar, Dim>& prim,
                              const Vec<Scalar, Dim>& xi) {
  const Scalar vxi = prim.v.dot(xi);
  Cons<Scalar, Dim> f;
  f[0] = lab_density<Scalar, Dim>(u) * vxi;
  f.template segment<Dim>(1) = vxi * momentum<Scalar, Dim>(u) + prim.p * xi;
  f[Dim + 1] = momentum<Scalar, Dim>(u).dot(xi);
  return f;
}

template <typename Scalar, int Dim>
Cons<Scalar, Dim> normal_flux(const Cons<Scalar, Dim>& u,
                              const Vec<Scalar, Dim>& xi,
                              const Eos<Scalar>& eos) {
  return normal_flux<Scalar, Dim>(u, cons_to_prim<Scalar, Dim>(u, eos), xi);
}

/// Lax-Friedrichs numerical flux along a unit normal,
///   0.5 (xi.F(U-) + xi.F(U+) - alpha (U+ - U-)),
/// with viscosity alpha >= 1 (the speed of light bounds all wave speeds).
template <typename Scalar, int Dim>
Cons<Scalar, Dim> lf_flux(const Cons<Scalar, Dim>& um,
                          const Cons<Scalar, Dim>& up,
                          const UnitNormal<Scalar, Dim>& normal, Scalar alpha,
                          const Eos<Scalar>& eos) {
  return Scalar(0.5) *
         (normal_flux<Scalar, Dim>(um, normal.xi, eos) +
          normal_flux<Scalar, Dim>(up, normal.xi, eos) - alpha * (up - um))
             .eval();
}

/// Rotation Q_xi with first row xi^T, applied blockwise as diag{1, Q_xi, 1}.
/// Momentum is rotated so its first component becomes m.xi; D, E unchanged.
template <typename Scalar, int Dim>
Eigen::Matrix<Scalar, Dim, Dim> normal_rotation(const Vec<Scalar, Dim>& xi) {
  Eigen::Matrix<Scalar, Dim, Dim> q;
  if constexpr (Dim == 1) {
    q(0, 0) = xi[0];
  } else if constexpr (Dim == 2) {
    q << xi[0], xi[1], -xi[1], xi[0];
  } else {
    static_assert(Dim == 3);
    q.row(0) = xi.transpose();
    int smallest = 0;
    xi.cwiseAbs().minCoeff(&smallest);
    Vec<Scalar, 3> t = Vec<Scalar, 3>::Unit(smallest);
    t -= t.dot(xi) * xi;
    t.normalize();
    q.row(1) = t.transpose();
    q.row(2) = xi.cross(t).transpose();
  }
  return q;
}

template <typename Scalar, int Dim>
Cons<Scalar, Dim> rotate_to_normal(const Cons<Scalar, Dim>& u,
                                   const UnitNormal<Scalar, Dim>& normal) {
  Cons<Scalar, Dim> out = u;
  out.template segment<Dim>(1) =
      normal_rotation<Scalar, Dim>(normal.xi) * momentum<Scalar, Dim>(u);
  return out;
}

template <typename Scalar, int Dim>
Cons<Scalar, Dim> rotate_from_normal(const Cons<Scalar, Dim>& u,
                                     const UnitNormal<Scalar, Dim>& normal) {
  Cons<Scalar, Dim> out = u;
  out.template segment<Dim>(1) =
      normal_rotation<Scalar, Dim>(normal.xi).transpose() *
      momentum<Scalar, Dim>(u);
  return out;
}

/// Two-state splitting average along direction i,
///   0.5 (U_hat - F_i(U_hat)/alpha + U_check + F_i(U_check)/alpha).
/// Maps pairs from an entropy-floored region back into the same region for
/// every alpha >= 1.
template <typename Scalar, int Dim>
Cons<Scalar, Dim> lf_split_average(const Cons<Scalar, Dim>& u_hat,
                                   const Cons<Scalar, Dim>& u_check, int i,
                                   Scalar alpha, const Eos<Scalar>& eos) {
  return Scalar(0.5) *
         (u_hat - physical_flux<Scalar, Dim>(u_hat, i, eos) / alpha +
          u_check + physical_flux<Scalar, Dim>(u_check, i, eos) / alpha)
             .eval();
}

/// One face of a closed fan: scaled outward normal (s > 0, |xi| = 1) and
/// quadrature states with positive weights summing to one.
template <typename Scalar, int Dim>
struct FanFace {
  Scalar s;
  Vec<Scalar, Dim> xi;
  std::vector<std::pair<Scalar, Cons<Scalar, Dim>>> states;
};

/// Splitting average over a closed fan of directions,
///   (1/sum s_j) sum_j sum_i s_j w_i (U_ij - xi_j.F(U_ij)/alpha),
/// requiring the closure sum_j s_j xi_j = 0. Region membership of the inputs
/// is inherited by the output for alpha >= 1.
template <typename Scalar, int Dim>
Cons<Scalar, Dim> fan_split_average(
    const std::vector<FanFace<Scalar, Dim>>& faces, Scalar alpha,
    const Eos<Scalar>& eos) {
  Scalar total = 0;
  Vec<Scalar, Dim> closure = Vec<Scalar, Dim>::Zero();
  for (const auto& face : faces) {
    if (!(face.s > Scalar(0))) {
      throw FanError("fan_split_average: face measure must be positive");
    }
    total += face.s;
    closure += face.s * face.xi;
  }
  if (closure.norm() > Scalar(1e-12) * total) {
    throw FanError("fan_split_average: fan does not close");
  }
  Cons<Scalar, Dim> acc = Cons<Scalar, Dim>::Zero();
  for (const auto& face : faces) {
    Scalar wsum = 0;
    for (const auto& [w, u] : face.states) {
      if (!(w > Scalar(0))) {
        throw DomainError("fan_split_average: weights must be positive");
      }
      wsum += w;
      acc += face.s * w *
             (u - normal_flux<Scalar, Dim>(u, face.xi, eos) / alpha).eval();
    }
    if (std::abs(wsum - Scalar(1)) > Scalar(1e-12)) {
      throw DomainError("fan_split_average: weights must sum to one");
    }
  }
  return acc / total;
}

}  // namespace rhd

#pragma once

#include <Eigen/Dense>
#include <sstream>
#include <vector>

#include "rhd/dg_solution.hpp"
#include "rhd/flux.hpp"
#include "rhd/parallel.hpp"

namespace rhd {

/// Largest time step allowed by the region-preserving theory, capped by a
/// practical CFL number. The theory gives alpha dt / dx <= w1 in 1D and
/// alpha dt (1/dx + 1/dy) <= w1 on Cartesian 2D meshes, with w1 = 1 for the
/// first-order scheme and w1 = 1/(L(L-1)) for degree k >= 1.
template <int Dim>
double max_stable_dt(const Mesh<Dim>& mesh, int k, double alpha,
                     double cfl_practical) {
  const double theory = k == 0 ? 1.0 : lobatto_first_weight(k);
  const double frac = std::min(theory, cfl_practical);
  if constexpr (Dim == 1) {
    return frac * mesh.dx(0) / alpha;
  } else {
    return frac / (alpha * (1.0 / mesh.dx(0) + 1.0 / mesh.dx(1)));
  }
}

/// Practical CFL numbers: 0.3 / 0.15 / 0.1 for P1 / P2 / P3 with SSP-RK
/// time stepping, one third of those for SSP-MS. First order runs at 0.9.
inline double default_cfl(int k, bool multistep) {
  static constexpr double rk[] = {0.9, 0.3, 0.15, 0.1};
  const double base = rk[std::min(std::max(k, 0), 3)];
  return multistep ? base / 3.0 : base;
}

namespace detail {

template <int Dim>
struct PointState {
  Cons<double, Dim> u;
  Primitive<double, Dim> prim;
};

template <int Dim>
PointState<Dim> recover_point(const Cons<double, Dim>& u,
                              const Eos<double>& eos, int cell,
                              const char* where) {
  try {
    return {u, cons_to_prim<double, Dim>(u, eos)};
  } catch (const NonConvergence&) {
    throw;
  } catch (const Error& e) {
    std::ostringstream os;
    os << e.what() << " [" << where << ", cell " << cell << "]";
    throw RecoveryError(os.str());
  }
}

/// Exterior trace and primitives across a boundary face.
template <int Dim>
PointState<Dim> boundary_state(const BoundarySpec<Dim>& bc,
                               const PointState<Dim>& interior, int axis,
                               const Vec<double, Dim>& pos,
                               const Eos<double>& eos) {
  switch (bc.tag) {
    case Boundary::outflow:
      return interior;
    case Boundary::reflective: {
      PointState<Dim> out = interior;
      out.u[1 + axis] = -out.u[1 + axis];
      out.prim.v[axis] = -out.prim.v[axis];
      return out;
    }
    case Boundary::inflow: {
      const Cons<double, Dim> u = bc.state(pos, interior.u);
      return {u, cons_to_prim<double, Dim>(u, eos)};
    }
    case Boundary::periodic:
      break;
  }
  throw ConfigError("boundary_state: periodic faces are resolved by index");
}

/// LF flux along coordinate axis i from recovered traces.
template <int Dim>
Cons<double, Dim> lf_axis_flux(const PointState<Dim>& minus,
                               const PointState<Dim>& plus, int axis,
                               double alpha) {
  return 0.5 * (physical_flux<double, Dim>(minus.u, minus.prim, axis) +
                physical_flux<double, Dim>(plus.u, plus.prim, axis) -
                alpha * (plus.u - minus.u))
                   .eval();
}

}  // namespace detail

/// Semi-discrete DG operator on a 1D mesh: returns d/dt of the modal
/// coefficients. Face traces are taken from the solution as handed in; the
/// time stepper guarantees it has been limited before every call. The
/// cell-average row reproduces the LF cell-average scheme exactly; higher
/// moments follow the standard weak form with (k+1)-point Gauss volume
/// quadrature.
class SpatialOperator1D {
 public:
  SpatialOperator1D(const Mesh<1>& mesh, int k, const Eos<double>& eos,
                    double alpha = 1.0, int threads = 1)
      : mesh_(mesh),
        k_(k),
        eos_(eos),
        alpha_(alpha),
        threads_(resolve_threads(threads)),
        vol_(gauss_legendre(k + 1)),
        phi_vol_(basis_matrix_1d(k, vol_.nodes)),
        dphi_vol_(basis_derivative_matrix_1d(k, vol_.nodes)) {
    mesh.validate();
    Eigen::VectorXd ends(2);
    ends << -1.0, 1.0;
    const Eigen::MatrixXd phi_ends = basis_matrix_1d(k, ends);
    phi_left_ = phi_ends.row(0);
    phi_right_ = phi_ends.row(1);
  }

  Eigen::MatrixXd operator()(const DgSolution<1>& sol) const {
    const int n = mesh_.cells[0];
    const int modes = num_modes_1d(k_);
    const double dx = mesh_.dx(0);

    traces_.resize(2 * n);
    parallel_for(n, threads_, [&](int c) {
      traces_[2 * c] = detail::recover_point<1>(
          sol.value(c, phi_left_), eos_, c, "left trace");
      traces_[2 * c + 1] = detail::recover_point<1>(
          sol.value(c, phi_right_), eos_, c, "right trace");
    });

    fluxes_.resize(n + 1);
    parallel_for(n + 1, threads_, [&](int f) {
      const detail::PointState<1>* minus =
          f > 0 ? &traces_[2 * (f - 1) + 1] : nullptr;
      const detail::PointState<1>* plus = f < n ? &traces_[2 * f] : nullptr;
      detail::PointState<1> ghost;
      if (minus == nullptr) {
        if (mesh_.boundary[0][0].tag == Boundary::periodic) {
          minus = &traces_[2 * (n - 1) + 1];
        } else {
          Vec<double, 1> pos;
          pos[0] = mesh_.lo[0];
          ghost = detail::boundary_state<1>(mesh_.boundary[0][0], *plus, 0,
                                            pos, eos_);
          minus = &ghost;
        }
      }
      if (plus == nullptr) {
        if (mesh_.boundary[0][1].tag == Boundary::periodic) {
          plus = &traces_[0];
        } else {
          Vec<double, 1> pos;
          pos[0] = mesh_.hi[0];
          ghost = detail::boundary_state<1>(mesh_.boundary[0][1], *minus, 0,
                                            pos, eos_);
          plus = &ghost;
        }
      }
      fluxes_[f] = detail::lf_axis_flux<1>(*minus, *plus, 0, alpha_);
    });

    Eigen::MatrixXd rhs(sol.coeffs.rows(), n);
    parallel_for(n, threads_, [&](int c) {
      Eigen::Map<Eigen::MatrixXd> block(rhs.col(c).data(), modes,
                                        DgSolution<1>::NComp);
      if (averages_only_) {
        block.setZero();
        block.row(0) = ((fluxes_[c] - fluxes_[c + 1]) / dx).transpose();
        return;
      }
      block.noalias() = (1.0 / dx) * phi_left_ * fluxes_[c].transpose();
      block.noalias() -=
          (1.0 / dx) * phi_right_ * fluxes_[c + 1].transpose();
      if (k_ > 0) {
        for (int q = 0; q < vol_.size(); ++q) {
          const auto ps = detail::recover_point<1>(
              sol.value(c, phi_vol_.row(q)), eos_, c, "volume point");
          const auto f = physical_flux<double, 1>(ps.u, ps.prim, 0);
          block.noalias() += (vol_.weights[q] / dx) *
                             dphi_vol_.row(q).transpose() * f.transpose();
        }
      }
    });
    return rhs;
  }

  const Mesh<1>& mesh() const { return mesh_; }
  double alpha() const { return alpha_; }

  /// Restrict the operator to the cell-average scheme: only face fluxes,
  /// only the mode-0 row of the output. This is the scheme the
  /// region-preservation theorems speak about.
  void set_averages_only(bool value) { averages_only_ = value; }

 private:
  bool averages_only_ = false;
  Mesh<1> mesh_;
  int k_;
  Eos<double> eos_;
  double alpha_;
  int threads_;
  QuadRule vol_;
  Eigen::MatrixXd phi_vol_;
  Eigen::MatrixXd dphi_vol_;
  Eigen::VectorXd phi_left_;
  Eigen::VectorXd phi_right_;
  mutable std::vector<detail::PointState<1>> traces_;
  mutable std::vector<Cons<double, 1>> fluxes_;
};

/// Semi-discrete DG operator on a 2D Cartesian mesh with (k+1)-point Gauss
/// edge quadrature and (k+1)^2 volume quadrature.
class SpatialOperator2D {
 public:
  SpatialOperator2D(const Mesh<2>& mesh, int k, const Eos<double>& eos,
                    double alpha = 1.0, int threads = 1)
      : mesh_(mesh),
        k_(k),
        eos_(eos),
        alpha_(alpha),
        threads_(resolve_threads(threads)),
        edge_(gauss_legendre(k + 1)) {
    mesh.validate();
    const int q = edge_.size();
    const int nv = q * q;
    Eigen::MatrixXd vol_pts(nv, 2);
    vol_weights_.resize(nv);
    for (int qy = 0; qy < q; ++qy) {
      for (int qx = 0; qx < q; ++qx) {
        vol_pts(qy * q + qx, 0) = edge_.nodes[qx];
        vol_pts(qy * q + qx, 1) = edge_.nodes[qy];
        vol_weights_[qy * q + qx] = edge_.weights[qx] * edge_.weights[qy];
      }
    }
    phi_vol_ = basis_matrix_2d(k, vol_pts);
    dphix_vol_ = basis_derivative_matrix_2d(k, vol_pts, 0);
    dphiy_vol_ = basis_derivative_matrix_2d(k, vol_pts, 1);

    const auto edge_points = [&](int axis, double fixed) {
      Eigen::MatrixXd pts(q, 2);
      for (int i = 0; i < q; ++i) {
        pts(i, axis) = fixed;
        pts(i, 1 - axis) = edge_.nodes[i];
      }
      return pts;
    };
    phi_edge_[0] = basis_matrix_2d(k, edge_points(0, -1.0));  // left
    phi_edge_[1] = basis_matrix_2d(k, edge_points(0, 1.0));   // right
    phi_edge_[2] = basis_matrix_2d(k, edge_points(1, -1.0));  // bottom
    phi_edge_[3] = basis_matrix_2d(k, edge_points(1, 1.0));   // top
  }

  Eigen::MatrixXd operator()(const DgSolution<2>& sol) const {
    const int nx = mesh_.cells[0];
    const int ny = mesh_.cells[1];
    const int n = nx * ny;
    const int q = edge_.size();
    const int modes = num_modes_2d(k_);
    const double dx = mesh_.dx(0);
    const double dy = mesh_.dx(1);

    traces_.resize(static_cast<std::size_t>(n) * 4 * q);
    parallel_for(n, threads_, [&](int c) {
      for (int e = 0; e < 4; ++e) {
        static const char* names[] = {"left trace", "right trace",
                                      "bottom trace", "top trace"};
        for (int p = 0; p < q; ++p) {
          traces_[trace_index(c, e, p, q)] = detail::recover_point<2>(
              sol.value(c, phi_edge_[e].row(p)), eos_, c, names[e]);
        }
      }
    });

    // Face fluxes with normals +e1 (x faces) and +e2 (y faces).
    xflux_.resize(static_cast<std::size_t>(nx + 1) * ny * q);
    yflux_.resize(static_cast<std::size_t>(ny + 1) * nx * q);
    parallel_for((nx + 1) * ny, threads_, [&](int idx) {
      const int fx = idx % (nx + 1);
      const int j = idx / (nx + 1);
      for (int p = 0; p < q; ++p) {
        face_flux(0, fx, j, p);
      }
    });
    parallel_for((ny + 1) * nx, threads_, [&](int idx) {
      const int fy = idx % (ny + 1);
      const int i = idx / (ny + 1);
      for (int p = 0; p < q; ++p) {
        face_flux(1, fy, i, p);
      }
    });

    Eigen::MatrixXd rhs(sol.coeffs.rows(), n);
    const double inv_area = 1.0 / (dx * dy);
    parallel_for(n, threads_, [&](int c) {
      const int i = c % nx;
      const int j = c / nx;
      Eigen::Map<Eigen::MatrixXd> block(rhs.col(c).data(), modes,
                                        DgSolution<2>::NComp);
      block.setZero();
      if (averages_only_) {
        Cons<double, 2> acc = Cons<double, 2>::Zero();
        for (int p = 0; p < q; ++p) {
          const double we = 0.5 * edge_.weights[p];
          acc += (we * dy * inv_area) *
                 (xflux_[xface_index(i, j, p, q)] -
                  xflux_[xface_index(i + 1, j, p, q)]);
          acc += (we * dx * inv_area) *
                 (yflux_[yface_index(i, j, p, q)] -
                  yflux_[yface_index(i, j + 1, p, q)]);
        }
        block.row(0) = acc.transpose();
        return;
      }
      if (k_ > 0) {
        for (int p = 0; p < phi_vol_.rows(); ++p) {
          const auto ps = detail::recover_point<2>(
              sol.value(c, phi_vol_.row(p)), eos_, c, "volume point");
          const auto f1 = physical_flux<double, 2>(ps.u, ps.prim, 0);
          const auto f2 = physical_flux<double, 2>(ps.u, ps.prim, 1);
          const double w = vol_weights_[p] * inv_area;
          block.noalias() += (0.5 * dy * w) *
                             dphix_vol_.row(p).transpose() * f1.transpose();
          block.noalias() += (0.5 * dx * w) *
                             dphiy_vol_.row(p).transpose() * f2.transpose();
        }
      }
      for (int p = 0; p < q; ++p) {
        const double we = 0.5 * edge_.weights[p];
        block.noalias() += (we * dy * inv_area) *
                           (phi_edge_[0].row(p).transpose() *
                                xflux_[xface_index(i, j, p, q)].transpose() -
                            phi_edge_[1].row(p).transpose() *
                                xflux_[xface_index(i + 1, j, p, q)]
                                    .transpose());
        block.noalias() += (we * dx * inv_area) *
                           (phi_edge_[2].row(p).transpose() *
                                yflux_[yface_index(i, j, p, q)].transpose() -
                            phi_edge_[3].row(p).transpose() *
                                yflux_[yface_index(i, j + 1, p, q)]
                                    .transpose());
      }
    });
    return rhs;
  }

  const Mesh<2>& mesh() const { return mesh_; }
  double alpha() const { return alpha_; }

  /// Restrict the operator to the cell-average scheme (see the 1D twin).
  void set_averages_only(bool value) { averages_only_ = value; }

 private:
  bool averages_only_ = false;
  std::size_t trace_index(int c, int edge, int p, int q) const {
    return (static_cast<std::size_t>(c) * 4 + edge) * q + p;
  }
  std::size_t xface_index(int fx, int j, int p, int q) const {
    return (static_cast<std::size_t>(j) * (mesh_.cells[0] + 1) + fx) * q + p;
  }
  std::size_t yface_index(int i, int fy, int p, int q) const {
    return (static_cast<std::size_t>(fy) * mesh_.cells[0] + i) * q + p;
  }

  /// Flux at point p of face `f` along `axis`; `other` is the transverse
  /// cell index.
  void face_flux(int axis, int f, int other, int p) const {
    const int nx = mesh_.cells[0];
    const int ny = mesh_.cells[1];
    const int count = axis == 0 ? nx : ny;
    const int minus_edge = axis == 0 ? 1 : 3;  // right / top of minus cell
    const int plus_edge = axis == 0 ? 0 : 2;   // left / bottom of plus cell
    const int q = edge_.size();

    const auto cell_id = [&](int along) {
      return axis == 0 ? along + nx * other : other + nx * along;
    };

    const detail::PointState<2>* minus =
        f > 0 ? &traces_[trace_index(cell_id(f - 1), minus_edge, p, q)]
              : nullptr;
    const detail::PointState<2>* plus =
        f < count ? &traces_[trace_index(cell_id(f), plus_edge, p, q)]
                  : nullptr;
    detail::PointState<2> ghost;
    if (minus == nullptr) {
      if (mesh_.boundary[axis][0].tag == Boundary::periodic) {
        minus = &traces_[trace_index(cell_id(count - 1), minus_edge, p, q)];
      } else {
        ghost = detail::boundary_state<2>(mesh_.boundary[axis][0], *plus,
                                          axis, face_position(axis, f, other, p),
                                          eos_);
        minus = &ghost;
      }
    }
    if (plus == nullptr) {
      if (mesh_.boundary[axis][1].tag == Boundary::periodic) {
        plus = &traces_[trace_index(cell_id(0), plus_edge, p, q)];
      } else {
        ghost = detail::boundary_state<2>(mesh_.boundary[axis][1], *minus,
                                          axis, face_position(axis, f, other, p),
                                          eos_);
        plus = &ghost;
      }
    }
    auto& store = axis == 0 ? xflux_[xface_index(f, other, p, q)]
                            : yflux_[yface_index(other, f, p, q)];
    store = detail::lf_axis_flux<2>(*minus, *plus, axis, alpha_);
  }

  Vec<double, 2> face_position(int axis, int f, int other, int p) const {
    Vec<double, 2> pos;
    pos[axis] = mesh_.lo[axis] + f * mesh_.dx(axis);
    pos[1 - axis] =
        mesh_.lo[1 - axis] +
        (other + 0.5 * (1.0 + edge_.nodes[p])) * mesh_.dx(1 - axis);
    return pos;
  }

  Mesh<2> mesh_;
  int k_;
  Eos<double> eos_;
  double alpha_;
  int threads_;
  QuadRule edge_;
  Eigen::VectorXd vol_weights_;
  Eigen::MatrixXd phi_vol_;
  Eigen::MatrixXd dphix_vol_;
  Eigen::MatrixXd dphiy_vol_;
  Eigen::MatrixXd phi_edge_[4];
  mutable std::vector<detail::PointState<2>> traces_;
  mutable std::vector<Cons<double, 2>> xflux_;
  mutable std::vector<Cons<double, 2>> yflux_;
};

template <int Dim>
using SpatialOperator =
    std::conditional_t<Dim == 1, SpatialOperator1D, SpatialOperator2D>;

}  // namespace rhd

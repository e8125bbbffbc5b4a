#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "rhd/dg_solution.hpp"
#include "rhd/invariant_region.hpp"
#include "rhd/mesh.hpp"

namespace rhd {

/// Built-in benchmark problem: domain, boundaries, initial data, final
/// time, adiabatic index, the exact entropy floor of the initial data, and
/// (when known) the exact solution.
template <int Dim>
struct Scenario {
  std::string name;
  std::array<double, Dim> lo{};
  std::array<double, Dim> hi{};
  std::array<std::array<BoundarySpec<Dim>, 2>, Dim> boundary{};
  double gamma = 5.0 / 3.0;
  double t_final = 0.0;
  double entropy_floor = 0.0;
  InitialCondition<Dim> initial;
  std::function<Primitive<double, Dim>(const Vec<double, Dim>&, double)> exact;

  bool has_exact() const { return static_cast<bool>(exact); }

  Mesh<Dim> make_mesh(const std::array<int, Dim>& counts) const {
    Mesh<Dim> mesh;
    mesh.lo = lo;
    mesh.hi = hi;
    mesh.cells = counts;
    mesh.boundary = boundary;
    mesh.validate();
    return mesh;
  }
};

std::vector<std::string> builtin_scenario_names();

/// Spatial dimension of a built-in scenario; throws UnknownScenario.
int builtin_scenario_dim(const std::string& name);

/// Construct a built-in scenario, optionally overriding the adiabatic
/// index (initial data stay as printed; derived quantities follow gamma).
Scenario<1> builtin_scenario_1d(const std::string& name, double gamma = -1);
Scenario<2> builtin_scenario_2d(const std::string& name, double gamma = -1);

/// Pressure of a state whose acoustic Mach number v/c_s is prescribed:
/// inverts c_s^2 = gamma p / (rho h) for the ideal EOS.
double pressure_from_mach(double rho, double speed, double mach, double gamma);

/// Minimum specific entropy of an initial condition over a uniform sample
/// grid with `resolution` cells per axis (endpoints included). For
/// piecewise-constant data any resolution that resolves the pieces returns
/// the exact minimum over the constant states.
template <int Dim>
double entropy_floor(const InitialCondition<Dim>& ic, int resolution,
                     const Eos<double>& eos,
                     const std::array<double, Dim>& lo,
                     const std::array<double, Dim>& hi) {
  double floor = std::numeric_limits<double>::infinity();
  if constexpr (Dim == 1) {
    for (int i = 0; i <= resolution; ++i) {
      Vec<double, 1> x;
      x[0] = lo[0] + (hi[0] - lo[0]) * i / resolution;
      floor = std::min(floor, specific_entropy<double, 1>(ic(x), eos));
    }
  } else {
    for (int j = 0; j <= resolution; ++j) {
      for (int i = 0; i <= resolution; ++i) {
        Vec<double, 2> x;
        x[0] = lo[0] + (hi[0] - lo[0]) * i / resolution;
        x[1] = lo[1] + (hi[1] - lo[1]) * j / resolution;
        floor = std::min(floor, specific_entropy<double, 2>(ic(x), eos));
      }
    }
  }
  return floor;
}

struct Norms {
  double l1 = 0.0;
  double l2 = 0.0;
};

/// Discrete L1/L2 norms of the rest-mass density error against an exact
/// solution, via per-cell Gauss quadrature with `points` nodes per axis and
/// pointwise recovery of the numerical density.
template <int Dim>
Norms density_error_norms(
    const DgSolution<Dim>& sol,
    const std::function<Primitive<double, Dim>(const Vec<double, Dim>&,
                                               double)>& exact,
    const Eos<double>& eos, int points) {
  const QuadRule rule = gauss_legendre(points);
  Norms norms;
  double volume = 1.0;
  for (int a = 0; a < Dim; ++a) volume *= sol.mesh.dx(a);

  const auto accumulate = [&](int c, const Eigen::VectorXd& phi,
                              const Vec<double, Dim>& ref, double weight) {
    const Cons<double, Dim> u = sol.value(c, phi);
    const double rho = cons_to_prim<double, Dim>(u, eos).rho;
    const double err =
        std::abs(rho - exact(cell_position<Dim>(sol.mesh, c, ref), sol.time).rho);
    norms.l1 += weight * volume * err;
    norms.l2 += weight * volume * err * err;
  };

  if constexpr (Dim == 1) {
    const Eigen::MatrixXd phi = basis_matrix_1d(sol.degree, rule.nodes);
    for (int c = 0; c < sol.mesh.num_cells(); ++c) {
      for (int q = 0; q < rule.size(); ++q) {
        Vec<double, 1> ref;
        ref[0] = rule.nodes[q];
        accumulate(c, phi.row(q), ref, 0.5 * rule.weights[q]);
      }
    }
  } else {
    const int nq = rule.size();
    Eigen::MatrixXd pts(nq * nq, 2);
    Eigen::VectorXd wts(nq * nq);
    for (int qy = 0; qy < nq; ++qy) {
      for (int qx = 0; qx < nq; ++qx) {
        pts(qy * nq + qx, 0) = rule.nodes[qx];
        pts(qy * nq + qx, 1) = rule.nodes[qy];
        wts[qy * nq + qx] = 0.25 * rule.weights[qx] * rule.weights[qy];
      }
    }
    const Eigen::MatrixXd phi = basis_matrix_2d(sol.degree, pts);
    for (int c = 0; c < sol.mesh.num_cells(); ++c) {
      for (int q = 0; q < pts.rows(); ++q) {
        Vec<double, 2> ref;
        ref[0] = pts(q, 0);
        ref[1] = pts(q, 1);
        accumulate(c, phi.row(q), ref, wts[q]);
      }
    }
  }
  norms.l2 = std::sqrt(norms.l2);
  return norms;
}

}  // namespace rhd

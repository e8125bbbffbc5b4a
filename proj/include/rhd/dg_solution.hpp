#pragma once

#include <Eigen/Dense>
#include <functional>

#include "rhd/basis.hpp"
#include "rhd/mesh.hpp"
#include "rhd/quadrature.hpp"
#include "rhd/state.hpp"

namespace rhd {

/// Piecewise-polynomial solution in a modal Legendre basis, orthonormal with
/// respect to the normalised cell measure so that coefficient 0 of each
/// component is the cell average.
///
/// Storage: one column per cell; within a column, the modes of each
/// component are contiguous (component-major), so a cell is a
/// (num_modes x NComp) column-major block.
template <int Dim>
struct DgSolution {
  static constexpr int NComp = Dim + 2;

  Mesh<Dim> mesh;
  int degree = 0;
  double time = 0.0;
  Eigen::MatrixXd coeffs;

  int num_modes() const {
    return Dim == 1 ? num_modes_1d(degree) : num_modes_2d(degree);
  }

  Eigen::Map<const Eigen::MatrixXd> cell(int c) const {
    return {coeffs.col(c).data(), num_modes(), NComp};
  }
  Eigen::Map<Eigen::MatrixXd> cell(int c) {
    return {coeffs.col(c).data(), num_modes(), NComp};
  }

  Cons<double, Dim> average(int c) const {
    return cell(c).row(0).transpose();
  }

  /// Point value from a precomputed basis row phi (num_modes entries).
  Cons<double, Dim> value(int c, const Eigen::VectorXd& phi) const {
    return cell(c).transpose() * phi;
  }
};

/// Basis row at a single reference point.
template <int Dim>
Eigen::VectorXd basis_row(int k, const Vec<double, Dim>& ref) {
  if constexpr (Dim == 1) {
    Eigen::VectorXd pt(1);
    pt[0] = ref[0];
    return basis_matrix_1d(k, pt).row(0);
  } else {
    Eigen::MatrixXd pt(1, 2);
    pt(0, 0) = ref[0];
    pt(0, 1) = ref[1];
    return basis_matrix_2d(k, pt).row(0);
  }
}

template <int Dim>
Cons<double, Dim> evaluate(const DgSolution<Dim>& sol, int c,
                           const Vec<double, Dim>& ref) {
  return sol.value(c, basis_row<Dim>(sol.degree, ref));
}

template <int Dim>
using InitialCondition =
    std::function<Primitive<double, Dim>(const Vec<double, Dim>&)>;

/// L2 projection of the conserved field of a pointwise-admissible primitive
/// initial condition, using (k + 2)-point Gauss quadrature per axis.
template <int Dim>
DgSolution<Dim> project_initial(const InitialCondition<Dim>& ic,
                                const Mesh<Dim>& mesh, int k,
                                const Eos<double>& eos) {
  mesh.validate();
  DgSolution<Dim> sol;
  sol.mesh = mesh;
  sol.degree = k;
  const int modes = sol.num_modes();
  sol.coeffs.setZero(modes * DgSolution<Dim>::NComp, mesh.num_cells());

  const QuadRule rule = gauss_legendre(k + 2);
  const int nq = rule.size();

  if constexpr (Dim == 1) {
    const Eigen::MatrixXd phi = basis_matrix_1d(k, rule.nodes);
    for (int c = 0; c < mesh.num_cells(); ++c) {
      auto block = sol.cell(c);
      for (int q = 0; q < nq; ++q) {
        Vec<double, 1> ref;
        ref[0] = rule.nodes[q];
        const auto u = prim_to_cons<double, 1>(
            ic(cell_position<1>(mesh, c, ref)), eos);
        const double w = 0.5 * rule.weights[q];
        block.noalias() += w * phi.row(q).transpose() * u.transpose();
      }
    }
  } else {
    Eigen::MatrixXd pts(nq * nq, 2);
    Eigen::VectorXd wts(nq * nq);
    for (int qy = 0; qy < nq; ++qy) {
      for (int qx = 0; qx < nq; ++qx) {
        pts(qy * nq + qx, 0) = rule.nodes[qx];
        pts(qy * nq + qx, 1) = rule.nodes[qy];
        wts[qy * nq + qx] = 0.25 * rule.weights[qx] * rule.weights[qy];
      }
    }
    const Eigen::MatrixXd phi = basis_matrix_2d(k, pts);
    for (int c = 0; c < mesh.num_cells(); ++c) {
      auto block = sol.cell(c);
      for (int q = 0; q < pts.rows(); ++q) {
        Vec<double, 2> ref;
        ref[0] = pts(q, 0);
        ref[1] = pts(q, 1);
        const auto u = prim_to_cons<double, 2>(
            ic(cell_position<2>(mesh, c, ref)), eos);
        block.noalias() += wts[q] * phi.row(q).transpose() * u.transpose();
      }
    }
  }
  return sol;
}

}  // namespace rhd

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "rhd/quadrature.hpp"

namespace rhd {

/// Modal Legendre basis, orthonormal on the reference cell with respect to
/// the normalised measure (so mode 0 is identically one and coefficient 0
/// is the cell average):  phi_n(xi) = sqrt(2 n + 1) P_n(xi).
inline double basis_value_1d(int n, double xi) {
  return std::sqrt(2.0 * n + 1.0) * legendre_with_derivative(n, xi).first;
}

inline double basis_derivative_1d(int n, double xi) {
  return std::sqrt(2.0 * n + 1.0) * legendre_with_derivative(n, xi).second;
}

inline int num_modes_1d(int k) { return k + 1; }

/// 2D modes are tensor products phi_a(xi) phi_b(eta) with total degree
/// a + b <= k, ordered by degree then by a.
inline std::vector<std::pair<int, int>> mode_pairs_2d(int k) {
  std::vector<std::pair<int, int>> pairs;
  for (int deg = 0; deg <= k; ++deg) {
    for (int a = deg; a >= 0; --a) {
      pairs.emplace_back(a, deg - a);
    }
  }
  return pairs;
}

inline int num_modes_2d(int k) { return (k + 1) * (k + 2) / 2; }

/// Rows: evaluation points, columns: modes.
inline Eigen::MatrixXd basis_matrix_1d(int k,
                                       const Eigen::VectorXd& points) {
  Eigen::MatrixXd phi(points.size(), num_modes_1d(k));
  for (int p = 0; p < points.size(); ++p) {
    for (int m = 0; m <= k; ++m) {
      phi(p, m) = basis_value_1d(m, points[p]);
    }
  }
  return phi;
}

inline Eigen::MatrixXd basis_derivative_matrix_1d(
    int k, const Eigen::VectorXd& points) {
  Eigen::MatrixXd dphi(points.size(), num_modes_1d(k));
  for (int p = 0; p < points.size(); ++p) {
    for (int m = 0; m <= k; ++m) {
      dphi(p, m) = basis_derivative_1d(m, points[p]);
    }
  }
  return dphi;
}

/// points: n x 2 matrix of (xi, eta) reference coordinates.
inline Eigen::MatrixXd basis_matrix_2d(int k, const Eigen::MatrixXd& points) {
  const auto pairs = mode_pairs_2d(k);
  Eigen::MatrixXd phi(points.rows(), static_cast<int>(pairs.size()));
  for (int p = 0; p < points.rows(); ++p) {
    for (std::size_t m = 0; m < pairs.size(); ++m) {
      phi(p, static_cast<int>(m)) =
          basis_value_1d(pairs[m].first, points(p, 0)) *
          basis_value_1d(pairs[m].second, points(p, 1));
    }
  }
  return phi;
}

/// Derivative with respect to the reference coordinate along `axis`.
inline Eigen::MatrixXd basis_derivative_matrix_2d(
    int k, const Eigen::MatrixXd& points, int axis) {
  const auto pairs = mode_pairs_2d(k);
  Eigen::MatrixXd dphi(points.rows(), static_cast<int>(pairs.size()));
  for (int p = 0; p < points.rows(); ++p) {
    for (std::size_t m = 0; m < pairs.size(); ++m) {
      const auto [a, b] = pairs[m];
      dphi(p, static_cast<int>(m)) =
          axis == 0 ? basis_derivative_1d(a, points(p, 0)) *
                          basis_value_1d(b, points(p, 1))
                    : basis_value_1d(a, points(p, 0)) *
                          basis_derivative_1d(b, points(p, 1));
    }
  }
  return dphi;
}

}  // namespace rhd

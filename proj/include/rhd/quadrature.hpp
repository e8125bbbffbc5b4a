#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "rhd/errors.hpp"

namespace rhd {

/// Legendre polynomial P_n and its derivative at x in [-1, 1], by the
/// three-term recurrence.
inline std::pair<double, double> legendre_with_derivative(int n, double x) {
  if (n == 0) return {1.0, 0.0};
  double pm1 = 1.0, p = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2 * k - 1) * x * p - (k - 1) * pm1) / k;
    pm1 = p;
    p = pk;
  }
  const double denom = 1.0 - x * x;
  double dp;
  if (denom > 1e-14) {
    // (1 - x^2) P_n' = n (P_{n-1} - x P_n)
    dp = n * (pm1 - x * p) / denom;
  } else {
    // Endpoint values P_n'(+-1) = (+-1)^(n-1) n (n+1) / 2.
    const double sign = (x > 0 || n % 2 == 1) ? 1.0 : -1.0;
    dp = sign * 0.5 * n * (n + 1);
  }
  return {p, dp};
}

/// Quadrature rule on the reference interval [-1, 1]; weights sum to 2.
struct QuadRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule, exact for polynomials of degree 2n - 1.
inline QuadRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need n >= 1");
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_with_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// n-point Gauss-Lobatto rule (endpoints included), exact for degree 2n - 3.
inline QuadRule gauss_lobatto(int n) {
  if (n < 2) throw DomainError("gauss_lobatto: need n >= 2");
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.nodes[0] = -1.0;
  rule.nodes[n - 1] = 1.0;
  // Interior nodes are the roots of P'_{n-1}.
  for (int i = 1; i < n - 1; ++i) {
    double x = std::cos(std::numbers::pi * i / (n - 1));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_with_derivative(n - 1, x);
      // (1 - x^2) P'' = 2 x P' - (n-1) n P gives the Newton slope for P'.
      const double pdd = (2.0 * x * dp - double(n - 1) * n * p) /
                         (1.0 - x * x);
      const double dx = dp / pdd;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[n - 1 - i] = x;
  }
  std::sort(rule.nodes.data(), rule.nodes.data() + n);
  for (int i = 0; i < n; ++i) {
    const double p = legendre_with_derivative(n - 1, rule.nodes[i]).first;
    rule.weights[i] = 2.0 / (n * (n - 1) * p * p);
  }
  return rule;
}

/// Number of Gauss-Lobatto points the limiting theory requires for
/// polynomial degree k: L = ceil((k + 3) / 2), so the rule has algebraic
/// precision at least k.
inline int lobatto_points_for_degree(int k) { return (k + 4) / 2; }

/// First normalised Gauss-Lobatto weight 1 / (L (L - 1)): the CFL fraction
/// of the high-order schemes.
inline double lobatto_first_weight(int k) {
  const int l = lobatto_points_for_degree(k);
  return 1.0 / (l * (l - 1));
}

/// One point of the 2D cell-average decomposition: reference coordinates in
/// [-1,1]^2 and a positive weight; the weights sum to one over the set.
struct DecompPoint2D {
  double xi;
  double eta;
  double weight;
};

/// Decomposition point set for a rectangular cell: the union of
/// (Gauss in x) x (Lobatto in y) and (Lobatto in x) x (Gauss in y), with
/// weights proportional to dx resp. dy, so the weighted sum reproduces the
/// cell average exactly for polynomials of total degree <= k.
inline std::vector<DecompPoint2D> decomposition_points_2d(int k, double dx,
                                                          double dy) {
  const int q = k + 1;
  const int l = lobatto_points_for_degree(k);
  const QuadRule gauss = gauss_legendre(q);
  const QuadRule lob = gauss_lobatto(l);
  const double denom = dx + dy;
  std::vector<DecompPoint2D> pts;
  pts.reserve(2 * q * l);
  for (int nu = 0; nu < l; ++nu) {
    for (int mu = 0; mu < q; ++mu) {
      const double wprod = (lob.weights[nu] / 2.0) * (gauss.weights[mu] / 2.0);
      pts.push_back({gauss.nodes[mu], lob.nodes[nu], dx * wprod / denom});
      pts.push_back({lob.nodes[nu], gauss.nodes[mu], dy * wprod / denom});
    }
  }
  return pts;
}

}  // namespace rhd

#pragma once

#include <cmath>
#include <random>

#include "rhd/state.hpp"

namespace rhd {

/// Random admissible states are drawn in primitive variables (log-uniform
/// density and pressure, uniform direction, uniform speed) and pushed
/// forward, which guarantees admissibility by construction.
struct SampleRanges {
  double rho_min = 1e-8;
  double rho_max = 1e3;
  double p_min = 1e-10;
  double p_max = 1e4;
  double v_max = 0.999;
};

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

template <int Dim>
Vec<double, Dim> random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec<double, Dim> dir;
  do {
    for (int i = 0; i < Dim; ++i) dir[i] = n(rng);
  } while (dir.norm() < 1e-12);
  return dir.normalized();
}

template <int Dim>
Primitive<double, Dim> random_primitive(std::mt19937_64& rng,
                                        const SampleRanges& r = {}) {
  Primitive<double, Dim> v;
  v.rho = log_uniform(rng, r.rho_min, r.rho_max);
  v.p = log_uniform(rng, r.p_min, r.p_max);
  v.v = uniform(rng, 0.0, r.v_max) * random_direction<Dim>(rng);
  return v;
}

template <int Dim>
Cons<double, Dim> random_admissible(std::mt19937_64& rng,
                                    const Eos<double>& eos,
                                    const SampleRanges& r = {}) {
  return prim_to_cons<double, Dim>(random_primitive<Dim>(rng, r), eos);
}

}  // namespace rhd

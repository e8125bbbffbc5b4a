#pragma once

#include <string>

#include "rhd/errors.hpp"

namespace rhd {

/// Ideal-gas equation of state p = (gamma - 1) rho e in geometrized units.
/// The adiabatic index is restricted to (1, 2]; the upper bound is required
/// by compressibility and relativistic causality.
template <typename Scalar = double>
class Eos {
 public:
  explicit Eos(Scalar gamma) : gamma_(gamma) {
    if (!(gamma > Scalar(1)) || !(gamma <= Scalar(2))) {
      throw DomainError("Eos: adiabatic index must lie in (1, 2], got " +
                        std::to_string(static_cast<double>(gamma)));
    }
  }

  Scalar gamma() const { return gamma_; }
  Scalar gamma_m1() const { return gamma_ - Scalar(1); }

  friend bool operator==(const Eos& a, const Eos& b) {
    return a.gamma_ == b.gamma_;
  }

 private:
  Scalar gamma_;
};

}  // namespace rhd

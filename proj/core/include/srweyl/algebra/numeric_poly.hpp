#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "srweyl/algebra/poly.hpp"

namespace srweyl::algebra {

/// Floating-point snapshot of a Poly for fast repeated evaluation.
class NumericPoly {
 public:
  NumericPoly() = default;
  explicit NumericPoly(const Poly& p);

  bool is_zero() const { return terms_.empty(); }
  double operator()(std::span<const double> point) const;

 private:
  struct Term {
    double coefficient;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;  // (variable, exponent)
  };
  std::vector<Term> terms_;
};

}  // namespace srweyl::algebra

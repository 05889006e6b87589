#pragma once

#include <span>
#include <string>

#include "srweyl/algebra/poly.hpp"

namespace srweyl::algebra {

/// Quotient num/den of polynomials, always stored in lowest terms with a
/// monic denominator, so equal functions have equal representations.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(Poly numerator);
  /// Throws DivisionByZeroPoly when den is zero.
  RationalFunction(Poly numerator, Poly denominator);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  std::size_t nvars() const { return num_.nvars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// The polynomial value; requires is_polynomial().
  Poly as_poly() const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction derivative(std::size_t var) const;
  RationalFunction substitute(std::span<const std::pair<std::size_t, Poly>> replacements) const;

  std::string to_string(std::span<const std::string> names) const;

 private:
  Poly num_;
  Poly den_;
};

}  // namespace srweyl::algebra

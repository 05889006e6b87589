#include "srweyl/algebra/rational_function.hpp"

#include "srweyl/error.hpp"

namespace srweyl::algebra {

RationalFunction::RationalFunction(Poly numerator)
    : num_(std::move(numerator)), den_(Poly::constant(num_.nvars(), 1)) {}

RationalFunction::RationalFunction(Poly numerator, Poly denominator) {
  if (denominator.is_zero()) throw DivisionByZeroPoly("rational function with zero denominator");
  const std::size_t nvars = std::max(numerator.nvars(), denominator.nvars());
  if (numerator.is_zero()) {
    num_ = Poly(nvars);
    den_ = Poly::constant(nvars, 1);
    return;
  }
  Poly g = gcd_poly(numerator, denominator);
  if (!g.is_constant()) {
    numerator = *divide_exact(numerator, g);
    denominator = *divide_exact(denominator, g);
  }
  Rational lc = denominator.leading_coefficient();
  num_ = numerator * (1 / lc);
  den_ = denominator * (1 / lc);
}

Poly RationalFunction::as_poly() const {
  if (!is_polynomial()) throw DivisionByZeroPoly("rational function is not a polynomial");
  return num_ * (1 / den_.leading_coefficient());
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r(*this);
  r.num_ = -r.num_;
  return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw DivisionByZeroPoly("division by the zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::derivative(std::size_t var) const {
  return RationalFunction(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RationalFunction RationalFunction::substitute(std::span<const std::pair<std::size_t, Poly>> replacements) const {
  return RationalFunction(num_.substitute(replacements), den_.substitute(replacements));
}

std::string RationalFunction::to_string(std::span<const std::string> names) const {
  if (is_polynomial()) return as_poly().to_string(names);
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

}  // namespace srweyl::algebra

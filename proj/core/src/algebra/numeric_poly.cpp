#include "srweyl/algebra/numeric_poly.hpp"

namespace srweyl::algebra {

NumericPoly::NumericPoly(const Poly& p) {
  terms_.reserve(p.size());
  for (const auto& [mono, c] : p.terms()) {
    Term t{c.get_d(), {}};
    const auto exps = mono.exponents();
    for (std::size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] != 0) t.factors.emplace_back(static_cast<std::uint32_t>(v), exps[v]);
    }
    terms_.push_back(std::move(t));
  }
}

double NumericPoly::operator()(std::span<const double> point) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    double value = t.coefficient;
    for (const auto& [v, e] : t.factors) {
      double base = point[v];
      for (std::uint32_t k = 0; k < e; ++k) value *= base;
    }
    total += value;
  }
  return total;
}

}  // namespace srweyl::algebra

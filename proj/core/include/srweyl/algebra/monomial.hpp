#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace srweyl::algebra {

/// Exponent vector of fixed length (the number of ring variables).
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps);

  static Monomial variable(std::size_t nvars, std::size_t index, Exponent power = 1);

  std::size_t nvars() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  std::span<const Exponent> exponents() const { return exps_; }

  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  /// Sum of exponent * weight over all variables.
  long weighted_degree(std::span<const int> weights) const;

  bool divides(const Monomial& other) const;
  /// this / other; requires other.divides(*this).
  Monomial quotient(const Monomial& divisor) const;
  Monomial with_exponent(std::size_t i, Exponent e) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

 private:
  std::vector<Exponent> exps_;
  unsigned degree_ = 0;
};

/// Graded lexicographic order, variable 0 most significant. Used descending so
/// the leading term comes first when iterating a polynomial.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    const auto ea = a.exponents();
    const auto eb = b.exponents();
    for (std::size_t i = 0; i < ea.size(); ++i) {
      if (ea[i] != eb[i]) return ea[i] > eb[i];
    }
    return false;
  }
};

}  // namespace srweyl::algebra

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srweyl/algebra/monomial.hpp"
#include "srweyl/algebra/rational.hpp"

namespace srweyl::algebra {

/// Multivariate polynomial with exact rational coefficients over a fixed
/// number of variables. Terms are kept in descending graded-lex order and zero
/// coefficients are never stored.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& value);
  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly term(const Monomial& monomial, const Rational& coefficient);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero when absent).
  Rational constant_term() const;

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;
  bool uses_variable(std::size_t var) const;
  /// Maximum weighted degree over terms; nullopt for zero.
  std::optional<long> weighted_degree(std::span<const int> weights) const;
  /// Minimum weighted degree over terms; nullopt for zero.
  std::optional<long> weighted_order(std::span<const int> weights) const;
  bool is_weighted_homogeneous(std::span<const int> weights) const;
  /// Terms whose weighted degree equals `degree`.
  Poly weighted_part(std::span<const int> weights, long degree) const;

  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;
  Rational coefficient(const Monomial& monomial) const;

  /// Scaled so the leading coefficient is 1 (zero stays zero).
  Poly monic() const;

  Poly derivative(std::size_t var) const;
  /// Simultaneous substitution of polynomials for variables.
  Poly substitute(std::span<const std::pair<std::size_t, Poly>> replacements) const;
  Poly substitute(std::size_t var, const Poly& value) const;
  /// Fix some variables to rational values.
  Poly specialize(std::span<const std::pair<std::size_t, Rational>> values) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Coefficients with respect to `var`: power -> coefficient (free of var).
  std::map<unsigned, Poly> coefficients_in(std::size_t var) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& scalar);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly pow(unsigned exponent) const;

  /// Adds coefficient * monomial in place.
  void add_term(const Monomial& monomial, const Rational& coefficient);

  /// Canonical text form, highest term first. `names` must have nvars entries.
  std::string to_string(std::span<const std::string> names) const;

 private:
  void check_compatible(const Poly& other) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Default variable names v1..vN for diagnostics.
std::vector<std::string> default_names(std::size_t nvars);

/// Prints with default names; meant for diagnostics and test output.
std::ostream& operator<<(std::ostream& out, const Poly& p);

// --- exact division and gcd -------------------------------------------------

/// Quotient r with p = q * r, or nullopt when q does not divide p.
/// Throws DivisionByZeroPoly when q is zero.
std::optional<Poly> divide_exact(const Poly& p, const Poly& q);

/// Remainder of p on division by the single polynomial q in graded-lex order.
/// No term of the result is divisible by the leading monomial of q, which
/// makes it unique and linear in p.
Poly remainder(const Poly& p, const Poly& q);

/// Monic greatest common divisor; gcd(0, 0) = 0.
Poly gcd_poly(const Poly& p, const Poly& q);

/// Gcd of a collection (monic; zero when all entries are zero).
Poly gcd_all(std::span<const Poly> polys);

}  // namespace srweyl::algebra

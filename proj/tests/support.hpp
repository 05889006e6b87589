#pragma once

#include <random>
#include <string>
#include <vector>

#include "srweyl/algebra/parse.hpp"
#include "srweyl/algebra/poly.hpp"

namespace srweyl::test {

using algebra::Poly;
using algebra::Rational;

inline std::vector<std::string> names_xu(std::size_t n, std::size_t m = 0) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) names.push_back("u" + std::to_string(i));
  for (std::size_t i = 1; i <= m; ++i) names.push_back("a" + std::to_string(i));
  return names;
}

inline Poly poly(const std::string& text, const std::vector<std::string>& names) {
  return algebra::parse_poly(text, names);
}

/// Random sparse polynomial with small rational coefficients in the first
/// `active` ring variables (all of them by default).
inline Poly random_poly(std::mt19937_64& rng, std::size_t nvars, int max_degree, int max_terms,
                        std::size_t active = 0) {
  if (active == 0) active = nvars;
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<std::size_t> var(0, active - 1);
  std::uniform_int_distribution<int> deg(0, max_degree);
  Poly p(nvars);
  const int count = nterms(rng);
  for (int t = 0; t < count; ++t) {
    std::vector<algebra::Monomial::Exponent> e(nvars, 0);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    Rational c(coeff(rng), 1 + static_cast<int>(rng() % 3));
    c.canonicalize();
    p.add_term(algebra::Monomial(e), c);
  }
  return p;
}

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace srweyl::test

#include "srweyl/algebra/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "srweyl/error.hpp"

namespace srweyl::algebra {

// --- Rational helpers ---------------------------------------------------------

std::string to_string(const Rational& value) { return value.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto valid_integer = [](std::string_view t) {
    if (t.empty()) return false;
    std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (start == t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(start), t.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  if (slash == std::string::npos) {
    if (!valid_integer(s)) throw ParseError("malformed rational '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    return Rational(Integer(s));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("malformed rational '" + s + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational r(Integer(num), d);
  r.canonicalize();
  return r;
}

// --- Monomial -----------------------------------------------------------------

Monomial::Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {
  for (auto e : exps_) degree_ += e;
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, Exponent power) {
  Monomial m(nvars);
  m.exps_.at(index) = power;
  m.degree_ = power;
  return m;
}

long Monomial::weighted_degree(std::span<const int> weights) const {
  long total = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) total += static_cast<long>(exps_[i]) * weights[i];
  return total;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial q(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] = static_cast<Exponent>(exps_[i] - divisor.exps_[i]);
  q.degree_ = degree_ - divisor.degree_;
  return q;
}

Monomial Monomial::with_exponent(std::size_t i, Exponent e) const {
  Monomial m(*this);
  m.degree_ = m.degree_ - m.exps_[i] + e;
  m.exps_[i] = e;
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m(a);
  for (std::size_t i = 0; i < m.exps_.size(); ++i) m.exps_[i] = static_cast<Monomial::Exponent>(m.exps_[i] + b.exps_[i]);
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

// --- Poly -----------------------------------------------------------------------

Poly Poly::constant(std::size_t nvars, const Rational& value) {
  Poly p(nvars);
  if (!algebra::is_zero(value)) p.terms_.emplace(Monomial(nvars), value);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  Poly p(nvars);
  p.terms_.emplace(Monomial::variable(nvars, index), Rational(1));
  return p;
}

Poly Poly::term(const Monomial& monomial, const Rational& coefficient) {
  Poly p(monomial.nvars());
  if (!algebra::is_zero(coefficient)) p.terms_.emplace(monomial, coefficient);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const {
  if (terms_.empty()) return 0;
  auto it = terms_.rbegin();  // lowest term
  return it->first.is_one() ? it->second : Rational(0);
}

int Poly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree());
}

int Poly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
  return d;
}

bool Poly::uses_variable(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [var](const auto& t) { return t.first[var] > 0; });
}

std::optional<long> Poly::weighted_degree(std::span<const int> weights) const {
  std::optional<long> best;
  for (const auto& [m, c] : terms_) {
    long w = m.weighted_degree(weights);
    if (!best || w > *best) best = w;
  }
  return best;
}

std::optional<long> Poly::weighted_order(std::span<const int> weights) const {
  std::optional<long> best;
  for (const auto& [m, c] : terms_) {
    long w = m.weighted_degree(weights);
    if (!best || w < *best) best = w;
  }
  return best;
}

bool Poly::is_weighted_homogeneous(std::span<const int> weights) const {
  return weighted_degree(weights) == weighted_order(weights);
}

Poly Poly::weighted_part(std::span<const int> weights, long degree) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.weighted_degree(weights) == degree) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

const Monomial& Poly::leading_monomial() const {
  if (terms_.empty()) throw DivisionByZeroPoly("leading monomial of the zero polynomial");
  return terms_.begin()->first;
}

const Rational& Poly::leading_coefficient() const {
  if (terms_.empty()) throw DivisionByZeroPoly("leading coefficient of the zero polynomial");
  return terms_.begin()->second;
}

Rational Poly::coefficient(const Monomial& monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? Rational(0) : it->second;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  Rational inv = 1 / leading_coefficient();
  return *this * inv;
}

Poly Poly::derivative(std::size_t var) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    out.add_term(m.with_exponent(var, static_cast<Monomial::Exponent>(m[var] - 1)), c * m[var]);
  }
  return out;
}

Poly Poly::substitute(std::span<const std::pair<std::size_t, Poly>> replacements) const {
  for (const auto& [var, value] : replacements) check_compatible(value);
  // Cache powers of each replacement.
  std::vector<std::vector<Poly>> powers(replacements.size());
  auto power_of = [&](std::size_t r, unsigned e) -> const Poly& {
    auto& cache = powers[r];
    if (cache.empty()) cache.push_back(Poly::constant(nvars_, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * replacements[r].second);
    return cache[e];
  };
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    for (const auto& [var, value] : replacements) rest = rest.with_exponent(var, 0);
    Poly product = Poly::term(rest, c);
    for (std::size_t r = 0; r < replacements.size(); ++r) {
      unsigned e = m[replacements[r].first];
      if (e > 0) product *= power_of(r, e);
    }
    out += product;
  }
  return out;
}

Poly Poly::substitute(std::size_t var, const Poly& value) const {
  std::pair<std::size_t, Poly> rep{var, value};
  return substitute(std::span<const std::pair<std::size_t, Poly>>(&rep, 1));
}

Poly Poly::specialize(std::span<const std::pair<std::size_t, Rational>> values) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    Rational coeff = c;
    for (const auto& [var, value] : values) {
      unsigned e = m[var];
      if (e == 0) continue;
      Rational pw = 1;
      for (unsigned k = 0; k < e; ++k) pw *= value;
      coeff *= pw;
      rest = rest.with_exponent(var, 0);
    }
    out.add_term(rest, coeff);
  }
  return out;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw VariableMismatch("evaluation point has wrong length");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (unsigned k = 0; k < m[i]; ++k) t *= point[i];
    }
    total += t;
  }
  return total;
}

double Poly::evaluate(std::span<const double> point) const {
  if (point.size() != nvars_) throw VariableMismatch("evaluation point has wrong length");
  double total = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m[i] != 0) t *= std::pow(point[i], static_cast<int>(m[i]));
    }
    total += t;
  }
  return total;
}

std::map<unsigned, Poly> Poly::coefficients_in(std::size_t var) const {
  std::map<unsigned, Poly> out;
  for (const auto& [m, c] : terms_) {
    auto [it, inserted] = out.try_emplace(m[var], Poly(nvars_));
    it->second.add_term(m.with_exponent(var, 0), c);
  }
  return out;
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

void Poly::add_term(const Monomial& monomial, const Rational& coefficient) {
  if (algebra::is_zero(coefficient)) return;
  auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (algebra::is_zero(it->second)) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  check_compatible(other);
  if (nvars_ == 0) nvars_ = other.nvars_;
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_compatible(other);
  if (nvars_ == 0) nvars_ = other.nvars_;
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  Poly out(std::max(a.nvars_, b.nvars_));
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly& Poly::operator*=(const Rational& scalar) {
  if (algebra::is_zero(scalar)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first) || ia->second != ib->second) return false;
  }
  return true;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result = Poly::constant(nvars_, 1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

void Poly::check_compatible(const Poly& other) const {
  // A default-constructed zero polynomial (nvars 0) is compatible with anything.
  if (nvars_ != other.nvars_ && nvars_ != 0 && other.nvars_ != 0) {
    throw VariableMismatch("polynomials over different variable lists");
  }
}

std::string Poly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (m.is_one() || mag != 1) {
      out << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) out << '*';
      out << names[i];
      if (m[i] > 1) out << '^' << m[i];
      wrote = true;
    }
  }
  return out.str();
}

std::vector<std::string> default_names(std::size_t nvars) {
  std::vector<std::string> names;
  names.reserve(nvars);
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("v" + std::to_string(i + 1));
  return names;
}

std::ostream& operator<<(std::ostream& out, const Poly& p) {
  return out << p.to_string(default_names(p.nvars()));
}

// --- division -------------------------------------------------------------------

std::optional<Poly> divide_exact(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw DivisionByZeroPoly("exact division by the zero polynomial");
  Poly quotient(std::max(p.nvars(), q.nvars()));
  if (p.is_zero()) return quotient;
  if (q.is_constant()) return p * (1 / q.leading_coefficient());
  const Monomial& lm_q = q.leading_monomial();
  const Rational& lc_q = q.leading_coefficient();
  Poly rest = p;
  while (!rest.is_zero()) {
    const Monomial& lm_r = rest.leading_monomial();
    if (lm_r.degree() < lm_q.degree() || !lm_q.divides(lm_r)) return std::nullopt;
    Poly t = Poly::term(lm_r.quotient(lm_q), rest.leading_coefficient() / lc_q);
    quotient += t;
    rest -= t * q;
  }
  return quotient;
}

Poly remainder(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw DivisionByZeroPoly("remainder modulo the zero polynomial");
  Poly rem(std::max(p.nvars(), q.nvars()));
  if (q.is_constant()) return rem;
  const Monomial& lm_q = q.leading_monomial();
  const Rational& lc_q = q.leading_coefficient();
  Poly rest = p;
  while (!rest.is_zero()) {
    const Monomial lm_r = rest.leading_monomial();
    const Rational lc_r = rest.leading_coefficient();
    if (lm_q.divides(lm_r)) {
      rest -= Poly::term(lm_r.quotient(lm_q), lc_r / lc_q) * q;
    } else {
      rem.add_term(lm_r, lc_r);
      rest.add_term(lm_r, -lc_r);
    }
  }
  return rem;
}

// --- gcd --------------------------------------------------------------------------
//
// Recursive primitive-PRS: view both inputs as univariate in their first shared
// variable with coefficients in the remaining variables.

namespace {

std::optional<std::size_t> first_variable(const Poly& p, const Poly& q) {
  std::size_t nvars = std::max(p.nvars(), q.nvars());
  for (std::size_t v = 0; v < nvars; ++v) {
    if (p.uses_variable(v) || q.uses_variable(v)) return v;
  }
  return std::nullopt;
}

Poly content_in(const Poly& p, std::size_t var) {
  auto coeffs = p.coefficients_in(var);
  Poly g(p.nvars());
  // Start from the smallest coefficient; gcd collapses quickly.
  std::vector<const Poly*> order;
  for (const auto& [e, c] : coeffs) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const Poly* a, const Poly* b) { return a->size() < b->size(); });
  for (const Poly* c : order) {
    g = gcd_poly(g, *c);
    if (g.is_constant()) return Poly::constant(p.nvars(), 1);
  }
  return g;
}

/// p scaled to integer coefficients with no common integer factor.
Poly integer_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [mono, coeff] : p.terms()) {
    num_gcd = gcd(num_gcd, Integer(coeff.get_num()));
    den_lcm = lcm(den_lcm, Integer(coeff.get_den()));
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  return p * scale;
}

Poly primitive_part(const Poly& p, std::size_t var) {
  if (p.is_zero()) return p;
  Poly c = content_in(p, var);
  return integer_primitive(c.is_constant() ? p : *divide_exact(p, c));
}

Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t var) {
  const int db = b.degree_in(var);
  auto b_coeffs = b.coefficients_in(var);
  const Poly& lb = b_coeffs.rbegin()->second;
  Poly r = a;
  while (!r.is_zero()) {
    int dr = r.degree_in(var);
    if (dr < db) break;
    Poly lr = r.coefficients_in(var).rbegin()->second;
    Poly shift = Poly::term(Monomial::variable(r.nvars(), var, static_cast<Monomial::Exponent>(dr - db)), 1);
    r = integer_primitive(lb * r - lr * shift * b);
  }
  return r;
}

using UniPoly = std::vector<Rational>;  // coefficients, lowest degree first

void trim(UniPoly& a) {
  while (!a.empty() && is_zero(a.back())) a.pop_back();
}

/// Degree of the univariate gcd over the rationals.
std::size_t univariate_gcd_degree(UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    while (a.size() >= b.size() && !a.empty()) {
      const Rational factor = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
      trim(a);
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

/// Coefficients of p in `var` evaluated at `point`; nullopt when the leading one vanishes.
std::optional<UniPoly> specialize_to(const Poly& p, std::size_t var, std::span<const Rational> point) {
  const auto coeffs = p.coefficients_in(var);
  UniPoly out(coeffs.rbegin()->first + 1, Rational(0));
  for (const auto& [e, c] : coeffs) out[e] = c.evaluate(point);
  if (is_zero(out.back())) return std::nullopt;
  return out;
}

/// True when p and q provably share no factor involving `var`: a specialization
/// of the other variables that keeps both leading coefficients nonzero and
/// leaves coprime univariate images bounds the degree of the gcd in `var` by zero.
bool coprime_in(const Poly& p, const Poly& q, std::size_t var) {
  const std::size_t nvars = p.nvars();
  std::vector<Rational> point(nvars);
  for (int attempt = 0; attempt < 4; ++attempt) {
    for (std::size_t v = 0; v < nvars; ++v) point[v] = Rational(static_cast<long>((v * 7 + 3) * (attempt + 2) % 29) + 2);
    const auto sp = specialize_to(p, var, point);
    const auto sq = specialize_to(q, var, point);
    if (!sp || !sq) continue;
    return univariate_gcd_degree(*sp, *sq) == 0;
  }
  return false;
}

/// Largest monomial dividing every term of p.
Monomial monomial_content(const Poly& p) {
  std::vector<Monomial::Exponent> low(p.nvars(), std::numeric_limits<Monomial::Exponent>::max());
  for (const auto& [mono, coeff] : p.terms()) {
    for (std::size_t v = 0; v < low.size(); ++v) low[v] = std::min(low[v], mono[v]);
  }
  return Monomial(std::move(low));
}

Integer max_norm(const Poly& p) {
  Integer out = 0;
  for (const auto& [mono, coeff] : p.terms()) {
    const Integer a = abs(Integer(coeff.get_num()));
    if (a > out) out = a;
  }
  return out;
}

Integer integer_content(const Poly& p) {
  Integer g = 0;
  for (const auto& [mono, coeff] : p.terms()) g = gcd(g, Integer(coeff.get_num()));
  return g;
}

/// Heuristic gcd of integer polynomials by evaluation at a large integer and
/// xi-adic reconstruction. Every candidate is verified by exact division, so a
/// returned value is the gcd; nullopt means the heuristic gave up.
std::optional<Poly> heuristic_gcd(const Poly& a, const Poly& b) {
  const std::size_t nvars = a.nvars();
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  std::optional<std::size_t> var;
  for (std::size_t v = nvars; v-- > 0;) {
    if (a.uses_variable(v) || b.uses_variable(v)) {
      var = v;
      break;
    }
  }
  const Integer ca = integer_content(a), cb = integer_content(b);
  const Integer c = gcd(ca, cb);
  if (!var) return Poly::constant(nvars, Rational(c));
  const Poly pa = a * Rational(1, ca);
  const Poly pb = b * Rational(1, cb);

  Integer xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
  const int degree = std::max(pa.degree_in(*var), pb.degree_in(*var));
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * static_cast<std::size_t>(degree + 1) > 40000) return std::nullopt;
    const std::pair<std::size_t, Rational> at{*var, Rational(xi)};
    const auto gamma = heuristic_gcd(pa.specialize(std::span(&at, 1)), pb.specialize(std::span(&at, 1)));
    if (gamma) {
      Poly rest = *gamma;
      Poly candidate(nvars);
      for (Monomial::Exponent power = 0; !rest.is_zero(); ++power) {
        Poly digit(nvars);
        for (const auto& [mono, coeff] : rest.terms()) {
          Integer r = Integer(coeff.get_num()) % xi;
          if (r < 0) r += xi;
          if (2 * r > xi) r -= xi;
          if (r != 0) digit.add_term(mono, Rational(r));
        }
        candidate += digit * Poly::term(Monomial::variable(nvars, *var, power), 1);
        rest = (rest - digit) * Rational(1, xi);
      }
      if (!candidate.is_zero()) {
        candidate = candidate * Rational(1, integer_content(candidate));
        if (candidate.leading_coefficient() < 0) candidate = -candidate;
        if (divide_exact(pa, candidate) && divide_exact(pb, candidate)) return candidate * Rational(c);
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

Poly gcd_primitive(const Poly& p, const Poly& q);

}  // namespace

Poly gcd_poly(const Poly& p, const Poly& q) {
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  std::size_t nvars = std::max(p.nvars(), q.nvars());
  if (p.is_constant() || q.is_constant()) return Poly::constant(nvars, 1);

  // Quick exits for divisibility.
  if (p.size() <= q.size()) {
    if (divide_exact(q, p)) return p.monic();
  } else if (divide_exact(p, q)) {
    return q.monic();
  }

  // Split off the common monomial factor; the rest has no monomial content.
  const Monomial mp = monomial_content(p);
  const Monomial mq = monomial_content(q);
  std::vector<Monomial::Exponent> common(nvars);
  for (std::size_t v = 0; v < nvars; ++v) common[v] = std::min(mp[v], mq[v]);
  const Poly factor = Poly::term(Monomial(std::move(common)), 1);
  const Poly pr = mp.is_one() ? p : *divide_exact(p, Poly::term(mp, 1));
  const Poly qr = mq.is_one() ? q : *divide_exact(q, Poly::term(mq, 1));
  return (factor * gcd_primitive(pr, qr)).monic();
}

namespace {

Poly gcd_primitive(const Poly& p, const Poly& q) {
  const std::size_t nvars = std::max(p.nvars(), q.nvars());
  if (p.is_constant() || q.is_constant()) return Poly::constant(nvars, 1);
  bool coprime = true;
  for (std::size_t v = 0; v < nvars && coprime; ++v) {
    if (p.uses_variable(v) && q.uses_variable(v)) coprime = coprime_in(p, q, v);
  }
  if (coprime) return Poly::constant(nvars, 1);
  if (auto g = heuristic_gcd(integer_primitive(p), integer_primitive(q))) return g->monic();

  auto var_opt = first_variable(p, q);
  std::size_t var = *var_opt;
  if (!p.uses_variable(var)) return gcd_poly(p, content_in(q, var));
  if (!q.uses_variable(var)) return gcd_poly(content_in(p, var), q);

  Poly cp = content_in(p, var);
  Poly cq = content_in(q, var);
  Poly a = cp.is_constant() ? p : *divide_exact(p, cp);
  Poly b = cq.is_constant() ? q : *divide_exact(q, cq);
  Poly content = gcd_poly(cp, cq);

  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  Poly g(nvars);
  while (true) {
    Poly r = pseudo_remainder(a, b, var);
    if (r.is_zero()) {
      g = b;
      break;
    }
    if (r.degree_in(var) == 0) {
      g = Poly::constant(nvars, 1);
      break;
    }
    a = std::move(b);
    b = primitive_part(r, var);
  }
  g = primitive_part(g, var);
  return (content * g).monic();
}

}  // namespace

Poly gcd_all(std::span<const Poly> polys) {
  Poly g;
  for (const auto& p : polys) {
    if (g.nvars() == 0) g = Poly(p.nvars());
    g = gcd_poly(g, p);
    if (!g.is_zero() && g.is_constant()) break;
  }
  return g;
}

}  // namespace srweyl::algebra

#include <map>
#include <random>

#include "srweyl/error.hpp"
#include "srweyl/geometry/structure.hpp"

namespace srweyl::geometry {

namespace {

// Incremental echelon basis of the Q-span of vector fields, each flattened
// to a sparse vector keyed by (component, monomial). A field that is a
// constant-coefficient combination of kept fields brackets into the span of
// their brackets, so it can be dropped without changing the generated flag.
class RationalSpan {
 public:
  bool insert(const VectorField& field) {
    Row row = flatten(field);
    reduce(row);
    if (row.empty()) return false;
    const Key pivot = row.begin()->first;
    const Rational inv = 1 / row.begin()->second;
    for (auto& [k, v] : row) v *= inv;
    // Keep the basis fully reduced on pivots.
    for (auto& [p, other] : rows_) {
      auto it = other.find(pivot);
      if (it == other.end()) continue;
      const Rational f = it->second;
      axpy(other, row, -f);
    }
    rows_.emplace(pivot, std::move(row));
    return true;
  }

 private:
  using Key = std::pair<std::size_t, algebra::Monomial>;
  struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
      if (a.first != b.first) return a.first < b.first;
      return algebra::GrlexGreater()(a.second, b.second);
    }
  };
  using Row = std::map<Key, Rational, KeyLess>;

  static Row flatten(const VectorField& field) {
    Row row;
    for (std::size_t a = 0; a < field.dim(); ++a) {
      for (const auto& [mono, c] : field[a].terms()) row.emplace(Key{a, mono}, c);
    }
    return row;
  }

  static void axpy(Row& target, const Row& source, const Rational& factor) {
    for (const auto& [k, v] : source) {
      auto [it, inserted] = target.try_emplace(k, factor * v);
      if (!inserted) {
        it->second += factor * v;
        if (it->second == 0) target.erase(it);
      }
    }
  }

  void reduce(Row& row) const {
    for (const auto& [pivot, basis_row] : rows_) {
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      const Rational f = it->second;
      axpy(row, basis_row, -f);
    }
  }

  std::map<Key, Row, KeyLess> rows_;
};

constexpr std::size_t kMaxSteps = 64;

struct Flag {
  std::vector<std::vector<VectorField>> layers;
  bool closed = false;  // no new fields appeared: the generated algebra is finite-dimensional
};

// Adds one bracket layer; returns false when nothing new appeared.
bool extend(const SubRiemannianStructure& s, RationalSpan& span, Flag& flag) {
  std::vector<VectorField> next;
  for (const VectorField& y : flag.layers.back()) {
    for (std::size_t i = 0; i < s.rank; ++i) {
      VectorField b = lie_bracket(s.frame[i], y);
      if (!b.is_zero() && span.insert(b)) next.push_back(std::move(b));
    }
  }
  if (next.empty()) {
    flag.closed = true;
    return false;
  }
  flag.layers.push_back(std::move(next));
  return true;
}

std::size_t rank_at(const std::vector<std::vector<VectorField>>& layers, std::size_t upto,
                    std::span<const Rational> point, std::size_t dim) {
  std::vector<std::vector<Rational>> rows;
  for (std::size_t s = 0; s < upto; ++s) {
    for (const auto& f : layers[s]) {
      std::vector<Rational> v(dim);
      for (std::size_t a = 0; a < dim; ++a) v[a] = f[a].evaluate(point);
      rows.push_back(std::move(v));
    }
  }
  algebra::QMatrix m(rows.size(), dim, Rational(0));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t a = 0; a < dim; ++a) m(r, a) = rows[r][a];
  }
  return algebra::rank(m);
}

}  // namespace

std::vector<std::size_t> growth_vector(const SubRiemannianStructure& s, std::span<const Rational> q) {
  if (q.size() != s.dim) throw InvalidStructure("evaluation point has wrong length");
  std::vector<Rational> point(s.layout().size(), Rational(0));
  std::copy(q.begin(), q.end(), point.begin());

  RationalSpan span;
  Flag flag;
  flag.layers.emplace_back();
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (span.insert(s.frame[i])) flag.layers.back().push_back(s.frame[i]);
  }
  std::vector<std::size_t> dims{rank_at(flag.layers, 1, point, s.dim)};
  while (dims.back() < s.dim) {
    if (flag.layers.size() >= kMaxSteps) {
      throw NotBracketGenerating("flag still below full dimension after " + std::to_string(kMaxSteps) + " steps");
    }
    if (!extend(s, span, flag)) {
      throw NotBracketGenerating("bracket flag stabilizes at dimension " + std::to_string(dims.back()) + " < " +
                                 std::to_string(s.dim));
    }
    dims.push_back(rank_at(flag.layers, flag.layers.size(), point, s.dim));
  }
  return dims;
}

bool is_regular_point(const SubRiemannianStructure& s, std::span<const Rational> q, std::size_t samples,
                      std::uint64_t seed) {
  const auto reference = growth_vector(s, q);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> offset(-999, 999);
  for (std::size_t k = 0; k < samples; ++k) {
    std::vector<Rational> p(q.begin(), q.end());
    for (auto& c : p) c += Rational(offset(rng), 100000);
    try {
      if (growth_vector(s, p) != reference) return false;
    } catch (const NotBracketGenerating&) {
      return false;
    }
  }
  return true;
}

}  // namespace srweyl::geometry

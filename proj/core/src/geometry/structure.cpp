#include "srweyl/geometry/structure.hpp"

#include <algorithm>
#include <variant>

#include "srweyl/algebra/parse.hpp"
#include "srweyl/error.hpp"

namespace srweyl::geometry {

SubRiemannianStructure SubRiemannianStructure::from_strings(std::string name, std::size_t dim, std::size_t rank,
                                                            const std::vector<std::vector<std::string>>& frame,
                                                            std::optional<std::vector<int>> weights,
                                                            std::vector<Rational> base_point) {
  SubRiemannianStructure s;
  s.name = std::move(name);
  s.dim = dim;
  s.rank = rank;
  const auto names = s.layout().names();
  const std::vector<std::string> x_names(names.begin(), names.begin() + static_cast<long>(dim));
  for (const auto& field : frame) {
    if (field.size() != dim) throw InvalidStructure("frame field with " + std::to_string(field.size()) +
                                                    " components in dimension " + std::to_string(dim));
    std::vector<Poly> components;
    for (const auto& text : field) {
      Poly p = algebra::parse_poly(text, x_names);
      // Lift from x-only to the full ring: x occupy the leading slots.
      Poly lifted(s.layout().size());
      for (const auto& [mono, c] : p.terms()) {
        std::vector<algebra::Monomial::Exponent> e(s.layout().size(), 0);
        std::copy(mono.exponents().begin(), mono.exponents().end(), e.begin());
        lifted.add_term(algebra::Monomial(std::move(e)), c);
      }
      components.push_back(std::move(lifted));
    }
    s.frame.emplace_back(std::move(components));
  }
  s.weights = std::move(weights);
  s.base_point = base_point.empty() ? std::vector<Rational>(dim, Rational(0)) : std::move(base_point);
  s.validate();
  return s;
}

void SubRiemannianStructure::validate() const {
  if (dim < 2) throw InvalidStructure("dimension must be at least 2");
  if (rank < 2 || rank > dim) throw InvalidStructure("rank must satisfy 2 <= m <= n");
  if (frame.size() != dim) {
    throw InvalidStructure("frame has " + std::to_string(frame.size()) + " fields, expected " + std::to_string(dim));
  }
  const std::size_t nvars = layout().size();
  for (std::size_t i = 0; i < dim; ++i) {
    if (frame[i].dim() != dim) throw InvalidStructure("field X" + std::to_string(i + 1) + " has wrong length");
    for (std::size_t a = 0; a < dim; ++a) {
      const Poly& c = frame[i][a];
      if (c.nvars() != nvars) throw InvalidStructure("frame component over the wrong ring");
      for (std::size_t v = dim; v < nvars; ++v) {
        if (c.uses_variable(v)) throw InvalidStructure("frame component depends on fiber variables");
      }
    }
  }
  if (base_point.size() != dim) throw InvalidStructure("base point has wrong length");
  if (weights) {
    const auto& w = *weights;
    if (w.size() != dim) throw InvalidStructure("weights have wrong length");
    for (std::size_t i = 0; i < rank; ++i) {
      if (w[i] != 1) throw InvalidStructure("the first m weights must equal 1");
    }
    if (!std::is_sorted(w.begin(), w.end())) throw InvalidStructure("weights must be nondecreasing");
  }
  std::vector<Rational> point(nvars, Rational(0));
  std::copy(base_point.begin(), base_point.end(), point.begin());
  if (algebra::determinant(algebra::evaluate(frame_matrix(), point)) == 0) {
    throw InvalidStructure("frame is degenerate at the base point");
  }
}

std::size_t SubRiemannianStructure::count_weight_at_most(int s) const {
  if (!weights) throw InvalidStructure("structure has no weights");
  return static_cast<std::size_t>(std::count_if(weights->begin(), weights->end(), [s](int w) { return w <= s; }));
}

int SubRiemannianStructure::step() const {
  if (!weights) throw InvalidStructure("structure has no weights");
  return weights->back();
}

algebra::PolyMatrix SubRiemannianStructure::frame_matrix() const {
  algebra::PolyMatrix f = algebra::zero_poly_matrix(dim, dim, layout().size());
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t a = 0; a < dim; ++a) f(a, k) = frame[k][a];
  }
  return f;
}

StructureFunctions::StructureFunctions(std::size_t dim, std::size_t nvars)
    : dim_(dim), table_(dim * dim * dim, Poly(nvars)) {}

void StructureFunctions::set(std::size_t k, std::size_t i, std::size_t j, Poly value) {
  table_[index(k, i, j)] = std::move(value);
}

bool StructureFunctions::is_constant() const {
  return std::all_of(table_.begin(), table_.end(), [](const Poly& p) { return p.is_constant(); });
}

StructureFunctions structure_functions(const SubRiemannianStructure& s) {
  const std::size_t n = s.dim;
  const std::size_t nvars = s.layout().size();
  const algebra::PolyMatrix f = s.frame_matrix();
  StructureFunctions c(n, nvars);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const VectorField bracket = lie_bracket(s.frame[i], s.frame[j]);
      if (bracket.is_zero()) continue;
      auto solved = algebra::solve_linear(f, bracket.components());
      if (std::holds_alternative<algebra::Inconsistent>(solved)) {
        throw InternalInconsistency("frame matrix solve inconsistent");
      }
      const auto& coeffs = std::get<std::vector<algebra::RationalFunction>>(solved);
      for (std::size_t k = 0; k < n; ++k) {
        if (!coeffs[k].is_polynomial()) {
          throw NonPolynomialStructure("c^" + std::to_string(k + 1) + "_" + std::to_string(i + 1) +
                                       std::to_string(j + 1) + " is not polynomial: " +
                                       coeffs[k].to_string(s.layout().names()));
        }
        Poly value = coeffs[k].as_poly();
        c.set(k, j, i, -value);
        c.set(k, i, j, std::move(value));
      }
    }
  }
  return c;
}

PrivilegedCheck verify_privileged(const SubRiemannianStructure& s) {
  if (!s.weights) throw InvalidStructure("privileged check needs weights");
  const auto& w = *s.weights;
  const auto names = s.layout().names();
  const std::vector<int> ring_w = s.layout().ring_weights(w);
  PrivilegedCheck out;
  out.privileged = true;
  for (std::size_t i = 0; i < s.dim; ++i) {
    const VectorField field = s.frame[i].translated(s.base_point);
    for (std::size_t j = 0; j < s.dim; ++j) {
      for (const auto& [mono, coeff] : field[j].terms()) {
        const long deg = mono.weighted_degree(ring_w);
        if (deg < w[j] - w[i]) {
          out.privileged = false;
          out.diagnostics.push_back("X" + std::to_string(i + 1) + ": monomial " +
                                    Poly::term(mono, coeff).to_string(names) + " in d/dx" + std::to_string(j + 1) +
                                    " has weighted degree " + std::to_string(deg) + " < " +
                                    std::to_string(w[j] - w[i]));
        }
      }
    }
  }
  std::vector<std::size_t> growth;
  try {
    growth = growth_vector(s, s.base_point);
  } catch (const NotBracketGenerating& e) {
    out.privileged = false;
    out.diagnostics.push_back(e.what());
    return out;
  }
  std::vector<std::size_t> expected;
  for (int step = 1; expected.empty() || expected.back() < s.dim; ++step) {
    expected.push_back(s.count_weight_at_most(step));
  }
  if (growth != expected) {
    out.privileged = false;
    auto fmt = [](const std::vector<std::size_t>& v) {
      std::string t = "(";
      for (std::size_t k = 0; k < v.size(); ++k) t += (k ? "," : "") + std::to_string(v[k]);
      return t + ")";
    };
    out.diagnostics.push_back("flag dimensions " + fmt(growth) + " differ from weight counts " + fmt(expected));
  }
  return out;
}

SubRiemannianStructure nilpotent_truncate(const SubRiemannianStructure& s) {
  const PrivilegedCheck check = verify_privileged(s);
  if (!check.privileged) {
    std::string why = check.diagnostics.empty() ? std::string("not privileged") : check.diagnostics.front();
    throw NotPrivileged(why);
  }
  const auto& w = *s.weights;
  const std::vector<int> ring_w = s.layout().ring_weights(w);
  SubRiemannianStructure out = s;
  out.name = s.name + " (nilpotent approximation)";
  out.base_point.assign(s.dim, Rational(0));
  for (std::size_t i = 0; i < s.dim; ++i) {
    const VectorField field = s.frame[i].translated(s.base_point);
    for (std::size_t j = 0; j < s.dim; ++j) out.frame[i][j] = field[j].weighted_part(ring_w, w[j] - w[i]);
  }
  out.validate();
  return out;
}

}  // namespace srweyl::geometry

#include "srweyl/geometry/vector_field.hpp"

#include "srweyl/error.hpp"

namespace srweyl::geometry {

VectorField VectorField::zero(std::size_t dim, std::size_t nvars) {
  return VectorField(std::vector<Poly>(dim, Poly(nvars)));
}

VectorField VectorField::coordinate(std::size_t dim, std::size_t nvars, std::size_t index) {
  VectorField v = zero(dim, nvars);
  v.components_.at(index) = Poly::constant(nvars, 1);
  return v;
}

bool VectorField::is_zero() const {
  for (const auto& c : components_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

Poly VectorField::apply(const Poly& f) const {
  Poly out(f.nvars());
  for (std::size_t b = 0; b < components_.size(); ++b) {
    if (components_[b].is_zero() || !f.uses_variable(b)) continue;
    out += components_[b] * f.derivative(b);
  }
  return out;
}

VectorField VectorField::translated(std::span<const Rational> offset) const {
  bool trivial = true;
  for (const auto& o : offset) trivial = trivial && algebra::is_zero(o);
  if (trivial) return *this;
  std::vector<std::pair<std::size_t, Poly>> shift;
  for (std::size_t b = 0; b < offset.size(); ++b) {
    const std::size_t nvars = components_.empty() ? 0 : components_.front().nvars();
    shift.emplace_back(b, Poly::variable(nvars, b) + Poly::constant(nvars, offset[b]));
  }
  VectorField out = *this;
  for (auto& c : out.components_) c = c.substitute(shift);
  return out;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  if (other.dim() != dim()) throw InvalidStructure("vector fields of different dimension");
  for (std::size_t a = 0; a < dim(); ++a) components_[a] += other.components_[a];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  if (other.dim() != dim()) throw InvalidStructure("vector fields of different dimension");
  for (std::size_t a = 0; a < dim(); ++a) components_[a] -= other.components_[a];
  return *this;
}

VectorField operator*(const Poly& f, const VectorField& v) {
  VectorField out = v;
  for (auto& c : out.components_) c = f * c;
  return out;
}

std::string VectorField::to_string(std::span<const std::string> names) const {
  std::string out;
  for (std::size_t a = 0; a < components_.size(); ++a) {
    if (components_[a].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + components_[a].to_string(names) + ")*d" + names[a];
  }
  return out.empty() ? "0" : out;
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
  if (v.dim() != w.dim()) throw InvalidStructure("bracket of vector fields of different dimension");
  std::vector<Poly> out;
  out.reserve(v.dim());
  for (std::size_t a = 0; a < v.dim(); ++a) out.push_back(v.apply(w[a]) - w.apply(v[a]));
  return VectorField(std::move(out));
}

}  // namespace srweyl::geometry

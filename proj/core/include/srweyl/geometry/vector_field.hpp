#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "srweyl/algebra/poly.hpp"

namespace srweyl::geometry {

using algebra::Poly;
using algebra::Rational;

/// Polynomial vector field on R^n. Components live in the full ring of the
/// owning structure but depend on the base coordinates x1..xn only, which
/// occupy ring indices 0..n-1.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<Poly> components) : components_(std::move(components)) {}

  static VectorField zero(std::size_t dim, std::size_t nvars);
  static VectorField coordinate(std::size_t dim, std::size_t nvars, std::size_t index);

  std::size_t dim() const { return components_.size(); }
  const Poly& operator[](std::size_t a) const { return components_[a]; }
  Poly& operator[](std::size_t a) { return components_[a]; }
  std::span<const Poly> components() const { return components_; }

  bool is_zero() const;

  /// Derivation X(f) = sum_b X_b df/dx_b.
  Poly apply(const Poly& f) const;

  /// Shifts the base coordinates: x -> x + offset.
  VectorField translated(std::span<const Rational> offset) const;

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Poly& f, const VectorField& v);
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.components_ == b.components_; }

  std::string to_string(std::span<const std::string> names) const;

 private:
  std::vector<Poly> components_;
};

/// [V, W]_a = sum_b (V_b dW_a/dx_b - W_b dV_a/dx_b).
VectorField lie_bracket(const VectorField& v, const VectorField& w);

}  // namespace srweyl::geometry

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "srweyl/algebra/matrix.hpp"
#include "srweyl/geometry/layout.hpp"
#include "srweyl/geometry/vector_field.hpp"

namespace srweyl::geometry {

/// Frame X1..Xn of polynomial vector fields; X1..Xm span the distribution
/// and are orthonormal for the metric.
struct SubRiemannianStructure {
  std::string name;
  std::size_t dim = 0;
  std::size_t rank = 0;
  std::vector<VectorField> frame;
  std::optional<std::vector<int>> weights;
  std::vector<Rational> base_point;

  VariableLayout layout() const { return {dim, rank}; }

  /// Builds a structure from component strings over x1..xn; base point
  /// defaults to the origin. Validates the result.
  static SubRiemannianStructure from_strings(std::string name, std::size_t dim, std::size_t rank,
                                             const std::vector<std::vector<std::string>>& frame,
                                             std::optional<std::vector<int>> weights = std::nullopt,
                                             std::vector<Rational> base_point = {});

  /// Throws InvalidStructure when sizes, weights or the frame at the base point are unusable.
  void validate() const;

  /// n_s: number of frame fields of weight at most s.
  std::size_t count_weight_at_most(int s) const;
  /// Largest weight (the nilpotency step of the truncation).
  int step() const;

  /// Column k holds the components of X_k.
  algebra::PolyMatrix frame_matrix() const;
};

/// c^k_{ij} with [X_i, X_j] = sum_k c^k_{ij} X_k, indices 0-based.
class StructureFunctions {
 public:
  StructureFunctions() = default;
  StructureFunctions(std::size_t dim, std::size_t nvars);

  std::size_t dim() const { return dim_; }
  const Poly& operator()(std::size_t k, std::size_t i, std::size_t j) const { return table_[index(k, i, j)]; }
  void set(std::size_t k, std::size_t i, std::size_t j, Poly value);

  bool is_constant() const;

 private:
  std::size_t index(std::size_t k, std::size_t i, std::size_t j) const { return (k * dim_ + i) * dim_ + j; }

  std::size_t dim_ = 0;
  std::vector<Poly> table_;
};

/// Exact solve of the bracket relations. Throws NonPolynomialStructure when a
/// coefficient is not a polynomial.
StructureFunctions structure_functions(const SubRiemannianStructure& s);

/// Dimensions of D^1(q), D^2(q), ... up to the full dimension. Throws
/// NotBracketGenerating when the flag stops growing below n at q.
std::vector<std::size_t> growth_vector(const SubRiemannianStructure& s, std::span<const Rational> q);

/// Growth vector at the base point compared with nearby rational points.
/// A point is treated as regular when all sampled neighbours share its growth vector.
bool is_regular_point(const SubRiemannianStructure& s, std::span<const Rational> q, std::size_t samples,
                      std::uint64_t seed);

struct PrivilegedCheck {
  bool privileged = false;
  std::vector<std::string> diagnostics;
};

/// Checks the weighted-order bound on every frame monomial (around the base
/// point) and that flag dimensions match the weight counts.
/// Throws InvalidStructure when no weights are given.
PrivilegedCheck verify_privileged(const SubRiemannianStructure& s);

/// Keeps only the monomials of weighted degree w_j - w_i in component j of
/// X_i; the result is based at the origin. Throws NotPrivileged.
SubRiemannianStructure nilpotent_truncate(const SubRiemannianStructure& s);

}  // namespace srweyl::geometry

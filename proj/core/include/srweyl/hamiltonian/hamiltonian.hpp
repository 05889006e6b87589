#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "srweyl/algebra/numeric_poly.hpp"
#include "srweyl/geometry/structure.hpp"

namespace srweyl::hamiltonian {

using algebra::Poly;
using algebra::Rational;
using geometry::StructureFunctions;
using geometry::SubRiemannianStructure;

/// h = (u1^2 + ... + um^2) / 2.
Poly hamiltonian(const SubRiemannianStructure& s);

/// Hamiltonian derivation on phase polynomials: frame fields act on x with u
/// frozen, and u_j moves by sum_{i<=m, k} c^k_{ij} u_i u_k.
Poly h1_derive(const SubRiemannianStructure& s, const StructureFunctions& c, const Poly& f);

/// First-order jet of the conformal factor at the base point: its value and
/// its derivatives along X1..Xm. The derivatives are ring polynomials, either
/// rational constants or the jet slots a1..am.
struct AlphaJet {
  Rational value;
  std::vector<Poly> gradient;

  static AlphaJet symbolic(const SubRiemannianStructure& s, const Rational& value = 1);
  static AlphaJet numeric(const SubRiemannianStructure& s, const Rational& value, std::span<const Rational> gradient);
  /// Throws InvalidStructure when the value is zero or sizes disagree.
  void validate(const SubRiemannianStructure& s) const;
};

/// Companion derivation of the rescaled Hamiltonian:
/// f -> h1_derive(f) / alpha^2 + sum_{j<=m} X_j(alpha) / alpha^3 * (sum_{i<=m} u_i^2) * df/du_j.
Poly h2_derive(const SubRiemannianStructure& s, const StructureFunctions& c, const AlphaJet& alpha, const Poly& f);

// --- numerics ------------------------------------------------------------------------

/// Floating-point copy of the frame and of the c^k_{ij} with i <= m.
class NumericModel {
 public:
  NumericModel(const SubRiemannianStructure& s, const StructureFunctions& c);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rank_; }
  std::size_t ring_size() const { return ring_size_; }

  /// Component a of X_i at the phase point (ring-sized buffer).
  double frame(std::size_t i, std::size_t a, std::span<const double> ring_point) const {
    return frame_[i * dim_ + a](ring_point);
  }
  /// c^k_{ij} for i < rank.
  double structure(std::size_t k, std::size_t i, std::size_t j, std::span<const double> ring_point) const {
    return structure_[(k * rank_ + i) * dim_ + j](ring_point);
  }
  bool structure_is_zero(std::size_t k, std::size_t i, std::size_t j) const {
    return structure_[(k * rank_ + i) * dim_ + j].is_zero();
  }

  /// Normal Hamiltonian vector field on the state (x, u).
  void normal_field(std::span<const double> state, std::span<double> derivative) const;
  double energy(std::span<const double> state) const;

  /// Copies a 2n state into a ring-sized evaluation buffer.
  void load(std::span<const double> state, std::vector<double>& ring_point) const;

 private:
  std::size_t dim_;
  std::size_t rank_;
  std::size_t ring_size_;
  std::vector<algebra::NumericPoly> frame_;
  std::vector<algebra::NumericPoly> structure_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;  ///< (x1..xn, u1..un)
  std::vector<double> energy;
  double relative_energy_drift = 0.0;  ///< max |h(t) - h(0)| / |h(0)| (absolute when h(0) = 0)
};

using OdeRhs = std::function<void(const std::vector<double>& state, std::vector<double>& derivative, double t)>;

/// Adaptive Dormand-Prince 5(4) integration at absolute and relative tolerance
/// `tolerance`, sampled at `steps` + 1 equally spaced times on [0, T].
/// Throws IntegrationError on step failures or non-finite states.
std::vector<std::vector<double>> integrate_samples(const OdeRhs& rhs, std::vector<double> initial, double horizon,
                                                   std::size_t steps, double tolerance = 1e-12);

Trajectory integrate_normal(const SubRiemannianStructure& s, const StructureFunctions& c, std::span<const double> x0,
                            std::span<const double> u0, double horizon, std::size_t steps);

/// CSV with header t,x1..xn,u1..un,h.
void write_csv(std::ostream& out, const Trajectory& trajectory, std::size_t dim);

}  // namespace srweyl::hamiltonian

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srweyl/algebra/matrix.hpp"
#include "srweyl/fundamental/fundamental.hpp"
#include "srweyl/geometry/structure.hpp"

namespace srweyl::abnormal {

using algebra::Poly;
using algebra::PolyMatrix;
using algebra::QVector;
using algebra::Rational;
using geometry::StructureFunctions;
using geometry::SubRiemannianStructure;

/// The symplectic form restricted to the annihilator of the distribution
/// (u1 = ... = um = 0), in the basis Y1..Yn, d/du_{m+1}..d/du_n, where Y_i
/// lifts X_i with the frame momenta held fixed.
struct RestrictedForm {
  std::size_t dim = 0;
  std::size_t rank = 0;
  PolyMatrix matrix;  ///< (2n - m) square, entries in x and u_{m+1}..u_n

  std::size_t size() const { return 2 * dim - rank; }
};

RestrictedForm restricted_form(const SubRiemannianStructure& s, const StructureFunctions& c);

/// A point of the annihilator: base point x and the fiber momenta u_{m+1}..u_n.
struct CovectorPoint {
  std::vector<Rational> x;
  std::vector<Rational> u;  ///< n - m entries
};

struct Stratum {
  std::size_t level = 0;
  std::optional<std::size_t> dimension;  ///< unknown for sampled degeneracy sets
  std::size_t sampled = 0;
  std::size_t one_dimensional = 0;
  std::size_t degenerate = 0;
  std::string note;
};

/// Degeneracy locus of the restricted form and the strata built on it.
struct Stratification {
  SubRiemannianStructure structure;
  RestrictedForm form;
  bool all_of_annihilator = false;  ///< odd rank: the form is degenerate everywhere
  Poly pfaffian;                     ///< even rank only
  Poly locus;                        ///< square-free part of the Pfaffian (even rank)
  std::size_t locus_dimension = 0;   ///< 2n - m (odd rank) or 2n - m - 1 (even rank)
  std::vector<Poly> locus_gradient;  ///< Y_i(locus) then d locus / du_k
  std::vector<Stratum> strata;
};

/// Builds the restricted form and its degeneracy locus.
Stratification wedge_locus(const SubRiemannianStructure& s, const StructureFunctions& c);

/// Square-free part p / gcd(p, dp/dv1, dp/dv2, ...).
Poly squarefree_part(const Poly& p);

struct KernelInfo {
  std::size_t dim = 0;
  std::vector<QVector> basis;
  bool zero_section = false;
  bool in_tilde = false;  ///< on the degeneracy locus
  bool singular_stratum = false;
  bool in_w = false;  ///< the form restricted to the locus has a one-dimensional kernel
  std::vector<QVector> restricted_basis;
};

KernelInfo kernel_at(const Stratification& strat, const CovectorPoint& point);

struct Characteristic {
  QVector direction;   ///< coefficients on Y1..Yn, d/du_{m+1}..d/du_n
  QVector projection;  ///< sum_i xi_i X_i(x) in base coordinates
};

/// Unique kernel direction of the form on the tangent space of the locus,
/// scaled so its first nonzero entry is 1. Throws NoCharacteristic.
Characteristic characteristic_direction(const Stratification& strat, const CovectorPoint& point);

struct AbnormalTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;  ///< (x1..xn, u_{m+1}..u_n)
  std::vector<double> locus_values;
  std::vector<bool> in_tilde;
  std::vector<bool> in_w;
  bool truncated = false;
  double speed = 1.0;  ///< the line field is normalized to this Euclidean length
};

/// Integrates the normalized characteristic line field from a point of W_D.
/// Samples past the first one that leaves the locus by more than 1e-8 are dropped.
AbnormalTrajectory integrate_abnormal(const Stratification& strat, const CovectorPoint& start, double horizon,
                                      std::size_t steps, double speed = 1.0);

enum class OrderVerdict { MinimalOrder, NotCertified };
std::string to_string(OrderVerdict v);

struct MinimalOrderSummary {
  std::vector<OrderVerdict> verdicts;
  std::size_t certified = 0;
  double fraction = 0.0;
};

/// MinimalOrder when every sample lies in W_D, isolated exits excepted.
MinimalOrderSummary minimal_order_verdict(const std::vector<AbnormalTrajectory>& trajectories);

/// Random rational points of W_D (fewer when the locus has no rational
/// parametrization in one of its variables).
std::vector<CovectorPoint> sample_w(const Stratification& strat, std::size_t count, std::uint64_t seed);

struct MinimalOrderOptions {
  std::size_t samples = 4;
  double horizon = 1.0;
  std::size_t steps = 20;
  std::uint64_t seed = 1;
};

struct NetRun {
  std::size_t requested = 0;
  std::size_t trajectories = 0;
  std::size_t certified = 0;
};

struct MinimalOrderCertificate {
  bool applicable = false;
  bool stable = false;
  bool all_minimal_order = false;
  std::vector<NetRun> runs;  ///< nets of N, 2N and 4N initial points
  std::string summary;
  std::vector<AbnormalTrajectory> trajectories;  ///< from the finest net

  fundamental::MinimalOrderEvidence evidence() const;
};

/// Sampling certificate of minimal order over three refinements of a net of
/// initial conditions. Labeled as sampling evidence, not a proof.
MinimalOrderCertificate minimal_order_certificate(const SubRiemannianStructure& s, const StructureFunctions& c,
                                                  const MinimalOrderOptions& options = {});

/// W^(0) = locus, then sampled degeneracy sets where the kernel is larger than one.
Stratification weak_stratification(const SubRiemannianStructure& s, const StructureFunctions& c, std::size_t depth,
                                   std::size_t samples = 12, std::uint64_t seed = 1);

struct NormalityResult {
  bool strictly_normal = false;
  bool indeterminate = false;
  std::size_t max_dim = 0;
  std::size_t depth = 0;
  std::vector<std::size_t> dims;  ///< per sampled time
};

/// Dimension of J^(k) = span{ad_h^j(d/du_i) : j <= k} along the normal
/// extremal from (x0, u0), at depth k = n - m + 1 unless given.
/// Throws InvalidStructure when h vanishes at the start.
NormalityResult strict_normality_test(const SubRiemannianStructure& s, const StructureFunctions& c,
                                      std::span<const double> x0, std::span<const double> u0, double horizon,
                                      std::size_t samples = 10, std::optional<std::size_t> depth = std::nullopt);

}  // namespace srweyl::abnormal

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srweyl/algebra/matrix.hpp"
#include "srweyl/geometry/structure.hpp"
#include "srweyl/hamiltonian/hamiltonian.hpp"

namespace srweyl::fundamental {

using algebra::Poly;
using algebra::PolyMatrix;
using algebra::QMatrix;
using algebra::QVector;
using algebra::Rational;
using algebra::RationalFunction;
using geometry::StructureFunctions;
using geometry::SubRiemannianStructure;
using hamiltonian::AlphaJet;

/// q_{jk} = sum_{i<=m} c^k_{ij} u_i as a full n x n matrix (rows j, columns k).
PolyMatrix q_full(const SubRiemannianStructure& s, const StructureFunctions& c);

/// The m x (n-m) block of q_full with j <= m and k > m.
PolyMatrix q_matrix(const SubRiemannianStructure& s, const StructureFunctions& c);

/// Layers s = 1..k of the linear system A Psi = d for the fiber part of the
/// orbital map. Layer s holds an m x (n-m) block and m right-hand sides.
struct LayeredSystem {
  std::size_t dim = 0;
  std::size_t rank = 0;
  std::size_t nvars = 0;
  std::vector<PolyMatrix> a_blocks;
  std::vector<std::vector<Poly>> d_blocks;
  AlphaJet alpha;

  std::size_t layers() const { return a_blocks.size(); }
  /// All layers stacked: (k*m) x (n-m).
  PolyMatrix stacked_a() const;
  std::vector<Poly> stacked_d() const;
};

/// Prolongs the first layer along the normal Hamiltonian derivation. The
/// derivatives of alpha along X_k with k > m are taken to be zero.
LayeredSystem build_layers(const SubRiemannianStructure& s, const StructureFunctions& c, const AlphaJet& alpha,
                           std::size_t layers);

/// Same recursion on a nilpotent approximation, where d^1 only sees the
/// gradient of the jet.
LayeredSystem nilpotent_layers(const SubRiemannianStructure& nilpotent, const StructureFunctions& c_hat,
                               const AlphaJet& alpha, std::size_t layers);

/// One affine condition on the jet gradient: coefficients of a1..am followed
/// by the constant term.
using AffineRow = QVector;

struct PsiSolution {
  std::size_t dim = 0;
  std::size_t rank = 0;
  std::size_t layers = 0;
  AlphaJet alpha;
  std::vector<std::size_t> witness_rows;
  /// Unreduced Cramer data over the witness minor.
  Poly denominator;
  std::vector<Poly> numerators;
  /// Psi_{m+1}..Psi_n in lowest terms (generic in the jet slots).
  std::vector<RationalFunction> components;
  /// Conditions on the jet under which every built row holds; empty when the
  /// witness solution satisfies all rows identically.
  std::vector<AffineRow> constraints;
  /// Built rows whose residual is not identically zero.
  std::vector<std::size_t> violated_rows;
};

/// Solves the stacked system from a nonzero maximal minor and re-substitutes
/// into every row. Throws NeedMoreLayers when the rank stays below n - m.
PsiSolution solve_psi(const LayeredSystem& system);

/// Same, but with the square subsystem given by `rows`. Throws RankDeficient
/// when that minor vanishes.
PsiSolution solve_psi(const LayeredSystem& system, const std::vector<std::size_t>& rows);

/// True when every component is a polynomial for generic jet values.
bool polynomiality_test(const PsiSolution& psi);
bool polynomiality_test(std::span<const RationalFunction> components);

/// Linear conditions on the jet gradient under which the witness denominator
/// divides every numerator.
std::vector<AffineRow> polynomial_locus(const PsiSolution& psi);

/// Basis of the homogeneous solutions of a set of affine rows with zero
/// constant terms, as vectors in jet-gradient space.
std::vector<QVector> solution_space(const std::vector<AffineRow>& rows, std::size_t rank);

/// The linear conditions on a1..am carried by p, one row per monomial in the
/// remaining variables. Throws InternalInconsistency when p is not affine in
/// the jet slots.
std::vector<AffineRow> affine_rows(const Poly& p, const geometry::VariableLayout& layout);

/// Substitutes a_j -> sum_t basis[t][j] a_t, re-using the first jet slots as
/// coordinates on the span of `basis`.
Poly restrict_to_jets(const Poly& p, const std::vector<QVector>& basis, const geometry::VariableLayout& layout);

/// Evidence of the telescoping argument on the polynomial part of the jet space.
struct KiCertificate {
  /// Jet gradients compatible with the solved layers and with polynomial Psi,
  /// as a basis of vectors in (a1..am); t1..tr parametrize it.
  std::vector<QVector> polynomial_jets;
  /// Psi restricted to that subspace, written in the parameters t (stored in the jet slots).
  std::vector<Poly> psi;
  /// eps_{kl} for w_l = w_k - 1, keyed by 0-based (k, l).
  std::map<std::pair<std::size_t, std::size_t>, Poly> epsilon;
  bool homogeneous = false;
  std::vector<std::string> diagnostics;
  /// K_i(s) for i < m and s = 1..r (index s - 1).
  std::vector<std::vector<Poly>> k_values;
  /// alpha^i on the subspace, as linear forms in t.
  std::vector<Poly> alpha;
  /// K_i(s-1) - K_i(s) + (n_s - n_{s-1}) alpha^i for s = 2..r (index s - 2).
  std::vector<std::vector<Poly>> recursion_residuals;
  /// Subspace (in t) on which all recursion residuals vanish.
  std::vector<QVector> recursion_kernel;
  bool alpha_forced_zero = false;
  /// Residual of the second-layer transport identity for each k > m, on the subspace.
  std::vector<Poly> transport_residuals;
};

/// Runs the K_i telescoping argument for a symbolic-jet solution on a graded
/// nilpotent model. Throws InternalInconsistency when an identity that holds
/// by construction fails.
KiCertificate ki_certificate(const PsiSolution& psi, const SubRiemannianStructure& nilpotent,
                             const StructureFunctions& c_hat);

/// True when h1_derive(p) is divisible by p.
bool flow_invariance_test(const SubRiemannianStructure& s, const StructureFunctions& c, const Poly& p);

/// Phi_k = alpha_hat u_k for k <= m and Psi_k + alpha_hat u_k otherwise,
/// with alpha_hat = alpha0 + sum_i x_i alpha^i.
std::vector<RationalFunction> assemble_orbital_map(const SubRiemannianStructure& s, const PsiSolution& psi,
                                                   const AlphaJet& alpha);

enum class Verdict { WeylRigid, Inconclusive, NotApplicable };
enum class Route { PolynomialCertificate, AbnormalRoute, None };

std::string to_string(Verdict v);
std::string to_string(Route r);

/// Sampled minimal-order evidence supplied by the abnormal pipeline.
struct MinimalOrderEvidence {
  bool applicable = false;  ///< false when the model has no abnormal extremals to test
  bool all_minimal_order = false;
  std::size_t trajectories = 0;
  std::size_t certified = 0;
  std::string summary;
};

struct VerdictOptions {
  /// Layer count for the solve; the default doubles from n - m up to the cap.
  std::optional<std::size_t> layers;
  std::size_t layer_cap_factor = 4;
};

struct RigidityReport {
  Verdict verdict = Verdict::Inconclusive;
  Route route = Route::None;
  std::string reason;
  std::vector<std::string> assumptions;

  std::size_t layers = 0;
  std::size_t consistency_layers = 0;
  std::optional<PsiSolution> psi;
  bool generic_polynomial = false;
  std::size_t consistent_dimension = 0;  ///< dim of jets satisfying the solved layers
  std::size_t extended_dimension = 0;    ///< same with one more layer
  bool extended_jets_polynomial = false;
  std::optional<KiCertificate> certificate;
  std::optional<MinimalOrderEvidence> abnormal;
};

/// Truncates, solves the nilpotent system with a symbolic jet and runs the
/// certificate. Falls back on the abnormal evidence when the certificate does
/// not close; never reports non-rigidity.
RigidityReport weyl_verdict(const SubRiemannianStructure& s, const VerdictOptions& options = {},
                            const std::optional<MinimalOrderEvidence>& abnormal = std::nullopt);

}  // namespace srweyl::fundamental

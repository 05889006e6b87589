#include <map>

#include "srweyl/error.hpp"
#include "srweyl/fundamental/fundamental.hpp"

namespace srweyl::fundamental {

namespace {

bool is_zero_row(const AffineRow& row) {
  for (const auto& v : row) {
    if (!algebra::is_zero(v)) return false;
  }
  return true;
}

}  // namespace

std::vector<AffineRow> affine_rows(const Poly& p, const geometry::VariableLayout& layout) {
  const std::size_t m = layout.rank;
  std::map<algebra::Monomial, AffineRow, algebra::GrlexGreater> grouped;
  for (const auto& [mono, coeff] : p.terms()) {
    std::size_t slot = m;  // constant column unless a jet slot appears
    unsigned jet_degree = 0;
    algebra::Monomial rest = mono;
    for (std::size_t j = 0; j < m; ++j) {
      const auto e = mono[layout.alpha(j)];
      if (e == 0) continue;
      jet_degree += e;
      slot = j;
      rest = rest.with_exponent(layout.alpha(j), 0);
    }
    if (jet_degree > 1) throw InternalInconsistency("expression is not affine in the jet slots");
    auto [it, inserted] = grouped.try_emplace(rest, AffineRow(m + 1, Rational(0)));
    it->second[slot] += coeff;
  }
  std::vector<AffineRow> out;
  for (auto& [mono, row] : grouped) {
    if (!is_zero_row(row)) out.push_back(std::move(row));
  }
  return out;
}

std::vector<QVector> solution_space(const std::vector<AffineRow>& rows, std::size_t rank) {
  QMatrix linear(rows.size(), rank, Rational(0));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!algebra::is_zero(rows[r][rank])) throw InternalInconsistency("solution_space expects homogeneous rows");
    for (std::size_t j = 0; j < rank; ++j) linear(r, j) = rows[r][j];
  }
  return algebra::kernel_basis(linear);
}

Poly restrict_to_jets(const Poly& p, const std::vector<QVector>& basis, const geometry::VariableLayout& layout) {
  const std::size_t nv = layout.size();
  std::vector<std::pair<std::size_t, Poly>> replacements;
  for (std::size_t j = 0; j < layout.rank; ++j) {
    Poly value(nv);
    for (std::size_t t = 0; t < basis.size(); ++t) {
      if (!algebra::is_zero(basis[t][j])) value += Poly::variable(nv, layout.alpha(t)) * basis[t][j];
    }
    replacements.emplace_back(layout.alpha(j), std::move(value));
  }
  return p.substitute(replacements);
}

PsiSolution solve_psi(const LayeredSystem& system) {
  const PolyMatrix a = system.stacked_a();
  const std::size_t unknowns = system.dim - system.rank;
  const auto witness = algebra::rank_and_minor(a, unknowns);
  if (witness.rank < unknowns || !witness.rows) {
    throw NeedMoreLayers("fundamental system has rank " + std::to_string(witness.rank) + " < " +
                         std::to_string(unknowns) + " with " + std::to_string(system.layers()) + " layers");
  }
  return solve_psi(system, *witness.rows);
}

PsiSolution solve_psi(const LayeredSystem& system, const std::vector<std::size_t>& rows) {
  const PolyMatrix a = system.stacked_a();
  const std::vector<Poly> d = system.stacked_d();
  const geometry::VariableLayout layout{system.dim, system.rank};

  PsiSolution out;
  out.dim = system.dim;
  out.rank = system.rank;
  out.layers = system.layers();
  out.alpha = system.alpha;
  out.witness_rows = rows;

  const auto cramer = algebra::cramer_solve(a, d, rows);
  out.denominator = cramer.denominator;
  out.numerators = cramer.numerators;
  for (const auto& num : cramer.numerators) out.components.emplace_back(num, cramer.denominator);

  for (std::size_t r = 0; r < a.rows(); ++r) {
    const Poly residual = algebra::cramer_residual(a, d, cramer, r);
    if (residual.is_zero()) continue;
    out.violated_rows.push_back(r);
    for (auto& row : affine_rows(residual, layout)) out.constraints.push_back(std::move(row));
  }
  return out;
}

bool polynomiality_test(std::span<const RationalFunction> components) {
  for (const auto& c : components) {
    if (!c.is_polynomial()) return false;
  }
  return true;
}

bool polynomiality_test(const PsiSolution& psi) { return polynomiality_test(std::span<const RationalFunction>(psi.components)); }

std::vector<AffineRow> polynomial_locus(const PsiSolution& psi) {
  const geometry::VariableLayout layout{psi.dim, psi.rank};
  std::vector<AffineRow> out;
  for (const auto& num : psi.numerators) {
    for (auto& row : affine_rows(algebra::remainder(num, psi.denominator), layout)) out.push_back(std::move(row));
  }
  return out;
}

bool flow_invariance_test(const SubRiemannianStructure& s, const StructureFunctions& c, const Poly& p) {
  if (p.is_zero()) throw DivisionByZeroPoly("flow invariance of the zero polynomial");
  return algebra::divide_exact(hamiltonian::h1_derive(s, c, p), p).has_value();
}

std::vector<RationalFunction> assemble_orbital_map(const SubRiemannianStructure& s, const PsiSolution& psi,
                                                   const AlphaJet& alpha) {
  alpha.validate(s);
  const auto layout = s.layout();
  const std::size_t nv = layout.size();
  Poly alpha_hat = Poly::constant(nv, alpha.value);
  for (std::size_t i = 0; i < s.rank; ++i) alpha_hat += Poly::variable(nv, layout.x(i)) * alpha.gradient[i];

  std::vector<RationalFunction> out;
  for (std::size_t k = 0; k < s.dim; ++k) {
    const RationalFunction scaled(alpha_hat * Poly::variable(nv, layout.u(k)));
    out.push_back(k < s.rank ? scaled : psi.components[k - s.rank] + scaled);
  }
  return out;
}

}  // namespace srweyl::fundamental

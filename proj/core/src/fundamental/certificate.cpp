#include <sstream>

#include "srweyl/error.hpp"
#include "srweyl/fundamental/fundamental.hpp"

namespace srweyl::fundamental {

namespace {

/// Terms of p whose (x, u) part equals `mono`, as a polynomial in the jet slots.
Poly jet_coefficient(const Poly& p, const algebra::Monomial& mono, const geometry::VariableLayout& layout) {
  Poly out(layout.size());
  for (const auto& [term, coeff] : p.terms()) {
    algebra::Monomial rest = term;
    algebra::Monomial jet(layout.size());
    for (std::size_t j = 0; j < layout.rank; ++j) {
      const auto e = term[layout.alpha(j)];
      if (e == 0) continue;
      rest = rest.with_exponent(layout.alpha(j), 0);
      jet = jet.with_exponent(layout.alpha(j), e);
    }
    if (rest == mono) out.add_term(jet, coeff);
  }
  return out;
}

algebra::Monomial u_pair(const geometry::VariableLayout& layout, std::size_t i, std::size_t k) {
  return algebra::Monomial::variable(layout.size(), layout.u(i)) * algebra::Monomial::variable(layout.size(), layout.u(k));
}

std::string describe(const Poly& p, const geometry::VariableLayout& layout) {
  const auto names = layout.names();
  return p.to_string(names);
}

}  // namespace

KiCertificate ki_certificate(const PsiSolution& psi, const SubRiemannianStructure& nilpotent,
                             const StructureFunctions& c_hat) {
  if (!nilpotent.weights) throw InvalidStructure("the certificate needs weights");
  if (!c_hat.is_constant()) throw InvalidStructure("the certificate needs constant structure functions");
  const auto layout = nilpotent.layout();
  const std::size_t n = nilpotent.dim, m = nilpotent.rank, nv = layout.size();
  const auto& w = *nilpotent.weights;
  const int r = nilpotent.step();
  const auto u = [&](std::size_t i) { return Poly::variable(nv, layout.u(i)); };

  KiCertificate cert;

  bool numeric = true;
  for (const auto& g : psi.alpha.gradient) numeric &= g.is_constant();
  if (numeric) {
    if (!psi.constraints.empty() || !polynomiality_test(psi)) {
      throw InvalidStructure("numeric jet is incompatible with the built layers or gives a non-polynomial Psi");
    }
    for (const auto& c : psi.components) cert.psi.push_back(c.as_poly());
    cert.alpha = psi.alpha.gradient;
  } else {
    std::vector<AffineRow> rows = psi.constraints;
    for (auto& row : polynomial_locus(psi)) rows.push_back(std::move(row));
    cert.polynomial_jets = solution_space(rows, m);
    for (std::size_t k = 0; k < n - m; ++k) {
      const Poly num = restrict_to_jets(psi.numerators[k], cert.polynomial_jets, layout);
      auto quotient = algebra::divide_exact(num, psi.denominator);
      if (!quotient) throw InternalInconsistency("Psi is not polynomial on its polynomial locus");
      cert.psi.push_back(std::move(*quotient));
    }
    for (const auto& g : psi.alpha.gradient) cert.alpha.push_back(restrict_to_jets(g, cert.polynomial_jets, layout));
  }
  const std::size_t tdim = cert.polynomial_jets.size();

  // Each Psi_k must be sum_l eps_{kl} u_l over the fields one weight below.
  cert.homogeneous = true;
  for (std::size_t k = m; k < n; ++k) {
    for (const auto& [term, coeff] : cert.psi[k - m].terms()) {
      algebra::Monomial jet(nv);
      algebra::Monomial rest = term;
      unsigned jet_degree = 0;
      for (std::size_t j = 0; j < m; ++j) {
        const auto e = term[layout.alpha(j)];
        if (e == 0) continue;
        jet_degree += e;
        jet = jet.with_exponent(layout.alpha(j), e);
        rest = rest.with_exponent(layout.alpha(j), 0);
      }
      std::optional<std::size_t> fiber;
      for (std::size_t l = 0; l < n; ++l) {
        if (rest == algebra::Monomial::variable(nv, layout.u(l))) fiber = l;
      }
      if (jet_degree != (numeric ? 0u : 1u) || !fiber || w[*fiber] != w[k] - 1) {
        cert.homogeneous = false;
        std::ostringstream msg;
        msg << "Psi" << k + 1 << " has a term outside the weight " << w[k] - 1 << " fiber span: "
            << describe(Poly::term(term, coeff), layout);
        cert.diagnostics.push_back(msg.str());
        continue;
      }
      auto [it, inserted] = cert.epsilon.try_emplace({k, *fiber}, Poly(nv));
      it->second.add_term(jet, coeff);
    }
  }
  if (!cert.homogeneous) return cert;

  const auto eps = [&](std::size_t k, std::size_t l) {
    const auto it = cert.epsilon.find({k, l});
    return it == cert.epsilon.end() ? Poly(nv) : it->second;
  };
  const auto psi_of = [&](std::size_t k) { return cert.psi[k - m]; };

  // The first layer on the subspace: sum_{w_k=2} sum_i c^k_ij u_i Psi_k = sum_i (a^i u_j - a^j u_i) u_i.
  for (std::size_t j = 0; j < m; ++j) {
    Poly lhs(nv), rhs(nv);
    for (std::size_t k = m; k < n; ++k) {
      if (w[k] != 2) continue;
      for (std::size_t i = 0; i < m; ++i) {
        if (!c_hat(k, i, j).is_zero()) lhs += c_hat(k, i, j) * u(i) * psi_of(k);
      }
    }
    for (std::size_t i = 0; i < m; ++i) rhs += (cert.alpha[i] * u(j) - cert.alpha[j] * u(i)) * u(i);
    if (!(lhs == rhs)) throw InternalInconsistency("first-layer identity fails on the polynomial locus");
  }

  cert.k_values.assign(m, std::vector<Poly>(static_cast<std::size_t>(r), Poly(nv)));
  for (std::size_t i = 0; i < m; ++i) {
    for (int s = 1; s <= r; ++s) {
      Poly total(nv);
      for (std::size_t k = 0; k < n; ++k) {
        if (w[k] != s + 1) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (w[l] == s && !c_hat(k, i, l).is_zero()) total += c_hat(k, i, l) * eps(k, l);
        }
      }
      cert.k_values[i][static_cast<std::size_t>(s - 1)] = std::move(total);
    }
    if (!(cert.k_values[i][0] == cert.alpha[i] * Rational(static_cast<long>(m) - 1))) {
      throw InternalInconsistency("K_" + std::to_string(i + 1) + "(1) differs from (m-1) alpha^" +
                                  std::to_string(i + 1));
    }
  }

  cert.recursion_residuals.assign(m, {});
  for (std::size_t i = 0; i < m; ++i) {
    for (int s = 2; s <= r; ++s) {
      const auto jump = static_cast<long>(nilpotent.count_weight_at_most(s) - nilpotent.count_weight_at_most(s - 1));
      const auto idx = static_cast<std::size_t>(s);
      cert.recursion_residuals[i].push_back(cert.k_values[i][idx - 2] - cert.k_values[i][idx - 1] +
                                            cert.alpha[i] * Rational(jump));
    }
  }

  // Transport identity for k > m and its per-(i, k) coefficients.
  for (std::size_t k = m; k < n; ++k) {
    Poly residual = hamiltonian::h1_derive(nilpotent, c_hat, psi_of(k));
    for (std::size_t l = m; l < n; ++l) {
      if (w[l] != w[k] + 1) continue;
      for (std::size_t i = 0; i < m; ++i) {
        if (!c_hat(l, i, k).is_zero()) residual -= c_hat(l, i, k) * u(i) * psi_of(l);
      }
    }
    for (std::size_t i = 0; i < m; ++i) residual += cert.alpha[i] * u(k) * u(i);
    cert.transport_residuals.push_back(std::move(residual));
  }
  for (int s = 2; s <= r; ++s) {
    for (std::size_t i = 0; i < m; ++i) {
      Poly layer_sum(nv);
      for (std::size_t k = m; k < n; ++k) {
        if (w[k] != s) continue;
        Poly ks = cert.alpha[i];
        for (std::size_t l = 0; l < n; ++l) {
          if (w[l] == s - 1 && !c_hat(k, i, l).is_zero()) ks += c_hat(k, i, l) * eps(k, l);
          if (w[l] == s + 1 && !c_hat(l, i, k).is_zero()) ks -= c_hat(l, i, k) * eps(l, k);
        }
        if (!(jet_coefficient(cert.transport_residuals[k - m], u_pair(layout, i, k), layout) == ks)) {
          throw InternalInconsistency("coefficient identity for u" + std::to_string(i + 1) + " u" +
                                      std::to_string(k + 1) + " disagrees with the transport residual");
        }
        layer_sum += ks;
      }
      if (!(layer_sum == cert.recursion_residuals[i][static_cast<std::size_t>(s - 2)])) {
        throw InternalInconsistency("layer sum of coefficient identities differs from the K recursion");
      }
    }
  }

  std::vector<AffineRow> recursion_rows;
  for (const auto& per_i : cert.recursion_residuals) {
    for (const auto& res : per_i) {
      for (auto& row : affine_rows(res, layout)) recursion_rows.push_back(std::move(row));
    }
  }
  QMatrix linear(recursion_rows.size(), tdim, Rational(0));
  for (std::size_t row = 0; row < recursion_rows.size(); ++row) {
    for (std::size_t t = 0; t < tdim; ++t) linear(row, t) = recursion_rows[row][t];
  }
  cert.recursion_kernel = tdim == 0 ? std::vector<QVector>{} : algebra::kernel_basis(linear);

  cert.alpha_forced_zero = true;
  if (numeric) {
    for (const auto& g : cert.alpha) cert.alpha_forced_zero &= g.is_zero();
  }
  for (const auto& tau : cert.recursion_kernel) {
    for (std::size_t j = 0; j < m; ++j) {
      Rational value = 0;
      for (std::size_t t = 0; t < tdim; ++t) value += tau[t] * cert.polynomial_jets[t][j];
      if (!algebra::is_zero(value)) cert.alpha_forced_zero = false;
    }
  }
  return cert;
}

}  // namespace srweyl::fundamental

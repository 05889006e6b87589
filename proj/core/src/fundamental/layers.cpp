#include <map>

#include "srweyl/error.hpp"
#include "srweyl/fundamental/fundamental.hpp"

namespace srweyl::fundamental {

namespace {

Poly u_var(const geometry::VariableLayout& layout, std::size_t i) {
  return Poly::variable(layout.size(), layout.u(i));
}

LayeredSystem prolong(const SubRiemannianStructure& s, const StructureFunctions& c, const AlphaJet& alpha,
                      std::size_t layers) {
  if (layers == 0) throw InvalidStructure("at least one layer is required");
  alpha.validate(s);
  const auto layout = s.layout();
  const std::size_t n = s.dim, m = s.rank, nv = layout.size();
  const PolyMatrix q = q_full(s, c);

  // sum_i u_i alpha^i, shared by every d-layer.
  Poly flux(nv);
  for (std::size_t i = 0; i < m; ++i) flux += u_var(layout, i) * alpha.gradient[i];

  LayeredSystem out;
  out.dim = n;
  out.rank = m;
  out.nvars = nv;
  out.alpha = alpha;

  PolyMatrix a = algebra::zero_poly_matrix(m, n - m, nv);
  std::vector<Poly> d(m, Poly(nv));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = m; k < n; ++k) a(j, k - m) = q(j, k);
    for (std::size_t i = 0; i < m; ++i) {
      d[j] += (alpha.gradient[i] * u_var(layout, j) - alpha.gradient[j] * u_var(layout, i)) * u_var(layout, i);
    }
  }
  out.a_blocks.push_back(a);
  out.d_blocks.push_back(d);

  for (std::size_t s_idx = 1; s_idx < layers; ++s_idx) {
    const PolyMatrix& prev_a = out.a_blocks.back();
    const std::vector<Poly>& prev_d = out.d_blocks.back();
    PolyMatrix next_a = algebra::zero_poly_matrix(m, n - m, nv);
    std::vector<Poly> next_d(m, Poly(nv));
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t l = m; l < n; ++l) {
        Poly entry = hamiltonian::h1_derive(s, c, prev_a(j, l - m));
        for (std::size_t k = m; k < n; ++k) {
          if (!prev_a(j, k - m).is_zero() && !q(k, l).is_zero()) entry += prev_a(j, k - m) * q(k, l);
        }
        next_a(j, l - m) = std::move(entry);
      }
      Poly rhs = hamiltonian::h1_derive(s, c, prev_d[j]);
      for (std::size_t k = m; k < n; ++k) {
        if (!prev_a(j, k - m).is_zero()) rhs += prev_a(j, k - m) * flux * u_var(layout, k);
      }
      next_d[j] = std::move(rhs);
    }
    out.a_blocks.push_back(std::move(next_a));
    out.d_blocks.push_back(std::move(next_d));
  }
  return out;
}

}  // namespace

PolyMatrix q_full(const SubRiemannianStructure& s, const StructureFunctions& c) {
  const auto layout = s.layout();
  PolyMatrix q = algebra::zero_poly_matrix(s.dim, s.dim, layout.size());
  for (std::size_t j = 0; j < s.dim; ++j) {
    for (std::size_t k = 0; k < s.dim; ++k) {
      for (std::size_t i = 0; i < s.rank; ++i) {
        if (!c(k, i, j).is_zero()) q(j, k) += c(k, i, j) * u_var(layout, i);
      }
    }
  }
  return q;
}

PolyMatrix q_matrix(const SubRiemannianStructure& s, const StructureFunctions& c) {
  const PolyMatrix q = q_full(s, c);
  std::vector<std::size_t> rows, cols;
  for (std::size_t j = 0; j < s.rank; ++j) rows.push_back(j);
  for (std::size_t k = s.rank; k < s.dim; ++k) cols.push_back(k);
  return q.submatrix(rows, cols);
}

PolyMatrix LayeredSystem::stacked_a() const {
  PolyMatrix out = algebra::zero_poly_matrix(0, dim - rank, nvars);
  for (const auto& block : a_blocks) out.append_rows(block);
  return out;
}

std::vector<Poly> LayeredSystem::stacked_d() const {
  std::vector<Poly> out;
  for (const auto& block : d_blocks) out.insert(out.end(), block.begin(), block.end());
  return out;
}

LayeredSystem build_layers(const SubRiemannianStructure& s, const StructureFunctions& c, const AlphaJet& alpha,
                           std::size_t layers) {
  return prolong(s, c, alpha, layers);
}

LayeredSystem nilpotent_layers(const SubRiemannianStructure& nilpotent, const StructureFunctions& c_hat,
                               const AlphaJet& alpha, std::size_t layers) {
  if (!c_hat.is_constant()) throw InvalidStructure("nilpotent layers need constant structure functions");
  return prolong(nilpotent, c_hat, alpha, layers);
}

}  // namespace srweyl::fundamental

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace srweyl::geometry {

/// Ring variables shared by every symbolic object of one structure:
/// base coordinates x1..xn, fiber coordinates u1..un, then one slot per
/// horizontal direction for a symbolic first-order jet (a1..am).
struct VariableLayout {
  std::size_t dim = 0;
  std::size_t rank = 0;

  std::size_t size() const { return 2 * dim + rank; }
  std::size_t x(std::size_t i) const { return i; }
  std::size_t u(std::size_t i) const { return dim + i; }
  std::size_t alpha(std::size_t j) const { return 2 * dim + j; }

  bool is_x(std::size_t var) const { return var < dim; }
  bool is_u(std::size_t var) const { return var >= dim && var < 2 * dim; }
  bool is_alpha(std::size_t var) const { return var >= 2 * dim && var < size(); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(size());
    for (std::size_t i = 1; i <= dim; ++i) out.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i <= dim; ++i) out.push_back("u" + std::to_string(i));
    for (std::size_t j = 1; j <= rank; ++j) out.push_back("a" + std::to_string(j));
    return out;
  }

  /// Ring weights: x_j and u_j both get w_j, jet slots get 0.
  std::vector<int> ring_weights(std::span<const int> weights) const {
    std::vector<int> out(size(), 0);
    for (std::size_t j = 0; j < dim; ++j) {
      out[x(j)] = weights[j];
      out[u(j)] = weights[j];
    }
    return out;
  }
};

}  // namespace srweyl::geometry

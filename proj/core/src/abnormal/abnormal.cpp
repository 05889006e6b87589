#include "srweyl/abnormal/abnormal.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>

#include "srweyl/error.hpp"
#include "srweyl/hamiltonian/hamiltonian.hpp"

namespace srweyl::abnormal {

namespace {

constexpr double kMembershipTolerance = 1e-8;
constexpr double kRankTolerance = 1e-6;

using Layout = geometry::VariableLayout;

std::vector<Rational> ring_point(const Stratification& strat, const CovectorPoint& p) {
  const auto& s = strat.structure;
  if (p.x.size() != s.dim || p.u.size() != s.dim - s.rank) {
    throw InvalidStructure("covector point has the wrong number of coordinates");
  }
  const Layout layout = s.layout();
  std::vector<Rational> out(layout.size(), Rational(0));
  for (std::size_t a = 0; a < s.dim; ++a) out[layout.x(a)] = p.x[a];
  for (std::size_t k = s.rank; k < s.dim; ++k) out[layout.u(k)] = p.u[k - s.rank];
  return out;
}

bool is_zero_vector(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return algebra::is_zero(r); });
}

/// Kernel of the form on the locus tangent space via the bordered matrix [[M, g^T], [g, 0]].
std::vector<QVector> bordered_kernel(const algebra::QMatrix& form, const QVector& gradient) {
  const std::size_t size = form.rows();
  algebra::QMatrix bordered(size + 1, size + 1, Rational(0));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) bordered(i, j) = form(i, j);
    bordered(i, size) = gradient[i];
    bordered(size, i) = gradient[i];
  }
  std::vector<QVector> out;
  for (auto& v : algebra::kernel_basis(bordered)) {
    v.pop_back();
    out.push_back(std::move(v));
  }
  return out;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Rational next() {
    const long num = static_cast<long>(rng_() % 9) - 4;
    const long den = static_cast<long>(rng_() % 3) + 1;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

 private:
  std::mt19937_64 rng_;
};

struct SampleStats {
  std::vector<CovectorPoint> points;
  std::size_t zero_section = 0;
  std::size_t outside_w = 0;
  bool parametrizable = true;
};

/// Draws points of the locus; with `require_w` only points of W_D are kept.
SampleStats sample_locus(const Stratification& strat, std::size_t count, std::uint64_t seed, bool require_w) {
  const auto& s = strat.structure;
  const Layout layout = s.layout();
  const std::size_t n = s.dim, m = s.rank;
  SampleStats stats;
  if (count == 0) return stats;

  // Variables in which the locus is linear; attempts cycle through them so
  // every component of a reducible locus gets sampled.
  std::vector<std::size_t> solve_vars;
  if (!strat.all_of_annihilator) {
    for (std::size_t k = m; k < n; ++k) {
      if (strat.locus.degree_in(layout.u(k)) == 1) solve_vars.push_back(layout.u(k));
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (strat.locus.degree_in(layout.x(a)) == 1) solve_vars.push_back(layout.x(a));
    }
    if (solve_vars.empty()) {
      stats.parametrizable = false;
      return stats;
    }
  }

  Sampler rng(seed);
  const std::size_t max_attempts = 50 * count + 200;
  for (std::size_t attempt = 0; attempt < max_attempts && stats.points.size() < count; ++attempt) {
    CovectorPoint p;
    for (std::size_t a = 0; a < n; ++a) p.x.push_back(rng.next());
    for (std::size_t k = m; k < n; ++k) p.u.push_back(rng.next());
    if (!solve_vars.empty()) {
      const std::size_t var = solve_vars[attempt % solve_vars.size()];
      std::vector<std::pair<std::size_t, Rational>> values;
      for (std::size_t a = 0; a < n; ++a) {
        if (layout.x(a) != var) values.emplace_back(layout.x(a), p.x[a]);
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (layout.u(k) != var) values.emplace_back(layout.u(k), k < m ? Rational(0) : p.u[k - m]);
      }
      const Poly line = strat.locus.specialize(values);
      const auto coeffs = line.coefficients_in(var);
      const auto slope = coeffs.find(1);
      if (slope == coeffs.end() || !slope->second.is_constant()) continue;
      const auto offset = coeffs.find(0);
      const Rational root =
          offset == coeffs.end() ? Rational(0) : Rational(-offset->second.constant_term() / slope->second.constant_term());
      if (layout.is_x(var)) {
        p.x[var] = root;
      } else {
        p.u[var - layout.u(m)] = root;
      }
    }
    const KernelInfo info = kernel_at(strat, p);
    if (info.zero_section) {
      ++stats.zero_section;
      continue;
    }
    if (require_w && !info.in_w) {
      ++stats.outside_w;
      continue;
    }
    stats.points.push_back(std::move(p));
  }
  return stats;
}

/// Floating-point copy of the form, the locus and its gradient.
class NumericLocus {
 public:
  explicit NumericLocus(const Stratification& strat)
      : dim_(strat.structure.dim), rank_(strat.structure.rank), ring_(strat.structure.layout().size(), 0.0) {
    const std::size_t size = strat.form.size();
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) form_.emplace_back(strat.form.matrix(i, j));
    }
    for (const auto& g : strat.locus_gradient) gradient_.emplace_back(g);
    if (!strat.all_of_annihilator) locus_ = algebra::NumericPoly(strat.locus);
    for (const auto& field : strat.structure.frame) {
      for (const auto& component : field.components()) frame_.emplace_back(component);
    }
    bordered_ = !strat.all_of_annihilator;
  }

  std::size_t size() const { return 2 * dim_ - rank_; }

  void load(std::span<const double> state) {
    std::fill(ring_.begin(), ring_.end(), 0.0);
    for (std::size_t a = 0; a < dim_; ++a) ring_[a] = state[a];
    for (std::size_t k = rank_; k < dim_; ++k) ring_[dim_ + k] = state[dim_ + k - rank_];
  }

  double locus_value() const { return bordered_ ? locus_(ring_) : 0.0; }

  Eigen::MatrixXd matrix() const {
    const std::size_t size = this->size();
    const std::size_t full = bordered_ ? size + 1 : size;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(full), static_cast<Eigen::Index>(full));
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = form_[i * size + j](ring_);
      }
    }
    if (bordered_) {
      const auto last = static_cast<Eigen::Index>(size);
      for (std::size_t i = 0; i < size; ++i) {
        const double g = gradient_[i](ring_);
        out(static_cast<Eigen::Index>(i), last) = g;
        out(last, static_cast<Eigen::Index>(i)) = g;
      }
    }
    return out;
  }

  /// Unit kernel direction and the relative gap of the next singular value.
  std::pair<Eigen::VectorXd, double> kernel() const {
    const Eigen::MatrixXd a = matrix();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const Eigen::Index last = sv.size() - 1;
    const double scale = std::max(sv(0), 1e-300);
    const double gap = last >= 1 ? sv(last - 1) / scale : 1.0;
    Eigen::VectorXd v = svd.matrixV().col(last).head(static_cast<Eigen::Index>(size()));
    const double norm = v.norm();
    if (norm > 0) v /= norm;
    return {v, gap};
  }

  double frame(std::size_t i, std::size_t a) const { return frame_[i * dim_ + a](ring_); }

 private:
  std::size_t dim_;
  std::size_t rank_;
  std::vector<double> ring_;
  std::vector<algebra::NumericPoly> form_;
  std::vector<algebra::NumericPoly> gradient_;
  std::vector<algebra::NumericPoly> frame_;
  algebra::NumericPoly locus_;
  bool bordered_ = false;
};

using PhaseField = std::vector<Poly>;  // components on x1..xn, u1..un

PhaseField bracket(const PhaseField& a, const PhaseField& b, std::size_t phase_dim) {
  PhaseField out(a.size(), Poly(a.front().nvars()));
  for (std::size_t c = 0; c < a.size(); ++c) {
    for (std::size_t v = 0; v < phase_dim; ++v) {
      if (!a[v].is_zero()) out[c] += a[v] * b[c].derivative(v);
      if (!b[v].is_zero()) out[c] -= b[v] * a[c].derivative(v);
    }
  }
  return out;
}

}  // namespace

RestrictedForm restricted_form(const SubRiemannianStructure& s, const StructureFunctions& c) {
  const Layout layout = s.layout();
  const std::size_t n = s.dim, m = s.rank, nv = layout.size();
  RestrictedForm out{n, m, algebra::zero_poly_matrix(2 * n - m, 2 * n - m, nv)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Poly entry(nv);
      for (std::size_t k = m; k < n; ++k) {
        if (!c(k, i, j).is_zero()) entry -= c(k, i, j) * Poly::variable(nv, layout.u(k));
      }
      out.matrix(j, i) = -entry;
      out.matrix(i, j) = std::move(entry);
    }
  }
  for (std::size_t k = m; k < n; ++k) {
    const std::size_t du = n + (k - m);
    out.matrix(k, du) = Poly::constant(nv, -1);
    out.matrix(du, k) = Poly::constant(nv, 1);
  }
  return out;
}

Poly squarefree_part(const Poly& p) {
  if (p.is_zero() || p.is_constant()) return p;
  Poly common = p;
  for (std::size_t v = 0; v < p.nvars(); ++v) {
    if (p.uses_variable(v)) common = algebra::gcd_poly(common, p.derivative(v));
  }
  auto quotient = algebra::divide_exact(p, common);
  if (!quotient) throw InternalInconsistency("gcd does not divide its argument");
  return quotient->monic();
}

Stratification wedge_locus(const SubRiemannianStructure& s, const StructureFunctions& c) {
  Stratification out;
  out.structure = s;
  out.form = restricted_form(s, c);
  const Layout layout = s.layout();
  const std::size_t n = s.dim, m = s.rank;
  if (m % 2 == 1) {
    out.all_of_annihilator = true;
    out.locus_dimension = 2 * n - m;
    return out;
  }
  out.pfaffian = algebra::pfaffian(out.form.matrix);
  out.locus = squarefree_part(out.pfaffian);
  out.locus_dimension = 2 * n - m - 1;
  for (std::size_t i = 0; i < n; ++i) out.locus_gradient.push_back(s.frame[i].apply(out.locus));
  for (std::size_t k = m; k < n; ++k) out.locus_gradient.push_back(out.locus.derivative(layout.u(k)));
  return out;
}

KernelInfo kernel_at(const Stratification& strat, const CovectorPoint& point) {
  const auto ring = ring_point(strat, point);
  KernelInfo info;
  const algebra::QMatrix form = algebra::evaluate(strat.form.matrix, ring);
  info.basis = algebra::kernel_basis(form);
  info.dim = info.basis.size();
  info.zero_section = is_zero_vector(point.u);
  if (info.zero_section) return info;

  if (strat.all_of_annihilator) {
    info.in_tilde = true;
    info.restricted_basis = info.basis;
    info.in_w = info.dim == 1;
    return info;
  }
  info.in_tilde = algebra::is_zero(strat.locus.evaluate(std::span<const Rational>(ring)));
  if (!info.in_tilde) return info;
  QVector gradient;
  for (const auto& g : strat.locus_gradient) gradient.push_back(g.evaluate(std::span<const Rational>(ring)));
  if (is_zero_vector(gradient)) {
    info.singular_stratum = true;
    return info;
  }
  info.restricted_basis = bordered_kernel(form, gradient);
  info.in_w = info.restricted_basis.size() == 1;
  return info;
}

Characteristic characteristic_direction(const Stratification& strat, const CovectorPoint& point) {
  const KernelInfo info = kernel_at(strat, point);
  if (!info.in_w) throw NoCharacteristic("covector is not in W_D");
  const auto& s = strat.structure;
  Characteristic out;
  out.direction = info.restricted_basis.front();
  const auto pivot = std::find_if(out.direction.begin(), out.direction.end(),
                                  [](const Rational& r) { return !algebra::is_zero(r); });
  const Rational scale = 1 / Rational(*pivot);
  for (auto& v : out.direction) v *= scale;

  const auto ring = ring_point(strat, point);
  out.projection.assign(s.dim, Rational(0));
  for (std::size_t i = 0; i < s.dim; ++i) {
    if (algebra::is_zero(out.direction[i])) continue;
    for (std::size_t a = 0; a < s.dim; ++a) {
      out.projection[a] += out.direction[i] * s.frame[i][a].evaluate(std::span<const Rational>(ring));
    }
  }
  return out;
}

AbnormalTrajectory integrate_abnormal(const Stratification& strat, const CovectorPoint& start, double horizon,
                                      std::size_t steps, double speed) {
  const KernelInfo info = kernel_at(strat, start);
  if (!info.in_w) throw NoCharacteristic("initial covector is not in W_D");
  const auto& s = strat.structure;
  const std::size_t n = s.dim;

  const auto exact = characteristic_direction(strat, start);
  auto reference = std::make_shared<Eigen::VectorXd>(static_cast<Eigen::Index>(exact.direction.size()));
  for (std::size_t i = 0; i < exact.direction.size(); ++i) (*reference)(static_cast<Eigen::Index>(i)) = exact.direction[i].get_d();

  auto model = std::make_shared<NumericLocus>(strat);
  const hamiltonian::OdeRhs rhs = [model, reference, n, speed](const std::vector<double>& state,
                                                              std::vector<double>& derivative, double) {
    model->load(state);
    auto [v, gap] = model->kernel();
    if (v.dot(*reference) < 0) v = -v;
    *reference = v;
    v *= speed;
    std::fill(derivative.begin(), derivative.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = v(static_cast<Eigen::Index>(i));
      if (xi == 0.0) continue;
      for (std::size_t a = 0; a < n; ++a) derivative[a] += xi * model->frame(i, a);
    }
    for (std::size_t k = n; k < static_cast<std::size_t>(v.size()); ++k) derivative[k] = v(static_cast<Eigen::Index>(k));
  };

  std::vector<double> initial;
  for (const auto& x : start.x) initial.push_back(x.get_d());
  for (const auto& u : start.u) initial.push_back(u.get_d());

  AbnormalTrajectory out;
  out.speed = speed;
  const auto states = hamiltonian::integrate_samples(rhs, std::move(initial), horizon, steps);
  NumericLocus check(strat);
  for (std::size_t k = 0; k < states.size(); ++k) {
    check.load(states[k]);
    const double value = check.locus_value();
    if (std::abs(value) > kMembershipTolerance) {
      out.truncated = true;
      break;
    }
    const auto [v, gap] = check.kernel();
    out.times.push_back(horizon * static_cast<double>(k) / static_cast<double>(steps));
    out.states.push_back(states[k]);
    out.locus_values.push_back(value);
    out.in_tilde.push_back(true);
    out.in_w.push_back(gap > kRankTolerance);
  }
  return out;
}

std::string to_string(OrderVerdict v) {
  return v == OrderVerdict::MinimalOrder ? "MinimalOrder" : "NotCertified";
}

MinimalOrderSummary minimal_order_verdict(const std::vector<AbnormalTrajectory>& trajectories) {
  MinimalOrderSummary out;
  for (const auto& t : trajectories) {
    bool ok = !t.truncated && !t.in_w.empty();
    for (std::size_t k = 0; k < t.in_w.size() && ok; ++k) {
      if (t.in_w[k]) continue;
      const bool left_inside = k > 0 && t.in_w[k - 1];
      const bool right_inside = k + 1 < t.in_w.size() && t.in_w[k + 1];
      ok = left_inside && right_inside;
    }
    out.verdicts.push_back(ok ? OrderVerdict::MinimalOrder : OrderVerdict::NotCertified);
    if (ok) ++out.certified;
  }
  out.fraction = trajectories.empty() ? 0.0
                                      : static_cast<double>(out.certified) / static_cast<double>(trajectories.size());
  return out;
}

std::vector<CovectorPoint> sample_w(const Stratification& strat, std::size_t count, std::uint64_t seed) {
  return sample_locus(strat, count, seed, true).points;
}

fundamental::MinimalOrderEvidence MinimalOrderCertificate::evidence() const {
  fundamental::MinimalOrderEvidence out;
  out.applicable = applicable;
  out.all_minimal_order = applicable && stable && all_minimal_order;
  if (!runs.empty()) {
    out.trajectories = runs.back().trajectories;
    out.certified = runs.back().certified;
  }
  out.summary = summary;
  return out;
}

MinimalOrderCertificate minimal_order_certificate(const SubRiemannianStructure& s, const StructureFunctions& c,
                                                  const MinimalOrderOptions& options) {
  MinimalOrderCertificate out;
  const Stratification strat = wedge_locus(s, c);
  const std::size_t finest = 4 * options.samples;
  const SampleStats stats = sample_locus(strat, finest, options.seed, true);
  if (!stats.parametrizable) {
    out.summary = "the locus has no variable of degree one, so no rational sampling of W_D";
    return out;
  }
  if (stats.points.empty()) {
    out.summary = "no abnormal extremals: every sampled point of the locus lies in the zero section or outside W_D";
    return out;
  }
  out.applicable = true;
  for (const auto& p : stats.points) {
    out.trajectories.push_back(integrate_abnormal(strat, p, options.horizon, options.steps));
  }
  const auto summary = minimal_order_verdict(out.trajectories);
  std::vector<bool> all_certified;
  for (const std::size_t requested : {options.samples, 2 * options.samples, finest}) {
    NetRun run;
    run.requested = requested;
    run.trajectories = std::min(requested, out.trajectories.size());
    for (std::size_t k = 0; k < run.trajectories; ++k) {
      if (summary.verdicts[k] == OrderVerdict::MinimalOrder) ++run.certified;
    }
    all_certified.push_back(run.certified == run.trajectories);
    out.runs.push_back(run);
  }
  out.stable = std::adjacent_find(all_certified.begin(), all_certified.end(), std::not_equal_to<>()) ==
               all_certified.end();
  out.all_minimal_order = out.stable && all_certified.back();
  std::ostringstream msg;
  msg << "sampling certificate, not a proof: " << out.runs.back().certified << "/" << out.runs.back().trajectories
      << " trajectories of minimal order on nets of " << options.samples << ", " << 2 * options.samples << " and "
      << finest << " initial points (seed " << options.seed << ", T = " << options.horizon << ", " << options.steps
      << " steps)";
  if (stats.points.size() < finest) msg << "; only " << stats.points.size() << " points of W_D found";
  out.summary = msg.str();
  return out;
}

Stratification weak_stratification(const SubRiemannianStructure& s, const StructureFunctions& c, std::size_t depth,
                                   std::size_t samples, std::uint64_t seed) {
  Stratification strat = wedge_locus(s, c);
  Stratum top;
  top.level = 0;
  top.dimension = strat.locus_dimension;
  const SampleStats stats = sample_locus(strat, samples, seed, false);
  for (const auto& p : stats.points) {
    const KernelInfo info = kernel_at(strat, p);
    ++top.sampled;
    if (info.in_w) {
      ++top.one_dimensional;
    } else {
      ++top.degenerate;
    }
  }
  if (!stats.parametrizable) {
    top.note = "no rational parametrization of the locus; not sampled";
  } else if (top.sampled == 0) {
    top.note = "no sampled point off the zero section";
  } else {
    top.note = "one-dimensional characteristic at " + std::to_string(top.one_dimensional) + "/" +
               std::to_string(top.sampled) + " sampled points";
  }
  strat.strata.push_back(top);
  if (depth == 0) return strat;

  Stratum next;
  next.level = 1;
  next.sampled = top.degenerate;
  next.degenerate = top.degenerate;
  next.note = top.degenerate == 0 ? "empty at sampled points"
                                  : "sampled points with a larger kernel; manifold structure not verified (heuristic)";
  strat.strata.push_back(next);
  // TODO: recurse into the degeneracy set once a rational parametrization of its minors is available.
  return strat;
}

NormalityResult strict_normality_test(const SubRiemannianStructure& s, const StructureFunctions& c,
                                      std::span<const double> x0, std::span<const double> u0, double horizon,
                                      std::size_t samples, std::optional<std::size_t> depth) {
  const std::size_t n = s.dim, m = s.rank;
  const Layout layout = s.layout();
  const std::size_t nv = layout.size(), phase = 2 * n;
  double energy = 0.0;
  for (std::size_t i = 0; i < m && i < u0.size(); ++i) energy += u0[i] * u0[i];
  if (energy == 0.0) throw InvalidStructure("strict normality needs h != 0 at the start");

  NormalityResult out;
  out.depth = depth.value_or(n - m + 1);

  PhaseField h(phase, Poly(nv));
  for (std::size_t i = 0; i < m; ++i) {
    const Poly ui = Poly::variable(nv, layout.u(i));
    for (std::size_t a = 0; a < n; ++a) h[layout.x(a)] += ui * s.frame[i][a];
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!c(k, i, j).is_zero()) h[layout.u(j)] += c(k, i, j) * ui * Poly::variable(nv, layout.u(k));
      }
    }
  }
  std::vector<algebra::NumericPoly> columns;  // flattened fields, phase components each
  std::vector<PhaseField> current;
  for (std::size_t i = 0; i < n; ++i) {
    PhaseField v(phase, Poly(nv));
    v[layout.u(i)] = Poly::constant(nv, 1);
    current.push_back(std::move(v));
  }
  for (std::size_t level = 0;; ++level) {
    for (const auto& v : current) {
      for (const auto& comp : v) columns.emplace_back(comp);
    }
    if (level == out.depth) break;
    for (auto& v : current) v = bracket(h, v, phase);
  }
  const std::size_t fields = columns.size() / phase;

  const auto trajectory = hamiltonian::integrate_normal(s, c, x0, u0, horizon, samples);
  std::vector<double> ring(nv, 0.0);
  bool stable = true;
  for (const auto& state : trajectory.states) {
    std::copy(state.begin(), state.end(), ring.begin());
    Eigen::MatrixXd a(static_cast<Eigen::Index>(phase), static_cast<Eigen::Index>(fields));
    for (std::size_t f = 0; f < fields; ++f) {
      for (std::size_t r = 0; r < phase; ++r) {
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f)) = columns[f * phase + r](ring);
      }
      const double norm = a.col(static_cast<Eigen::Index>(f)).norm();
      if (norm > 0) a.col(static_cast<Eigen::Index>(f)) /= norm;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    const double scale = sv.size() > 0 ? sv(0) : 0.0;
    std::vector<std::size_t> ranks;
    for (const double tol : {1e-6, 1e-8, 1e-10}) {
      std::size_t r = 0;
      for (Eigen::Index k = 0; k < sv.size(); ++k) r += sv(k) > tol * scale ? 1 : 0;
      ranks.push_back(r);
    }
    if (ranks.front() != ranks.back()) stable = false;
    out.dims.push_back(ranks.front());
    out.max_dim = std::max(out.max_dim, ranks.front());
  }
  out.indeterminate = !stable;
  out.strictly_normal = stable && out.max_dim == phase;
  return out;
}

}  // namespace srweyl::abnormal

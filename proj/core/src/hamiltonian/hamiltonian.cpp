#include "srweyl/hamiltonian/hamiltonian.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "srweyl/error.hpp"

namespace srweyl::hamiltonian {

Poly hamiltonian(const SubRiemannianStructure& s) {
  const auto layout = s.layout();
  Poly h(layout.size());
  for (std::size_t i = 0; i < s.rank; ++i) {
    const Poly u = Poly::variable(layout.size(), layout.u(i));
    h += u * u;
  }
  return h * Rational(1, 2);
}

Poly h1_derive(const SubRiemannianStructure& s, const StructureFunctions& c, const Poly& f) {
  const auto layout = s.layout();
  const std::size_t nvars = layout.size();
  Poly out(nvars);
  for (std::size_t i = 0; i < s.rank; ++i) {
    Poly xf = s.frame[i].apply(f);
    if (!xf.is_zero()) out += Poly::variable(nvars, layout.u(i)) * xf;
  }
  for (std::size_t j = 0; j < s.dim; ++j) {
    if (!f.uses_variable(layout.u(j))) continue;
    Poly drift(nvars);
    for (std::size_t i = 0; i < s.rank; ++i) {
      for (std::size_t k = 0; k < s.dim; ++k) {
        const Poly& ck = c(k, i, j);
        if (ck.is_zero()) continue;
        drift += ck * Poly::variable(nvars, layout.u(i)) * Poly::variable(nvars, layout.u(k));
      }
    }
    if (!drift.is_zero()) out += drift * f.derivative(layout.u(j));
  }
  return out;
}

AlphaJet AlphaJet::symbolic(const SubRiemannianStructure& s, const Rational& value) {
  const auto layout = s.layout();
  AlphaJet jet{value, {}};
  for (std::size_t j = 0; j < s.rank; ++j) jet.gradient.push_back(Poly::variable(layout.size(), layout.alpha(j)));
  jet.validate(s);
  return jet;
}

AlphaJet AlphaJet::numeric(const SubRiemannianStructure& s, const Rational& value, std::span<const Rational> gradient) {
  AlphaJet jet{value, {}};
  for (const auto& g : gradient) jet.gradient.push_back(Poly::constant(s.layout().size(), g));
  jet.validate(s);
  return jet;
}

void AlphaJet::validate(const SubRiemannianStructure& s) const {
  if (algebra::is_zero(value)) throw InvalidStructure("conformal factor must be nonzero at the base point");
  if (gradient.size() != s.rank) throw InvalidStructure("jet gradient must have one entry per horizontal field");
}

Poly h2_derive(const SubRiemannianStructure& s, const StructureFunctions& c, const AlphaJet& alpha, const Poly& f) {
  alpha.validate(s);
  const auto layout = s.layout();
  const Rational inv = 1 / alpha.value;
  Poly out = h1_derive(s, c, f) * (inv * inv);
  Poly norm(layout.size());
  for (std::size_t i = 0; i < s.rank; ++i) {
    const Poly u = Poly::variable(layout.size(), layout.u(i));
    norm += u * u;
  }
  for (std::size_t j = 0; j < s.rank; ++j) {
    if (alpha.gradient[j].is_zero() || !f.uses_variable(layout.u(j))) continue;
    out += alpha.gradient[j] * norm * f.derivative(layout.u(j)) * (inv * inv * inv);
  }
  return out;
}

NumericModel::NumericModel(const SubRiemannianStructure& s, const StructureFunctions& c)
    : dim_(s.dim), rank_(s.rank), ring_size_(s.layout().size()) {
  frame_.reserve(rank_ * dim_);
  for (std::size_t i = 0; i < rank_; ++i) {
    for (std::size_t a = 0; a < dim_; ++a) frame_.emplace_back(s.frame[i][a]);
  }
  structure_.reserve(dim_ * rank_ * dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    for (std::size_t i = 0; i < rank_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) structure_.emplace_back(c(k, i, j));
    }
  }
}

void NumericModel::load(std::span<const double> state, std::vector<double>& ring_point) const {
  ring_point.assign(ring_size_, 0.0);
  std::copy(state.begin(), state.begin() + static_cast<long>(2 * dim_), ring_point.begin());
}

void NumericModel::normal_field(std::span<const double> state, std::span<double> derivative) const {
  thread_local std::vector<double> point;
  load(state, point);
  const double* u = state.data() + dim_;
  for (std::size_t a = 0; a < dim_; ++a) {
    double v = 0.0;
    for (std::size_t i = 0; i < rank_; ++i) v += u[i] * frame(i, a, point);
    derivative[a] = v;
  }
  for (std::size_t j = 0; j < dim_; ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < rank_; ++i) {
      if (u[i] == 0.0) continue;
      for (std::size_t k = 0; k < dim_; ++k) {
        if (!structure_is_zero(k, i, j)) v += structure(k, i, j, point) * u[i] * u[k];
      }
    }
    derivative[dim_ + j] = v;
  }
}

double NumericModel::energy(std::span<const double> state) const {
  double h = 0.0;
  for (std::size_t i = 0; i < rank_; ++i) h += state[dim_ + i] * state[dim_ + i];
  return 0.5 * h;
}

std::vector<std::vector<double>> integrate_samples(const OdeRhs& rhs, std::vector<double> initial, double horizon,
                                                   std::size_t steps, double tolerance) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  if (steps < 1) throw IntegrationError("need at least one output step");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw IntegrationError("horizon must be positive and finite");
  std::vector<double> times(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) times[k] = horizon * static_cast<double>(k) / static_cast<double>(steps);
  times.back() = horizon;

  std::vector<State> samples;
  samples.reserve(steps + 1);
  auto observer = [&](const State& x, double t) {
    for (double v : x) {
      if (!std::isfinite(v)) throw IntegrationError("non-finite state at t = " + std::to_string(t));
    }
    samples.push_back(x);
  };
  auto stepper = odeint::make_dense_output(tolerance, tolerance, odeint::runge_kutta_dopri5<State>());
  try {
    odeint::integrate_times(stepper, rhs, initial, times.begin(), times.end(), horizon / static_cast<double>(steps),
                            observer, odeint::max_step_checker(100000));
  } catch (const IntegrationError&) {
    throw;
  } catch (const std::exception& e) {
    throw IntegrationError(std::string("integration failed: ") + e.what());
  }
  if (samples.size() != steps + 1) throw IntegrationError("integration stopped early");
  return samples;
}

Trajectory integrate_normal(const SubRiemannianStructure& s, const StructureFunctions& c, std::span<const double> x0,
                            std::span<const double> u0, double horizon, std::size_t steps) {
  if (x0.size() != s.dim || u0.size() != s.dim) throw InvalidStructure("initial state has wrong length");
  const NumericModel model(s, c);
  std::vector<double> initial(x0.begin(), x0.end());
  initial.insert(initial.end(), u0.begin(), u0.end());
  auto rhs = [&model](const std::vector<double>& x, std::vector<double>& dxdt, double) {
    model.normal_field(x, dxdt);
  };
  Trajectory out;
  out.states = integrate_samples(rhs, std::move(initial), horizon, steps);
  const double h0 = model.energy(out.states.front());
  for (std::size_t k = 0; k < out.states.size(); ++k) {
    out.times.push_back(horizon * static_cast<double>(k) / static_cast<double>(steps));
    const double h = model.energy(out.states[k]);
    out.energy.push_back(h);
    const double drift = h0 != 0.0 ? std::abs(h - h0) / std::abs(h0) : std::abs(h - h0);
    out.relative_energy_drift = std::max(out.relative_energy_drift, drift);
  }
  return out;
}

void write_csv(std::ostream& out, const Trajectory& trajectory, std::size_t dim) {
  out << "t";
  for (std::size_t i = 1; i <= dim; ++i) out << ",x" << i;
  for (std::size_t i = 1; i <= dim; ++i) out << ",u" << i;
  out << ",h\n";
  out << std::setprecision(17);
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << trajectory.times[k];
    for (double v : trajectory.states[k]) out << ',' << v;
    out << ',' << trajectory.energy[k] << '\n';
  }
}

}  // namespace srweyl::hamiltonian

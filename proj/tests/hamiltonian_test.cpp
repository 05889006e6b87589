#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "models.hpp"
#include "srweyl/error.hpp"
#include "srweyl/hamiltonian/hamiltonian.hpp"
#include "support.hpp"

namespace srweyl {
namespace {

using algebra::Poly;
using algebra::Rational;
using geometry::SubRiemannianStructure;
using hamiltonian::AlphaJet;

Poly P(const SubRiemannianStructure& s, const std::string& text) { return test::poly(text, s.layout().names()); }

TEST(Hamiltonian, HalfSquaredNormOfHorizontalMomenta) {
  const auto heis = test::heisenberg();
  EXPECT_EQ(hamiltonian::hamiltonian(heis), P(heis, "(u1^2 + u2^2)/2"));
  const auto cartan = test::cartan();
  EXPECT_EQ(hamiltonian::hamiltonian(cartan), P(cartan, "(u1^2 + u2^2)/2"));
  const auto free35 = test::model_3_5();
  EXPECT_EQ(hamiltonian::hamiltonian(free35), P(free35, "(u1^2 + u2^2 + u3^2)/2"));
}

TEST(H1Derive, EnergyIsConserved) {
  for (const auto& s : {test::heisenberg(), test::engel(), test::cartan(), test::model_3_5(), test::model_3_6(),
                        test::model_2_3_5_6(), test::martinet()}) {
    const auto c = geometry::structure_functions(s);
    EXPECT_TRUE(hamiltonian::h1_derive(s, c, hamiltonian::hamiltonian(s)).is_zero()) << s.name;
  }
}

TEST(H1Derive, HeisenbergExamples) {
  const auto s = test::heisenberg();
  const auto c = geometry::structure_functions(s);
  EXPECT_TRUE(hamiltonian::h1_derive(s, c, P(s, "u3")).is_zero());
  EXPECT_EQ(hamiltonian::h1_derive(s, c, P(s, "x1")), P(s, "u1"));
  EXPECT_EQ(hamiltonian::h1_derive(s, c, P(s, "u1")), P(s, "-u2*u3"));
  EXPECT_EQ(hamiltonian::h1_derive(s, c, P(s, "u2")), P(s, "u1*u3"));
  EXPECT_EQ(hamiltonian::h1_derive(s, c, P(s, "x3")), P(s, "-x2*u1/2 + x1*u2/2"));
}

TEST(H1Derive, LeibnizOnRandomPairs) {
  const auto s = test::engel();
  const auto c = geometry::structure_functions(s);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const Poly fl = test::random_poly(rng, s.layout().size(), 3, 4, 2 * s.dim);
    const Poly gl = test::random_poly(rng, s.layout().size(), 3, 4, 2 * s.dim);
    const Poly lhs = hamiltonian::h1_derive(s, c, fl * gl);
    const Poly rhs = fl * hamiltonian::h1_derive(s, c, gl) + gl * hamiltonian::h1_derive(s, c, fl);
    EXPECT_EQ(lhs, rhs) << "trial " << trial;
  }
}

TEST(H2Derive, ConstantJetRescales) {
  const auto s = test::engel();
  const auto c = geometry::structure_functions(s);
  const std::vector<Rational> zero(2, Rational(0));
  const AlphaJet jet = AlphaJet::numeric(s, Rational(3), zero);
  for (const char* f : {"u1", "u2*u3", "x1*u4 + u3^2", "x4"}) {
    EXPECT_EQ(hamiltonian::h2_derive(s, c, jet, P(s, f)), hamiltonian::h1_derive(s, c, P(s, f)) * Rational(1, 9)) << f;
  }
}

TEST(H2Derive, HeisenbergSymbolicJet) {
  const auto s = test::heisenberg();
  const auto c = geometry::structure_functions(s);
  const AlphaJet jet = AlphaJet::symbolic(s, Rational(2));
  // h1(u1) = -u2*u3; gradient term a1/alpha^3 * (u1^2 + u2^2).
  EXPECT_EQ(hamiltonian::h2_derive(s, c, jet, P(s, "u1")), P(s, "-u2*u3/4 + a1*(u1^2 + u2^2)/8"));
  EXPECT_TRUE(hamiltonian::h2_derive(s, c, jet, P(s, "7")).is_zero());
}

TEST(H2Derive, RejectsZeroValue) {
  const auto s = test::heisenberg();
  EXPECT_THROW(AlphaJet::symbolic(s, Rational(0)), InvalidStructure);
}

TEST(IntegrateNormal, HeisenbergStraightLine) {
  const auto s = test::heisenberg();
  const auto c = geometry::structure_functions(s);
  const std::vector<double> x0{0, 0, 0}, u0{1, 0, 0};
  const auto traj = hamiltonian::integrate_normal(s, c, x0, u0, 2.0, 20);
  ASSERT_EQ(traj.states.size(), 21u);
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    EXPECT_NEAR(traj.states[k][0], traj.times[k], 1e-10);
    EXPECT_NEAR(traj.states[k][1], 0.0, 1e-12);
    EXPECT_NEAR(traj.states[k][2], 0.0, 1e-12);
  }
}

TEST(IntegrateNormal, HeisenbergCircle) {
  const auto s = test::heisenberg();
  const auto c = geometry::structure_functions(s);
  const std::vector<double> x0{0, 0, 0}, u0{1, 0, 1};
  const auto traj = hamiltonian::integrate_normal(s, c, x0, u0, 10.0, 100);
  EXPECT_LE(traj.relative_energy_drift, 1e-9);
  for (std::size_t k = 0; k < traj.states.size(); k += 10) {
    const double t = traj.times[k];
    const auto& y = traj.states[k];
    EXPECT_NEAR(y[0], std::sin(t), 1e-8);
    EXPECT_NEAR(y[1], 1.0 - std::cos(t), 1e-8);
    EXPECT_NEAR(y[2], 0.5 * (t - std::sin(t)), 1e-8);
  }
}

TEST(IntegrateNormal, ZeroHorizontalMomentumIsStationary) {
  const auto s = test::engel();
  const auto c = geometry::structure_functions(s);
  const std::vector<double> x0{0.3, -0.2, 0.1, 0.5}, u0{0, 0, 1.5, -2};
  const auto traj = hamiltonian::integrate_normal(s, c, x0, u0, 1.0, 4);
  for (const auto& y : traj.states) {
    for (std::size_t a = 0; a < 4; ++a) EXPECT_DOUBLE_EQ(y[a], x0[a]);
  }
}

TEST(IntegrateNormal, FiniteDifferencesMatchSymbolicDerivation) {
  const auto s = test::engel();
  const auto c = geometry::structure_functions(s);
  const Poly f = P(s, "x3*u1 + u3^2 - x1*x2*u4");
  const algebra::NumericPoly fn(f);
  const algebra::NumericPoly dfn(hamiltonian::h1_derive(s, c, f));
  const std::vector<double> x0{0.1, 0.2, -0.3, 0.4}, u0{0.7, -0.4, 0.9, 0.6};
  const double dt = 1e-3;
  const auto traj = hamiltonian::integrate_normal(s, c, x0, u0, 1.0, 1000);
  std::vector<double> ring(s.layout().size(), 0.0);
  for (std::size_t k = 100; k < 1000; k += 150) {
    auto value = [&](std::size_t idx) {
      std::copy(traj.states[idx].begin(), traj.states[idx].end(), ring.begin());
      return fn(ring);
    };
    const double fd = (value(k + 1) - value(k - 1)) / (2 * dt);
    std::copy(traj.states[k].begin(), traj.states[k].end(), ring.begin());
    EXPECT_NEAR(fd, dfn(ring), 1e-6) << "sample " << k;
  }
}

TEST(IntegrateNormal, RejectsBadArguments) {
  const auto s = test::heisenberg();
  const auto c = geometry::structure_functions(s);
  const std::vector<double> x0{0, 0, 0}, u0{1, 0, 0};
  EXPECT_THROW(hamiltonian::integrate_normal(s, c, x0, u0, 1.0, 0), IntegrationError);
  EXPECT_THROW(hamiltonian::integrate_normal(s, c, x0, u0, -1.0, 5), IntegrationError);
}

TEST(IntegrateNormal, BlowUpIsReported) {
  // u' = u^2 blows up at t = 1.
  auto rhs = [](const std::vector<double>& y, std::vector<double>& dy, double) { dy[0] = y[0] * y[0]; };
  EXPECT_THROW(hamiltonian::integrate_samples(rhs, {1.0}, 2.0, 10), IntegrationError);
}

TEST(Trajectory, CsvLayout) {
  const auto s = test::heisenberg();
  const auto c = geometry::structure_functions(s);
  const std::vector<double> x0{0, 0, 0}, u0{1, 0, 1};
  const auto traj = hamiltonian::integrate_normal(s, c, x0, u0, 1.0, 2);
  std::ostringstream out;
  hamiltonian::write_csv(out, traj, 3);
  std::istringstream in(out.str());
  std::string header, row;
  std::getline(in, header);
  EXPECT_EQ(header, "t,x1,x2,x3,u1,u2,u3,h");
  std::size_t rows = 0;
  while (std::getline(in, row)) {
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 7);
    ++rows;
  }
  EXPECT_EQ(rows, 3u);
}

}  // namespace
}  // namespace srweyl

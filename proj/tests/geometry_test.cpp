#include <gtest/gtest.h>

#include "models.hpp"
#include "srweyl/error.hpp"
#include "srweyl/geometry/structure.hpp"
#include "support.hpp"

namespace srweyl {
namespace {

using algebra::Poly;
using algebra::Rational;
using geometry::StructureFunctions;
using geometry::SubRiemannianStructure;
using geometry::VectorField;
using Dims = std::vector<std::size_t>;

Poly X(const SubRiemannianStructure& s, const std::string& text) {
  return test::poly(text, s.layout().names());
}

std::vector<Rational> origin(std::size_t n) { return std::vector<Rational>(n, Rational(0)); }

std::vector<SubRiemannianStructure> weighted_models() {
  return {test::heisenberg(), test::engel(), test::cartan(), test::model_3_5(), test::model_3_6(),
          test::model_2_3_5_6()};
}

TEST(LieBracket, CoordinateFieldsCommute) {
  const auto s = test::heisenberg();
  const std::size_t nv = s.layout().size();
  EXPECT_TRUE(geometry::lie_bracket(VectorField::coordinate(3, nv, 0), VectorField::coordinate(3, nv, 1)).is_zero());
}

TEST(LieBracket, HeisenbergGivesVertical) {
  const auto s = test::heisenberg();
  EXPECT_EQ(geometry::lie_bracket(s.frame[0], s.frame[1]), s.frame[2]);
}

TEST(LieBracket, EngelFirstBracket) {
  const auto s = test::engel();
  const VectorField b = geometry::lie_bracket(s.frame[0], s.frame[1]);
  EXPECT_EQ(b[2], X(s, "1"));
  EXPECT_EQ(b[3], X(s, "x1"));
  EXPECT_EQ(b, s.frame[2]);
}

TEST(LieBracket, JacobiIdentity) {
  const auto s = test::model_2_3_5_6();
  const auto& a = s.frame[1];
  const VectorField b = X(s, "x1*x2 + 1") * s.frame[2];
  const VectorField c = X(s, "x2^2") * s.frame[0] + s.frame[3];
  const VectorField sum = geometry::lie_bracket(a, geometry::lie_bracket(b, c)) +
                          geometry::lie_bracket(b, geometry::lie_bracket(c, a)) +
                          geometry::lie_bracket(c, geometry::lie_bracket(a, b));
  EXPECT_TRUE(sum.is_zero());
}

TEST(StructureFunctions, Heisenberg) {
  const auto s = test::heisenberg();
  const StructureFunctions c = geometry::structure_functions(s);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const bool special = k == 2 && ((i == 0 && j == 1) || (i == 1 && j == 0));
        if (!special) EXPECT_TRUE(c(k, i, j).is_zero()) << k << i << j;
      }
    }
  }
  EXPECT_EQ(c(2, 0, 1), X(s, "1"));
  EXPECT_EQ(c(2, 1, 0), X(s, "-1"));
}

TEST(StructureFunctions, Engel) {
  const auto s = test::engel();
  const StructureFunctions c = geometry::structure_functions(s);
  EXPECT_EQ(c(2, 0, 1), X(s, "1"));
  EXPECT_EQ(c(3, 0, 2), X(s, "1"));
  EXPECT_TRUE(c(3, 1, 2).is_zero());
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) nonzero += c(k, i, j).is_zero() ? 0 : 1;
    }
  }
  EXPECT_EQ(nonzero, 2u);
}

TEST(StructureFunctions, CommutingFrameIsZero) {
  const auto s = SubRiemannianStructure::from_strings("flat", 3, 2, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  const StructureFunctions c = geometry::structure_functions(s);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(c(k, i, j).is_zero());
    }
  }
}

TEST(StructureFunctions, MartinetHasPolynomialCoefficient) {
  const auto s = test::martinet();
  EXPECT_EQ(geometry::structure_functions(s)(2, 0, 1), X(s, "x1"));
}

TEST(StructureFunctions, NonPolynomialRejected) {
  const auto s =
      SubRiemannianStructure::from_strings("bad", 3, 2, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1 + x1^2"}});
  EXPECT_THROW(geometry::structure_functions(s), NonPolynomialStructure);
}

TEST(StructureFunctions, ReconstructionAndAntisymmetry) {
  for (const auto& s : weighted_models()) {
    const StructureFunctions c = geometry::structure_functions(s);
    for (std::size_t i = 0; i < s.dim; ++i) {
      for (std::size_t j = 0; j < s.dim; ++j) {
        VectorField rebuilt = VectorField::zero(s.dim, s.layout().size());
        for (std::size_t k = 0; k < s.dim; ++k) {
          EXPECT_EQ(c(k, i, j), -c(k, j, i)) << s.name;
          rebuilt += c(k, i, j) * s.frame[k];
        }
        EXPECT_EQ(rebuilt, geometry::lie_bracket(s.frame[i], s.frame[j])) << s.name << " " << i << j;
      }
    }
  }
}

TEST(GrowthVector, CatalogAtOrigin) {
  EXPECT_EQ(geometry::growth_vector(test::heisenberg(), origin(3)), (Dims{2, 3}));
  EXPECT_EQ(geometry::growth_vector(test::engel(), origin(4)), (Dims{2, 3, 4}));
  EXPECT_EQ(geometry::growth_vector(test::cartan(), origin(5)), (Dims{2, 3, 5}));
  EXPECT_EQ(geometry::growth_vector(test::model_3_5(), origin(5)), (Dims{3, 5}));
  EXPECT_EQ(geometry::growth_vector(test::model_3_6(), origin(6)), (Dims{3, 6}));
  EXPECT_EQ(geometry::growth_vector(test::model_2_3_5_6(), origin(6)), (Dims{2, 3, 5, 6}));
}

TEST(GrowthVector, MartinetSingularAtOrigin) {
  const auto s = test::martinet();
  EXPECT_EQ(geometry::growth_vector(s, origin(3)), (Dims{2, 2, 3}));
  const std::vector<Rational> off{Rational(1), Rational(0), Rational(0)};
  EXPECT_EQ(geometry::growth_vector(s, off), (Dims{2, 3}));
  EXPECT_FALSE(geometry::is_regular_point(s, origin(3), 8, 1));
  EXPECT_TRUE(geometry::is_regular_point(s, off, 8, 1));
  EXPECT_TRUE(geometry::is_regular_point(test::engel(), origin(4), 8, 1));
}

TEST(GrowthVector, IntegrableDistributionRejected) {
  const auto s = SubRiemannianStructure::from_strings("flat", 3, 2, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  EXPECT_THROW(geometry::growth_vector(s, origin(3)), NotBracketGenerating);
}

TEST(Privileged, CatalogModels) {
  for (const auto& s : weighted_models()) {
    const auto check = geometry::verify_privileged(s);
    EXPECT_TRUE(check.privileged) << s.name << ": " << (check.diagnostics.empty() ? "" : check.diagnostics.front());
  }
}

TEST(Privileged, WrongWeightsFailFlagCheck) {
  auto s = test::heisenberg();
  s.weights = std::vector<int>{1, 1, 1};
  const auto check = geometry::verify_privileged(s);
  EXPECT_FALSE(check.privileged);
  ASSERT_FALSE(check.diagnostics.empty());
  EXPECT_NE(check.diagnostics.back().find("flag dimensions"), std::string::npos);
}

TEST(Privileged, LowOrderMonomialReported) {
  // x1 in the d/dx3 slot of X2 has weight 1 < w3 - w2 = 2 for weights (1,1,3).
  auto s = SubRiemannianStructure::from_strings("bad", 3, 2, {{"1", "0", "0"}, {"0", "1", "x1"}, {"0", "0", "1"}},
                                                std::vector<int>{1, 1, 3});
  const auto check = geometry::verify_privileged(s);
  EXPECT_FALSE(check.privileged);
  EXPECT_NE(check.diagnostics.front().find("x1"), std::string::npos);
  EXPECT_THROW(geometry::nilpotent_truncate(s), NotPrivileged);
}

TEST(Privileged, MissingWeights) { EXPECT_THROW(geometry::verify_privileged(test::martinet()), InvalidStructure); }

TEST(NilpotentTruncate, FixedPoints) {
  for (const auto& s : weighted_models()) {
    const auto t = geometry::nilpotent_truncate(s);
    EXPECT_EQ(t.frame, s.frame) << s.name;
  }
}

TEST(NilpotentTruncate, RemovesHigherOrderPerturbation) {
  const auto s = SubRiemannianStructure::from_strings(
      "perturbed", 3, 2, {{"1", "0", "x1^2 - x2/2"}, {"0", "1", "x1/2"}, {"0", "0", "1"}}, std::vector<int>{1, 1, 2});
  const auto t = geometry::nilpotent_truncate(s);
  EXPECT_EQ(t.frame, test::heisenberg().frame);
  EXPECT_EQ(geometry::growth_vector(t, origin(3)), geometry::growth_vector(s, s.base_point));
}

TEST(NilpotentTruncate, TranslatesBasePoint) {
  // Heisenberg written around q0 = (1, 0, 0): shift x1 -> x1 - 1.
  const auto s = SubRiemannianStructure::from_strings(
      "shifted", 3, 2, {{"1", "0", "-x2/2"}, {"0", "1", "(x1 - 1)/2"}, {"0", "0", "1"}}, std::vector<int>{1, 1, 2},
      {Rational(1), Rational(0), Rational(0)});
  const auto t = geometry::nilpotent_truncate(s);
  EXPECT_EQ(t.frame, test::heisenberg().frame);
  EXPECT_EQ(t.base_point, origin(3));
}

TEST(NilpotentTruncate, GradedStructureConstants) {
  for (const auto& s : weighted_models()) {
    const auto t = geometry::nilpotent_truncate(s);
    const auto c = geometry::structure_functions(t);
    const auto& w = *t.weights;
    EXPECT_TRUE(c.is_constant()) << s.name;
    for (std::size_t k = 0; k < s.dim; ++k) {
      for (std::size_t i = 0; i < s.dim; ++i) {
        for (std::size_t j = 0; j < s.dim; ++j) {
          if (w[k] != w[i] + w[j]) EXPECT_TRUE(c(k, i, j).is_zero()) << s.name << " c^" << k << "_" << i << j;
        }
      }
    }
  }
}

TEST(Structure, ValidationErrors) {
  EXPECT_THROW(SubRiemannianStructure::from_strings("degenerate", 2, 2, {{"1", "0"}, {"1", "0"}}), InvalidStructure);
  EXPECT_THROW(SubRiemannianStructure::from_strings("short", 3, 2, {{"1", "0", "0"}, {"0", "1", "0"}}),
               InvalidStructure);
  EXPECT_THROW(SubRiemannianStructure::from_strings("weights", 3, 2, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}},
                                                    std::vector<int>{1, 2, 2}),
               InvalidStructure);
  EXPECT_THROW(SubRiemannianStructure::from_strings("parse", 2, 2, {{"1", "y"}, {"0", "1"}}), ParseError);
}

}  // namespace
}  // namespace srweyl

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "grasscone/curve_bundles.hpp"
#include "test_support.hpp"

using namespace grasscone;
using grasscone::testing::vec;
using grasscone::testing::vecs;

namespace {

HNData example_hn() { return HNData({{1, Rational(3)}, {2, Rational(1)}}); }

std::vector<Rational> rationals(std::initializer_list<long> xs) { return vec(xs); }

}  // namespace

TEST(HNData, RejectsInvalidPieces) {
    EXPECT_THROW(HNData({}), ValidationError);
    EXPECT_THROW(HNData({{0, Rational(1)}}), ValidationError);
    EXPECT_THROW(HNData({{1, Rational(1)}, {1, Rational(1)}}), ValidationError);
    EXPECT_THROW(HNData({{1, Rational(1)}, {1, Rational(2)}}), ValidationError);
    EXPECT_NO_THROW(HNData({{1, Rational(1, 2)}, {3, Rational(1, 3)}}));
}

TEST(HNOfLineBundleSum, Examples) {
    EXPECT_EQ(hn_of_line_bundle_sum(rationals({3, 1, 1})), example_hn());
    EXPECT_EQ(hn_of_line_bundle_sum(rationals({2, 2, 2})), HNData::semistable(3, Rational(2)));
    EXPECT_EQ(hn_of_line_bundle_sum(rationals({0})), HNData::semistable(1, Rational(0)));
    EXPECT_THROW(hn_of_line_bundle_sum({}), ValidationError);
}

TEST(HNOfLineBundleSum, PermutationInvariant) {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        auto degrees = grasscone::testing::random_vector(rng, 1 + rng() % 6, -4, 4);
        HNData hn = hn_of_line_bundle_sum(degrees);
        EXPECT_EQ(hn.rank(), static_cast<int>(degrees.size()));
        std::shuffle(degrees.begin(), degrees.end(), rng);
        EXPECT_EQ(hn_of_line_bundle_sum(degrees), hn);
    }
}

TEST(Theta, Examples) {
    EXPECT_EQ(theta(example_hn(), 2), Rational(2));
    EXPECT_EQ(theta(example_hn(), 1), Rational(1));
    EXPECT_EQ(theta(example_hn(), 3), Rational(5));
    EXPECT_EQ(theta(HNData::semistable(4, Rational(3, 2)), 3), Rational(9, 2));
    EXPECT_THROW(theta(example_hn(), 0), ValidationError);
    EXPECT_THROW(theta(example_hn(), 4), ValidationError);
}

TEST(Zeta, Examples) {
    EXPECT_EQ(zeta(example_hn(), 2), Rational(4));
    EXPECT_EQ(zeta(example_hn(), 1), Rational(3));
    EXPECT_EQ(zeta(example_hn(), 3), Rational(5));
    EXPECT_EQ(zeta(HNData::semistable(4, Rational(-1, 3)), 2), Rational(-2, 3));
    EXPECT_THROW(zeta(example_hn(), 0), ValidationError);
}

TEST(ThetaZeta, MatchEnumerationOracles) {
    std::mt19937 rng(11);
    for (int i = 0; i < 500; ++i) {
        HNData hn = grasscone::testing::random_hn(rng, 4, 5, -10, 10);
        for (int k = 1; k <= hn.rank(); ++k) {
            ASSERT_EQ(theta(hn, k), grasscone::testing::theta_by_enumeration(hn, k));
            ASSERT_EQ(zeta(hn, k), grasscone::testing::zeta_by_enumeration(hn, k));
            // Quotient / subsheaf extremes of the split bundle with the same HN data.
            ASSERT_EQ(theta(hn, k), grasscone::testing::sum_of_smallest(hn, k));
            ASSERT_EQ(zeta(hn, k), grasscone::testing::sum_of_largest(hn, k));
        }
    }
}

TEST(ThetaZeta, TopExteriorPowerIsDegree) {
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
        HNData hn = grasscone::testing::random_hn(rng, 4, 5, -10, 10);
        EXPECT_EQ(theta(hn, hn.rank()), hn.degree());
        EXPECT_EQ(zeta(hn, hn.rank()), hn.degree());
    }
}

TEST(ThetaZeta, SemistableGivesKMu) {
    for (int r = 1; r <= 6; ++r) {
        for (int num = -5; num <= 5; ++num) {
            const Rational mu(num, 3);
            HNData hn = HNData::semistable(r, mu);
            for (int k = 1; k <= r; ++k) {
                EXPECT_EQ(theta(hn, k), k * mu);
                EXPECT_EQ(zeta(hn, k), k * mu);
            }
        }
    }
}

TEST(ThetaZeta, ZetaDominatesTheta) {
    std::mt19937 rng(17);
    for (int i = 0; i < 300; ++i) {
        HNData hn = grasscone::testing::random_hn(rng, 4, 5, -10, 10);
        for (int k = 1; k <= hn.rank(); ++k) {
            ASSERT_GE(zeta(hn, k), theta(hn, k));
            if (!hn.is_semistable() && k < hn.rank()) {
                ASSERT_GT(zeta(hn, k), theta(hn, k));
            }
        }
    }
}

TEST(CurveCones, SemistableNefEqualsEff) {
    auto c = curve_cones(HNData::semistable(2, Rational(1)), 1);
    EXPECT_EQ(c.nef.generators(), vecs({{0, 1}, {1, -1}}));
    EXPECT_TRUE(equals(c.nef, c.eff));
    EXPECT_EQ(c.basis, (std::vector<std::string>{"xi", "f"}));
}

TEST(CurveCones, UnstableExample) {
    auto c = curve_cones(example_hn(), 2);
    EXPECT_EQ(c.theta, Rational(2));
    EXPECT_EQ(c.zeta, Rational(4));
    EXPECT_EQ(c.nef.generators(), vecs({{0, 1}, {1, -2}}));
    EXPECT_EQ(c.eff.generators(), vecs({{0, 1}, {1, -4}}));
    EXPECT_TRUE(includes(c.eff, c.nef));
    EXPECT_FALSE(includes(c.nef, c.eff));
}

TEST(CurveCones, ShapeInvariants) {
    std::mt19937 rng(19);
    for (int i = 0; i < 100; ++i) {
        HNData hn = grasscone::testing::random_hn(rng, 4, 5, -10, 10);
        for (int k = 1; k <= hn.rank(); ++k) {
            auto c = curve_cones(hn, k);
            ASSERT_EQ(c.nef.dim(), 2u);
            ASSERT_EQ(c.nef.generators().size(), 2u);  // pointed, two rays
            ASSERT_TRUE(contains(c.nef, vec({0, 1})));
            ASSERT_TRUE(contains(c.eff, vec({0, 1})));
            for (const auto& g : c.nef.generators()) ASSERT_TRUE(contains(c.eff, g));
        }
    }
}

TEST(FiberProduct, UnstableExample) {
    auto fp = fiber_product_cones(example_hn(), 2, HNData::semistable(1, Rational(0)), 1);
    EXPECT_TRUE(equals(fp.nef, Cone::from_generators(3, vecs({{1, 0, -2}, {0, 1, 0}, {0, 0, 1}}))));
    EXPECT_TRUE(equals(fp.eff, Cone::from_generators(3, vecs({{1, 0, -4}, {0, 1, 0}, {0, 0, 1}}))));
    EXPECT_TRUE(includes(fp.eff, fp.nef));
    EXPECT_FALSE(equals(fp.nef, fp.eff));
}

TEST(FiberProduct, SemistablePairsHaveNefEqualEff) {
    auto fp = fiber_product_cones(HNData::semistable(3, Rational(2)), 2, HNData::semistable(2, Rational(-1, 2)), 1);
    EXPECT_TRUE(equals(fp.nef, fp.eff));
    EXPECT_TRUE(equals(fp.nef, Cone::from_generators(3, {{Rational(1), Rational(0), Rational(-4)},
                                                          {Rational(0), Rational(1), Rational(1, 2)},
                                                          {Rational(0), Rational(0), Rational(1)}})));
    EXPECT_THROW(fiber_product_cones(example_hn(), 4, example_hn(), 1), ValidationError);
    EXPECT_THROW(fiber_product_cones(example_hn(), 1, example_hn(), 0), ValidationError);
}

#include <gtest/gtest.h>

#include <random>

#include "bandgf/walk_oracle.hpp"
#include "support.hpp"

using namespace bandgf;
using testsupport::F101;
using testsupport::Q;

namespace {

BlockWeights<Rational> scalar(long long a, long long b, long long c, long long d) {
    auto one = [](long long v) { return Matrix<Rational>::from_ints(Q(), {{v}}); };
    return BlockWeights<Rational>::from(one(a), one(b), one(c), one(d));
}

Series<Rational> s(std::initializer_list<long long> v, std::size_t order) { return Series<Rational>::from_ints(Q(), v, order); }

}  // namespace

TEST(Walk, StepsValidated) {
    EXPECT_NO_THROW(Walk({0, 1, 1, 0, -1}));
    EXPECT_THROW(Walk({0, 2}), malformed_walk_error);
    EXPECT_THROW(Walk({}), malformed_walk_error);
}

TEST(Walk, Weights) {
    std::mt19937_64 rng(testsupport::property_seed);
    const auto w = testsupport::random_weights<ModP>(F101(), 2, rng);
    EXPECT_EQ(weight(w, WeightMode::w, Walk({0})), Matrix<ModP>::identity(F101(), 2));
    EXPECT_EQ(weight(w, WeightMode::w, Walk({0, 1, 0})), w.C * w.A);
    EXPECT_EQ(weight(w, WeightMode::w_star, Walk({0, 1, 0})), w.C * w.A);
    EXPECT_EQ(weight(w, WeightMode::w, Walk({0, 0})), w.B);
    EXPECT_EQ(weight(w, WeightMode::w_star, Walk({0, 0})), w.D);
    EXPECT_EQ(weight(w, WeightMode::w_star, Walk({0, 1, 1, 0, 0})), w.C * w.B * w.A * w.D);
}

TEST(Walk, Predicates) {
    EXPECT_TRUE(is_standard(Walk({0, 1, 1, 0})));
    EXPECT_TRUE(is_primitive(Walk({0, 1, 1, 0})));
    EXPECT_TRUE(is_standard(Walk({0, 1, 0, 1, 0})));
    EXPECT_FALSE(is_primitive(Walk({0, 1, 0, 1, 0})));
    EXPECT_FALSE(is_standard(Walk({0, -1, 0})));
    EXPECT_FALSE(is_primitive(Walk({0})));
}

TEST(Walk, WeightIsMultiplicative) {
    std::mt19937_64 rng(testsupport::property_seed + 5);
    const auto w = testsupport::random_weights<ModP>(F101(), 2, rng);
    auto random_walk = [&](std::size_t len, bool closed_at_zero) {
        for (;;) {
            std::vector<long long> p{0};
            for (std::size_t k = 0; k < len; ++k) p.push_back(p.back() + static_cast<long long>(rng() % 3) - 1);
            if (!closed_at_zero || p.back() == 0) return Walk(p);
        }
    };
    for (int t = 0; t < 20; ++t) {
        const Walk a = random_walk(5, false), b = random_walk(4, false);
        EXPECT_EQ(weight(w, WeightMode::w, a.concat(b)), weight(w, WeightMode::w, a) * weight(w, WeightMode::w, b));
        const Walk c = random_walk(4, true), d = random_walk(6, true);
        EXPECT_EQ(weight(w, WeightMode::w_star, c.concat(d)),
                  weight(w, WeightMode::w_star, c) * weight(w, WeightMode::w_star, d));
    }
}

TEST(Enumerate, MotzkinAndCatalan) {
    EXPECT_EQ(enumerate_sum(scalar(1, 1, 1, 1), WeightMode::w, 5, 0, 0, WalkFilter::standard).entry(0, 0),
              s({1, 1, 2, 4, 9, 21}, 5));
    EXPECT_EQ(enumerate_sum(scalar(1, 0, 1, 1), WeightMode::w, 6, 0, 0, WalkFilter::standard).entry(0, 0),
              s({1, 0, 1, 0, 2, 0, 5}, 6));
    EXPECT_EQ(enumerate_sum(scalar(2, 3, 5, 7), WeightMode::w, 0, 0, 0, WalkFilter::all).entry(0, 0), s({1}, 0));
}

TEST(Enumerate, CeilingEnforced) {
    EXPECT_THROW(enumerate_sum(scalar(1, 1, 1, 1), WeightMode::w, 15, 0, 0, WalkFilter::all), resource_limit_error);
    EXPECT_NO_THROW(enumerate_sum(scalar(1, 1, 1, 1), WeightMode::w, 3, 0, 0, WalkFilter::all, 3));
}

TEST(Enumerate, FiltersOnScalarCounts) {
    const auto ones = scalar(1, 1, 1, 1);
    // all walks 0 -> 0: central trinomial coefficients
    EXPECT_EQ(enumerate_sum(ones, WeightMode::w, 5, 0, 0, WalkFilter::all).entry(0, 0), s({1, 1, 3, 7, 19, 51}, 5));
    // primitive standard: z + z^2 M(z)
    EXPECT_EQ(enumerate_sum(ones, WeightMode::w, 5, 0, 0, WalkFilter::primitive_standard).entry(0, 0),
              s({0, 1, 1, 1, 2, 4}, 5));
    // primitive closed walks: z + 2 z^2 M(z)
    EXPECT_EQ(enumerate_sum(ones, WeightMode::w, 5, 0, 0, WalkFilter::primitive).entry(0, 0), s({0, 1, 2, 2, 4, 8}, 5));
}

TEST(HeightRecursion, MatchesEnumeration) {
    std::mt19937_64 rng(testsupport::property_seed + 6);
    for (std::size_t s = 1; s <= 3; ++s) {
        const auto w = testsupport::random_weights<ModP>(F101(), s, rng);
        for (auto mode : {WeightMode::w, WeightMode::w_star}) {
            for (auto filter : {WalkFilter::all, WalkFilter::standard, WalkFilter::primitive_standard, WalkFilter::primitive}) {
                for (long long from : {-1LL, 0LL, 1LL, 2LL}) {
                    EXPECT_EQ(enumerate_sum(w, mode, 7, from, 0, filter), walk_dp_sum(w, mode, 7, from, 0, filter));
                }
            }
        }
    }
}

TEST(HeightRecursion, GroupedByStart) {
    std::mt19937_64 rng(testsupport::property_seed + 7);
    const auto w = testsupport::random_weights<ModP>(F101(), 2, rng);
    const std::size_t n = 6;
    for (bool standard : {false, true}) {
        const auto mode = standard ? WeightMode::w_star : WeightMode::w;
        const auto table = walk_sums_by_start(w, mode, n, standard);
        for (long long h = -3; h <= 3; ++h) {
            const auto filter = standard ? WalkFilter::standard : WalkFilter::all;
            const auto e = enumerate_sum(w, mode, n, h, 0, filter);
            for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(table[k][static_cast<std::size_t>(h + static_cast<long long>(n))], e.term(k));
        }
    }
}

TEST(UTable, SmallValues) {
    const auto w = scalar(1, 0, 1, 1);
    const auto u = u_table(w, 6, 8);
    EXPECT_EQ(u.at(1, 0), Matrix<Rational>::identity(Q(), 1));
    EXPECT_TRUE(u.at(2, 0).is_zero());
    EXPECT_EQ(u.at(1, 1)(0, 0), Rational(1));
    EXPECT_EQ(u.at(2, 1)(0, 0), Rational(1));
    EXPECT_TRUE(u.at(3, 1).is_zero());
    for (std::size_t n = 0; n <= 6; ++n) EXPECT_TRUE(u.at(n + 2, n).is_zero());
    EXPECT_THROW(u_table(w, 6, 7), out_of_range_error);
    EXPECT_THROW(u.at(0, 0), out_of_range_error);
}

TEST(UTable, FirstEntryIsStarredStandardSum) {
    std::mt19937_64 rng(testsupport::property_seed + 8);
    for (std::size_t s = 1; s <= 3; ++s) {
        const auto w = testsupport::random_weights<ModP>(F101(), s, rng);
        const auto u = u_table(w, 10, 12);
        EXPECT_EQ(u.series(1), enumerate_sum(w, WeightMode::w_star, 10, 0, 0, WalkFilter::standard));
        for (std::size_t k = 2; k <= 4; ++k) {
            EXPECT_EQ(u.series(k), enumerate_sum(w, WeightMode::w_star, 10, static_cast<long long>(k) - 1, 0, WalkFilter::standard));
        }
    }
}

#include <gtest/gtest.h>

#include <random>

#include "bandgf/alg_cert.hpp"
#include "bandgf/genfun.hpp"
#include "support.hpp"

using namespace bandgf;
using testsupport::F101;
using testsupport::fixture_spec;
using testsupport::Q;

namespace {

BlockWeights<Rational> scalar(long long a, long long b, long long c, long long d) {
    auto one = [](long long v) { return Matrix<Rational>::from_ints(Q(), {{v}}); };
    return BlockWeights<Rational>::from(one(a), one(b), one(c), one(d));
}

Series<Rational> s(std::initializer_list<long long> v, std::size_t order) { return Series<Rational>::from_ints(Q(), v, order); }

std::vector<Rational> ints(std::initializer_list<long long> v) { return std::vector<Rational>(v.begin(), v.end()); }

}  // namespace

TEST(DirectRoute, SmallCases) {
    EXPECT_EQ(direct_route(fixture_spec("ex4.1"), 3), s({1, 1, 2, 4}, 3));
    EXPECT_EQ(direct_route(BandedSpec<Rational>(Q(), 1, {}), 4), s({1, 0, 0, 0, 0}, 4));
    EXPECT_EQ(direct_route(BandedSpec<Rational>(Q(), 1, {Band<Rational>{0, {Rational(1)}}}), 5), s({1, 1, 1, 1, 1, 1}, 5));
}

TEST(DirectRoute, FirstColumnsAgreeWithDenseProducts) {
    const auto spec = fixture_spec("ex4.3");
    const std::size_t n = 6, k = 40;
    Matrix<Rational> v(Q(), k, k);
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = 1; j <= k; ++j) v(i - 1, j - 1) = spec.entry(i, j);
    }
    const auto cols = first_columns(spec, n);
    Matrix<Rational> p = Matrix<Rational>::identity(Q(), k);
    for (std::size_t m = 0; m <= n; ++m) {
        for (std::size_t i = 0; i < cols[m].size() && i < k; ++i) EXPECT_EQ(cols[m][i], p(i, 0)) << m << "," << i;
        p = p * v;
    }
}

TEST(FixedPoint, Motzkin) {
    const auto b = fixed_point_route(scalar(1, 1, 1, 1), 7);
    EXPECT_EQ(b.GV, s({1, 1, 2, 4, 9, 21, 51, 127}, 7));
    EXPECT_EQ(b.Gw, b.Gwstar);
    EXPECT_FALSE(b.M0.has_value());
}

TEST(FixedPoint, CatalanQuadraticAndStarredClosedForm) {
    const std::size_t n = 24;
    const auto w = scalar(1, 0, 1, 1);
    const auto b = fixed_point_route(w, n);
    const auto g = b.Gw.entry(0, 0);
    EXPECT_TRUE((s({0, 0, 1}, n) * g * g - g + Series<Rational>::one(Q(), n)).is_zero());
    // G(w*) = (-1 + 2z + sqrt(1 - 4z^2)) / (2z(1 - 2z))
    const SqrtClosedForm<Rational> star{ints({1, 0, -4}), {ints({-1, 2}), ints({1})}, {ints({0, 2, -4}), {}}};
    EXPECT_TRUE(check_closed_form_sqrt(b.Gwstar.entry(0, 0), star).ok);
    // G(w) = (1 - sqrt(1 - 4z^2)) / (2z^2)
    const SqrtClosedForm<Rational> plain{ints({1, 0, -4}), {ints({1}), ints({-1})}, {ints({0, 0, 2}), {}}};
    EXPECT_TRUE(check_closed_form_sqrt(g, plain).ok);
}

TEST(FixedPoint, ZeroWeights) {
    const auto b = fixed_point_route(scalar(0, 0, 0, 0), 5);
    EXPECT_EQ(b.Gw, MatrixSeries<Rational>::identity(Q(), 1, 5));
    EXPECT_EQ(b.GV, s({1}, 5).pad_to(5));
}

TEST(FixedPoint, ResidualVanishes) {
    std::mt19937_64 rng(testsupport::property_seed + 10);
    for (std::size_t sz = 1; sz <= 3; ++sz) {
        const auto w = testsupport::random_weights<ModP>(F101(), sz, rng);
        const std::size_t n = 15;
        const auto g = solve_fixed_point(w, n);
        const auto rhs = MatrixSeries<ModP>::identity(F101(), sz, n) + (w.B * g).shift_up(1) + ((w.C * g) * (w.A * g)).shift_up(2);
        EXPECT_EQ(g, rhs);
        const auto b = fixed_point_route(w, n);
        EXPECT_EQ(invert(b.Gwstar) - invert(b.Gw), MatrixSeries<ModP>::monomial(w.B - w.D, 1, n));
        EXPECT_EQ(b.Gw.term(0), Matrix<ModP>::identity(F101(), sz));
        EXPECT_EQ(b.Gwstar.term(0), Matrix<ModP>::identity(F101(), sz));
    }
}

TEST(LaurentRoute, TrinomialAndMotzkin) {
    const auto b = laurent_route(scalar(1, 1, 1, 1), 6);
    EXPECT_EQ(b.M0->entry(0, 0), s({1, 1, 3, 7, 19, 51, 141}, 6));
    EXPECT_EQ(b.Gw.entry(0, 0), s({1, 1, 2, 4, 9, 21, 51}, 6));
    EXPECT_EQ(b.Gw, fixed_point_route(scalar(1, 1, 1, 1), 6).Gw);

    const auto z = laurent_route(scalar(0, 0, 0, 5), 4);
    EXPECT_EQ(*z.M0, MatrixSeries<Rational>::identity(Q(), 1, 4));
    EXPECT_TRUE(z.M1->term(0).is_zero() && z.M1->term(4).is_zero());
    EXPECT_EQ(z.Gw, MatrixSeries<Rational>::identity(Q(), 1, 4));
}

TEST(LaurentRoute, ConstantTerms) {
    std::mt19937_64 rng(testsupport::property_seed + 11);
    const auto w = testsupport::random_weights<ModP>(F101(), 3, rng);
    const auto b = laurent_route(w, 6);
    EXPECT_EQ(b.M0->term(0), Matrix<ModP>::identity(F101(), 3));
    EXPECT_TRUE(b.M1->term(0).is_zero());
    EXPECT_TRUE(b.Mm1->term(0).is_zero());
    EXPECT_EQ(b.GV[0], ModP::from_int(F101(), 1));
}

TEST(LaurentRoute, ClosedFormWithEqualCornerBlock) {
    const auto spec = fixture_spec("ex4.3");
    const auto w = block_reduce(spec);
    const auto b = laurent_route(w, 40);
    EXPECT_EQ(b.Gw, b.Gwstar);
    const SqrtClosedForm<Rational> form{ints({1, 0, -10, 0, 9}), {ints({4}), {}}, {ints({3, 0, 1}), ints({1})}};
    EXPECT_TRUE(check_closed_form_sqrt(b.GV, form).ok);
}

TEST(CrossCheck, CorpusAgrees) {
    for (const char* name : {"ex4.1", "ex4.2", "ex4.3", "ex5.12"}) {
        const auto rep = cross_check(fixture_spec(name), 25);
        EXPECT_EQ(rep.agreements.size(), 6u) << name;
        EXPECT_EQ(rep.GV.order(), 25u);
    }
    const auto a = cross_check(fixture_spec("ex4.1"), 12);
    EXPECT_EQ(testsupport::coefficient_strings(a.GV)[9], "1588");
    const auto b = cross_check(fixture_spec("ex4.2"), 12);
    EXPECT_EQ(testsupport::coefficient_strings(b.GV)[9], "982");
}

TEST(CrossCheck, CorruptedWeightsDetectedEarly) {
    const auto spec = fixture_spec("ex5.12");
    auto w = block_reduce(spec);
    w.B(0, 0) += Rational(1);
    try {
        cross_check(spec, w, 20);
        FAIL() << "expected a route mismatch";
    } catch (const route_mismatch_error& e) {
        EXPECT_LE(e.order(), 3u);
    }
}

TEST(CrossCheck, EverySingleWeightPerturbationDetected) {
    for (const char* name : {"ex4.1", "ex4.3", "ex5.12"}) {
        const auto spec = fixture_spec(name);
        const auto w0 = block_reduce(spec);
        for (int which = 0; which < 4; ++which) {
            for (std::size_t i = 0; i < w0.s; ++i) {
                for (std::size_t j = 0; j < w0.s; ++j) {
                    auto w = w0;
                    Matrix<Rational>* m[] = {&w.A, &w.B, &w.C, &w.D};
                    (*m[which])(i, j) += Rational(1);
                    EXPECT_THROW(cross_check(spec, w, 12), route_mismatch_error) << name << " " << which << " " << i << j;
                }
            }
        }
    }
}

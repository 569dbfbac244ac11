#include <gtest/gtest.h>

#include <random>

#include "bandgf/identities.hpp"
#include "support.hpp"

using namespace bandgf;
using testsupport::F101;
using testsupport::fixture_spec;

namespace {

template <FieldScalar T>
void expect_all(const std::vector<IdentityResult>& rs, const std::string& label) {
    for (const auto& r : rs) {
        EXPECT_TRUE(r.ok) << label << ": " << r.name << " fails at z^" << r.first_failure.value_or(0);
    }
}

}  // namespace

TEST(IdentitySuite, Corpus) {
    for (const auto& fx : builtin_fixtures()) {
        const auto spec = fixture_spec(fx.name);
        const auto rs = identity_suite(block_reduce(spec), 12, 6, &spec);
        EXPECT_GE(rs.size(), 20u);
        expect_all<Rational>(rs, fx.name);
    }
}

TEST(IdentitySuite, RandomPrimeFieldWeights) {
    std::mt19937_64 rng(testsupport::property_seed + 30);
    RecordProperty("seed", std::to_string(testsupport::property_seed + 30));
    for (int t = 0; t < 6; ++t) {
        const std::size_t s = 1 + t % 3;
        const auto w = testsupport::random_weights<ModP>(F101(), s, rng);
        expect_all<ModP>(identity_suite(w, 10, 6), "random s=" + std::to_string(s));
    }
}

TEST(IdentitySuite, DetectsTamperedWeights) {
    const auto spec = fixture_spec("ex4.3");
    auto w = block_reduce(spec);
    w.A(0, 0) += Rational(1);
    const auto rs = identity_suite(w, 8, 6, &spec);
    EXPECT_FALSE(all_ok(rs));
    bool column_check_failed = false;
    for (const auto& r : rs) {
        if (r.name == "u_k^(n) column 1 = (V^n)_{j,1}") column_check_failed = !r.ok;
    }
    EXPECT_TRUE(column_check_failed);
}

TEST(OracleCompare, RandomWeights) {
    std::mt19937_64 rng(testsupport::property_seed + 31);
    for (std::size_t s = 1; s <= 3; ++s) {
        const auto rs = oracle_compare(testsupport::random_weights<ModP>(F101(), s, rng), 8);
        EXPECT_EQ(rs.size(), 8u);
        expect_all<ModP>(rs, "s=" + std::to_string(s));
    }
}

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bandgf/banded_spec.hpp"
#include "bandgf/fixtures.hpp"
#include "bandgf/io.hpp"

namespace testsupport {

using namespace bandgf;

inline constexpr std::uint64_t property_seed = 0x5eed2024ULL;

inline FieldConfig Q() { return FieldConfig::rationals(); }
inline FieldConfig F101() { return FieldConfig::prime(101); }

template <FieldScalar T>
Matrix<T> random_matrix(const FieldConfig& f, std::size_t s, std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> pick(-3, 100);
    Matrix<T> m(f, s, s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            const long long v = pick(rng);
            m(i, j) = T::from_int(f, v < 0 ? 0 : v);  // roughly 4% zeros
        }
    }
    return m;
}

template <FieldScalar T>
BlockWeights<T> random_weights(const FieldConfig& f, std::size_t s, std::mt19937_64& rng) {
    return BlockWeights<T>::from(random_matrix<T>(f, s, rng), random_matrix<T>(f, s, rng), random_matrix<T>(f, s, rng),
                                 random_matrix<T>(f, s, rng));
}

template <FieldScalar T = Rational>
BandedSpec<T> fixture_spec(const std::string& name, const FieldConfig& f = FieldConfig::rationals()) {
    return spec_from_json<T>(parse_json_text(find_fixture(name)->spec_json), f);
}

inline std::vector<std::string> coefficient_strings(const Series<Rational>& s) {
    std::vector<std::string> out;
    for (const auto& c : s.coefficients()) out.push_back(c.to_string());
    return out;
}

}  // namespace testsupport

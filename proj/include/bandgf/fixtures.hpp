#pragma once

// Built-in worked examples: spec documents plus the reference data each one
// is checked against (an annihilating polynomial, a closed form, an affine
// recursion and a few hand-computed coefficients).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bandgf {

/// (p + q sqrt(R)) / (p' + q' sqrt(R)) with integer polynomial coefficients,
/// lowest degree first.
struct IntClosedForm {
    std::vector<long long> radicand;
    std::vector<long long> num_rational;
    std::vector<long long> num_radical;
    std::vector<long long> den_rational;
    std::vector<long long> den_radical;
};

struct ExampleFixture {
    std::string name;
    std::string summary;
    std::string spec_json;
    /// Reference annihilator, rows by x-degree, each row a z-polynomial.
    std::optional<std::vector<std::vector<long long>>> annihilator;
    std::size_t degx = 0;
    std::size_t degz = 0;
    std::optional<IntClosedForm> closed_form;
    /// det(xI - z(Ax^2 + Bx + C)), rows by x-degree.
    std::optional<std::vector<std::vector<long long>>> kernel_determinant;
    /// When present, the checked series is the affine pipeline output.
    std::optional<std::string> recursion_json;
    /// Known leading coefficients of the checked series.
    std::vector<long long> known_prefix;
};

inline const std::vector<ExampleFixture>& builtin_fixtures() {
    static const std::vector<ExampleFixture> all = [] {
        std::vector<ExampleFixture> v;

        ExampleFixture e1;
        e1.name = "ex4.1";
        e1.summary = "period 2, tridiagonal ones plus v(i,i+3) = 1 for odd i; blocks of size 2";
        e1.spec_json = R"({"field": "rational", "period": 2,
  "bands": [{"offset": -1, "values": [1, 1]}, {"offset": 0, "values": [1, 1]},
            {"offset": 1, "values": [1, 1]}, {"offset": 3, "values": [1, 0]}],
  "block_size": 2})";
        e1.annihilator = std::vector<std::vector<long long>>{
            {1, -2, 1}, {-1, 3, -4, 2}, {0, 0, 2, -4, 3}, {0, 0, 0, 0, -1, 1}};
        e1.degx = 3;
        e1.degz = 5;
        e1.known_prefix = {1, 1, 2, 4, 10, 26, 71, 197, 556, 1588};
        v.push_back(e1);

        ExampleFixture e2;
        e2.name = "ex4.2";
        e2.summary = "period 2, tridiagonal ones plus v(i,i+3) = 1 for even i; blocks of size 4";
        e2.spec_json = R"({"field": "rational", "period": 2,
  "bands": [{"offset": -1, "values": [1, 1]}, {"offset": 0, "values": [1, 1]},
            {"offset": 1, "values": [1, 1]}, {"offset": 3, "values": [0, 1]}],
  "block_size": 4})";
        e2.annihilator = std::vector<std::vector<long long>>{{-1, 6, -11, 4, 4},
                                                             {2, -13, 31, -26, -5, 10},
                                                             {-1, 7, -22, 33, -14, -12, 9},
                                                             {0, 0, 2, -9, 12, -2, -6, 3}};
        e2.degx = 3;
        e2.degz = 7;
        e2.known_prefix = {1, 1, 2, 4, 9, 21, 52, 134, 358, 982};
        v.push_back(e2);

        ExampleFixture e3;
        e3.name = "ex4.3";
        e3.summary = "period 3, tridiagonal ones plus v(i,i+3) = v(i+3,i) = 1 for i = 2 mod 3; blocks of size 3";
        e3.spec_json = R"({"field": "rational", "period": 3,
  "bands": [{"offset": -3, "values": [0, 1, 0]}, {"offset": -1, "values": [1, 1, 1]},
            {"offset": 1, "values": [1, 1, 1]}, {"offset": 3, "values": [0, 1, 0]}],
  "block_size": 3})";
        e3.closed_form = IntClosedForm{{1, 0, -10, 0, 9}, {4}, {}, {3, 0, 1}, {1}};
        e3.kernel_determinant = std::vector<std::vector<long long>>{{}, {}, {0, -1}, {1, 0, -3}, {0, -1}};
        e3.known_prefix = {1, 0, 1, 0, 3, 0, 15, 0, 89, 0, 577};
        v.push_back(e3);

        ExampleFixture e4;
        e4.name = "ex5.12";
        e4.summary = "tridiagonal ones with v(1,1) = 1 and no other diagonal; affine recursion with T = [[16,4],[0,4]]";
        e4.spec_json = R"({"field": "rational", "period": 1,
  "bands": [{"offset": -1, "values": [1]}, {"offset": 1, "values": [1]}],
  "exceptional": [{"i": 1, "j": 1, "value": 1}],
  "block_size": 1})";
        e4.recursion_json = R"({"dimY": 2, "T": [[16, 4], [0, 4]], "l": [1, 0],
  "y_rule": {"weights": [{"residue": 1, "coordinate": 1, "initial": [6], "poly": [6, 8]},
                         {"residue": 1, "coordinate": 2, "initial": [0], "poly": [1]}]}})";
        e4.closed_form = IntClosedForm{{1, 0, -4}, {0, 4, -16, 16}, {0, 2, -12}, {1, -24, 148, -336, 256}, {}};
        e4.known_prefix = {0, 6, 116, 1908, 30664};
        v.push_back(e4);
        return v;
    }();
    return all;
}

inline const ExampleFixture* find_fixture(const std::string& name) {
    for (const auto& f : builtin_fixtures()) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

}  // namespace bandgf

#pragma once

// Truncated elements of M_s(F)[x, 1/x][[z]] of the form
// sum_{n<=N} (A x + B + C/x)^n z^n.
//
// The z^n term is a Laurent polynomial in x whose support lies in [-n, n]
// because every factor moves the x-degree by -1, 0 or +1. Terms are stored
// densely over that range.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bandgf/matrix.hpp"

namespace bandgf {

template <FieldScalar T>
class LaurentSeries {
public:
    /// terms[n] holds 2n+1 matrices for x-degrees -n..n.
    LaurentSeries(FieldConfig field, std::size_t s, std::vector<std::vector<Matrix<T>>> terms)
        : field_(field), s_(s), terms_(std::move(terms)) {
        if (terms_.empty()) throw shape_error("Laurent series needs at least the z^0 term");
        for (std::size_t n = 0; n < terms_.size(); ++n) {
            if (terms_[n].size() != 2 * n + 1)
                throw shape_error("z^" + std::to_string(n) + " term must cover x-degrees -n..n");
        }
    }

    const FieldConfig& field() const noexcept { return field_; }
    std::size_t size() const noexcept { return s_; }
    std::size_t order() const noexcept { return terms_.size() - 1; }

    /// Coefficient of z^n x^d; zero outside the support [-n, n].
    Matrix<T> coefficient(std::size_t n, long long d) const {
        const long long nn = static_cast<long long>(n);
        if (n > order()) throw out_of_range_error("z-order beyond truncation");
        if (d < -nn || d > nn) return Matrix<T>(field_, s_, s_);
        return terms_[n][static_cast<std::size_t>(d + nn)];
    }

    /// All x-coefficients of the z^n term, degree -n first.
    const std::vector<Matrix<T>>& term(std::size_t n) const { return terms_.at(n); }

private:
    FieldConfig field_;
    std::size_t s_;
    std::vector<std::vector<Matrix<T>>> terms_;
};

/// sum_{n<=N} (A x + B + C x^{-1})^n z^n, built with the left recursion
/// f_{n+1} = (A x + B + C x^{-1}) f_n.
template <FieldScalar T>
LaurentSeries<T> laurent_accumulate(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c, std::size_t order) {
    if (!a.is_square() || !(a.rows() == b.rows() && b.rows() == c.rows()) || !b.is_square() || !c.is_square())
        throw shape_error("laurent_accumulate needs three square matrices of one size");
    if (!(a.field() == b.field() && b.field() == c.field()))
        throw field_mismatch_error("laurent_accumulate over different fields");
    const FieldConfig f = a.field();
    const std::size_t s = a.rows();

    std::vector<std::vector<Matrix<T>>> terms;
    terms.reserve(order + 1);
    terms.push_back({Matrix<T>::identity(f, s)});
    for (std::size_t n = 0; n < order; ++n) {
        const auto& prev = terms.back();
        std::vector<Matrix<T>> next(2 * n + 3, Matrix<T>(f, s, s));
        // prev[k] is x-degree k-n; next[k] is x-degree k-n-1.
        for (std::size_t k = 0; k < prev.size(); ++k) {
            if (prev[k].is_zero()) continue;
            next[k + 2].add_product(a, prev[k]);
            next[k + 1].add_product(b, prev[k]);
            next[k].add_product(c, prev[k]);
        }
        terms.push_back(std::move(next));
    }
    return LaurentSeries<T>(f, s, std::move(terms));
}

/// The x^i coefficient across all z-orders, for i in {-1, 0, 1}.
template <FieldScalar T>
MatrixSeries<T> laurent_extract(const LaurentSeries<T>& l, int i) {
    if (i < -1 || i > 1) throw out_of_range_error("only x-degrees -1, 0, 1 can be extracted, got " + std::to_string(i));
    std::vector<Matrix<T>> terms;
    terms.reserve(l.order() + 1);
    for (std::size_t n = 0; n <= l.order(); ++n) terms.push_back(l.coefficient(n, i));
    return MatrixSeries<T>(std::move(terms));
}

}  // namespace bandgf

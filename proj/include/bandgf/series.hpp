#pragma once

// Truncated formal power series in z over an exact field.
//
// A Series of order N knows the coefficients of z^0..z^N. Binary operations
// on series of different orders truncate to the smaller order; inversion and
// square roots keep the input order. Multiplication is schoolbook
// convolution, which is adequate up to a few hundred terms.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bandgf/field.hpp"

namespace bandgf {

template <FieldScalar T>
class Series {
public:
    /// Zero series of the given order.
    Series(FieldConfig field, std::size_t order) : field_(field), coeffs_(order + 1, zero_of<T>(field)) {}

    /// Takes ownership of coefficients z^0..z^(n-1); order is n-1.
    Series(FieldConfig field, std::vector<T> coeffs) : field_(field), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw shape_error("series needs at least one coefficient");
        for (const auto& c : coeffs_) check_field(c.field());
    }

    static Series constant(FieldConfig field, std::size_t order, const T& c) {
        Series s(field, order);
        s.coeffs_[0] = c;
        s.check_field(c.field());
        return s;
    }

    static Series one(FieldConfig field, std::size_t order) { return constant(field, order, one_of<T>(field)); }

    /// Coefficients from integers; missing high coefficients are zero, extra
    /// ones beyond the order are dropped.
    static Series from_ints(FieldConfig field, std::initializer_list<long long> values, std::size_t order) {
        return from_ints(field, std::vector<long long>(values), order);
    }

    static Series from_ints(FieldConfig field, const std::vector<long long>& values, std::size_t order) {
        Series s(field, order);
        for (std::size_t k = 0; k < values.size() && k <= order; ++k) s.coeffs_[k] = T::from_int(field, values[k]);
        return s;
    }

    /// c * z^k.
    static Series monomial(FieldConfig field, std::size_t order, std::size_t k, const T& c) {
        Series s(field, order);
        if (k <= order) s.coeffs_[k] = c;
        return s;
    }

    const FieldConfig& field() const noexcept { return field_; }
    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const std::vector<T>& coefficients() const noexcept { return coeffs_; }

    const T& operator[](std::size_t k) const { return coeffs_.at(k); }

    /// Coefficient of z^k, zero beyond the stored order.
    T coeff(std::size_t k) const { return k <= order() ? coeffs_[k] : zero_of<T>(field_); }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const T& c) { return c.is_zero(); });
    }

    /// Keep z^0..z^n (n <= order).
    Series truncate(std::size_t n) const {
        if (n >= order()) return *this;
        return Series(field_, std::vector<T>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n) + 1));
    }

    /// Raise the order to n by appending zero coefficients. This asserts that
    /// the unknown terms are zero, so only use it where that is known.
    Series pad_to(std::size_t n) const {
        if (n <= order()) return *this;
        Series s = *this;
        s.coeffs_.resize(n + 1, zero_of<T>(field_));
        return s;
    }

    Series& operator+=(const Series& o) {
        check_field(o.field_);
        if (o.order() < order()) coeffs_.resize(o.order() + 1, zero_of<T>(field_));
        for (std::size_t k = 0; k <= order(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }

    Series& operator-=(const Series& o) {
        check_field(o.field_);
        if (o.order() < order()) coeffs_.resize(o.order() + 1, zero_of<T>(field_));
        for (std::size_t k = 0; k <= order(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }

    Series& operator*=(const T& c) {
        check_field(c.field());
        for (auto& x : coeffs_) x *= c;
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(Series a, const T& c) { return a *= c; }
    friend Series operator*(const T& c, Series a) { return a *= c; }

    Series operator-() const {
        Series r = *this;
        for (auto& x : r.coeffs_) x = -x;
        return r;
    }

    friend Series operator*(const Series& a, const Series& b) {
        a.check_field(b.field_);
        std::size_t n = std::min(a.order(), b.order());
        Series r(a.field_, n);
        for (std::size_t i = 0; i <= n; ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; i + j <= n; ++j) r.coeffs_[i + j].add_product(a.coeffs_[i], b.coeffs_[j]);
        }
        return r;
    }

    /// Multiply by z^k; the order is unchanged, so the top k terms fall off.
    Series shift_up(std::size_t k) const {
        Series r(field_, order());
        for (std::size_t i = 0; i + k <= order(); ++i) r.coeffs_[i + k] = coeffs_[i];
        return r;
    }

    /// Divide by z^k. Exact only when z^0..z^(k-1) vanish; otherwise throws
    /// non_unit_error. The result has order order()-k.
    Series shift_down(std::size_t k) const {
        if (k > order()) throw insufficient_precision_error("cannot divide a series of order " +
                                                            std::to_string(order()) + " by z^" + std::to_string(k));
        for (std::size_t i = 0; i < k; ++i) {
            if (!coeffs_[i].is_zero())
                throw non_unit_error("division by z^" + std::to_string(k) + " but coefficient of z^" +
                                     std::to_string(i) + " is " + coeffs_[i].to_string());
        }
        return Series(field_, std::vector<T>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()));
    }

    /// Index of the first nonzero coefficient, if any.
    std::optional<std::size_t> valuation() const {
        for (std::size_t k = 0; k <= order(); ++k) {
            if (!coeffs_[k].is_zero()) return k;
        }
        return std::nullopt;
    }

    /// Same order and coefficients.
    friend bool operator==(const Series& a, const Series& b) {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t k = 0; k <= order(); ++k) {
            if (coeffs_[k].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += coeffs_[k].to_string();
            if (k > 0) out += "*z^" + std::to_string(k);
        }
        if (out.empty()) out = "0";
        return out + " + O(z^" + std::to_string(order() + 1) + ")";
    }

private:
    void check_field(const FieldConfig& f) const {
        if (!(f == field_)) throw field_mismatch_error("series over " + field_.name() + " combined with " + f.name());
    }

    FieldConfig field_;
    std::vector<T> coeffs_;
};

/// First order at which two series differ, comparing up to the smaller order.
template <FieldScalar T>
std::optional<std::size_t> first_difference(const Series<T>& a, const Series<T>& b) {
    if (!(a.field() == b.field())) throw field_mismatch_error("comparing series over different fields");
    std::size_t n = std::min(a.order(), b.order());
    for (std::size_t k = 0; k <= n; ++k) {
        if (!(a[k] == b[k])) return k;
    }
    return std::nullopt;
}

/// Multiplicative inverse; the constant term must be nonzero.
template <FieldScalar T>
Series<T> invert(const Series<T>& a) {
    if (a[0].is_zero()) throw non_unit_error("series with zero constant term is not invertible");
    const std::size_t n = a.order();
    const T inv0 = a[0].inverse();
    std::vector<T> b;
    b.reserve(n + 1);
    b.push_back(inv0);
    for (std::size_t k = 1; k <= n; ++k) {
        T acc = zero_of<T>(a.field());
        for (std::size_t i = 1; i <= k; ++i) acc.add_product(a[i], b[k - i]);
        b.push_back(-(acc * inv0));
    }
    return Series<T>(a.field(), std::move(b));
}

/// Square root with constant term 1 of a series with constant term 1.
/// Uses the coefficient recursion 2 r_n = a_n - sum_{0<k<n} r_k r_{n-k}.
template <FieldScalar T>
Series<T> sqrt(const Series<T>& a) {
    const FieldConfig& f = a.field();
    if (f.characteristic() == 2) throw unsupported_characteristic_error("square roots in characteristic 2");
    if (!a[0].is_one()) throw unsupported_sqrt_error("square root needs constant term 1, got " + a[0].to_string());
    const std::size_t n = a.order();
    const T half = T::from_int(f, 2).inverse();
    std::vector<T> r;
    r.reserve(n + 1);
    r.push_back(one_of<T>(f));
    for (std::size_t k = 1; k <= n; ++k) {
        T acc = a[k];
        for (std::size_t i = 1; i < k; ++i) acc -= r[i] * r[k - i];
        r.push_back(acc * half);
    }
    return Series<T>(f, std::move(r));
}

}  // namespace bandgf

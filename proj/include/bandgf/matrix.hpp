#pragma once

// Dense matrices over a field, and square matrices whose entries are
// truncated power series (stored as a polynomial in z with matrix
// coefficients, which is the natural layout for the Cauchy product).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bandgf/field.hpp"
#include "bandgf/series.hpp"

namespace bandgf {

template <FieldScalar T>
class Matrix {
public:
    Matrix(FieldConfig field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, zero_of<T>(field)) {}

    static Matrix identity(FieldConfig field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one_of<T>(field);
        return m;
    }

    static Matrix from_ints(FieldConfig field, const std::vector<std::vector<long long>>& rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.front().size();
        Matrix m(field, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw shape_error("ragged matrix literal");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = T::from_int(field, rows[i][j]);
        }
        return m;
    }

    const FieldConfig& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : data_) {
            if (!x.is_zero()) return false;
        }
        return true;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const T& c) {
        for (auto& x : data_) x *= c;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& c) { return a *= c; }
    friend Matrix operator*(const T& c, Matrix a) { return a *= c; }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.data_) x = -x;
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix r(a.field_, a.rows_, b.cols_);
        r.add_product(a, b);
        return r;
    }

    /// this += a * b.
    void add_product(const Matrix& a, const Matrix& b) {
        if (!(a.field_ == b.field_) || !(a.field_ == field_))
            throw field_mismatch_error("matrix product over different fields");
        if (a.cols_ != b.rows_ || a.rows_ != rows_ || b.cols_ != cols_)
            throw shape_error("matrix product shape mismatch");
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) (*this)(i, j).add_product(aik, b(k, j));
            }
        }
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Gauss-Jordan inverse; throws non_unit_error when singular.
    Matrix inverse() const {
        if (!is_square()) throw shape_error("inverse of a non-square matrix");
        const std::size_t n = rows_;
        Matrix a = *this;
        Matrix inv = identity(field_, n);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && a(piv, col).is_zero()) ++piv;
            if (piv == n) throw non_unit_error("singular matrix");
            if (piv != col) {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            const T scale = a(col, col).inverse();
            for (std::size_t j = 0; j < n; ++j) {
                a(col, j) *= scale;
                inv(col, j) *= scale;
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col || a(r, col).is_zero()) continue;
                const T factor = a(r, col);
                for (std::size_t j = 0; j < n; ++j) {
                    a(r, j) -= factor * a(col, j);
                    inv(r, j) -= factor * inv(col, j);
                }
            }
        }
        return inv;
    }

    T determinant() const {
        if (!is_square()) throw shape_error("determinant of a non-square matrix");
        const std::size_t n = rows_;
        Matrix a = *this;
        T det = one_of<T>(field_);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && a(piv, col).is_zero()) ++piv;
            if (piv == n) return zero_of<T>(field_);
            if (piv != col) {
                a.swap_rows(piv, col);
                det = -det;
            }
            det *= a(col, col);
            const T inv = a(col, col).inverse();
            for (std::size_t r = col + 1; r < n; ++r) {
                if (a(r, col).is_zero()) continue;
                const T factor = a(r, col) * inv;
                for (std::size_t j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
            }
        }
        return det;
    }

    std::string to_string() const {
        std::string out = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            out += i ? "; " : "";
            for (std::size_t j = 0; j < cols_; ++j) out += (j ? " " : "") + (*this)(i, j).to_string();
        }
        return out + "]";
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (!(o.field_ == field_)) throw field_mismatch_error("matrices over different fields");
        if (o.rows_ != rows_ || o.cols_ != cols_) throw shape_error("matrix shape mismatch");
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    FieldConfig field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<T> data_;
};

/// s x s matrix with entries in F[[z]] truncated at a common order.
template <FieldScalar T>
class MatrixSeries {
public:
    MatrixSeries(FieldConfig field, std::size_t s, std::size_t order)
        : field_(field), s_(s), terms_(order + 1, Matrix<T>(field, s, s)) {
        if (s == 0) throw shape_error("matrix series of size 0");
    }

    /// Coefficient matrices of z^0..z^(n-1).
    explicit MatrixSeries(std::vector<Matrix<T>> terms) : field_(FieldConfig::rationals()), s_(0), terms_(std::move(terms)) {
        if (terms_.empty()) throw shape_error("matrix series needs at least one term");
        field_ = terms_[0].field();
        s_ = terms_[0].rows();
        for (const auto& m : terms_) {
            if (m.rows() != s_ || m.cols() != s_) throw shape_error("matrix series terms must be square of equal size");
            if (!(m.field() == field_)) throw field_mismatch_error("matrix series terms over different fields");
        }
    }

    static MatrixSeries identity(FieldConfig field, std::size_t s, std::size_t order) {
        return constant(Matrix<T>::identity(field, s), order);
    }

    static MatrixSeries constant(const Matrix<T>& m, std::size_t order) {
        if (!m.is_square()) throw shape_error("matrix series needs square coefficients");
        MatrixSeries r(m.field(), m.rows(), order);
        r.terms_[0] = m;
        return r;
    }

    /// M * z^k.
    static MatrixSeries monomial(const Matrix<T>& m, std::size_t k, std::size_t order) {
        MatrixSeries r(m.field(), m.rows(), order);
        if (k <= order) r.terms_[k] = m;
        return r;
    }

    /// Assemble from an s x s grid of series (orders truncated to the minimum).
    static MatrixSeries from_entries(const std::vector<std::vector<Series<T>>>& grid) {
        const std::size_t s = grid.size();
        if (s == 0) throw shape_error("empty grid");
        std::size_t order = grid[0][0].order();
        for (const auto& row : grid) {
            if (row.size() != s) throw shape_error("grid must be square");
            for (const auto& e : row) order = std::min(order, e.order());
        }
        MatrixSeries r(grid[0][0].field(), s, order);
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = 0; j < s; ++j) {
                if (!(grid[i][j].field() == r.field_)) throw field_mismatch_error("grid entries over different fields");
                for (std::size_t k = 0; k <= order; ++k) r.terms_[k](i, j) = grid[i][j][k];
            }
        }
        return r;
    }

    const FieldConfig& field() const noexcept { return field_; }
    std::size_t size() const noexcept { return s_; }
    std::size_t order() const noexcept { return terms_.size() - 1; }

    /// Coefficient matrix of z^k.
    const Matrix<T>& term(std::size_t k) const { return terms_.at(k); }
    const std::vector<Matrix<T>>& terms() const noexcept { return terms_; }

    Series<T> entry(std::size_t i, std::size_t j) const {
        if (i >= s_ || j >= s_) throw out_of_range_error("matrix series entry out of range");
        std::vector<T> c;
        c.reserve(terms_.size());
        for (const auto& m : terms_) c.push_back(m(i, j));
        return Series<T>(field_, std::move(c));
    }

    MatrixSeries truncate(std::size_t n) const {
        if (n >= order()) return *this;
        return MatrixSeries(std::vector<Matrix<T>>(terms_.begin(), terms_.begin() + static_cast<std::ptrdiff_t>(n) + 1));
    }

    /// Raise the order, filling with zero terms (see Series::pad_to).
    MatrixSeries pad_to(std::size_t n) const {
        if (n <= order()) return *this;
        MatrixSeries r = *this;
        r.terms_.resize(n + 1, Matrix<T>(field_, s_, s_));
        return r;
    }

    /// Multiply by z^k keeping the order.
    MatrixSeries shift_up(std::size_t k) const {
        MatrixSeries r(field_, s_, order());
        for (std::size_t i = 0; i + k <= order(); ++i) r.terms_[i + k] = terms_[i];
        return r;
    }

    MatrixSeries& operator+=(const MatrixSeries& o) {
        check_compatible(o);
        if (o.order() < order()) terms_.resize(o.order() + 1, Matrix<T>(field_, s_, s_));
        for (std::size_t k = 0; k <= order(); ++k) terms_[k] += o.terms_[k];
        return *this;
    }
    MatrixSeries& operator-=(const MatrixSeries& o) {
        check_compatible(o);
        if (o.order() < order()) terms_.resize(o.order() + 1, Matrix<T>(field_, s_, s_));
        for (std::size_t k = 0; k <= order(); ++k) terms_[k] -= o.terms_[k];
        return *this;
    }

    friend MatrixSeries operator+(MatrixSeries a, const MatrixSeries& b) { return a += b; }
    friend MatrixSeries operator-(MatrixSeries a, const MatrixSeries& b) { return a -= b; }

    friend MatrixSeries operator*(const MatrixSeries& a, const MatrixSeries& b) {
        a.check_compatible(b);
        const std::size_t n = std::min(a.order(), b.order());
        MatrixSeries r(a.field_, a.s_, n);
        for (std::size_t i = 0; i <= n; ++i) {
            if (a.terms_[i].is_zero()) continue;
            for (std::size_t j = 0; i + j <= n; ++j) r.terms_[i + j].add_product(a.terms_[i], b.terms_[j]);
        }
        return r;
    }

    /// Right multiplication by a constant matrix.
    friend MatrixSeries operator*(const MatrixSeries& a, const Matrix<T>& m) {
        MatrixSeries r(a.field_, a.s_, a.order());
        for (std::size_t k = 0; k <= a.order(); ++k) r.terms_[k] = a.terms_[k] * m;
        return r;
    }

    /// Left multiplication by a constant matrix.
    friend MatrixSeries operator*(const Matrix<T>& m, const MatrixSeries& a) {
        MatrixSeries r(a.field_, a.s_, a.order());
        for (std::size_t k = 0; k <= a.order(); ++k) r.terms_[k] = m * a.terms_[k];
        return r;
    }

    friend bool operator==(const MatrixSeries& a, const MatrixSeries& b) {
        return a.field_ == b.field_ && a.s_ == b.s_ && a.terms_ == b.terms_;
    }

private:
    void check_compatible(const MatrixSeries& o) const {
        if (!(o.field_ == field_)) throw field_mismatch_error("matrix series over different fields");
        if (o.s_ != s_) throw shape_error("matrix series of sizes " + std::to_string(s_) + " and " + std::to_string(o.s_));
    }

    FieldConfig field_;
    std::size_t s_;
    std::vector<Matrix<T>> terms_;
};

/// Inverse of a matrix series whose constant term is invertible:
/// B_0 = A_0^{-1}, B_n = -A_0^{-1} sum_{k=1..n} A_k B_{n-k}.
template <FieldScalar T>
MatrixSeries<T> invert(const MatrixSeries<T>& a) {
    const std::size_t s = a.size();
    const Matrix<T> inv0 = a.term(0).inverse();
    std::vector<Matrix<T>> b;
    b.reserve(a.order() + 1);
    b.push_back(inv0);
    for (std::size_t n = 1; n <= a.order(); ++n) {
        Matrix<T> acc(a.field(), s, s);
        for (std::size_t k = 1; k <= n; ++k) {
            if (!a.term(k).is_zero()) acc.add_product(a.term(k), b[n - k]);
        }
        b.push_back(-(inv0 * acc));
    }
    return MatrixSeries<T>(std::move(b));
}

/// First (order, row, col) at which two matrix series differ.
struct MatrixDifference {
    std::size_t order;
    std::size_t row;
    std::size_t col;
};

template <FieldScalar T>
std::optional<MatrixDifference> first_difference(const MatrixSeries<T>& a, const MatrixSeries<T>& b) {
    if (a.size() != b.size()) throw shape_error("comparing matrix series of different sizes");
    const std::size_t n = std::min(a.order(), b.order());
    for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < a.size(); ++j) {
                if (!(a.term(k)(i, j) == b.term(k)(i, j))) return MatrixDifference{k, i, j};
            }
        }
    }
    return std::nullopt;
}

}  // namespace bandgf

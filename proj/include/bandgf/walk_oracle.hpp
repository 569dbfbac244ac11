#pragma once

// Motzkin walks with noncommutative matrix weights.
//
// A walk (a_0, ..., a_l) has steps in {-1, 0, 1}. Its weight w is the ordered
// product U_1 ... U_l with U = A, B, C for a step -1, 0, +1. The starred
// weight w* uses D instead of B for a level step at height 0.
//
// Two ways to sum weights over a family of walks are provided:
//   * enumerate_sum visits every walk (3^L of them) and is the ground truth
//     for small lengths;
//   * walk_dp_sum sums over the same families with a transfer recursion on
//     the current height, which is polynomial in L and serves as the oracle
//     at larger orders.
// Neither shares code with the generating-function engine.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bandgf/banded_spec.hpp"
#include "bandgf/matrix.hpp"

namespace bandgf {

enum class WeightMode { w, w_star };

enum class WalkFilter {
    all,                 ///< every walk with the given endpoints
    standard,            ///< every point >= the finish
    primitive_standard,  ///< both of the above and below
    primitive,           ///< closed, positive length, start not revisited before the end
};

class Walk {
public:
    explicit Walk(std::vector<long long> points) : points_(std::move(points)) {
        if (points_.empty()) throw malformed_walk_error("a walk has at least one point");
        for (std::size_t i = 1; i < points_.size(); ++i) {
            long long d = points_[i] - points_[i - 1];
            if (d < -1 || d > 1)
                throw malformed_walk_error("step " + std::to_string(i) + " of size " + std::to_string(d) + " is not in {-1,0,1}");
        }
    }

    std::size_t length() const noexcept { return points_.size() - 1; }
    long long start() const noexcept { return points_.front(); }
    long long finish() const noexcept { return points_.back(); }
    const std::vector<long long>& points() const noexcept { return points_; }

    /// Concatenation: append the steps of `o` after this walk.
    Walk concat(const Walk& o) const {
        std::vector<long long> p = points_;
        for (std::size_t i = 1; i < o.points_.size(); ++i) p.push_back(p.back() + (o.points_[i] - o.points_[i - 1]));
        return Walk(std::move(p));
    }

private:
    std::vector<long long> points_;
};

template <FieldScalar T>
const Matrix<T>& step_weight(const BlockWeights<T>& w, WeightMode mode, long long from, long long to) {
    switch (to - from) {
        case -1: return w.A;
        case 1: return w.C;
        case 0: return (mode == WeightMode::w_star && from == 0) ? w.D : w.B;
        default: throw malformed_walk_error("step of size " + std::to_string(to - from));
    }
}

template <FieldScalar T>
Matrix<T> weight(const BlockWeights<T>& w, WeightMode mode, const Walk& walk) {
    Matrix<T> r = Matrix<T>::identity(w.field(), w.s);
    const auto& p = walk.points();
    for (std::size_t i = 1; i < p.size(); ++i) r = r * step_weight(w, mode, p[i - 1], p[i]);
    return r;
}

inline bool is_standard(const Walk& walk) {
    for (long long a : walk.points()) {
        if (a < walk.finish()) return false;
    }
    return true;
}

inline bool is_primitive(const Walk& walk) {
    if (walk.length() == 0 || walk.start() != walk.finish()) return false;
    const auto& p = walk.points();
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        if (p[i] == walk.start()) return false;
    }
    return true;
}

inline constexpr std::size_t default_enumeration_ceiling = 14;

namespace detail {

template <FieldScalar T>
struct Enumerator {
    const BlockWeights<T>& w;
    WeightMode mode;
    std::size_t max_len;
    long long from;
    long long to;
    bool standard;
    bool primitive;
    std::vector<Matrix<T>>& out;

    void visit(long long pos, std::size_t len, const Matrix<T>& prefix) {
        if (len > 0 && pos == to && (!primitive || pos == from)) out[len] += prefix;
        if (primitive && len > 0 && pos == from) return;
        if (len == max_len) return;
        const long long remaining = static_cast<long long>(max_len - len);
        for (long long d = -1; d <= 1; ++d) {
            const long long next = pos + d;
            if (standard && next < to) continue;
            const long long gap = next > to ? next - to : to - next;
            if (gap > remaining - 1) continue;
            visit(next, len + 1, prefix * step_weight(w, mode, pos, next));
        }
    }
};

}  // namespace detail

/// Sum of weights z^length over walks of length <= max_len from `from` to
/// `to` passing `filter`, by explicit enumeration.
template <FieldScalar T>
MatrixSeries<T> enumerate_sum(const BlockWeights<T>& w, WeightMode mode, std::size_t max_len, long long from, long long to,
                              WalkFilter filter, std::size_t ceiling = default_enumeration_ceiling) {
    if (max_len > ceiling)
        throw resource_limit_error("enumeration length " + std::to_string(max_len) + " exceeds ceiling " +
                                   std::to_string(ceiling));
    const bool standard = filter == WalkFilter::standard || filter == WalkFilter::primitive_standard;
    const bool primitive = filter == WalkFilter::primitive || filter == WalkFilter::primitive_standard;
    std::vector<Matrix<T>> out(max_len + 1, Matrix<T>(w.field(), w.s, w.s));
    if (primitive && from != to) return MatrixSeries<T>(std::move(out));
    if (standard && from < to) return MatrixSeries<T>(std::move(out));
    if (from == to && !primitive) out[0] = Matrix<T>::identity(w.field(), w.s);
    detail::Enumerator<T> e{w, mode, max_len, from, to, standard, primitive, out};
    e.visit(from, 0, Matrix<T>::identity(w.field(), w.s));
    return MatrixSeries<T>(std::move(out));
}

/// Same sums as enumerate_sum, computed by a recursion on the current height:
/// S_{n+1}(h') = sum_h S_n(h) U(h -> h'), where S_n(h) is the total weight of
/// admissible length-n prefixes ending at h.
template <FieldScalar T>
MatrixSeries<T> walk_dp_sum(const BlockWeights<T>& w, WeightMode mode, std::size_t max_len, long long from, long long to,
                            WalkFilter filter) {
    const bool standard = filter == WalkFilter::standard || filter == WalkFilter::primitive_standard;
    const bool primitive = filter == WalkFilter::primitive || filter == WalkFilter::primitive_standard;
    const FieldConfig& f = w.field();
    std::vector<Matrix<T>> out(max_len + 1, Matrix<T>(f, w.s, w.s));
    if ((primitive && from != to) || (standard && from < to)) return MatrixSeries<T>(std::move(out));

    const long long lo = from - static_cast<long long>(max_len);
    const std::size_t width = 2 * max_len + 1;
    auto index = [lo](long long h) { return static_cast<std::size_t>(h - lo); };
    std::vector<Matrix<T>> cur(width, Matrix<T>(f, w.s, w.s));
    cur[index(from)] = Matrix<T>::identity(f, w.s);
    if (from == to && !primitive) out[0] = cur[index(from)];

    for (std::size_t n = 0; n < max_len; ++n) {
        std::vector<Matrix<T>> next(width, Matrix<T>(f, w.s, w.s));
        for (std::size_t k = 0; k < width; ++k) {
            if (cur[k].is_zero()) continue;
            const long long h = lo + static_cast<long long>(k);
            for (long long d = -1; d <= 1; ++d) {
                const long long h2 = h + d;
                if (h2 < lo || h2 >= lo + static_cast<long long>(width)) continue;
                if (standard && h2 < to) continue;
                next[index(h2)].add_product(cur[k], step_weight(w, mode, h, h2));
            }
        }
        if (primitive) {
            out[n + 1] = next[index(from)];
            next[index(from)] = Matrix<T>(f, w.s, w.s);
        } else {
            out[n + 1] = next[index(to)];
        }
        cur = std::move(next);
    }
    return MatrixSeries<T>(std::move(out));
}

/// Walks of each length n <= max_len finishing at 0, grouped by start:
/// entry [n][h + max_len] is the total weight of length-n walks from h to 0
/// (restricted to walks staying >= 0 when `standard`). Built backwards from
/// the finish: R_{n+1}(h) = sum_d U(h -> h+d) R_n(h+d).
template <FieldScalar T>
std::vector<std::vector<Matrix<T>>> walk_sums_by_start(const BlockWeights<T>& w, WeightMode mode, std::size_t max_len,
                                                       bool standard) {
    const FieldConfig& f = w.field();
    const long long off = static_cast<long long>(max_len);
    const std::size_t width = 2 * max_len + 1;
    std::vector<std::vector<Matrix<T>>> out;
    out.reserve(max_len + 1);
    out.emplace_back(width, Matrix<T>(f, w.s, w.s));
    out[0][max_len] = Matrix<T>::identity(f, w.s);
    for (std::size_t n = 0; n < max_len; ++n) {
        const auto& cur = out.back();
        std::vector<Matrix<T>> next(width, Matrix<T>(f, w.s, w.s));
        for (long long h = -off; h <= off; ++h) {
            if (standard && h < 0) continue;
            Matrix<T>& dst = next[static_cast<std::size_t>(h + off)];
            for (long long d = -1; d <= 1; ++d) {
                const long long h2 = h + d;
                if (h2 < -off || h2 > off || (standard && h2 < 0)) continue;
                const Matrix<T>& tail = cur[static_cast<std::size_t>(h2 + off)];
                if (!tail.is_zero()) dst.add_product(step_weight(w, mode, h, h2), tail);
            }
        }
        out.push_back(std::move(next));
    }
    return out;
}

/// u_k^{(n)}: total w*-weight of standard walks of length n from k-1 to 0,
/// for 1 <= k <= kmax and 0 <= n <= order.
template <FieldScalar T>
class UTable {
public:
    UTable(std::size_t order, std::size_t kmax, std::vector<std::vector<Matrix<T>>> rows)
        : order_(order), kmax_(kmax), rows_(std::move(rows)) {}

    std::size_t order() const noexcept { return order_; }
    std::size_t kmax() const noexcept { return kmax_; }

    const Matrix<T>& at(std::size_t k, std::size_t n) const {
        if (k == 0 || k > kmax_ || n > order_) throw out_of_range_error("u-table index out of range");
        return rows_[n][k - 1];
    }

    /// sum_n u_k^{(n)} z^n.
    MatrixSeries<T> series(std::size_t k) const {
        std::vector<Matrix<T>> terms;
        terms.reserve(order_ + 1);
        for (std::size_t n = 0; n <= order_; ++n) terms.push_back(at(k, n));
        return MatrixSeries<T>(std::move(terms));
    }

private:
    std::size_t order_;
    std::size_t kmax_;
    std::vector<std::vector<Matrix<T>>> rows_;
};

/// Builds the table from
///   u_k^{(0)} = I if k = 1 else 0,
///   u_1^{(n+1)} = D u_1^{(n)} + C u_2^{(n)},
///   u_k^{(n+1)} = A u_{k-1}^{(n)} + B u_k^{(n)} + C u_{k+1}^{(n)}  (k > 1).
/// kmax >= order + 2 keeps every read inside the table.
template <FieldScalar T>
UTable<T> u_table(const BlockWeights<T>& w, std::size_t order, std::size_t kmax) {
    if (kmax < order + 2) throw out_of_range_error("u_table needs kmax >= order + 2");
    const FieldConfig& f = w.field();
    const Matrix<T> zero(f, w.s, w.s);
    std::vector<std::vector<Matrix<T>>> rows;
    rows.reserve(order + 1);
    rows.emplace_back(kmax, zero);
    rows[0][0] = Matrix<T>::identity(f, w.s);
    for (std::size_t n = 0; n < order; ++n) {
        const auto& u = rows.back();
        std::vector<Matrix<T>> next(kmax, zero);
        // u_k^{(n)} = 0 for k > n + 1.
        const std::size_t live = std::min(kmax, n + 2);
        for (std::size_t k = 1; k <= live; ++k) {
            Matrix<T>& dst = next[k - 1];
            if (k == 1) {
                dst.add_product(w.D, u[0]);
            } else {
                dst.add_product(w.A, u[k - 2]);
                dst.add_product(w.B, u[k - 1]);
            }
            if (k < kmax) dst.add_product(w.C, u[k]);
        }
        rows.push_back(std::move(next));
    }
    return UTable<T>(order, kmax, std::move(rows));
}

}  // namespace bandgf

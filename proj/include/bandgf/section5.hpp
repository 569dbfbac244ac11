#pragma once

// Weighted generating functions built from the u-table:
//
//   G_r*  = sum over standard walks finishing at 0 of C(a_0, r) w*(a) z^l(a)
//         = sum_k C(k, r) sum_n u_{k+1}^{(n)} z^n,
//   sum_n (sum_k a_k v_k^{(n)}) z^n  for an eventually polynomial weight a,
//   sum_n l(y^{(n)}) z^n  for the affine recursion
//         y^{(0)} = 0,  y^{(n+1)} = T y^{(n)} + sum_k v_k^{(n)} y_k,
//
// where v_k^{(n)} = (V^n)_{k,1}. With V reduced to blocks of size s,
// v_{i+sk}^{(n)} is the (i,1) entry of u_{k+1}^{(n)}, and u_k^{(n)} vanishes
// for k > n + 1, so every coefficient is a finite sum.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bandgf/banded_spec.hpp"
#include "bandgf/genfun.hpp"
#include "bandgf/matrix.hpp"
#include "bandgf/series.hpp"
#include "bandgf/walk_oracle.hpp"

namespace bandgf {

template <FieldScalar T>
struct ResidueRule {
    std::vector<T> initial;  ///< explicit values for k < initial.size()
    std::vector<T> poly;     ///< c_0 + c_1 k + ... used from k = initial.size() on
};

/// A sequence a_1, a_2, ... that is polynomial in k on each residue class
/// j = i + stride * k (1 <= i <= stride), after finitely many explicit values.
template <FieldScalar T>
class EventuallyPolySeq {
public:
    EventuallyPolySeq(FieldConfig field, std::vector<ResidueRule<T>> rules) : field_(field), rules_(std::move(rules)) {
        if (rules_.empty()) throw shape_error("an eventually polynomial sequence needs at least one residue rule");
        for (const auto& r : rules_) {
            for (const auto& v : r.initial) check(v);
            for (const auto& v : r.poly) check(v);
        }
    }

    /// a_j = c for all j.
    static EventuallyPolySeq constant(FieldConfig field, const T& c) {
        return EventuallyPolySeq(field, {ResidueRule<T>{{}, {c}}});
    }

    const FieldConfig& field() const noexcept { return field_; }
    std::size_t stride() const noexcept { return rules_.size(); }
    const std::vector<ResidueRule<T>>& rules() const noexcept { return rules_; }

    /// a_j for 1-based j.
    T at(std::size_t j) const {
        if (j == 0) throw out_of_range_error("sequence indices are 1-based");
        const std::size_t i = (j - 1) % rules_.size();
        const std::size_t k = (j - 1) / rules_.size();
        const auto& r = rules_[i];
        if (k < r.initial.size()) return r.initial[k];
        T acc = zero_of<T>(field_);
        const T kk = T::from_int(field_, static_cast<long long>(k));
        for (std::size_t d = r.poly.size(); d-- > 0;) acc = acc * kk + r.poly[d];
        return acc;
    }

private:
    void check(const T& v) const {
        if (!(v.field() == field_)) throw field_mismatch_error("sequence value over " + v.field().name());
    }

    FieldConfig field_;
    std::vector<ResidueRule<T>> rules_;
};

template <FieldScalar T>
struct AffineRecursion {
    Matrix<T> T_map;                       ///< dimY x dimY
    std::vector<T> functional;             ///< l, length dimY
    std::vector<EventuallyPolySeq<T>> y;   ///< coordinate c of y_j is y[c].at(j)

    std::size_t dim() const noexcept { return T_map.rows(); }

    void validate() const {
        const std::size_t d = T_map.rows();
        if (d == 0 || !T_map.is_square()) throw shape_error("T must be a nonempty square matrix");
        if (functional.size() != d) throw shape_error("l has length " + std::to_string(functional.size()) + ", expected " + std::to_string(d));
        if (y.size() != d) throw shape_error("y has " + std::to_string(y.size()) + " coordinates, expected " + std::to_string(d));
        for (const auto& c : functional) {
            if (!(c.field() == T_map.field())) throw field_mismatch_error("l over a different field");
        }
        for (const auto& s : y) {
            if (!(s.field() == T_map.field())) throw field_mismatch_error("y over a different field");
        }
    }
};

/// G_r* by direct finite summation over the u-table.
template <FieldScalar T>
MatrixSeries<T> g_star_r(const BlockWeights<T>& w, std::size_t r, std::size_t order) {
    const FieldConfig& f = w.field();
    const UTable<T> u = u_table(w, order, order + 2);
    std::vector<Matrix<T>> terms(order + 1, Matrix<T>(f, w.s, w.s));
    for (std::size_t k = r; k <= order; ++k) {
        const T c = binomial<T>(f, static_cast<long long>(k), static_cast<long long>(r));
        if (c.is_zero()) continue;
        for (std::size_t n = k; n <= order; ++n) {
            // a standard walk from k to 0 has length >= k
            terms[n] += u.at(k + 1, n) * c;
        }
    }
    return MatrixSeries<T>(std::move(terms));
}

/// G_0*, ..., G_rmax* from the recursions
///   (I - G(w) A z) G_0* = G(w*),  (I - G(w) A z) G_{r+1}* = G(w) A z G_r*.
template <FieldScalar T>
std::vector<MatrixSeries<T>> g_star_by_recursion(const BlockWeights<T>& w, std::size_t rmax, std::size_t order) {
    const GenFunBundle<T> g = fixed_point_route(w, order);
    const MatrixSeries<T> gaz = (g.Gw * w.A).shift_up(1);
    const MatrixSeries<T> q_inv = invert(MatrixSeries<T>::identity(w.field(), w.s, order) - gaz);
    std::vector<MatrixSeries<T>> out;
    out.push_back(q_inv * g.Gwstar);
    for (std::size_t r = 0; r < rmax; ++r) out.push_back(q_inv * (gaz * out.back()));
    return out;
}

struct GStarCheck {
    std::string name;
    std::size_t r;
    bool ok;
};

/// Verifies (I - G(w)Az) G_0* = G(w*) and (I - G(w)Az) G_{r+1}* = G(w)Az G_r*
/// for r = 0..rmax with G_r* from g_star_r. Throws internal_consistency_error
/// on the first failure.
template <FieldScalar T>
std::vector<GStarCheck> check_g_star_identities(const BlockWeights<T>& w, std::size_t rmax, std::size_t order) {
    const GenFunBundle<T> g = fixed_point_route(w, order);
    const MatrixSeries<T> gaz = (g.Gw * w.A).shift_up(1);
    const MatrixSeries<T> q = MatrixSeries<T>::identity(w.field(), w.s, order) - gaz;
    std::vector<MatrixSeries<T>> gs;
    for (std::size_t r = 0; r <= rmax + 1; ++r) gs.push_back(g_star_r(w, r, order));

    std::vector<GStarCheck> out;
    if (auto d = first_difference(q * gs[0], g.Gwstar))
        throw internal_consistency_error("(I - G(w)Az) G_0* != G(w*) at z^" + std::to_string(d->order));
    out.push_back({"(I-G(w)Az)G_0* = G(w*)", 0, true});
    for (std::size_t r = 0; r <= rmax; ++r) {
        if (auto d = first_difference(q * gs[r + 1], gaz * gs[r]))
            throw internal_consistency_error("(I - G(w)Az) G_" + std::to_string(r + 1) + "* != G(w)Az G_" + std::to_string(r) +
                                             "* at z^" + std::to_string(d->order));
        out.push_back({"(I-G(w)Az)G_{r+1}* = G(w)Az G_r*", r, true});
    }
    return out;
}

namespace detail {

/// v_j^{(n)} for all j with a nonzero value, as (j, value) lists per n.
template <FieldScalar T>
std::vector<std::vector<std::pair<std::size_t, T>>> column_entries(const BlockWeights<T>& w, std::size_t order) {
    const UTable<T> u = u_table(w, order, order + 2);
    std::vector<std::vector<std::pair<std::size_t, T>>> out(order + 1);
    for (std::size_t n = 0; n <= order; ++n) {
        for (std::size_t k = 0; k <= n; ++k) {
            const Matrix<T>& m = u.at(k + 1, n);
            for (std::size_t i = 0; i < w.s; ++i) {
                if (!m(i, 0).is_zero()) out[n].emplace_back(i + 1 + w.s * k, m(i, 0));
            }
        }
    }
    return out;
}

}  // namespace detail

/// sum_n (sum_j a_j (V^n)_{j,1}) z^n for V with block weights w.
template <FieldScalar T>
Series<T> weighted_series(const BlockWeights<T>& w, const EventuallyPolySeq<T>& a, std::size_t order) {
    if (!(a.field() == w.field())) throw field_mismatch_error("weight sequence over a different field");
    const auto cols = detail::column_entries(w, order);
    std::vector<T> c(order + 1, zero_of<T>(w.field()));
    for (std::size_t n = 0; n <= order; ++n) {
        for (const auto& [j, v] : cols[n]) c[n].add_product(a.at(j), v);
    }
    return Series<T>(w.field(), std::move(c));
}

template <FieldScalar T>
Series<T> weighted_series(const BandedSpec<T>& spec, const EventuallyPolySeq<T>& a, std::size_t order) {
    return weighted_series(block_reduce(spec), a, order);
}

/// sum_n l(y^{(n)}) z^n for y^{(0)} = 0, y^{(n+1)} = T y^{(n)} + sum_j v_j^{(n)} y_j.
template <FieldScalar T>
Series<T> affine_pipeline(const BlockWeights<T>& w, const AffineRecursion<T>& rec, std::size_t order) {
    rec.validate();
    if (!(rec.T_map.field() == w.field())) throw field_mismatch_error("recursion and weights over different fields");
    const FieldConfig& f = w.field();
    const std::size_t d = rec.dim();
    const auto cols = detail::column_entries(w, order);

    auto apply_l = [&](const std::vector<T>& y) {
        T acc = zero_of<T>(f);
        for (std::size_t c = 0; c < d; ++c) acc.add_product(rec.functional[c], y[c]);
        return acc;
    };

    std::vector<T> y(d, zero_of<T>(f));
    std::vector<T> out;
    out.reserve(order + 1);
    out.push_back(apply_l(y));
    for (std::size_t n = 0; n < order; ++n) {
        std::vector<T> next(d, zero_of<T>(f));
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) next[r].add_product(rec.T_map(r, c), y[c]);
        }
        for (const auto& [j, v] : cols[n]) {
            for (std::size_t c = 0; c < d; ++c) next[c].add_product(v, rec.y[c].at(j));
        }
        y = std::move(next);
        out.push_back(apply_l(y));
    }
    return Series<T>(f, std::move(out));
}

template <FieldScalar T>
Series<T> affine_pipeline(const BandedSpec<T>& spec, const AffineRecursion<T>& rec, std::size_t order) {
    return affine_pipeline(block_reduce(spec), rec, order);
}

}  // namespace bandgf

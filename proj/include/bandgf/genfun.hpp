#pragma once

// G(V) = sum_n (V^n)_{1,1} z^n computed three independent ways:
//
//   direct       powers of the (truncated) scalar matrix V applied to e_1;
//   fixed_point  G(w) as the unique solution with constant term I of
//                G = I + z B G + z^2 C G A G, then
//                G(w*) = (G(w)^{-1} + (B - D) z)^{-1};
//   laurent      M_i = [x^i] sum_n (A x + B + C/x)^n z^n and
//                G(w) = M_0 - M_1 M_0^{-1} M_{-1}.
//
// G(V) is always read off G(w*) (the corner block D only enters there).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bandgf/banded_spec.hpp"
#include "bandgf/laurent.hpp"
#include "bandgf/matrix.hpp"
#include "bandgf/series.hpp"
#include "bandgf/walk_oracle.hpp"

namespace bandgf {

enum class Route { direct, fixed_point, laurent };

inline std::string route_name(Route r) {
    switch (r) {
        case Route::direct: return "direct";
        case Route::fixed_point: return "fixed_point";
        case Route::laurent: return "laurent";
    }
    return "?";
}

template <FieldScalar T>
struct GenFunBundle {
    Route route;
    MatrixSeries<T> Gw;
    MatrixSeries<T> Gwstar;
    std::optional<MatrixSeries<T>> M0;  ///< laurent route only
    std::optional<MatrixSeries<T>> M1;
    std::optional<MatrixSeries<T>> Mm1;
    Series<T> GV;  ///< (1,1) entry of Gwstar

    std::size_t size() const noexcept { return Gw.size(); }
    std::size_t order() const noexcept { return Gw.order(); }
    const FieldConfig& field() const noexcept { return Gw.field(); }
};

/// Columns V^n e_1 for n = 0..order, restricted to indices 1..K with
/// K = order * b + 1 (b = bandwidth). No path of length <= order leaves that
/// range, so the truncation is exact. Entry [n][i-1] is (V^n)_{i,1}.
template <FieldScalar T>
std::vector<std::vector<T>> first_columns(const BandedSpec<T>& spec, std::size_t order) {
    const FieldConfig& f = spec.field();
    const std::size_t b = spec.bandwidth();
    const std::size_t k = order * b + 1;

    // Sparse rows of the K x K corner.
    std::vector<std::vector<std::pair<std::size_t, T>>> rows(k);
    for (std::size_t i = 1; i <= k; ++i) {
        const std::size_t jlo = i > b ? i - b : 1;
        const std::size_t jhi = std::min(k, i + b);
        for (std::size_t j = jlo; j <= jhi; ++j) {
            T v = spec.entry(i, j);
            if (!v.is_zero()) rows[i - 1].emplace_back(j - 1, std::move(v));
        }
    }

    std::vector<std::vector<T>> cols;
    cols.reserve(order + 1);
    std::vector<T> col(k, zero_of<T>(f));
    col[0] = one_of<T>(f);
    cols.push_back(col);
    for (std::size_t n = 1; n <= order; ++n) {
        std::vector<T> next(k, zero_of<T>(f));
        for (std::size_t i = 0; i < k; ++i) {
            for (const auto& [j, v] : rows[i]) next[i].add_product(v, col[j]);
        }
        col = std::move(next);
        cols.push_back(col);
    }
    return cols;
}

/// sum_{n<=order} (V^n)_{1,1} z^n straight from V.
template <FieldScalar T>
Series<T> direct_route(const BandedSpec<T>& spec, std::size_t order) {
    auto cols = first_columns(spec, order);
    std::vector<T> c;
    c.reserve(order + 1);
    for (auto& col : cols) c.push_back(std::move(col[0]));
    return Series<T>(spec.field(), std::move(c));
}

/// G(w*) from G(w) via G(w*)^{-1} - G(w)^{-1} = (B - D) z.
template <FieldScalar T>
MatrixSeries<T> star_from_plain(const MatrixSeries<T>& gw, const BlockWeights<T>& w) {
    return invert(invert(gw) + MatrixSeries<T>::monomial(w.B - w.D, 1, gw.order()));
}

namespace detail {

template <FieldScalar T>
GenFunBundle<T> bundle_from(Route route, const BlockWeights<T>& w, MatrixSeries<T> gw) {
    MatrixSeries<T> gws = star_from_plain(gw, w);
    Series<T> gv = gws.entry(0, 0);
    return GenFunBundle<T>{route, std::move(gw), std::move(gws), std::nullopt, std::nullopt, std::nullopt, std::move(gv)};
}

}  // namespace detail

/// Iterates G <- I + z B G + z^2 C G A G from G = I for order+1 rounds.
/// After round t the iterate is exact mod z^{t+1}, so round t only needs to
/// be carried to order min(t, order).
template <FieldScalar T>
MatrixSeries<T> solve_fixed_point(const BlockWeights<T>& w, std::size_t order) {
    const FieldConfig& f = w.field();
    MatrixSeries<T> g = MatrixSeries<T>::identity(f, w.s, 0);
    for (std::size_t t = 1; t <= order + 1; ++t) {
        const std::size_t n = std::min(t, order);
        const MatrixSeries<T> gp = g.pad_to(n);
        MatrixSeries<T> next = MatrixSeries<T>::identity(f, w.s, n);
        next += (w.B * gp).shift_up(1);
        next += ((w.C * gp) * (w.A * gp)).shift_up(2);
        g = std::move(next);
    }
    return g;
}

template <FieldScalar T>
GenFunBundle<T> fixed_point_route(const BlockWeights<T>& w, std::size_t order) {
    return detail::bundle_from(Route::fixed_point, w, solve_fixed_point(w, order));
}

template <FieldScalar T>
GenFunBundle<T> laurent_route(const BlockWeights<T>& w, std::size_t order) {
    const LaurentSeries<T> acc = laurent_accumulate(w.A, w.B, w.C, order);
    MatrixSeries<T> m0 = laurent_extract(acc, 0);
    MatrixSeries<T> m1 = laurent_extract(acc, 1);
    MatrixSeries<T> mm1 = laurent_extract(acc, -1);
    MatrixSeries<T> gw = m0 - m1 * invert(m0) * mm1;
    GenFunBundle<T> out = detail::bundle_from(Route::laurent, w, std::move(gw));
    out.M0 = std::move(m0);
    out.M1 = std::move(m1);
    out.Mm1 = std::move(mm1);
    return out;
}

struct RouteAgreement {
    std::string left;
    std::string right;
    std::size_t orders;  ///< compared z^0..z^orders
};

template <FieldScalar T>
struct CrossCheckReport {
    std::size_t block_size;
    std::size_t order;
    std::size_t oracle_length;
    Series<T> GV;
    std::vector<RouteAgreement> agreements;
};

namespace detail {

template <FieldScalar T>
void require_same(const Series<T>& a, const Series<T>& b, const std::string& la, const std::string& lb,
                  std::vector<RouteAgreement>& log) {
    if (auto k = first_difference(a, b))
        throw route_mismatch_error(la + " and " + lb + " disagree at z^" + std::to_string(*k) + ": " + a[*k].to_string() +
                                       " vs " + b[*k].to_string(),
                                   *k);
    log.push_back({la, lb, std::min(a.order(), b.order())});
}

template <FieldScalar T>
void require_same(const MatrixSeries<T>& a, const MatrixSeries<T>& b, const std::string& la, const std::string& lb,
                  std::vector<RouteAgreement>& log) {
    if (auto d = first_difference(a, b))
        throw route_mismatch_error(la + " and " + lb + " disagree at z^" + std::to_string(d->order) + " entry (" +
                                       std::to_string(d->row + 1) + "," + std::to_string(d->col + 1) + ")",
                                   d->order);
    log.push_back({la, lb, std::min(a.order(), b.order())});
}

}  // namespace detail

/// Runs the direct route on V, the fixed-point and Laurent routes on the
/// given weights, and brute-force enumeration up to min(order, oracle_length).
/// Throws route_mismatch_error on the first disagreement.
template <FieldScalar T>
CrossCheckReport<T> cross_check(const BandedSpec<T>& spec, const BlockWeights<T>& w, std::size_t order,
                                std::size_t oracle_length = 10) {
    std::vector<RouteAgreement> log;
    const Series<T> direct = direct_route(spec, order);
    const GenFunBundle<T> fp = fixed_point_route(w, order);
    const GenFunBundle<T> lr = laurent_route(w, order);
    const std::size_t len = std::min({order, oracle_length, default_enumeration_ceiling});
    const MatrixSeries<T> enumerated = enumerate_sum(w, WeightMode::w_star, len, 0, 0, WalkFilter::standard);

    detail::require_same(direct, fp.GV, "direct G(V)", "fixed_point G(V)", log);
    detail::require_same(direct, lr.GV, "direct G(V)", "laurent G(V)", log);
    detail::require_same(fp.Gw, lr.Gw, "fixed_point G(w)", "laurent G(w)", log);
    detail::require_same(fp.Gwstar, lr.Gwstar, "fixed_point G(w*)", "laurent G(w*)", log);
    detail::require_same(enumerated, fp.Gwstar, "enumerated G(w*)", "fixed_point G(w*)", log);
    detail::require_same(enumerated.entry(0, 0), direct, "enumerated G(V)", "direct G(V)", log);
    return CrossCheckReport<T>{w.s, order, len, direct, std::move(log)};
}

template <FieldScalar T>
CrossCheckReport<T> cross_check(const BandedSpec<T>& spec, std::size_t order, std::size_t oracle_length = 10) {
    return cross_check(spec, block_reduce(spec), order, oracle_length);
}

}  // namespace bandgf

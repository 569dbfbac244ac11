#pragma once

// Identity suite: every relation between walk sums and the engine, checked
// exactly to a given order. Walk-side quantities come from the height
// recursions in walk_oracle (and, up to a small length, from explicit
// enumeration), never from the engine itself.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bandgf/banded_spec.hpp"
#include "bandgf/genfun.hpp"
#include "bandgf/laurent.hpp"
#include "bandgf/section5.hpp"
#include "bandgf/walk_oracle.hpp"

namespace bandgf {

struct IdentityResult {
    std::string name;
    bool ok;
    std::size_t order;                          ///< checked z^0..z^order
    std::optional<std::size_t> first_failure;   ///< lowest failing power of z
};

namespace detail {

template <FieldScalar T>
IdentityResult compare(std::string name, const MatrixSeries<T>& a, const MatrixSeries<T>& b) {
    const std::size_t n = std::min(a.order(), b.order());
    if (auto d = first_difference(a, b)) return {std::move(name), false, n, d->order};
    return {std::move(name), true, n, std::nullopt};
}

template <FieldScalar T>
IdentityResult compare(std::string name, const Series<T>& a, const Series<T>& b) {
    const std::size_t n = std::min(a.order(), b.order());
    if (auto d = first_difference(a, b)) return {std::move(name), false, n, *d};
    return {std::move(name), true, n, std::nullopt};
}

/// sum_n W^n restricted to rows/columns of the first block column, on the
/// scalar block pattern, as a table [n][k-1] of s x s blocks (k = 1..n+1).
template <FieldScalar T>
std::vector<std::vector<Matrix<T>>> pattern_block_columns(const BlockWeights<T>& w, std::size_t order) {
    const FieldConfig& f = w.field();
    const std::size_t s = w.s;
    const std::size_t dim = (order + 2) * s;
    std::vector<std::vector<std::pair<std::size_t, T>>> rows(dim);
    for (std::size_t i = 1; i <= dim; ++i) {
        const std::size_t jlo = i > 2 * s ? i - 2 * s : 1;
        const std::size_t jhi = std::min(dim, i + 2 * s);
        for (std::size_t j = jlo; j <= jhi; ++j) {
            T v = block_pattern_entry(w, i, j);
            if (!v.is_zero()) rows[i - 1].emplace_back(j - 1, std::move(v));
        }
    }
    std::vector<std::vector<Matrix<T>>> out(order + 1, std::vector<Matrix<T>>(order + 1, Matrix<T>(f, s, s)));
    for (std::size_t c = 0; c < s; ++c) {
        std::vector<T> col(dim, zero_of<T>(f));
        col[c] = one_of<T>(f);
        for (std::size_t n = 0; n <= order; ++n) {
            for (std::size_t k = 0; k <= n; ++k) {
                for (std::size_t i = 0; i < s; ++i) out[n][k](i, c) = col[k * s + i];
            }
            if (n == order) break;
            std::vector<T> next(dim, zero_of<T>(f));
            for (std::size_t i = 0; i < dim; ++i) {
                for (const auto& [j, v] : rows[i]) next[i].add_product(v, col[j]);
            }
            col = std::move(next);
        }
    }
    return out;
}

}  // namespace detail

/// Engine outputs against explicit walk enumeration for lengths <= len:
/// G(w), G(w*), H(w), M_0, M_1, M_{-1}, J_0.
template <FieldScalar T>
std::vector<IdentityResult> oracle_compare(const BlockWeights<T>& w, std::size_t len) {
    const FieldConfig& f = w.field();
    const GenFunBundle<T> fp = fixed_point_route(w, len);
    const GenFunBundle<T> lr = laurent_route(w, len);
    auto walks = [&](WeightMode m, long long from, WalkFilter filt) { return enumerate_sum(w, m, len, from, 0, filt); };

    const MatrixSeries<T> h_engine = MatrixSeries<T>::monomial(w.B, 1, len) + ((w.C * fp.Gw) * w.A).shift_up(2);
    const MatrixSeries<T> j0_engine = MatrixSeries<T>::identity(f, w.s, len) - invert(*lr.M0);

    std::vector<IdentityResult> out;
    out.push_back(detail::compare("G(w) fixed_point vs walks", walks(WeightMode::w, 0, WalkFilter::standard), fp.Gw));
    out.push_back(detail::compare("G(w) laurent vs walks", walks(WeightMode::w, 0, WalkFilter::standard), lr.Gw));
    out.push_back(detail::compare("G(w*) vs walks", walks(WeightMode::w_star, 0, WalkFilter::standard), fp.Gwstar));
    out.push_back(detail::compare("H(w) vs walks", walks(WeightMode::w, 0, WalkFilter::primitive_standard), h_engine));
    out.push_back(detail::compare("M_0 vs walks", walks(WeightMode::w, 0, WalkFilter::all), *lr.M0));
    out.push_back(detail::compare("M_1 vs walks", walks(WeightMode::w, 1, WalkFilter::all), *lr.M1));
    out.push_back(detail::compare("M_-1 vs walks", walks(WeightMode::w, -1, WalkFilter::all), *lr.Mm1));
    out.push_back(detail::compare("J_0 vs walks", walks(WeightMode::w, 0, WalkFilter::primitive), j0_engine));
    return out;
}

/// The full identity suite to order N. Walk sums up to length
/// min(oracle_length, N) are additionally cross-checked by enumeration.
/// With a spec, the u-table is also compared with the columns of V^n.
template <FieldScalar T>
std::vector<IdentityResult> identity_suite(const BlockWeights<T>& w, std::size_t order, std::size_t oracle_length = 8,
                                           const BandedSpec<T>* spec = nullptr, std::size_t rmax = 3) {
    const FieldConfig& f = w.field();
    const std::size_t n = order;
    const MatrixSeries<T> id = MatrixSeries<T>::identity(f, w.s, n);
    std::vector<IdentityResult> out;

    // walk-side sums by height recursion
    const MatrixSeries<T> g_walk = walk_dp_sum(w, WeightMode::w, n, 0, 0, WalkFilter::standard);
    const MatrixSeries<T> gs_walk = walk_dp_sum(w, WeightMode::w_star, n, 0, 0, WalkFilter::standard);
    const MatrixSeries<T> h_walk = walk_dp_sum(w, WeightMode::w, n, 0, 0, WalkFilter::primitive_standard);
    const MatrixSeries<T> j0_walk = walk_dp_sum(w, WeightMode::w, n, 0, 0, WalkFilter::primitive);

    const std::size_t len = std::min({n, oracle_length, default_enumeration_ceiling});
    out.push_back(detail::compare("standard walks: enumeration vs height recursion",
                                  enumerate_sum(w, WeightMode::w, len, 0, 0, WalkFilter::standard), g_walk));
    out.push_back(detail::compare("primitive standard walks: enumeration vs height recursion",
                                  enumerate_sum(w, WeightMode::w, len, 0, 0, WalkFilter::primitive_standard), h_walk));

    out.push_back(detail::compare("(I - H) G = I", (id - h_walk) * g_walk, id));
    out.push_back(detail::compare("H = Bz + C G A z^2", h_walk,
                                  MatrixSeries<T>::monomial(w.B, 1, n) + ((w.C * g_walk) * w.A).shift_up(2)));

    const GenFunBundle<T> fp = fixed_point_route(w, n);
    out.push_back(detail::compare("G = I + zBG + z^2 CGAG", fp.Gw,
                                  id + (w.B * fp.Gw).shift_up(1) + ((w.C * fp.Gw) * (w.A * fp.Gw)).shift_up(2)));
    out.push_back(detail::compare("G(w) engine vs walks", fp.Gw, g_walk));
    out.push_back(detail::compare("G(w*)^-1 - G(w)^-1 = (B - D) z", invert(gs_walk) - invert(g_walk),
                                  MatrixSeries<T>::monomial(w.B - w.D, 1, n)));

    // Laurent accumulation term by term against walks grouped by start height.
    const LaurentSeries<T> acc = laurent_accumulate(w.A, w.B, w.C, n);
    const auto by_start = walk_sums_by_start(w, WeightMode::w, n, false);
    {
        IdentityResult r{"(Ax + B + C/x)^n = sum of w(a) x^(a_0) over length-n walks to 0", true, n, std::nullopt};
        for (std::size_t k = 0; k <= n && r.ok; ++k) {
            for (long long d = -static_cast<long long>(k); d <= static_cast<long long>(k); ++d) {
                if (!(acc.coefficient(k, d) == by_start[k][static_cast<std::size_t>(d + static_cast<long long>(n))])) {
                    r.ok = false;
                    r.first_failure = k;
                    break;
                }
            }
        }
        out.push_back(std::move(r));
    }

    const MatrixSeries<T> m0 = laurent_extract(acc, 0);
    const MatrixSeries<T> m1 = laurent_extract(acc, 1);
    const MatrixSeries<T> mm1 = laurent_extract(acc, -1);
    out.push_back(detail::compare("M_0 = (I - J_0)^-1", m0, invert(id - j0_walk)));
    out.push_back(detail::compare("G(w) = M_0 - M_1 M_0^-1 M_-1", g_walk, m0 - m1 * invert(m0) * mm1));

    // u-table against the first block column of W^n.
    const UTable<T> u = u_table(w, n, n + 2);
    {
        const auto cols = detail::pattern_block_columns(w, n);
        IdentityResult r{"u_k^(n) = block (k,1) of W^n", true, n, std::nullopt};
        for (std::size_t m = 0; m <= n && r.ok; ++m) {
            for (std::size_t k = 1; k <= m + 1; ++k) {
                if (!(u.at(k, m) == cols[m][k - 1])) {
                    r.ok = false;
                    r.first_failure = m;
                    break;
                }
            }
        }
        out.push_back(std::move(r));
    }
    if (spec != nullptr) {
        const auto cols = first_columns(*spec, n);
        IdentityResult r{"u_k^(n) column 1 = (V^n)_{j,1}", true, n, std::nullopt};
        for (std::size_t m = 0; m <= n && r.ok; ++m) {
            for (std::size_t j = 1; j <= cols[m].size(); ++j) {
                const std::size_t k = (j - 1) / w.s + 1;
                const T expected = k <= n + 2 ? u.at(k, m)((j - 1) % w.s, 0) : zero_of<T>(f);
                if (!(cols[m][j - 1] == expected)) {
                    r.ok = false;
                    r.first_failure = m;
                    break;
                }
            }
        }
        out.push_back(std::move(r));
    }
    out.push_back(detail::compare("u_1 = G(w*)", u.series(1), gs_walk));
    const MatrixSeries<T> gaz = (fp.Gw * w.A).shift_up(1);
    for (std::size_t k = 1; k <= 4 && k + 1 <= n + 2; ++k) {
        out.push_back(detail::compare("u_" + std::to_string(k + 1) + " = G(w) A z u_" + std::to_string(k), u.series(k + 1),
                                      gaz * u.series(k)));
    }

    // G_r*: direct sum, walk sum, and the recursions linking consecutive r.
    std::vector<MatrixSeries<T>> gr;
    const auto std_by_start = walk_sums_by_start(w, WeightMode::w_star, n, true);
    for (std::size_t r = 0; r <= rmax + 1; ++r) {
        gr.push_back(g_star_r(w, r, n));
        std::vector<Matrix<T>> terms(n + 1, Matrix<T>(f, w.s, w.s));
        for (std::size_t m = 0; m <= n; ++m) {
            for (std::size_t h = r; h <= m; ++h) {
                terms[m] += std_by_start[m][h + n] *
                            binomial<T>(f, static_cast<long long>(h), static_cast<long long>(r));
            }
        }
        out.push_back(detail::compare("G_" + std::to_string(r) + "* = binomially weighted standard walks", gr.back(),
                                      MatrixSeries<T>(std::move(terms))));
    }
    const MatrixSeries<T> q = id - gaz;
    out.push_back(detail::compare("(I - G(w)Az) G_0* = G(w*)", q * gr[0], gs_walk));
    for (std::size_t r = 0; r <= rmax; ++r) {
        out.push_back(detail::compare("(I - G(w)Az) G_" + std::to_string(r + 1) + "* = G(w)Az G_" + std::to_string(r) + "*",
                                      q * gr[r + 1], gaz * gr[r]));
    }
    return out;
}

inline bool all_ok(const std::vector<IdentityResult>& rs) {
    for (const auto& r : rs) {
        if (!r.ok) return false;
    }
    return true;
}

}  // namespace bandgf

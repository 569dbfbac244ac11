#pragma once

// Annihilating polynomials P(z, x) = sum_{i,j} c_{i,j} z^j x^i of power
// series, found by linear algebra on truncated coefficients and certified by
// substitution at a higher order.
//
// reconstruct() solves for the nullspace of (c_{i,j}) -> [z^n] sum c_{i,j} z^j g^i,
// n = 0..order. It tries bounds in increasing order (x-degree first, then
// z-degree) and returns the first hit, so the answer is degree-minimal in
// that order. Over Q the elimination is fraction-free (Bareiss) on integer
// rows; over F_p it is ordinary Gaussian elimination. Among several nullspace
// vectors the canonical one is the reduced-echelon basis vector with the
// smallest leading unknown.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "bandgf/banded_spec.hpp"
#include "bandgf/field.hpp"
#include "bandgf/matrix.hpp"
#include "bandgf/series.hpp"

namespace bandgf {

/// Polynomial in z given by its coefficient list, as a series of the given order.
template <FieldScalar T>
Series<T> series_from_poly(const FieldConfig& f, const std::vector<T>& poly, std::size_t order) {
    std::vector<T> c(order + 1, zero_of<T>(f));
    for (std::size_t k = 0; k < poly.size() && k <= order; ++k) c[k] = poly[k];
    return Series<T>(f, std::move(c));
}

template <FieldScalar T>
std::vector<T> poly_from_ints(const FieldConfig& f, const std::vector<long long>& v) {
    std::vector<T> out;
    out.reserve(v.size());
    for (long long x : v) out.push_back(T::from_int(f, x));
    return out;
}

template <FieldScalar T>
std::vector<T> poly_mul(const FieldConfig& f, const std::vector<T>& a, const std::vector<T>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<T> r(a.size() + b.size() - 1, zero_of<T>(f));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j].add_product(a[i], b[j]);
    }
    return r;
}

template <FieldScalar T>
class AnnihilatorPoly {
public:
    /// coeffs[i][j] is the coefficient of x^i z^j. Trailing zero rows and
    /// columns are trimmed; the zero polynomial is rejected.
    AnnihilatorPoly(FieldConfig field, std::vector<std::vector<T>> coeffs) : field_(field), c_(std::move(coeffs)) {
        std::size_t dz = 0;
        std::optional<std::size_t> dx;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            for (std::size_t j = 0; j < c_[i].size(); ++j) {
                if (!(c_[i][j].field() == field_)) throw field_mismatch_error("polynomial coefficient over another field");
                if (!c_[i][j].is_zero()) {
                    dx = i;
                    dz = std::max(dz, j);
                }
            }
        }
        if (!dx) throw error("the zero polynomial is not an annihilator");
        c_.resize(*dx + 1);
        for (auto& row : c_) row.resize(dz + 1, zero_of<T>(field_));
    }

    static AnnihilatorPoly from_ints(FieldConfig field, const std::vector<std::vector<long long>>& rows) {
        std::vector<std::vector<T>> c;
        for (const auto& r : rows) c.push_back(poly_from_ints<T>(field, r));
        return AnnihilatorPoly(field, std::move(c));
    }

    /// From the x-coefficients given as polynomials in z (index = x-degree).
    static AnnihilatorPoly from_x_coefficients(FieldConfig field, std::vector<std::vector<T>> by_x_degree) {
        return AnnihilatorPoly(field, std::move(by_x_degree));
    }

    const FieldConfig& field() const noexcept { return field_; }
    std::size_t degree_x() const noexcept { return c_.size() - 1; }
    std::size_t degree_z() const noexcept { return c_[0].size() - 1; }
    const std::vector<std::vector<T>>& coefficients() const noexcept { return c_; }
    const T& coeff(std::size_t i, std::size_t j) const { return c_.at(i).at(j); }

    /// Copy with one coefficient replaced.
    AnnihilatorPoly with_coeff(std::size_t i, std::size_t j, T value) const {
        auto c = c_;
        if (i >= c.size()) c.resize(i + 1, std::vector<T>(c_[0].size(), zero_of<T>(field_)));
        for (auto& row : c) {
            if (j >= row.size()) row.resize(j + 1, zero_of<T>(field_));
        }
        c[i][j] = std::move(value);
        return AnnihilatorPoly(field_, std::move(c));
    }

    /// Leading coefficient: highest x-degree, then highest z-degree.
    const T& leading() const {
        const auto& row = c_.back();
        for (std::size_t j = row.size(); j-- > 0;) {
            if (!row[j].is_zero()) return row[j];
        }
        throw internal_consistency_error("top row of an annihilator is zero");
    }

    /// Over Q: integer coefficients with content 1 and positive leading
    /// coefficient. Over F_p: leading coefficient 1.
    AnnihilatorPoly normalized() const {
        auto c = c_;
        if constexpr (std::is_same_v<T, Rational>) {
            mpz_class l = 1, g = 0;
            for (const auto& row : c) {
                for (const auto& x : row) {
                    if (x.is_zero()) continue;
                    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
                }
            }
            for (const auto& row : c) {
                for (const auto& x : row) {
                    mpz_class n = x.numerator() * (l / x.denominator());
                    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
                }
            }
            Rational scale{l, g};
            if (sgn(leading().value()) < 0) scale = -scale;
            for (auto& row : c) {
                for (auto& x : row) x *= scale;
            }
        } else {
            const T inv = leading().inverse();
            for (auto& row : c) {
                for (auto& x : row) x *= inv;
            }
        }
        return AnnihilatorPoly(field_, std::move(c));
    }

    friend bool operator==(const AnnihilatorPoly& a, const AnnihilatorPoly& b) {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }

    /// True when a and b agree up to a nonzero scalar.
    friend bool same_up_to_scalar(const AnnihilatorPoly& a, const AnnihilatorPoly& b) {
        return a.normalized() == b.normalized();
    }

    /// P(z, g(z)) truncated at g's order (Horner in x).
    Series<T> residual(const Series<T>& g) const {
        if (!(g.field() == field_)) throw field_mismatch_error("series and polynomial over different fields");
        const std::size_t n = g.order();
        Series<T> acc = series_from_poly(field_, c_.back(), n);
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * g + series_from_poly(field_, c_[i], n);
        return acc;
    }

    /// Human-readable form, x-degree descending, e.g. "(z^5 - z^4)*x^3 + ... + (z^2 - 2*z + 1)".
    std::string pretty() const {
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            std::string inner = poly_text(c_[i]);
            if (inner.empty()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + inner + ")";
            if (i == 1) out += "*x";
            if (i > 1) out += "*x^" + std::to_string(i);
        }
        return out;
    }

private:
    static std::string poly_text(const std::vector<T>& p) {
        std::string out;
        for (std::size_t j = p.size(); j-- > 0;) {
            if (p[j].is_zero()) continue;
            std::string c = p[j].to_string();
            bool negative = false;
            if constexpr (std::is_same_v<T, Rational>) negative = sgn(p[j].value()) < 0;
            if (negative) c.erase(0, 1);
            if (out.empty()) {
                out += negative ? "-" : "";
            } else {
                out += negative ? " - " : " + ";
            }
            const bool unit = c == "1";
            if (j == 0) {
                out += c;
            } else {
                if (!unit) out += c + "*";
                out += j == 1 ? "z" : "z^" + std::to_string(j);
            }
        }
        return out;
    }

    FieldConfig field_;
    std::vector<std::vector<T>> c_;
};

struct VerifyResult {
    bool ok;
    std::size_t order;                         ///< checked z^0..z^order
    std::optional<std::size_t> first_nonzero;  ///< first order with nonzero residual
};

/// P(z, g) == 0 mod z^{order+1}.
template <FieldScalar T>
VerifyResult verify(const AnnihilatorPoly<T>& p, const Series<T>& g) {
    const Series<T> r = p.residual(g);
    return VerifyResult{!r.valuation().has_value(), g.order(), r.valuation()};
}

inline constexpr std::size_t default_reconstruction_guard = 20;

namespace detail {

/// Reduced-echelon nullspace basis of the m x n system `rows` (row-major),
/// ordered by the free column. Each basis vector has a 1 in its free column.
template <FieldScalar T>
std::vector<std::vector<T>> nullspace(const FieldConfig& f, std::vector<std::vector<T>> rows, std::size_t n) {
    std::vector<std::size_t> pivots;
    std::vector<std::vector<T>> echelon;

    if constexpr (std::is_same_v<T, Rational>) {
        // Fraction-free: scale each row to integers, then Bareiss.
        std::vector<std::vector<mpz_class>> m;
        m.reserve(rows.size());
        for (const auto& row : rows) {
            mpz_class l = 1;
            for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
            std::vector<mpz_class> r;
            r.reserve(n);
            for (const auto& x : row) r.push_back(x.numerator() * (l / x.denominator()));
            m.push_back(std::move(r));
        }
        mpz_class prev = 1;
        std::size_t r = 0;
        for (std::size_t c = 0; c < n && r < m.size(); ++c) {
            std::size_t p = r;
            while (p < m.size() && m[p][c] == 0) ++p;
            if (p == m.size()) continue;
            std::swap(m[p], m[r]);
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                for (std::size_t j = c + 1; j < n; ++j) {
                    mpz_class t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                    mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
                m[i][c] = 0;
            }
            prev = m[r][c];
            pivots.push_back(c);
            ++r;
        }
        for (std::size_t i = 0; i < r; ++i) {
            std::vector<T> row;
            row.reserve(n);
            for (const auto& x : m[i]) row.push_back(Rational(mpq_class(x)));
            echelon.push_back(std::move(row));
        }
    } else {
        std::size_t r = 0;
        for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
            std::size_t p = r;
            while (p < rows.size() && rows[p][c].is_zero()) ++p;
            if (p == rows.size()) continue;
            std::swap(rows[p], rows[r]);
            const T inv = rows[r][c].inverse();
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c].is_zero()) continue;
                const T factor = rows[i][c] * inv;
                for (std::size_t j = c; j < n; ++j) rows[i][j] -= factor * rows[r][j];
            }
            pivots.push_back(c);
            ++r;
        }
        rows.resize(r);
        echelon = std::move(rows);
    }

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> x(n, zero_of<T>(f));
        x[free] = one_of<T>(f);
        for (std::size_t k = pivots.size(); k-- > 0;) {
            const std::size_t c = pivots[k];
            T acc = zero_of<T>(f);
            for (std::size_t j = c + 1; j < n; ++j) {
                if (!x[j].is_zero()) acc.add_product(echelon[k][j], x[j]);
            }
            x[c] = -(acc * echelon[k][c].inverse());
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Nullspace of the substitution map for fixed degree bounds, given the
/// powers g^0..g^dx.
template <FieldScalar T>
std::vector<std::vector<T>> substitution_nullspace(const std::vector<Series<T>>& powers, std::size_t dx, std::size_t dz) {
    const FieldConfig& f = powers[0].field();
    const std::size_t order = powers[0].order();
    const std::size_t unknowns = (dx + 1) * (dz + 1);
    std::vector<std::vector<T>> rows(order + 1, std::vector<T>(unknowns, zero_of<T>(f)));
    // unknown (i, j) sits at column i * (dz + 1) + j
    for (std::size_t i = 0; i <= dx; ++i) {
        for (std::size_t j = 0; j <= dz; ++j) {
            const std::size_t col = i * (dz + 1) + j;
            for (std::size_t n = j; n <= order; ++n) rows[n][col] = powers[i][n - j];
        }
    }
    return nullspace(f, std::move(rows), unknowns);
}

}  // namespace detail

/// Smallest-degree annihilator with x-degree <= dx and z-degree <= dz, or
/// nullopt when none exists at these bounds. Needs
/// g.order() >= (dx+1)(dz+1) + guard.
template <FieldScalar T>
std::optional<AnnihilatorPoly<T>> reconstruct(const Series<T>& g, std::size_t dx, std::size_t dz,
                                              std::size_t guard = default_reconstruction_guard) {
    const std::size_t needed = (dx + 1) * (dz + 1) + guard;
    if (g.order() < needed)
        throw insufficient_precision_error("reconstruction with bounds (" + std::to_string(dx) + "," + std::to_string(dz) +
                                           ") needs order >= " + std::to_string(needed) + ", got " + std::to_string(g.order()));
    const FieldConfig& f = g.field();
    std::vector<Series<T>> powers{Series<T>::one(f, g.order())};
    for (std::size_t i = 1; i <= dx; ++i) powers.push_back(powers.back() * g);

    for (std::size_t ddx = 1; ddx <= dx; ++ddx) {
        for (std::size_t ddz = 0; ddz <= dz; ++ddz) {
            auto basis = detail::substitution_nullspace(powers, ddx, ddz);
            if (basis.empty()) continue;
            const auto& v = basis.front();
            std::vector<std::vector<T>> c(ddx + 1, std::vector<T>(ddz + 1, zero_of<T>(f)));
            for (std::size_t i = 0; i <= ddx; ++i) {
                for (std::size_t j = 0; j <= ddz; ++j) c[i][j] = v[i * (ddz + 1) + j];
            }
            return AnnihilatorPoly<T>(f, std::move(c)).normalized();
        }
    }
    return std::nullopt;
}

/// p + q * sqrt(R), with p, q polynomials in z.
template <FieldScalar T>
struct RadicalExpr {
    std::vector<T> rational_part;
    std::vector<T> radical_part;
};

/// numerator / denominator with one shared radicand R (R(0) = 1).
template <FieldScalar T>
struct SqrtClosedForm {
    std::vector<T> radicand;
    RadicalExpr<T> numerator;
    RadicalExpr<T> denominator;
};

template <FieldScalar T>
Series<T> expand(const FieldConfig& f, const RadicalExpr<T>& e, const Series<T>& root) {
    const std::size_t n = root.order();
    return series_from_poly(f, e.rational_part, n) + series_from_poly(f, e.radical_part, n) * root;
}

/// Power series of a closed form to the given order. A denominator with
/// valuation k > 0 is divided out as z^k, which requires the numerator's
/// first k coefficients to vanish (non_unit_error otherwise).
template <FieldScalar T>
Series<T> expand(const FieldConfig& f, const SqrtClosedForm<T>& form, std::size_t order) {
    // the denominator's valuation is bounded by the degree of its rational
    // part plus the order of the first nonzero term; grow until it is seen
    std::size_t extra = 4 + form.denominator.rational_part.size() + form.denominator.radical_part.size();
    for (int attempt = 0; attempt < 8; ++attempt, extra *= 2) {
        const std::size_t n = order + extra;
        const Series<T> root = sqrt(series_from_poly(f, form.radicand, n));
        const Series<T> den = expand(f, form.denominator, root);
        const auto v = den.valuation();
        if (!v || *v > extra) continue;
        const Series<T> num = expand(f, form.numerator, root);
        return (num.shift_down(*v) * invert(den.shift_down(*v))).truncate(order);
    }
    throw non_unit_error("closed-form denominator vanishes to high order");
}

struct ClosedFormCheck {
    bool ok;
    std::size_t order;
    std::optional<std::size_t> first_difference;
};

/// Compares g with the expansion of a closed form through g's order.
template <FieldScalar T>
ClosedFormCheck check_closed_form_sqrt(const Series<T>& g, const SqrtClosedForm<T>& form) {
    const Series<T> e = expand(g.field(), form, g.order());
    auto d = first_difference(g, e);
    return ClosedFormCheck{!d.has_value(), g.order(), d};
}

/// Coefficients in x of det(xI - z(Ax^2 + Bx + C)) at a fixed value of z,
/// lowest degree first. The determinant has degree <= 2s in x; it is sampled
/// at x = 0..2s and interpolated, so the field needs more than 2s elements.
template <FieldScalar T>
std::vector<T> kernel_determinant_in_x(const BlockWeights<T>& w, const T& zval) {
    const FieldConfig& f = w.field();
    const std::size_t m = 2 * w.s + 1;
    if (f.kind() == FieldKind::prime_field && f.modulus() < m)
        throw unsupported_characteristic_error("interpolation needs p > 2s");
    std::vector<T> xs, ys;
    for (std::size_t k = 0; k < m; ++k) {
        const T x = T::from_int(f, static_cast<long long>(k));
        Matrix<T> mat = Matrix<T>::identity(f, w.s) * x - (w.A * (x * x) + w.B * x + w.C) * zval;
        xs.push_back(x);
        ys.push_back(mat.determinant());
    }
    // Newton divided differences, then expand the Newton form.
    std::vector<T> dd = ys;
    for (std::size_t lvl = 1; lvl < m; ++lvl) {
        for (std::size_t k = m - 1; k >= lvl; --k) dd[k] = (dd[k] - dd[k - 1]) * (xs[k] - xs[k - lvl]).inverse();
    }
    std::vector<T> poly{dd[m - 1]};
    for (std::size_t k = m - 1; k-- > 0;) {
        std::vector<T> next(poly.size() + 1, zero_of<T>(f));
        for (std::size_t d = 0; d < poly.size(); ++d) {
            next[d + 1] += poly[d];
            next[d] -= poly[d] * xs[k];
        }
        next[0] += dd[k];
        poly = std::move(next);
    }
    while (poly.size() > 1 && poly.back().is_zero()) poly.pop_back();
    return poly;
}

}  // namespace bandgf

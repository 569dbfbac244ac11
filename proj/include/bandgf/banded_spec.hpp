#pragma once

// Finite description of an infinite banded matrix V = |v_{i,j}| (1-based
// indices) whose diagonals are eventually periodic, and its reduction to a
// block-tridiagonal matrix W over M_s(F):
//
//     | D C       |
//     | A B C     |
//     |   A B C   |
//     |     ...   |
//
// The reduction needs a block size s with
//   (1) v_{i,j} = 0 whenever i <= s < 2s < j, or j <= s < 2s < i;
//   (2) v_{i+s,j+s} = v_{i,j} whenever i + j >= s + 2.
//
// Both conditions quantify over all indices. They are decided on a finite
// window: every nonzero entry has |i-j| <= b (the effective bandwidth, which
// includes exceptional entries), exceptional entries sit in [1,m]^2, and
// beyond them each diagonal is periodic with period p. Condition (1) only
// involves rows/columns <= s + b. For condition (2), pairs with |i-j| > b are
// zero on both sides, and once i > m + b every residue class mod p has been
// seen, so any violation appears with i <= m + b + p + 1. The window used is
// i <= max(4s, s + b + 1, m + b + p + 1) with |i-j| <= b.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bandgf/matrix.hpp"

namespace bandgf {

template <FieldScalar T>
struct Band {
    long long offset;       ///< r in v_{i,i+r}
    std::vector<T> values;  ///< values[(i-1) mod p]
};

template <FieldScalar T>
struct ExceptionalEntry {
    std::size_t i;
    std::size_t j;
    T value;
};

template <FieldScalar T>
class BandedSpec {
public:
    BandedSpec(FieldConfig field, std::size_t period, std::vector<Band<T>> bands,
               std::vector<ExceptionalEntry<T>> exceptional = {}, std::optional<std::size_t> block_size = std::nullopt)
        : field_(field), period_(period), bands_(std::move(bands)), exceptional_(std::move(exceptional)),
          block_size_(block_size) {
        require_field_kind<T>(field_);
        if (period_ == 0) throw parse_error("period must be positive");
        for (std::size_t k = 0; k < bands_.size(); ++k) {
            const auto& b = bands_[k];
            if (b.values.size() != period_)
                throw parse_error("band at offset " + std::to_string(b.offset) + " has " + std::to_string(b.values.size()) +
                                  " values, expected period " + std::to_string(period_));
            for (const auto& v : b.values) check_value(v);
            for (std::size_t l = 0; l < k; ++l) {
                if (bands_[l].offset == b.offset) throw parse_error("duplicate band offset " + std::to_string(b.offset));
            }
            by_offset_.emplace(b.offset, k);
            bandwidth_ = std::max<std::size_t>(bandwidth_, static_cast<std::size_t>(b.offset < 0 ? -b.offset : b.offset));
        }
        for (const auto& e : exceptional_) {
            if (e.i == 0 || e.j == 0) throw parse_error("exceptional entries use 1-based indices");
            check_value(e.value);
            if (!overrides_.emplace(std::make_pair(e.i, e.j), e.value).second)
                throw parse_error("duplicate exceptional entry (" + std::to_string(e.i) + "," + std::to_string(e.j) + ")");
            exceptional_bound_ = std::max({exceptional_bound_, e.i, e.j});
            if (!e.value.is_zero()) bandwidth_ = std::max(bandwidth_, e.i > e.j ? e.i - e.j : e.j - e.i);
        }
        if (block_size_ && *block_size_ == 0) throw parse_error("block_size must be positive");
    }

    const FieldConfig& field() const noexcept { return field_; }
    std::size_t period() const noexcept { return period_; }
    const std::vector<Band<T>>& bands() const noexcept { return bands_; }
    const std::vector<ExceptionalEntry<T>>& exceptional() const noexcept { return exceptional_; }
    std::optional<std::size_t> block_size_hint() const noexcept { return block_size_; }

    /// Largest |i-j| of a possibly nonzero entry, exceptional entries included.
    std::size_t bandwidth() const noexcept { return bandwidth_; }
    /// All exceptional entries lie in [1,m]^2; 0 when there are none.
    std::size_t exceptional_bound() const noexcept { return exceptional_bound_; }

    /// v_{i,j} for 1-based i, j. Exceptional overrides win over band values.
    T entry(std::size_t i, std::size_t j) const {
        if (i == 0 || j == 0) throw out_of_range_error("matrix indices are 1-based");
        if (auto it = overrides_.find({i, j}); it != overrides_.end()) return it->second;
        const long long r = static_cast<long long>(j) - static_cast<long long>(i);
        if (auto it = by_offset_.find(r); it != by_offset_.end()) return bands_[it->second].values[(i - 1) % period_];
        return zero_of<T>(field_);
    }

private:
    void check_value(const T& v) const {
        if (!(v.field() == field_)) throw field_mismatch_error("spec value over " + v.field().name());
    }

    FieldConfig field_;
    std::size_t period_;
    std::vector<Band<T>> bands_;
    std::vector<ExceptionalEntry<T>> exceptional_;
    std::optional<std::size_t> block_size_;
    std::map<long long, std::size_t> by_offset_;
    std::map<std::pair<std::size_t, std::size_t>, T> overrides_;
    std::size_t bandwidth_ = 0;
    std::size_t exceptional_bound_ = 0;
};

/// s x s weights of the reduced block matrix.
template <FieldScalar T>
struct BlockWeights {
    std::size_t s;
    Matrix<T> A;  ///< below the diagonal
    Matrix<T> B;  ///< diagonal after the corner
    Matrix<T> C;  ///< above the diagonal
    Matrix<T> D;  ///< corner block

    const FieldConfig& field() const noexcept { return A.field(); }

    static BlockWeights from(Matrix<T> a, Matrix<T> b, Matrix<T> c, Matrix<T> d) {
        const std::size_t s = a.rows();
        for (const auto* m : {&a, &b, &c, &d}) {
            if (m->rows() != s || m->cols() != s) throw shape_error("block weights must be square of one size");
            if (!(m->field() == a.field())) throw field_mismatch_error("block weights over different fields");
        }
        return BlockWeights{s, std::move(a), std::move(b), std::move(c), std::move(d)};
    }
};

struct BlockViolation {
    int condition;  ///< 1 or 2
    std::size_t i;
    std::size_t j;

    std::string describe() const {
        return "condition (" + std::to_string(condition) + ") fails at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
};

/// First violation of conditions (1)/(2) for block size s, if any.
template <FieldScalar T>
std::optional<BlockViolation> check_block_size(const BandedSpec<T>& spec, std::size_t s) {
    if (s == 0) return BlockViolation{1, 0, 0};
    const std::size_t b = spec.bandwidth();
    const std::size_t m = spec.exceptional_bound();
    const std::size_t p = spec.period();

    // (1): only rows/columns <= s can hold the offending entry, and it must
    // be within the bandwidth.
    for (std::size_t i = 1; i <= s; ++i) {
        for (std::size_t j = 2 * s + 1; j <= i + b; ++j) {
            if (!spec.entry(i, j).is_zero()) return BlockViolation{1, i, j};
        }
    }
    for (std::size_t j = 1; j <= s; ++j) {
        for (std::size_t i = 2 * s + 1; i <= j + b; ++i) {
            if (!spec.entry(i, j).is_zero()) return BlockViolation{1, i, j};
        }
    }

    const std::size_t window = std::max({4 * s, s + b + 1, m + b + p + 1});
    for (std::size_t i = 1; i <= window; ++i) {
        const std::size_t jlo = i > b ? i - b : 1;
        for (std::size_t j = jlo; j <= i + b; ++j) {
            if (i + j < s + 2) continue;
            if (!(spec.entry(i + s, j + s) == spec.entry(i, j))) return BlockViolation{2, i, j};
        }
    }
    return std::nullopt;
}

/// Smallest multiple of the period that is >= max(b, m, 1) and passes
/// check_block_size. Not necessarily the smallest valid s overall.
template <FieldScalar T>
std::size_t choose_block_size(const BandedSpec<T>& spec) {
    const std::size_t p = spec.period();
    const std::size_t lower = std::max({spec.bandwidth(), spec.exceptional_bound(), std::size_t{1}});
    std::size_t s = (lower + p - 1) / p * p;
    // Exceptional entries stop mattering for (2) once s >= 2m - 1.
    const std::size_t limit = std::max(s, 2 * spec.exceptional_bound() + spec.bandwidth()) + 2 * p;
    for (; s <= limit; s += p) {
        if (!check_block_size(spec, s)) return s;
    }
    throw internal_consistency_error("no valid block size found up to " + std::to_string(limit));
}

/// The block size declared in the spec, or the default choice.
template <FieldScalar T>
std::size_t resolve_block_size(const BandedSpec<T>& spec) {
    return spec.block_size_hint() ? *spec.block_size_hint() : choose_block_size(spec);
}

/// Cut the four s x s blocks out of the top-left 2s x 2s corner without
/// checking the block conditions.
template <FieldScalar T>
BlockWeights<T> extract_blocks(const BandedSpec<T>& spec, std::size_t s) {
    if (s == 0) throw shape_error("block size must be positive");
    const FieldConfig& f = spec.field();
    Matrix<T> a(f, s, s), b(f, s, s), c(f, s, s), d(f, s, s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            d(i, j) = spec.entry(i + 1, j + 1);
            c(i, j) = spec.entry(i + 1, j + 1 + s);
            a(i, j) = spec.entry(i + 1 + s, j + 1);
            b(i, j) = spec.entry(i + 1 + s, j + 1 + s);
        }
    }
    return BlockWeights<T>{s, std::move(a), std::move(b), std::move(c), std::move(d)};
}

/// Checked block reduction; throws invalid_block_size_error naming the
/// first violated (i, j).
template <FieldScalar T>
BlockWeights<T> block_reduce(const BandedSpec<T>& spec, std::size_t s) {
    if (auto v = check_block_size(spec, s))
        throw invalid_block_size_error("block size " + std::to_string(s) + " is invalid: " + v->describe(), v->i, v->j);
    return extract_blocks(spec, s);
}

template <FieldScalar T>
BlockWeights<T> block_reduce(const BandedSpec<T>& spec) {
    return block_reduce(spec, resolve_block_size(spec));
}

/// Entry (i, j) (1-based) of the block pattern built from the weights.
template <FieldScalar T>
T block_pattern_entry(const BlockWeights<T>& w, std::size_t i, std::size_t j) {
    const std::size_t bi = (i - 1) / w.s, bj = (j - 1) / w.s;
    const std::size_t li = (i - 1) % w.s, lj = (j - 1) % w.s;
    if (bi == bj) return bi == 0 ? w.D(li, lj) : w.B(li, lj);
    if (bi == bj + 1) return w.A(li, lj);
    if (bj == bi + 1) return w.C(li, lj);
    return zero_of<T>(w.field());
}

template <FieldScalar T>
struct ReductionMismatch {
    std::size_t i;
    std::size_t j;
    T expected;  ///< v_{i,j}
    T actual;    ///< block pattern entry
};

/// Compares the K x K corner of the block pattern with the spec. Returns the
/// first mismatch in row-major order, or nullopt if they agree.
template <FieldScalar T>
std::optional<ReductionMismatch<T>> validate_reduction(const BandedSpec<T>& spec, const BlockWeights<T>& w, std::size_t k) {
    if (k < 2 * w.s) throw out_of_range_error("validation window must be at least 2s");
    if (!(w.field() == spec.field())) throw field_mismatch_error("weights and spec over different fields");
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = 1; j <= k; ++j) {
            T expected = spec.entry(i, j);
            T actual = block_pattern_entry(w, i, j);
            if (!(expected == actual)) return ReductionMismatch<T>{i, j, std::move(expected), std::move(actual)};
        }
    }
    return std::nullopt;
}

}  // namespace bandgf

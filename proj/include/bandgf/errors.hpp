#pragma once

#include <stdexcept>
#include <string>

namespace bandgf {

/// Base of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different coefficient fields.
class field_mismatch_error : public error {
public:
    using error::error;
};

/// Inversion of something without an inverse (zero scalar, series with zero
/// constant term, matrix with singular constant term).
class non_unit_error : public error {
public:
    using error::error;
};

class unsupported_sqrt_error : public error {
public:
    using error::error;
};

class unsupported_characteristic_error : public error {
public:
    using error::error;
};

/// Dimension mismatch between matrices, vectors or recursions.
class shape_error : public error {
public:
    using error::error;
};

class out_of_range_error : public error {
public:
    using error::error;
};

class insufficient_precision_error : public error {
public:
    using error::error;
};

class resource_limit_error : public error {
public:
    using error::error;
};

class malformed_walk_error : public error {
public:
    using error::error;
};

/// A user-supplied block size violates the block-structure conditions.
class invalid_block_size_error : public error {
public:
    invalid_block_size_error(const std::string& what, std::size_t i, std::size_t j)
        : error(what), row_(i), col_(j) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

/// Independent routes disagree on a coefficient.
class route_mismatch_error : public error {
public:
    route_mismatch_error(const std::string& what, std::size_t order)
        : error(what), order_(order) {}

    std::size_t order() const noexcept { return order_; }

private:
    std::size_t order_;
};

/// An identity that must hold for every input failed; indicates a bug.
class internal_consistency_error : public error {
public:
    using error::error;
};

/// Malformed input documents (JSON specs, weight files, polynomials).
class parse_error : public error {
public:
    using error::error;
};

}  // namespace bandgf

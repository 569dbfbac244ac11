#pragma once

// Exact coefficient fields: GMP rationals and prime fields F_p with p < 2^64.
//
// Both scalar types model the FieldScalar concept below. Every value knows
// which field it belongs to (prime-field residues carry their modulus), so
// mixing F_p and F_q raises field_mismatch_error instead of silently
// producing garbage.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include "bandgf/errors.hpp"

namespace bandgf {

enum class FieldKind { rationals, prime_field };

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the witness set is exact for all n < 2^64.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = detail::mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

class FieldConfig {
public:
    static FieldConfig rationals() { return FieldConfig(FieldKind::rationals, 0); }

    static FieldConfig prime(std::uint64_t p) {
        if (!is_prime_u64(p)) throw error("field modulus " + std::to_string(p) + " is not prime");
        return FieldConfig(FieldKind::prime_field, p);
    }

    FieldKind kind() const noexcept { return kind_; }
    /// 0 for the rationals.
    std::uint64_t modulus() const noexcept { return modulus_; }
    std::uint64_t characteristic() const noexcept { return modulus_; }

    std::string name() const {
        return kind_ == FieldKind::rationals ? "rational" : "p:" + std::to_string(modulus_);
    }

    friend bool operator==(const FieldConfig&, const FieldConfig&) = default;

private:
    friend class ModP;

    FieldConfig(FieldKind k, std::uint64_t m) : kind_(k), modulus_(m) {}

    FieldKind kind_;
    std::uint64_t modulus_;
};

template <class T>
concept FieldScalar = std::copyable<T> && requires(const T a, const T b, const FieldConfig& f, long long n) {
    { T::from_int(f, n) } -> std::same_as<T>;
    { T::parse(f, std::string_view{}) } -> std::same_as<T>;
    { a + b } -> std::same_as<T>;
    { a - b } -> std::same_as<T>;
    { a * b } -> std::same_as<T>;
    { -a } -> std::same_as<T>;
    { a.inverse() } -> std::same_as<T>;
    { a.is_zero() } -> std::same_as<bool>;
    { a == b } -> std::same_as<bool>;
    { a.field() } -> std::same_as<FieldConfig>;
    { a.to_string() } -> std::same_as<std::string>;
};

/// Exact rational in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : q_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
        if (den == 0) throw non_unit_error("rational with zero denominator");
        q_.canonicalize();
    }

    static Rational from_int(const FieldConfig& f, long long n) {
        if (f.kind() != FieldKind::rationals) throw field_mismatch_error("Rational used with field " + f.name());
        return Rational(n);
    }

    /// Accepts "n" or "n/d" with optional sign, base 10.
    static Rational parse(const FieldConfig& f, std::string_view text) {
        if (f.kind() != FieldKind::rationals) throw field_mismatch_error("Rational used with field " + f.name());
        auto slash = text.find('/');
        mpz_class num, den(1);
        if (!parse_integer(text.substr(0, slash), num))
            throw parse_error("malformed rational '" + std::string(text) + "'");
        if (slash != std::string_view::npos && !parse_integer(text.substr(slash + 1), den))
            throw parse_error("malformed rational '" + std::string(text) + "'");
        if (den == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }

    static FieldConfig static_field() { return FieldConfig::rationals(); }
    FieldConfig field() const { return FieldConfig::rationals(); }

    const mpq_class& value() const noexcept { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }

    Rational inverse() const {
        if (is_zero()) throw non_unit_error("inverse of zero");
        return Rational(mpq_class(1) / q_);
    }

    Rational& operator+=(const Rational& o) {
        q_ += o.q_;
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        q_ -= o.q_;
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        q_ *= o.q_;
        return *this;
    }
    /// this += a * b without a temporary Rational.
    void add_product(const Rational& a, const Rational& b) {
        if (sgn(a.q_) == 0 || sgn(b.q_) == 0) return;
        if (a.q_.get_den() == 1 && b.q_.get_den() == 1 && q_.get_den() == 1) {
            mpz_addmul(q_.get_num_mpz_t(), a.q_.get_num_mpz_t(), b.q_.get_num_mpz_t());
            return;
        }
        q_ += a.q_ * b.q_;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    /// Canonical text: "n" for integers, else "n/d".
    std::string to_string() const {
        if (q_.get_den() == 1) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

private:
    static bool parse_integer(std::string_view s, mpz_class& out) {
        std::string t(s);
        if (t.empty()) return false;
        std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (start == t.size()) return false;
        for (std::size_t k = start; k < t.size(); ++k) {
            if (t[k] < '0' || t[k] > '9') return false;
        }
        if (t[0] == '+') t.erase(0, 1);
        return out.set_str(t, 10) == 0;
    }

    mpq_class q_;
};

/// Residue modulo a prime p < 2^64, stored in [0, p).
class ModP {
public:
    ModP(std::uint64_t value, std::uint64_t modulus) : v_(value % modulus), p_(modulus) {}

    static ModP from_int(const FieldConfig& f, long long n) {
        if (f.kind() != FieldKind::prime_field) throw field_mismatch_error("ModP used with field " + f.name());
        std::uint64_t p = f.modulus();
        if (n >= 0) return ModP(static_cast<std::uint64_t>(n) % p, p);
        std::uint64_t mag = static_cast<std::uint64_t>(-(n + 1)) + 1;
        std::uint64_t r = mag % p;
        return ModP(r == 0 ? 0 : p - r, p);
    }

    /// "n" or "n/d" with arbitrary-size integers, reduced mod p.
    static ModP parse(const FieldConfig& f, std::string_view text) {
        if (f.kind() != FieldKind::prime_field) throw field_mismatch_error("ModP used with field " + f.name());
        Rational q = Rational::parse(FieldConfig::rationals(), text);
        return from_rational(f, q);
    }

    static ModP from_rational(const FieldConfig& f, const Rational& q) {
        std::uint64_t p = f.modulus();
        mpz_class pz;
        mpz_import(pz.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
        mpz_class num = q.numerator() % pz;
        if (num < 0) num += pz;
        mpz_class den = q.denominator() % pz;
        if (den == 0) throw non_unit_error("denominator of " + q.to_string() + " vanishes mod " + std::to_string(p));
        return ModP(to_u64(num), p) * ModP(to_u64(den), p).inverse();
    }

    FieldConfig field() const { return FieldConfig(FieldKind::prime_field, p_); }
    std::uint64_t value() const noexcept { return v_; }
    std::uint64_t modulus() const noexcept { return p_; }

    bool is_zero() const noexcept { return v_ == 0; }
    bool is_one() const noexcept { return v_ == 1; }

    ModP inverse() const {
        if (v_ == 0) throw non_unit_error("inverse of zero in F_" + std::to_string(p_));
        return ModP(detail::pow_mod(v_, p_ - 2, p_), p_);
    }

    ModP& operator+=(const ModP& o) {
        check(o);
        std::uint64_t s = v_ + o.v_;
        if (s < v_ || s >= p_) s -= p_;
        v_ = s;
        return *this;
    }
    ModP& operator-=(const ModP& o) {
        check(o);
        v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + (p_ - o.v_);
        return *this;
    }
    ModP& operator*=(const ModP& o) {
        check(o);
        v_ = detail::mul_mod(v_, o.v_, p_);
        return *this;
    }
    void add_product(const ModP& a, const ModP& b) { *this += a * b; }

    friend ModP operator+(ModP a, const ModP& b) { return a += b; }
    friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
    friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
    friend ModP operator/(const ModP& a, const ModP& b) { return a * b.inverse(); }
    ModP operator-() const { return ModP(v_ == 0 ? 0 : p_ - v_, p_); }

    friend bool operator==(const ModP& a, const ModP& b) {
        a.check(b);
        return a.v_ == b.v_;
    }

    std::string to_string() const { return std::to_string(v_); }

private:
    void check(const ModP& o) const {
        if (o.p_ != p_)
            throw field_mismatch_error("F_" + std::to_string(p_) + " combined with F_" + std::to_string(o.p_));
    }

    static std::uint64_t to_u64(const mpz_class& z) {
        std::uint64_t out = 0;
        std::size_t count = 0;
        mpz_export(&out, &count, 1, sizeof(out), 0, 0, z.get_mpz_t());
        return out;
    }

    std::uint64_t v_;
    std::uint64_t p_;
};

static_assert(FieldScalar<Rational>);
static_assert(FieldScalar<ModP>);

template <FieldScalar T>
T zero_of(const FieldConfig& f) {
    return T::from_int(f, 0);
}

template <FieldScalar T>
T one_of(const FieldConfig& f) {
    return T::from_int(f, 1);
}

/// Rejects configurations that do not match the scalar type.
template <FieldScalar T>
void require_field_kind(const FieldConfig& f) {
    (void)T::from_int(f, 0);
}

/// Binomial coefficient C(k, r) evaluated in the field as k(k-1)...(k-r+1)/r!.
/// Over F_p this needs p > r, otherwise r! is not invertible.
template <FieldScalar T>
T binomial(const FieldConfig& f, long long k, long long r) {
    if (r < 0) return zero_of<T>(f);
    if (f.kind() == FieldKind::prime_field && static_cast<std::uint64_t>(r) >= f.modulus())
        throw unsupported_characteristic_error("binomial C(k," + std::to_string(r) + ") needs characteristic > r, got " +
                                               std::to_string(f.modulus()));
    if (k >= 0 && k < r) return zero_of<T>(f);
    T num = one_of<T>(f);
    T den = one_of<T>(f);
    for (long long t = 0; t < r; ++t) {
        num *= T::from_int(f, k - t);
        den *= T::from_int(f, t + 1);
    }
    return num * den.inverse();
}

}  // namespace bandgf

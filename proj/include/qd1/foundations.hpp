#pragma once

// Exact integer/rational primitives shared by every other module.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace qd1 {

using Integer = mpz_class;
using Rational = mpq_class;

/// A value of N ∪ {∞}. Infinity is a distinct state, never a sentinel integer.
class ExtNat {
public:
    constexpr ExtNat() noexcept = default;
    constexpr ExtNat(std::uint64_t v) noexcept : value_(v) {} // NOLINT(google-explicit-constructor)

    static constexpr ExtNat infinity() noexcept {
        ExtNat x;
        x.infinite_ = true;
        return x;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    constexpr bool is_finite() const noexcept { return !infinite_; }
    constexpr bool is_zero() const noexcept { return !infinite_ && value_ == 0; }

    /// Finite value; throws DomainError on ∞.
    std::uint64_t value() const;

    // Lexicographic on (infinite_, value_) puts ∞ above every finite value.
    constexpr auto operator<=>(const ExtNat&) const noexcept = default;

    std::string to_string() const;

private:
    bool infinite_ = false;
    std::uint64_t value_ = 0;
};

ExtNat min(ExtNat a, ExtNat b) noexcept;
ExtNat max(ExtNat a, ExtNat b) noexcept;

/// Deterministic primality test: Miller–Rabin with the first 13 prime bases is
/// exact below 3.3e24; larger inputs fall back to GMP's BPSW-based test.
bool is_prime(const Integer& n);

/// A positive integer that passed is_prime at construction.
class Prime {
public:
    explicit Prime(const Integer& p);
    explicit Prime(unsigned long p) : Prime(Integer(p)) {}

    const Integer& value() const noexcept { return value_; }
    std::string to_string() const { return value_.get_str(); }

    friend bool operator==(const Prime& a, const Prime& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Prime& a, const Prime& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    Integer value_;
};

/// Smallest prime strictly greater than n.
Prime next_prime(const Integer& n);

/// p^k. Exponents beyond 2^20 are rejected with DomainError.
Integer prime_power(const Prime& p, std::uint64_t k);

/// p-adic valuation of a nonzero integer.
std::int64_t vp(const Integer& x, const Prime& p);
/// p-adic valuation of a nonzero rational: x = p^v·(u/w) with p ∤ u, p ∤ w.
std::int64_t vp(const Rational& x, const Prime& p);

/// Removes every factor p from x and returns the stripped value.
Integer strip_prime(Integer x, const Prime& p);

struct BezoutResult {
    Integer x;
    Integer y;
    Integer gcd; // > 0
};

/// a·x + b·y = gcd(a, b).
BezoutResult bezout(const Integer& a, const Integer& b);

/// Inverse of a modulo q in [0, q); NotInvertibleError when gcd(a, q) ≠ 1.
Integer mod_inverse(const Integer& a, const Integer& q);

/// Least nonnegative residue of a modulo n (n > 0).
Integer mod(const Integer& a, const Integer& n);

/// Residue of a rational x modulo n; requires gcd(den x, n) = 1.
Integer mod(const Rational& x, const Integer& n);

/// Some solution of a·x ≡ b (mod n) in [0, n), or nullopt when none exists.
std::optional<Integer> solve_congruence(const Integer& a, const Integer& b, const Integer& n);

/// Prime factorization of |n|, n ≠ 0 (trial division then Pollard–Brent rho).
std::map<Prime, std::uint64_t> factorize(const Integer& n);

std::string to_string(const Rational& x);

} // namespace qd1

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qd1/foundations.hpp"

namespace qd1 {

/// An eventually-constant function from primes to N ∪ {∞}: finitely many
/// exceptions over a default. Always stored canonically (no exception equals
/// the default), so structural equality is functional equality.
class Characteristic {
public:
    using ExceptionMap = std::map<Prime, ExtNat>;

    Characteristic() = default; // all zero
    explicit Characteristic(ExtNat default_value, ExceptionMap exceptions = {});

    static Characteristic all_zero() { return Characteristic(); }
    static Characteristic all_infinite() { return Characteristic(ExtNat::infinity()); }

    ExtNat operator()(const Prime& p) const;
    ExtNat default_value() const noexcept { return default_; }
    const ExceptionMap& exceptions() const noexcept { return exceptions_; }

    /// Copy with χ(p) replaced.
    Characteristic with(const Prime& p, ExtNat v) const;

    /// `default=<v>[;p:v,...]`, primes sorted ascending.
    std::string to_string() const;
    /// Inverse of to_string; accepts non-canonical input (default-valued or
    /// unsorted exceptions). Throws ParseError.
    static Characteristic parse(std::string_view text);

    friend bool operator==(const Characteristic&, const Characteristic&) = default;

private:
    ExtNat default_;
    ExceptionMap exceptions_;
};

/// Primes appearing as exceptions in any of the given characteristics.
std::vector<Prime> exception_primes(std::initializer_list<const Characteristic*> chars);

/// Pointwise combination of two characteristics.
template <typename F>
Characteristic pointwise(const Characteristic& a, const Characteristic& b, F f) {
    Characteristic::ExceptionMap ex;
    for (const Prime& p : exception_primes({&a, &b})) ex.emplace(p, f(a(p), b(p)));
    return Characteristic(f(a.default_value(), b.default_value()), std::move(ex));
}

/// Type equivalence: finitely many disagreements, all finite on both sides.
bool equivalent(const Characteristic& a, const Characteristic& b);
bool is_zero_type(const Characteristic& chi);
bool is_idempotent_type(const Characteristic& chi);

/// a(p) ≥ b(p) for every prime p.
bool char_geq(const Characteristic& a, const Characteristic& b);

/// Pointwise minimum, the greatest lower bound for char_geq.
Characteristic meet(const Characteristic& a, const Characteristic& b);

/// {p | χ(p) ≠ 0} is cofinite iff the default is nonzero; these return the
/// finite part explicitly listed as exceptions.
bool in_support(const Characteristic& chi, const Prime& p);
bool is_infinite_at(const Characteristic& chi, const Prime& p);
/// 0 < χ(p) < ∞
bool is_finite_nonzero_at(const Characteristic& chi, const Prime& p);

} // namespace qd1

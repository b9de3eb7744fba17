#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "qd1/characteristic.hpp"
#include "qd1/foundations.hpp"

namespace qd1 {

class GroupElement;

enum class GroupKind { reduced, non_reduced };

/// A quotient divisible group of torsion-free rank 1, determined by its
/// cocharacteristic. Non-zero type gives the reduced pure hull of e and the
/// torsion of ∏ Ẑ_p e_p; zero type gives Q ⊕ Z_m.
///
/// Copies share state; two groups compare equal when their cocharacteristics do.
class Qd1Group {
public:
    explicit Qd1Group(Characteristic cochar);

    const Characteristic& cochar() const noexcept;
    GroupKind kind() const noexcept;
    bool is_reduced() const noexcept { return kind() == GroupKind::reduced; }

    /// m with G = Q ⊕ Z_m; UnsupportedCaseError for reduced groups.
    const Integer& modulus() const;

    /// p^χ(p) for 0 < χ(p) < ∞, otherwise DomainError.
    Integer local_modulus(const Prime& p) const;

    /// `reduced cochar=<spec>` or `nonreduced m=<m> (Q (+) Z_<m>)`.
    std::string describe() const;

    friend bool operator==(const Qd1Group& a, const Qd1Group& b);

private:
    struct State;
    std::shared_ptr<const State> state_;
};

Qd1Group build_group(const Characteristic& chi);

/// cochar G = (∞, ∞, ...), i.e. G ≅ Z.
bool is_integers(const Qd1Group& g);

/// An element in canonical form.
///
/// Reduced groups: a rational part r plus finitely many overrides p ↦ a_p at
/// primes with 0 < χ(p) < ∞. The p-coordinate is a_p when overridden and
/// r mod p^χ(p) (or r itself at χ(p) = ∞) otherwise. Every denominator prime
/// of r has χ(p) = 0 or is overridden; overrides equal to the default
/// coordinate are dropped.
///
/// Non-reduced groups: a pair (q, b) ∈ Q ⊕ Z_m with b ∈ [0, m).
class GroupElement {
public:
    const Qd1Group& group() const noexcept { return group_; }
    const Rational& rational_part() const noexcept { return rational_; }
    const std::map<Prime, Integer>& overrides() const noexcept { return overrides_; }
    /// b for Q ⊕ Z_m; always 0 for reduced groups.
    const Integer& torsion_residue() const noexcept { return residue_; }

    /// Residue of the p-coordinate modulo p^χ(p), for 0 < χ(p) < ∞.
    Integer coordinate(const Prime& p) const;

    std::string to_string() const;
    /// `r=<num>[/<den>][;p:a,...]` or `q=<num>[/<den>];b=<residue>`. Throws ParseError.
    static GroupElement parse(std::string_view text, const Qd1Group& g);

    friend bool operator==(const GroupElement& a, const GroupElement& b);

private:
    GroupElement(Qd1Group g, Rational r, std::map<Prime, Integer> overrides, Integer residue)
        : group_(std::move(g)), rational_(std::move(r)), overrides_(std::move(overrides)),
          residue_(std::move(residue)) {}

    friend GroupElement elem(const Qd1Group&, const Rational&, std::map<Prime, Integer>);
    friend GroupElement elem_split(const Qd1Group&, const Rational&, const Integer&);

    Qd1Group group_;
    Rational rational_;
    std::map<Prime, Integer> overrides_;
    Integer residue_;
};

/// Canonicalizing constructor. For Q ⊕ Z_m, `overrides` must be empty and the
/// result is (r, 0). Throws InvalidDenominatorError / DomainError.
GroupElement elem(const Qd1Group& g, const Rational& r, std::map<Prime, Integer> overrides = {});
/// (q, b) in Q ⊕ Z_m; UnsupportedCaseError on reduced groups.
GroupElement elem_split(const Qd1Group& g, const Rational& q, const Integer& b);

GroupElement zero(const Qd1Group& g);
/// The basis element e, the element with every coordinate 1 ((1, 1) in Q ⊕ Z_m).
GroupElement basis(const Qd1Group& g);

GroupElement add(const GroupElement& a, const GroupElement& b);
GroupElement neg(const GroupElement& a);
GroupElement sub(const GroupElement& a, const GroupElement& b);
GroupElement zmul(const Integer& n, const GroupElement& a);

ExtNat height(const GroupElement& g, const Prime& p);
Characteristic char_of(const GroupElement& g);
bool is_torsion(const GroupElement& g);
/// nullopt for elements of infinite order.
std::optional<Integer> order(const GroupElement& g);
Integer c_of(const GroupElement& g);

/// g = c·r·e0 + t with e0 the basis projected away from `support`.
struct Decomposition {
    Integer c;
    Rational r;
    GroupElement t;
    std::set<Prime> support; // P'; the defining set is its complement
};

/// Canonical decomposition; support is the smallest set containing the
/// overrides of g and every finite-exponent prime of r.
Decomposition decompose(const GroupElement& g);
/// Same with the support enlarged by `extra` (primes with 0 < χ(p) < ∞).
Decomposition decompose_with(const GroupElement& g, const std::set<Prime>& extra);
/// e0 = π_{P0}(e): the basis with coordinates at `support` zeroed.
GroupElement projected_basis(const Qd1Group& g, const std::set<Prime>& support);
GroupElement recombine(const Decomposition& d);

} // namespace qd1

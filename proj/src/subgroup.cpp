#include "qd1/subgroup.hpp"

#include "qd1/errors.hpp"

namespace qd1 {

std::string SubgroupDescriptor::to_string() const {
    std::string eta = "(eta=" + eta_.to_string() + ")";
    switch (kind_) {
    case Kind::full_invariant: return "G" + eta;
    case Kind::torsion_invariant: return "T" + eta;
    case Kind::sum_with_cyclic: return "T" + eta + "+Z*" + generator_->to_string();
    }
    return {};
}

Characteristic normalize_eta(const Qd1Group& g, const Characteristic& eta, bool torsion) {
    return pointwise(eta, g.cochar(), [torsion](ExtNat e, ExtNat k) {
        if (k.is_zero()) return ExtNat::infinity();
        if (k.is_infinite()) return torsion ? ExtNat::infinity() : e;
        return e >= k ? ExtNat::infinity() : e;
    });
}

SubgroupDescriptor full_inv(const Qd1Group& g, const Characteristic& eta) {
    return SubgroupDescriptor(g, SubgroupDescriptor::Kind::full_invariant, normalize_eta(g, eta, false), std::nullopt);
}

SubgroupDescriptor torsion_inv(const Qd1Group& g, const Characteristic& eta) {
    return SubgroupDescriptor(g, SubgroupDescriptor::Kind::torsion_invariant, normalize_eta(g, eta, true),
                              std::nullopt);
}

namespace {

// Representative of g modulo T(η) with positive rational part.
GroupElement reduce_generator(const Characteristic& eta, GroupElement g) {
    const Qd1Group& G = g.group();
    if (g.rational_part() < 0) g = neg(g);
    if (!G.is_reduced()) {
        Integer d = 1;
        for (const auto& [p, k] : G.cochar().exceptions()) d *= prime_power(p, min(eta(p), k).value());
        return elem_split(G, g.rational_part(), mod(g.torsion_residue(), d));
    }
    std::map<Prime, Integer> ov = g.overrides();
    for (auto& [p, a] : ov) {
        ExtNat e = eta(p);
        if (e.is_finite()) a = mod(a, prime_power(p, e.value()));
    }
    return elem(G, g.rational_part(), std::move(ov));
}

bool in_torsion_part(const Characteristic& eta, const GroupElement& x) {
    return is_torsion(x) && char_geq(char_of(x), eta);
}

} // namespace

SubgroupDescriptor plus_cyclic(const SubgroupDescriptor& d, const GroupElement& g) {
    if (d.kind() != SubgroupDescriptor::Kind::torsion_invariant)
        throw VariantMismatchError("plus_cyclic needs a torsion-invariant descriptor");
    if (!(d.group() == g.group())) throw GroupMismatchError();
    if (is_torsion(g)) return torsion_inv(d.group(), meet(d.eta(), char_of(g)));
    return SubgroupDescriptor(d.group(), SubgroupDescriptor::Kind::sum_with_cyclic, d.eta(),
                              reduce_generator(d.eta(), g));
}

bool contains(const SubgroupDescriptor& d, const GroupElement& x) {
    if (!(d.group() == x.group())) throw GroupMismatchError();
    switch (d.kind()) {
    case SubgroupDescriptor::Kind::full_invariant: return char_geq(char_of(x), d.eta());
    case SubgroupDescriptor::Kind::torsion_invariant: return in_torsion_part(d.eta(), x);
    case SubgroupDescriptor::Kind::sum_with_cyclic: {
        const GroupElement& g = *d.generator();
        Rational k = x.rational_part() / g.rational_part();
        if (k.get_den() != 1) return false;
        return in_torsion_part(d.eta(), sub(x, zmul(Integer(k.get_num()), g)));
    }
    }
    return false;
}

bool has_infinite_order_members(const Qd1Group& g, const Characteristic& eta) {
    if (!g.is_reduced()) return true;
    const Characteristic& chi = g.cochar();
    // A nonzero rational part has height v_p(r) at infinite-exponent primes
    // and height 0 at all but finitely many primes of nonzero exponent.
    for (const Prime& p : exception_primes({&eta, &chi}))
        if (chi(p).is_infinite() && eta(p).is_infinite()) return false;
    if (chi.default_value().is_infinite() && eta.default_value().is_infinite()) return false;
    return chi.default_value().is_zero() || eta.default_value().is_zero();
}

namespace {

struct Canonical {
    SubgroupDescriptor::Kind kind;
    Characteristic eta;
};

Canonical canonical(const SubgroupDescriptor& d) {
    using K = SubgroupDescriptor::Kind;
    const Qd1Group& g = d.group();
    if (d.kind() == K::full_invariant && !has_infinite_order_members(g, d.eta()))
        return {K::torsion_invariant, normalize_eta(g, d.eta(), true)};
    if (d.kind() == K::full_invariant) return {K::full_invariant, d.eta()};
    return {d.kind(), normalize_eta(g, d.eta(), true)};
}

// G(η) = Z·n·e in G ≅ Z, n = ∏ p^{η(p)}.
bool integers_full_equals_cyclic(const Characteristic& eta, const GroupElement& gen) {
    Integer n = 1;
    for (const auto& [p, v] : eta.exceptions()) n *= prime_power(p, v.value());
    return abs(Integer(gen.rational_part().get_num())) == n;
}

} // namespace

bool equals(const SubgroupDescriptor& a, const SubgroupDescriptor& b) {
    using K = SubgroupDescriptor::Kind;
    if (!(a.group() == b.group())) throw GroupMismatchError();
    Canonical ca = canonical(a), cb = canonical(b);
    if (ca.kind == cb.kind) {
        if (!(ca.eta == cb.eta)) return false;
        if (ca.kind != K::sum_with_cyclic) return true;
        return contains(a, *b.generator()) && contains(b, *a.generator());
    }
    if (ca.kind == K::torsion_invariant || cb.kind == K::torsion_invariant) return false;
    // One full-invariant, one sum: the sum's rational parts form the cyclic
    // group Z·r_g, while G(η) is divisible by every prime of finite exponent.
    if (!is_integers(a.group())) return false;
    const Canonical& full = ca.kind == K::full_invariant ? ca : cb;
    const SubgroupDescriptor& sum = ca.kind == K::sum_with_cyclic ? a : b;
    return integers_full_equals_cyclic(full.eta, *sum.generator());
}

} // namespace qd1

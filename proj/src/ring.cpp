#include "qd1/ring.hpp"

#include <stdexcept>

#include "qd1/errors.hpp"
#include "qd1/mutation.hpp"

namespace qd1 {

namespace {

void require_in(const Qd1Group& G, const GroupElement& x) {
    if (!(G == x.group())) throw GroupMismatchError();
}

} // namespace

Multiplication make_mult(const Qd1Group& g, const GroupElement& m) {
    require_in(g, m);
    return Multiplication(m);
}

GroupElement multiply(const Multiplication& mult, const GroupElement& a, const GroupElement& b) {
    const Qd1Group& G = mult.group();
    require_in(G, a);
    require_in(G, b);
    const GroupElement& m = mult.square_of_basis();
    const bool drop_m = mutation::active(mutation::Kind::drop_m_factor);
    Rational r = a.rational_part() * b.rational_part();
    if (!drop_m) r *= m.rational_part();
    if (!G.is_reduced()) {
        Integer t = a.torsion_residue() * b.torsion_residue();
        if (!drop_m) t *= m.torsion_residue();
        return elem_split(G, r, t);
    }
    std::map<Prime, Integer> ov;
    for (const GroupElement* x : {&a, &b, &m})
        for (const auto& kv : x->overrides()) ov.emplace(kv.first, 0);
    for (auto& [p, c] : ov) {
        c = a.coordinate(p) * b.coordinate(p);
        if (!drop_m) c *= m.coordinate(p);
    }
    return elem(G, r, std::move(ov));
}

GroupElement element_of_mult(const Multiplication& mult) { return mult.square_of_basis(); }

bool products_are_torsion(const Multiplication& mult) { return is_torsion(mult.square_of_basis()); }

namespace {

// lower_eta mutation: η(p) - 1 at the least prime where η is finite and positive.
Characteristic lowered(const Characteristic& eta) {
    for (const auto& [p, v] : eta.exceptions())
        if (v.is_finite() && !v.is_zero()) return eta.with(p, ExtNat(v.value() - 1));
    ExtNat d = eta.default_value();
    if (d.is_infinite() || d.is_zero()) return eta;
    Prime p(2);
    while (eta.exceptions().count(p)) p = next_prime(p.value());
    return eta.with(p, ExtNat(d.value() - 1));
}

SubgroupDescriptor exact_principal_ideal(const Multiplication& mult, const GroupElement& g) {
    const Qd1Group& G = mult.group();
    if (is_torsion(g)) return torsion_inv(G, char_of(g));
    if (!products_are_torsion(mult)) return full_inv(G, char_of(g));
    GroupElement ge = multiply(mult, g, basis(G));
    return plus_cyclic(torsion_inv(G, char_of(ge)), g);
}

} // namespace

SubgroupDescriptor principal_ideal(const Multiplication& mult, const GroupElement& g) {
    require_in(mult.group(), g);
    SubgroupDescriptor d = exact_principal_ideal(mult, g);
    if (!mutation::active(mutation::Kind::lower_eta)) return d;
    const Qd1Group& G = mult.group();
    switch (d.kind()) {
    case SubgroupDescriptor::Kind::full_invariant: return full_inv(G, lowered(d.eta()));
    case SubgroupDescriptor::Kind::torsion_invariant: return torsion_inv(G, lowered(d.eta()));
    default: return plus_cyclic(torsion_inv(G, lowered(d.eta())), *d.generator());
    }
}

SubgroupDescriptor principal_absolute_ideal(const Qd1Group& G, const GroupElement& g) {
    require_in(G, g);
    return is_torsion(g) ? torsion_inv(G, char_of(g)) : full_inv(G, char_of(g));
}

bool is_ai_ring(const Multiplication& mult) {
    return is_integers(mult.group()) || !products_are_torsion(mult);
}

bool is_fi_ring(const Multiplication& mult) { return is_ai_ring(mult); }

bool is_nai(const Multiplication& mult) { return products_are_torsion(mult); }

std::string PrincipalWitness::to_string() const { return "y=" + y.to_string() + ";k=" + k.get_str(); }

std::string NonAbsoluteWitness::to_string() const {
    return "e0=" + e0.to_string() + ";p=" + p.to_string() + ";x=" + violator.to_string();
}

GroupElement evaluate(const Multiplication& mult, const GroupElement& g, const PrincipalWitness& w) {
    return add(multiply(mult, g, w.y), zmul(w.k, g));
}

Integer torsion_witness(const GroupElement& g, const GroupElement& u) {
    if (!is_torsion(g)) throw UnsupportedCaseError("torsion_witness needs a torsion element");
    const Qd1Group& G = g.group();
    require_in(G, u);
    if (!contains(torsion_inv(G, char_of(g)), u))
        throw NotMemberError(u.to_string() + " is not in T(char g) for g = " + g.to_string());

    const Integer o = *order(g);
    std::vector<Prime> primes; // P_g: primes where g has finite height
    if (G.is_reduced()) {
        for (const auto& kv : g.overrides()) primes.push_back(kv.first);
    } else {
        for (const auto& kv : G.cochar().exceptions())
            if (g.coordinate(kv.first) != 0) primes.push_back(kv.first);
    }
    // Write g = p^k·s·e_p + g' with p ∤ s and g' of order m prime to p; then
    // p^k·e_p = x·m·g for x = (s·m)^{-1} mod p^{χ(p)}.
    Integer n = 0;
    for (const Prime& p : primes) {
        Integer q = G.local_modulus(p);
        Integer c = g.coordinate(p);
        std::int64_t k = vp(c, p);
        Integer pk = prime_power(p, static_cast<std::uint64_t>(k));
        Integer s = c / pk;
        Integer m = strip_prime(o, p);
        Integer x = mod_inverse(s * m, q);
        Integer w = u.coordinate(p) / pk; // exact: h_p(u) ≥ k
        n += w * x * m;
    }
    n = mod(n, o);
    if (n == 0) n = o;
    if (!(zmul(n, g) == u)) throw std::logic_error("torsion_witness: recomputation failed");
    return n;
}

namespace {

struct DefiningForm {
    Integer c;
    Rational r;
};

// c_g·(k1/k2)·e0 = g×(z1/z2)e0 + n·y·r2·g, from c_×·x + n·r1·k2·y = k1.
PrincipalWitness lattice_witness(const Qd1Group& G, const std::set<Prime>& support, const DefiningForm& g,
                                 const DefiningForm& m, const Integer& torsion_order, const Integer& k1,
                                 const Integer& k2) {
    Integer r1(g.r.get_num()), r2(g.r.get_den());
    Integer m1(m.r.get_num()), m2(m.r.get_den());
    BezoutResult bz = bezout(m.c, torsion_order * r1 * k2);
    if (bz.gcd != 1) throw std::logic_error("lattice_witness: c(e×e) shares a prime with n·r1·k2");
    Integer x = bz.x * k1, y = bz.y * k1;
    Rational z(r2 * m2 * x, r1 * m1 * k2);
    z.canonicalize();
    std::map<Prime, Integer> zeros;
    for (const Prime& p : support) zeros.emplace(p, 0);
    return PrincipalWitness{elem(G, z, std::move(zeros)), torsion_order * y * r2};
}

PrincipalWitness construct_reduced(const Multiplication& mult, const GroupElement& g, const GroupElement& b) {
    const Qd1Group& G = mult.group();
    const GroupElement& m = mult.square_of_basis();
    std::set<Prime> support;
    for (const GroupElement* x : {&g, &m, &b})
        for (const Prime& p : decompose(*x).support) support.insert(p);
    Decomposition dg = decompose_with(g, support);
    Decomposition dm = decompose_with(m, support);
    Decomposition db = decompose_with(b, support);

    DefiningForm fg{dg.c, dg.r}, fm{dm.c, dm.r};
    Integer n = *order(dg.t);
    Rational s = db.c * db.r / dg.c;
    // b's rational component c_g·s·e0.
    PrincipalWitness part_a =
        lattice_witness(G, support, fg, fm, n, Integer(s.get_num()), Integer(s.get_den()));
    // g's rational component c_g·(r1/r2)·e0, hence t_g = g − that.
    PrincipalWitness part_g =
        lattice_witness(G, support, fg, fm, n, Integer(dg.r.get_num()), Integer(dg.r.get_den()));
    Integer N = torsion_witness(dg.t, db.t); // t_b = N·t_g
    return PrincipalWitness{sub(part_a.y, zmul(N, part_g.y)), part_a.k + N * (1 - part_g.k)};
}

PrincipalWitness construct_split(const Multiplication& mult, const GroupElement& g, const GroupElement& b) {
    const Qd1Group& G = mult.group();
    const GroupElement& m = mult.square_of_basis();
    // Q ⊕ Z_m splits as a ring; Q is a field ideal here since e×e ∉ T.
    Integer k = torsion_witness(elem_split(G, 0, g.torsion_residue()), elem_split(G, 0, b.torsion_residue()));
    Rational a = g.rational_part();
    Rational qy = (b.rational_part() - k * a) / (a * m.rational_part());
    return PrincipalWitness{elem_split(G, qy, 0), k};
}

} // namespace

std::optional<PrincipalWitness> solve_in_principal(const Multiplication& mult, const GroupElement& g,
                                                   const GroupElement& b) {
    const Qd1Group& G = mult.group();
    require_in(G, g);
    require_in(G, b);
    if (is_torsion(g) || products_are_torsion(mult))
        throw UnsupportedCaseError("solve_in_principal needs g and e×e of infinite order");

    if (mutation::active(mutation::Kind::skip_witness_verification)) {
        try {
            return G.is_reduced() ? construct_reduced(mult, g, b) : construct_split(mult, g, b);
        } catch (const std::exception&) {
            return PrincipalWitness{zero(G), 1};
        }
    }
    if (!contains(full_inv(G, char_of(g)), b)) return std::nullopt;
    PrincipalWitness w = G.is_reduced() ? construct_reduced(mult, g, b) : construct_split(mult, g, b);
    if (!(evaluate(mult, g, w) == b)) throw std::logic_error("solve_in_principal: recomputation failed");
    return w;
}

std::optional<PrincipalWitness> ideal_member_witness(const Multiplication& mult, const GroupElement& g,
                                                     const GroupElement& b) {
    const Qd1Group& G = mult.group();
    require_in(G, g);
    require_in(G, b);
    if (is_torsion(g)) {
        if (!contains(torsion_inv(G, char_of(g)), b)) return std::nullopt;
        return PrincipalWitness{zero(G), torsion_witness(g, b)};
    }
    if (!products_are_torsion(mult)) return solve_in_principal(mult, g, b);

    // b = t + k·g with t ∈ Z(g×e), and n·(g×e) = g×(n·e).
    Rational k = b.rational_part() / g.rational_part();
    if (k.get_den() != 1) return std::nullopt;
    Integer kk(k.get_num());
    GroupElement t = sub(b, zmul(kk, g));
    GroupElement ge = multiply(mult, g, basis(G));
    if (!contains(torsion_inv(G, char_of(ge)), t)) return std::nullopt;
    PrincipalWitness w{zmul(torsion_witness(ge, t), basis(G)), kk};
    if (!(evaluate(mult, g, w) == b)) throw std::logic_error("ideal_member_witness: recomputation failed");
    return w;
}

NonAbsoluteWitness non_absolute_ideal_witness(const Multiplication& mult) {
    if (is_ai_ring(mult)) throw RingIsAiError();
    const Qd1Group& G = mult.group();
    const GroupElement& m = mult.square_of_basis();

    std::optional<GroupElement> e0;
    std::optional<Prime> p;
    if (!G.is_reduced()) {
        e0 = elem_split(G, 1, 0);
        p = Prime(2);
    } else {
        // P1: the support of e×e, or the least prime of finite exponent when e×e = 0.
        std::set<Prime> p1;
        for (const auto& kv : m.overrides()) p1.insert(kv.first);
        if (p1.empty()) {
            Prime q(2);
            while (G.cochar()(q).is_infinite()) q = next_prime(q.value());
            p = q;
            if (is_finite_nonzero_at(G.cochar(), q)) p1.insert(q);
        } else {
            p = *p1.begin();
        }
        e0 = projected_basis(G, p1);
    }
    std::map<Prime, Integer> ov = e0->overrides();
    NonAbsoluteWitness w{*e0, *p, G.is_reduced() ? elem(G, Rational(Integer(1), p->value()), ov)
                                                 : elem_split(G, Rational(Integer(1), p->value()), 0)};

    SubgroupDescriptor cyclic = plus_cyclic(torsion_inv(G, Characteristic::all_infinite()), w.e0);
    if (!equals(principal_ideal(mult, w.e0), cyclic) || !contains(full_inv(G, char_of(w.e0)), w.violator) ||
        contains(cyclic, w.violator))
        throw std::logic_error("non_absolute_ideal_witness: verification failed");
    return w;
}

} // namespace qd1

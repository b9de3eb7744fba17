#include <random>

#include "doctest.h"
#include "qd1/errors.hpp"
#include "qd1/ring.hpp"
#include "qd1/subgroup.hpp"
#include "support.hpp"

using namespace qd1;
using namespace fixtures;

namespace {

std::vector<Prime> probe_primes() {
    std::vector<Prime> out;
    for (unsigned long p = 2; p < 40; ++p)
        if (is_prime(Integer(p))) out.emplace_back(p);
    return out;
}

// Every torsion element of GA: overrides at 2 only.
std::vector<GroupElement> torsion_of_GA() {
    std::vector<GroupElement> out;
    for (int a = 0; a < 4; ++a) out.push_back(elem(GA(), 0, {{Prime(2), a}}));
    return out;
}

struct Instance {
    Qd1Group G;
    oracle::Rng rng;
};

Instance instance(std::uint64_t i) {
    oracle::Rng rng(13, 0, i);
    Qd1Group G = build_group(oracle::random_cochar(rng, small_cfg(), oracle::CocharShape::any));
    return {G, rng};
}

// η built from element characteristics so that the descriptors are non-trivial.
Characteristic random_eta(Instance& in) {
    GroupElement a = oracle::random_element(in.G, in.rng, small_cfg());
    Characteristic eta = char_of(a);
    if (in.rng.chance(0.5)) eta = meet(eta, char_of(oracle::random_element(in.G, in.rng, small_cfg())));
    if (in.rng.chance(0.3)) eta = eta.with(Prime(static_cast<unsigned long>(in.rng.chance(0.5) ? 2 : 3)),
                                           ExtNat(static_cast<std::uint64_t>(in.rng.uniform(0, 3))));
    return eta;
}

} // namespace

TEST_CASE("full-invariant subgroups") {
    Qd1Group G = GA();
    GroupElement e = basis(G);
    SubgroupDescriptor whole = full_inv(G, Characteristic::all_zero());
    for (std::uint64_t i = 0; i < 50; ++i) {
        oracle::Rng rng(1, 1, i);
        CHECK(contains(whole, oracle::random_element(G, rng, small_cfg())));
    }
    Characteristic eta = char_of(zmul(2, e));
    CHECK(eta == chr("default=inf;2:1,3:0"));
    CHECK(contains(full_inv(G, eta), zmul(2, e)));
    CHECK_FALSE(contains(full_inv(G, eta), e));

    SubgroupDescriptor rationals = full_inv(GB(), Characteristic::all_infinite());
    for (long n : {1l, -3l, 0l}) CHECK(contains(rationals, elem_split(GB(), Rational(n, 7), 0)));
    CHECK_FALSE(contains(rationals, elem_split(GB(), 0, 1)));
    CHECK(to_string(Rational(1, 7)) == "1/7");
}

TEST_CASE("torsion-invariant subgroups") {
    Qd1Group G = GA();
    SubgroupDescriptor all = torsion_inv(G, char_of(e2(G)));
    for (const GroupElement& t : torsion_of_GA()) CHECK(contains(all, t));
    CHECK_FALSE(contains(all, basis(G)));

    SubgroupDescriptor two = torsion_inv(G, char_of(zmul(2, e2(G))));
    std::vector<GroupElement> members;
    for (const GroupElement& t : torsion_of_GA())
        if (contains(two, t)) members.push_back(t);
    REQUIRE(members.size() == 2);
    for (const GroupElement& t : members) CHECK(brute_multiple(zmul(2, e2(G)), t).has_value());

    for (const Qd1Group& H : {GA(), GB(), GC(), GZ()}) {
        SubgroupDescriptor z = torsion_inv(H, Characteristic::all_infinite());
        CHECK(contains(z, zero(H)));
        CHECK_FALSE(contains(z, basis(H)));
    }
    CHECK_FALSE(contains(torsion_inv(GB(), Characteristic::all_infinite()), elem_split(GB(), 0, 1)));
}

TEST_CASE("sum with a cyclic subgroup") {
    Qd1Group G = GA();
    GroupElement e = basis(G);
    SubgroupDescriptor ze = plus_cyclic(torsion_inv(G, Characteristic::all_infinite()), e);
    CHECK(ze.kind() == SubgroupDescriptor::Kind::sum_with_cyclic);
    CHECK(contains(ze, zmul(5, e)));
    CHECK(contains(ze, zmul(-5, e)));
    CHECK_FALSE(contains(ze, elem(G, Rational(1, 5))));
    CHECK_FALSE(contains(ze, e2(G)));

    SubgroupDescriptor collapsed = plus_cyclic(torsion_inv(G, char_of(e2(G))), zero(G));
    CHECK(collapsed.kind() == SubgroupDescriptor::Kind::torsion_invariant);
    CHECK(equals(collapsed, torsion_inv(G, char_of(e2(G)))));
    CHECK_THROWS_AS(plus_cyclic(full_inv(G, Characteristic::all_zero()), e), VariantMismatchError);

    GroupElement e0 = elem(G, 1, {{Prime(2), 0}});
    SubgroupDescriptor ze0 = plus_cyclic(torsion_inv(G, Characteristic::all_infinite()), e0);
    CHECK_FALSE(contains(ze0, elem(G, Rational(1, 2), {{Prime(2), 0}})));
    CHECK(contains(ze0, zmul(3, e0)));

    // A negated or torsion-shifted generator describes the same subgroup.
    SubgroupDescriptor t = torsion_inv(G, char_of(zmul(2, e2(G))));
    CHECK(equals(plus_cyclic(t, e), plus_cyclic(t, neg(add(e, zmul(2, e2(G)))))));
    CHECK_FALSE(equals(plus_cyclic(t, e), plus_cyclic(t, add(e, e2(G)))));
}

TEST_CASE("membership in principal ideals") {
    Qd1Group G = GA();
    Multiplication unital = make_mult(G, basis(G));
    GroupElement g = zmul(2, basis(G));
    CHECK(contains(principal_ideal(unital, g), g));
    CHECK(contains(principal_ideal(unital, g), add(g, zmul(2, e2(G)))));
    CHECK(contains(full_inv(G, char_of(g)), g));
}

TEST_CASE("equality") {
    Qd1Group G = GA();
    CHECK(equals(full_inv(G, char_of(e2(G))), torsion_inv(G, char_of(e2(G)))));
    GroupElement t = elem_split(GB(), 0, 1);
    CHECK_FALSE(equals(full_inv(GB(), char_of(t)), torsion_inv(GB(), char_of(t))));
    Characteristic eta = chr("default=inf;2:1,3:0");
    CHECK(equals(full_inv(G, eta), full_inv(G, eta.with(Prime(7), 0))));
    // η(2) ≥ χ(2) = 2 behaves like ∞.
    CHECK(equals(full_inv(G, eta.with(Prime(2), ExtNat::infinity())), full_inv(G, eta.with(Prime(2), 5))));
    CHECK_FALSE(equals(full_inv(G, eta), full_inv(G, eta.with(Prime(2), 5))));
    CHECK_FALSE(equals(full_inv(G, eta), full_inv(G, Characteristic::all_zero())));

    // In Z, G(η) is cyclic and may coincide with a sum descriptor.
    Qd1Group Z = GZ();
    SubgroupDescriptor none = torsion_inv(Z, Characteristic::all_infinite());
    SubgroupDescriptor two_z = full_inv(Z, chr("default=0;2:1"));
    CHECK(equals(two_z, plus_cyclic(none, zmul(2, basis(Z)))));
    CHECK(equals(plus_cyclic(none, zmul(-2, basis(Z))), two_z));
    CHECK_FALSE(equals(two_z, plus_cyclic(none, zmul(4, basis(Z)))));
    CHECK_FALSE(equals(full_inv(G, char_of(basis(G))), plus_cyclic(torsion_inv(G, Characteristic::all_infinite()), basis(G))));
}

TEST_CASE("normalization") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        Instance in = instance(i);
        Characteristic eta = random_eta(in);
        for (bool torsion : {false, true}) {
            Characteristic n = normalize_eta(in.G, eta, torsion);
            CHECK(normalize_eta(in.G, n, torsion) == n);
        }
        SubgroupDescriptor full = full_inv(in.G, eta);
        SubgroupDescriptor tor = torsion_inv(in.G, eta);
        for (int j = 0; j < 10; ++j) {
            GroupElement x = oracle::random_element(in.G, in.rng, small_cfg());
            // Direct definition of G(η), prime by prime over a probe set covering every exception.
            bool direct = true;
            for (const Prime& p : probe_primes()) direct = direct && height(x, p) >= eta(p);
            direct = direct && char_geq(char_of(x), eta);
            CHECK(contains(full, x) == direct);
            CHECK(contains(full, x) == char_geq(char_of(x), eta));
            bool direct_t = is_torsion(x);
            for (const Prime& p : probe_primes())
                if (is_finite_nonzero_at(in.G.cochar(), p) || (!in.G.is_reduced() && in.G.cochar()(p).is_finite() &&
                                                               !in.G.cochar()(p).is_zero()))
                    direct_t = direct_t && height(x, p) >= eta(p);
            CHECK(contains(tor, x) == direct_t);
        }
    }
}

TEST_CASE("monotonicity and stability of full-invariant subgroups") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        Instance in = instance(1000 + i);
        Characteristic eta1 = random_eta(in);
        Characteristic eta2 = meet(eta1, random_eta(in));
        SubgroupDescriptor big = full_inv(in.G, eta2), small = full_inv(in.G, eta1);
        Multiplication unital = make_mult(in.G, basis(in.G));
        for (int j = 0; j < 10; ++j) {
            GroupElement x = oracle::sample_member(small, in.rng, small_cfg());
            CHECK(contains(big, x));
            CHECK(contains(small, zmul(in.rng.uniform(-20, 20), x)));
            GroupElement y = oracle::random_element(in.G, in.rng, small_cfg());
            CHECK(contains(small, multiply(unital, y, x)));
        }
    }
}

TEST_CASE("equal descriptors have the same sampled members") {
    int equal_pairs = 0;
    for (std::uint64_t i = 0; i < 300; ++i) {
        Instance in = instance(5000 + i);
        Characteristic eta = random_eta(in);
        GroupElement g = oracle::random_element(in.G, in.rng, small_cfg());
        std::vector<SubgroupDescriptor> ds{full_inv(in.G, eta), torsion_inv(in.G, eta),
                                           plus_cyclic(torsion_inv(in.G, eta), g)};
        for (const auto& a : ds)
            for (const auto& b : ds) {
                CHECK(equals(a, b) == equals(b, a));
                if (!equals(a, b)) continue;
                ++equal_pairs;
                for (int j = 0; j < 5; ++j) CHECK(contains(b, oracle::sample_member(a, in.rng, small_cfg())));
            }
    }
    CHECK(equal_pairs > 900);
}

TEST_CASE("descriptor serialization") {
    Qd1Group G = GA();
    CHECK(full_inv(G, chr("default=inf;2:1,3:0")).to_string() == "G(eta=default=inf;2:1,3:0)");
    CHECK(torsion_inv(G, char_of(e2(G))).to_string() == "T(eta=default=inf;2:0)");
    CHECK(plus_cyclic(torsion_inv(G, Characteristic::all_infinite()), basis(G)).to_string() ==
          "T(eta=default=inf)+Z*r=1");
    CHECK_THROWS_AS(contains(full_inv(G, Characteristic::all_zero()), basis(GC())), GroupMismatchError);
}

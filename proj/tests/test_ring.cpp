#include "doctest.h"
#include "qd1/errors.hpp"
#include "qd1/mutation.hpp"
#include "qd1/ring.hpp"
#include "support.hpp"

using namespace qd1;
using namespace fixtures;

TEST_CASE("make_mult and multiply") {
    Qd1Group G = GA();
    GroupElement e = basis(G);
    Multiplication trivial = make_mult(G, zero(G));
    Multiplication unital = make_mult(G, e);
    Multiplication tor = make_mult(G, e2(G));
    GroupElement h = elem(G, Rational(1, 2), {{Prime(2), 0}});
    for (const GroupElement& g : {e, e2(G), h}) {
        CHECK(multiply(unital, e, g) == g);
        CHECK(multiply(trivial, g, h) == zero(G));
    }
    CHECK(multiply(tor, e, e) == e2(G));
    CHECK(multiply(tor, e2(G), e2(G)) == e2(G));
    CHECK(products_are_torsion(tor));
    CHECK(is_torsion(multiply(tor, zmul(7, e), h)));
    // Bilinearity from the generators: (3e)×(5e) = 15·(e×e).
    CHECK(multiply(tor, zmul(3, e), zmul(5, e)) == zmul(15, e2(G)));
    CHECK_THROWS_AS(make_mult(G, basis(GC())), GroupMismatchError);
    CHECK_THROWS_AS(multiply(unital, e, basis(GC())), GroupMismatchError);
    CHECK(element_of_mult(tor) == e2(G));

    Multiplication split = make_mult(GB(), elem_split(GB(), 2, 1));
    CHECK(multiply(split, elem_split(GB(), Rational(1, 3), 1), elem_split(GB(), 3, 1)) == elem_split(GB(), 2, 1));
}

TEST_CASE("principal ideals") {
    Qd1Group G = GA();
    GroupElement e = basis(G);
    for (const GroupElement& m : {zero(G), e, e2(G)})
        CHECK(equals(principal_ideal(make_mult(G, m), e2(G)), torsion_inv(G, char_of(e2(G)))));
    SubgroupDescriptor d = principal_ideal(make_mult(G, e), zmul(2, e));
    CHECK(d.kind() == SubgroupDescriptor::Kind::full_invariant);
    CHECK(d.eta() == chr("default=inf;2:1,3:0"));
    for (const Qd1Group& H : {GA(), GB(), GC(), GZ()}) {
        GroupElement g = zmul(3, basis(H));
        CHECK(equals(principal_ideal(make_mult(H, zero(H)), g), plus_cyclic(torsion_inv(H, Characteristic::all_infinite()), g)));
    }
}

TEST_CASE("principal absolute ideals") {
    Qd1Group G = GA();
    SubgroupDescriptor a = principal_absolute_ideal(G, basis(G));
    CHECK(a.eta() == chr("default=inf;2:0,3:0"));
    CHECK(equals(a, full_inv(G, Characteristic::all_zero())));
    SubgroupDescriptor t = principal_absolute_ideal(G, zmul(2, e2(G)));
    int members = 0;
    for (int x = 0; x < 4; ++x) {
        GroupElement u = elem(G, 0, {{Prime(2), x}});
        bool in = contains(t, u);
        members += in;
        CHECK(in == brute_multiple(zmul(2, e2(G)), u).has_value());
    }
    CHECK(members == 2);
    SubgroupDescriptor q = principal_absolute_ideal(GB(), elem_split(GB(), 1, 0));
    CHECK(equals(q, full_inv(GB(), Characteristic::all_infinite())));
    CHECK_FALSE(contains(q, elem_split(GB(), 0, 1)));
}

TEST_CASE("AI and FI classification") {
    Qd1Group Z = GZ();
    for (long m : {0l, 1l, -6l, 35l}) {
        Multiplication mult = make_mult(Z, zmul(m, basis(Z)));
        CHECK(is_ai_ring(mult));
        CHECK(is_fi_ring(mult));
    }
    Qd1Group G = GA();
    CHECK(is_ai_ring(make_mult(G, basis(G))));
    CHECK_FALSE(is_ai_ring(make_mult(G, e2(G))));
    CHECK_FALSE(is_fi_ring(make_mult(G, e2(G))));
    CHECK(is_nai(make_mult(G, e2(G))));
    CHECK_FALSE(is_nai(make_mult(G, basis(G))));
    CHECK(is_nai(make_mult(G, add(e2(G), e2(G)))));
}

TEST_CASE("solving in case-2 principal ideals") {
    Qd1Group G = GA();
    Multiplication unital = make_mult(G, basis(G));
    GroupElement g = zmul(2, basis(G));
    auto w = solve_in_principal(unital, g, g);
    REQUIRE(w);
    CHECK(evaluate(unital, g, *w) == g);
    CHECK(w->to_string().rfind("y=", 0) == 0);

    GroupElement b = add(g, zmul(2, e2(G)));
    auto wb = solve_in_principal(unital, g, b);
    REQUIRE(wb);
    CHECK(evaluate(unital, g, *wb) == b);
    // The witness (e2, 1) also works.
    CHECK(evaluate(unital, g, PrincipalWitness{e2(G), 1}) == b);

    CHECK_FALSE(solve_in_principal(unital, g, basis(G)).has_value());
    CHECK_THROWS_AS(solve_in_principal(unital, e2(G), g), UnsupportedCaseError);
    CHECK_THROWS_AS(solve_in_principal(make_mult(G, e2(G)), g, g), UnsupportedCaseError);

    Multiplication split = make_mult(GB(), elem_split(GB(), 3, 1));
    GroupElement gs = elem_split(GB(), 2, 1);
    for (const GroupElement& bs : {elem_split(GB(), Rational(5, 7), 0), elem_split(GB(), -1, 1)}) {
        auto ws = solve_in_principal(split, gs, bs);
        REQUIRE(ws);
        CHECK(evaluate(split, gs, *ws) == bs);
    }
}

TEST_CASE("torsion witnesses") {
    Qd1Group G = GC();
    GroupElement g = elem(G, 0, {{Prime(2), 2}, {Prime(3), 1}});
    GroupElement u1 = elem(G, 0, {{Prime(2), 2}});
    GroupElement u2 = elem(G, 0, {{Prime(3), 1}});
    CHECK(torsion_witness(g, u1) == *brute_multiple(g, u1));
    CHECK(torsion_witness(g, u1) == 3);
    CHECK(torsion_witness(g, u2) == *brute_multiple(g, u2));
    CHECK(torsion_witness(g, u2) == 4);
    CHECK(torsion_witness(g, zero(G)) == *order(g));
    CHECK_THROWS_AS(torsion_witness(g, elem(G, 0, {{Prime(2), 1}})), NotMemberError);
    CHECK_THROWS_AS(torsion_witness(g, basis(G)), NotMemberError);
    GroupElement t = elem_split(build_group(chr("default=0;2:3,3:2")), 0, 10);
    CHECK(zmul(torsion_witness(t, zmul(5, t)), t) == zmul(5, t));
}

TEST_CASE("ideal member witnesses in every case") {
    Qd1Group G = GA();
    Multiplication tor = make_mult(G, e2(G));
    GroupElement g = zmul(3, basis(G));
    SubgroupDescriptor d = principal_ideal(tor, g);
    GroupElement inside = add(zmul(-2, g), multiply(tor, g, basis(G)));
    REQUIRE(contains(d, inside));
    auto w = ideal_member_witness(tor, g, inside);
    REQUIRE(w);
    CHECK(evaluate(tor, g, *w) == inside);
    CHECK_FALSE(ideal_member_witness(tor, g, basis(G)).has_value());
    auto wt = ideal_member_witness(tor, e2(G), zmul(3, e2(G)));
    REQUIRE(wt);
    CHECK(evaluate(tor, e2(G), *wt) == zmul(3, e2(G)));
}

TEST_CASE("non-absolute ideal witnesses") {
    Qd1Group G = GA();
    NonAbsoluteWitness w = non_absolute_ideal_witness(make_mult(G, e2(G)));
    CHECK(w.e0 == elem(G, 1, {{Prime(2), 0}}));
    CHECK(w.p == Prime(2));
    CHECK(w.violator == elem(G, Rational(1, 2), {{Prime(2), 0}}));
    CHECK(w.to_string() == "e0=r=1;2:0;p=2;x=r=1/2;2:0");
    SubgroupDescriptor ze0 = plus_cyclic(torsion_inv(G, Characteristic::all_infinite()), w.e0);
    CHECK(equals(principal_ideal(make_mult(G, e2(G)), w.e0), ze0));
    CHECK(contains(full_inv(G, char_of(w.e0)), w.violator));
    CHECK_FALSE(contains(ze0, w.violator));

    Qd1Group B = GB();
    NonAbsoluteWitness wb = non_absolute_ideal_witness(make_mult(B, elem_split(B, 0, 1)));
    CHECK(wb.e0 == elem_split(B, 1, 0));
    CHECK(wb.p == Prime(2));
    CHECK(wb.violator == elem_split(B, Rational(1, 2), 0));

    CHECK_THROWS_AS(non_absolute_ideal_witness(make_mult(G, basis(G))), RingIsAiError);
    CHECK_THROWS_AS(non_absolute_ideal_witness(make_mult(GZ(), zero(GZ()))), RingIsAiError);

    // e×e = 0 with no finite nonzero exponent below the first infinite one.
    Qd1Group H = build_group(chr("default=1;2:inf,3:0"));
    NonAbsoluteWitness wh = non_absolute_ideal_witness(make_mult(H, zero(H)));
    CHECK(wh.p == Prime(3));
    CHECK(zmul(3, wh.violator) == wh.e0);
}

TEST_CASE("mutations change behaviour only while active") {
    Qd1Group G = GA();
    Multiplication tor = make_mult(G, e2(G));
    {
        mutation::Scoped drop(mutation::Kind::drop_m_factor);
        CHECK(multiply(tor, basis(G), basis(G)) == basis(G));
    }
    CHECK(multiply(tor, basis(G), basis(G)) == e2(G));
    Multiplication unital = make_mult(G, basis(G));
    GroupElement g = zmul(2, basis(G));
    {
        mutation::Scoped lower(mutation::Kind::lower_eta);
        CHECK(principal_ideal(unital, g).eta() == chr("default=inf;2:0,3:0"));
    }
    {
        mutation::Scoped skip(mutation::Kind::skip_witness_verification);
        auto w = solve_in_principal(unital, g, basis(G));
        REQUIRE(w);
        CHECK_FALSE(evaluate(unital, g, *w) == basis(G));
    }
    CHECK_FALSE(solve_in_principal(unital, g, basis(G)).has_value());
}

#pragma once

#include <optional>
#include <string>

#include "qd1/group.hpp"
#include "qd1/subgroup.hpp"

namespace qd1 {

/// A ring structure on G. Mult G ≅ G: the multiplication is fixed by the
/// single element e×e, and every product is taken coordinatewise,
/// (x×y)_p = x_p · y_p · (e×e)_p.
class Multiplication {
public:
    const Qd1Group& group() const noexcept { return m_.group(); }
    /// e×e.
    const GroupElement& square_of_basis() const noexcept { return m_; }

private:
    explicit Multiplication(GroupElement m) : m_(std::move(m)) {}
    friend Multiplication make_mult(const Qd1Group&, const GroupElement&);

    GroupElement m_;
};

Multiplication make_mult(const Qd1Group& g, const GroupElement& m);
GroupElement multiply(const Multiplication& mult, const GroupElement& a, const GroupElement& b);

/// Inverse of make_mult.
GroupElement element_of_mult(const Multiplication& mult);

/// G×G ⊆ T(G), decided by e×e ∈ T(G).
bool products_are_torsion(const Multiplication& mult);

/// The ideal (g)× generated by g:
///   g torsion                    T(char g)
///   g non-torsion, e×e ∉ T(G)    G(char g)
///   g non-torsion, e×e ∈ T(G)    T(char(g×e)) + Zg
SubgroupDescriptor principal_ideal(const Multiplication& mult, const GroupElement& g);

/// Smallest subgroup that is an ideal in every ring on G and contains g:
/// G(char g) off the torsion part, T(char g) on it.
SubgroupDescriptor principal_absolute_ideal(const Qd1Group& G, const GroupElement& g);

bool is_ai_ring(const Multiplication& mult);
/// Same verdict as is_ai_ring: a ring on G is FI iff it is AI.
bool is_fi_ring(const Multiplication& mult);

/// Multiplications whose rings are not AI-rings; the torsion part of Mult G.
bool is_nai(const Multiplication& mult);

/// b = g×y + k·g.
struct PrincipalWitness {
    GroupElement y;
    Integer k;

    std::string to_string() const; // `y=<elem>;k=<int>`
};

/// g×y + k·g.
GroupElement evaluate(const Multiplication& mult, const GroupElement& g, const PrincipalWitness& w);

/// Solves b = g×y + k·g when g and e×e have infinite order; nullopt when
/// b ∉ G(char g). Every returned witness has been recomputed.
/// UnsupportedCaseError outside that case.
std::optional<PrincipalWitness> solve_in_principal(const Multiplication& mult, const GroupElement& g,
                                                   const GroupElement& b);

/// n with n·g = u, for torsion g and u ∈ T(char g). NotMemberError otherwise.
/// u = 0 gives n = o(g).
Integer torsion_witness(const GroupElement& g, const GroupElement& u);

/// Witness for b ∈ (g)× in whichever case applies; nullopt when b ∉ (g)×.
std::optional<PrincipalWitness> ideal_member_witness(const Multiplication& mult, const GroupElement& g,
                                                     const GroupElement& b);

/// An element e0 with (e0)× = Z·e0 together with a violator (1/p)·e0 that lies
/// in G(char e0) but not in Z·e0, proving (e0)× is not an absolute ideal.
struct NonAbsoluteWitness {
    GroupElement e0;
    Prime p;
    GroupElement violator;

    std::string to_string() const; // `e0=<elem>;p=<prime>;x=<elem>`
};

/// RingIsAiError when the ring is an AI-ring.
NonAbsoluteWitness non_absolute_ideal_witness(const Multiplication& mult);

} // namespace qd1

#pragma once

#include <optional>
#include <string>

#include "qd1/characteristic.hpp"
#include "qd1/group.hpp"

namespace qd1 {

/// Symbolic subgroup of a QD1 group:
///   full_invariant     G(η) = {x | char x ≥ η}
///   torsion_invariant  T(η) = ⊕_p p^{η(p)} T_p(G)
///   sum_with_cyclic    T(η) + Zg, g of infinite order
/// η is stored normalized against cochar G (see normalize_eta).
class SubgroupDescriptor {
public:
    enum class Kind { full_invariant, torsion_invariant, sum_with_cyclic };

    const Qd1Group& group() const noexcept { return group_; }
    Kind kind() const noexcept { return kind_; }
    const Characteristic& eta() const noexcept { return eta_; }
    /// The cyclic generator; set only for sum_with_cyclic.
    const std::optional<GroupElement>& generator() const noexcept { return generator_; }

    /// `G(eta=...)`, `T(eta=...)` or `T(eta=...)+Z*<elem>`.
    std::string to_string() const;

private:
    SubgroupDescriptor(Qd1Group g, Kind k, Characteristic eta, std::optional<GroupElement> gen)
        : group_(std::move(g)), kind_(k), eta_(std::move(eta)), generator_(std::move(gen)) {}

    friend SubgroupDescriptor full_inv(const Qd1Group&, const Characteristic&);
    friend SubgroupDescriptor torsion_inv(const Qd1Group&, const Characteristic&);
    friend SubgroupDescriptor plus_cyclic(const SubgroupDescriptor&, const GroupElement&);

    Qd1Group group_;
    Kind kind_;
    Characteristic eta_;
    std::optional<GroupElement> generator_;
};

/// Heights at a prime with finite exponent k lie in {0, ..., k-1, ∞} and are
/// ∞ wherever χ(p) = 0, so η(p) is raised to ∞ in both situations. For torsion
/// descriptors η is also irrelevant where T_p(G) = 0 (χ(p) = ∞) and is set to ∞.
Characteristic normalize_eta(const Qd1Group& g, const Characteristic& eta, bool torsion);

SubgroupDescriptor full_inv(const Qd1Group& g, const Characteristic& eta);
SubgroupDescriptor torsion_inv(const Qd1Group& g, const Characteristic& eta);
/// T(η) + Zg. A torsion g collapses to T(min(η, char g)), since Zg = T(char g).
SubgroupDescriptor plus_cyclic(const SubgroupDescriptor& d, const GroupElement& g);

bool contains(const SubgroupDescriptor& d, const GroupElement& x);

/// Whether G(η) has an element of infinite order.
bool has_infinite_order_members(const Qd1Group& g, const Characteristic& eta);

/// Exact subgroup equality for every pair of variants.
bool equals(const SubgroupDescriptor& a, const SubgroupDescriptor& b);

} // namespace qd1

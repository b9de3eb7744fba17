#pragma once

// Fixtures and brute-force helpers shared by the unit tests.

#include <optional>

#include "qd1/characteristic.hpp"
#include "qd1/group.hpp"
#include "qd1/oracle.hpp"

namespace fixtures {

using namespace qd1;

inline Qd1Group GA() { return build_group(Characteristic::parse("default=0;2:2,3:inf")); }
inline Qd1Group GB() { return build_group(Characteristic::parse("default=0;2:1")); }
inline Qd1Group GC() { return build_group(Characteristic::parse("default=0;2:2,3:1,5:inf")); }
inline Qd1Group GZ() { return build_group(Characteristic::all_infinite()); }

inline GroupElement e2(const Qd1Group& G) { return elem(G, 0, {{Prime(2), 1}}); }

inline Characteristic chr(const char* text) { return Characteristic::parse(text); }

// Smallest n > 0 with n·g = 0, searched up to limit.
inline std::optional<Integer> brute_order(const GroupElement& g, unsigned limit = 10000) {
    GroupElement acc = g;
    for (unsigned n = 1; n <= limit; ++n, acc = add(acc, g))
        if (acc == zero(g.group())) return Integer(n);
    return std::nullopt;
}

// Smallest n ≥ 0 with n·g = u, searched up to limit.
inline std::optional<Integer> brute_multiple(const GroupElement& g, const GroupElement& u, unsigned limit = 10000) {
    GroupElement acc = zero(g.group());
    for (unsigned n = 0; n <= limit; ++n, acc = add(acc, g))
        if (acc == u) return Integer(n);
    return std::nullopt;
}

inline Integer brute_inverse(const Integer& a, const Integer& q) {
    for (Integer b = 0; b < q; ++b)
        if (mod(Integer(a * b), q) == mod(Integer(1), q)) return b;
    return -1;
}

// Height via the independent oracle; infinity when saturated at 12.
inline ExtNat oracle_height(const GroupElement& g, const Prime& p) {
    oracle::HeightBound h = oracle::height_oracle(g, p, 12);
    return h.saturated ? ExtNat::infinity() : ExtNat(h.k);
}

inline oracle::TrialConfig small_cfg(std::uint64_t seed = 1) {
    oracle::TrialConfig cfg;
    cfg.seed = seed;
    cfg.trials = 50;
    cfg.samples_per_instance = 10;
    return cfg;
}

} // namespace fixtures

#pragma once

// Brute-force and sampling checkers used to certify the closed forms of the
// group, subgroup and ring modules. They share only element arithmetic with
// the code they check.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qd1/characteristic.hpp"
#include "qd1/group.hpp"
#include "qd1/ring.hpp"
#include "qd1/subgroup.hpp"

namespace qd1::oracle {

struct TrialConfig {
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    unsigned max_prime = 13; // exceptions of random cocharacteristics use primes ≤ this
    unsigned max_exp = 4;    // finite exponents of random cocharacteristics are ≤ this
    std::size_t samples_per_instance = 20;

    /// DomainError unless every bound is positive and max_prime ≥ 5.
    void validate() const;
};

/// Random stream for one trial, a pure function of (seed, stream, index).
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

    std::int64_t uniform(std::int64_t lo, std::int64_t hi); // inclusive
    Integer below(const Integer& n);                         // [0, n)
    bool chance(double p);

private:
    std::mt19937_64 engine_;
};

/// Outcome of one named check over a number of trials.
struct CheckReport {
    CheckReport(std::string name = {}) : check(std::move(name)) {}

    std::string check;
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::optional<std::size_t> fail_at;
    std::string detail;

    bool passed() const noexcept { return failures == 0; }
    /// Records a failure; only the first one keeps its index and detail.
    void fail(std::size_t index, std::string what);
    /// `PASS|FAIL <check> trials=<n> fail_at=<idx|-> detail=<...>`
    std::string line() const;
};

/// Largest k ≤ bound with p^k·y = g solvable in G; `saturated` when k = bound.
struct HeightBound {
    std::uint64_t k = 0;
    bool saturated = false;
};

/// Decides p^k·y = g by building y coordinatewise from linear congruences and
/// checking the result with zmul.
bool divisible_by_power(const GroupElement& g, const Prime& p, std::uint64_t k);
/// DomainError when bound > 12.
HeightBound height_oracle(const GroupElement& g, const Prime& p, std::uint64_t bound);

/// True when the closed-form height agrees with the oracle up to `bound`.
bool height_agrees(ExtNat closed_form, HeightBound oracle, std::uint64_t bound);

// ---- random instances -------------------------------------------------------

enum class CocharShape { any, reduced, non_reduced, integers, not_integers };

/// Primes ≤ max_prime followed by the next two primes (default-class primes).
std::vector<Prime> working_primes(const TrialConfig& cfg);

Characteristic random_cochar(Rng& rng, const TrialConfig& cfg, CocharShape shape,
                             std::optional<int> default_kind = std::nullopt); // 0, 1 = finite, 2 = ∞
GroupElement random_element(const Qd1Group& g, Rng& rng, const TrialConfig& cfg);
GroupElement random_torsion(const Qd1Group& g, Rng& rng, const TrialConfig& cfg);
GroupElement random_non_torsion(const Qd1Group& g, Rng& rng, const TrialConfig& cfg);

/// Member of the described subgroup, generated from η rather than by rejection.
/// Throws std::logic_error if the generated element fails `contains`.
GroupElement sample_member(const SubgroupDescriptor& d, Rng& rng, const TrialConfig& cfg);

// ---- checks -----------------------------------------------------------------

/// Samples both inclusions between d and (g)×: every g×x + k·g must lie in d,
/// and every sampled member of d must carry a witness b = g×y + k·g that
/// recomputes exactly. cfg.samples_per_instance samples per direction.
CheckReport ideal_two_way_check(const Multiplication& mult, const GroupElement& g, const SubgroupDescriptor& d,
                                const TrialConfig& cfg, Rng& rng);

/// Commutativity, associativity, distributivity, e×e round trip and additivity
/// of the product in e×e, on cfg.samples_per_instance random triples.
CheckReport ring_axiom_check(const Multiplication& mult, const TrialConfig& cfg, Rng& rng);

} // namespace qd1::oracle

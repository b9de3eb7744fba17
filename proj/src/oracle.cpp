#include "qd1/oracle.hpp"

#include <stdexcept>

#include "qd1/errors.hpp"

namespace qd1::oracle {

void TrialConfig::validate() const {
    if (trials == 0 || samples_per_instance == 0 || max_exp == 0)
        throw DomainError("trials, samples and max_exp must be positive");
    if (max_prime < 5) throw DomainError("max_prime must be at least 5");
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    engine_.seed(seq);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

Integer Rng::below(const Integer& n) {
    if (n <= 1) return 0;
    if (n.fits_slong_p()) return Integer(uniform(0, n.get_si() - 1));
    // Wide moduli: combine 62-bit draws, then reduce (bias is irrelevant here).
    Integer acc = 0;
    for (std::size_t bits = 0; bits < mpz_sizeinbase(n.get_mpz_t(), 2) + 64; bits += 62)
        acc = (acc << 62) + Integer(static_cast<unsigned long>(uniform(0, (std::int64_t{1} << 62) - 1)));
    return mod(acc, n);
}

bool Rng::chance(double p) { return std::bernoulli_distribution(p)(engine_); }

void CheckReport::fail(std::size_t index, std::string what) {
    if (failures++ == 0) {
        fail_at = index;
        detail = std::move(what);
    }
}

std::string CheckReport::line() const {
    return std::string(passed() ? "PASS " : "FAIL ") + check + " trials=" + std::to_string(trials) +
           " fail_at=" + (fail_at ? std::to_string(*fail_at) : "-") + " detail=" + (detail.empty() ? "-" : detail);
}

// ---- heights ---------------------------------------------------------------

bool divisible_by_power(const GroupElement& g, const Prime& p, std::uint64_t k) {
    if (k == 0) return true;
    const Qd1Group& G = g.group();
    const Integer pk = prime_power(p, k);
    std::optional<GroupElement> y;
    if (!G.is_reduced()) {
        auto b = solve_congruence(pk, g.torsion_residue(), G.modulus());
        if (!b) return false;
        y = elem_split(G, g.rational_part() / pk, *b);
    } else {
        std::map<Prime, Integer> ov;
        for (const auto& kv : g.overrides()) ov.emplace(kv.first, 0);
        if (is_finite_nonzero_at(G.cochar(), p)) ov.emplace(p, 0);
        for (auto& [q, a] : ov) {
            auto s = solve_congruence(pk, g.coordinate(q), G.local_modulus(q));
            if (!s) return false;
            a = *s;
        }
        try {
            y = elem(G, g.rational_part() / pk, std::move(ov));
        } catch (const InvalidDenominatorError&) {
            return false;
        }
    }
    return zmul(pk, *y) == g;
}

HeightBound height_oracle(const GroupElement& g, const Prime& p, std::uint64_t bound) {
    if (bound > 12) throw DomainError("height oracle bound must be at most 12");
    for (std::uint64_t k = 1; k <= bound; ++k)
        if (!divisible_by_power(g, p, k)) return {k - 1, false};
    return {bound, true};
}

bool height_agrees(ExtNat closed_form, HeightBound o, std::uint64_t bound) {
    if (closed_form.is_infinite() || closed_form.value() >= bound) return o.saturated;
    return !o.saturated && o.k == closed_form.value();
}

// ---- random instances ------------------------------------------------------

std::vector<Prime> working_primes(const TrialConfig& cfg) {
    std::vector<Prime> out;
    for (unsigned long p = 2; p <= cfg.max_prime; ++p)
        if (is_prime(Integer(p))) out.emplace_back(p);
    out.push_back(next_prime(out.back().value()));
    out.push_back(next_prime(out.back().value()));
    return out;
}

namespace {

ExtNat random_exponent(Rng& rng, const TrialConfig& cfg) {
    return ExtNat(static_cast<std::uint64_t>(rng.uniform(1, cfg.max_exp)));
}

Characteristic draw_cochar(Rng& rng, const TrialConfig& cfg, std::optional<int> default_kind) {
    int kind = default_kind ? *default_kind : static_cast<int>(rng.uniform(0, 2));
    ExtNat def = kind == 0 ? ExtNat(0) : (kind == 1 ? random_exponent(rng, cfg) : ExtNat::infinity());
    Characteristic::ExceptionMap ex;
    for (unsigned long p = 2; p <= cfg.max_prime; ++p) {
        if (!is_prime(Integer(p)) || !rng.chance(0.5)) continue;
        std::int64_t roll = rng.uniform(0, 3);
        ex.emplace(Prime(p), roll == 0 ? ExtNat::infinity() : (roll == 1 ? ExtNat(0) : random_exponent(rng, cfg)));
    }
    return Characteristic(def, std::move(ex));
}

// Candidate primes for overrides: the working primes plus every prime named by η or χ.
std::vector<Prime> candidate_primes(const TrialConfig& cfg, const Characteristic& chi, const Characteristic& eta) {
    std::set<Prime> s;
    for (const Prime& p : working_primes(cfg)) s.insert(p);
    for (const Prime& p : exception_primes({&chi, &eta})) s.insert(p);
    return {s.begin(), s.end()};
}

Integer random_numerator(Rng& rng, const std::vector<Prime>& primes) {
    Integer num = rng.uniform(1, 12);
    for (const Prime& p : primes)
        if (rng.chance(0.25)) num *= prime_power(p, static_cast<std::uint64_t>(rng.uniform(1, 2)));
    return rng.chance(0.5) ? num : Integer(-num);
}

Integer random_denominator(Rng& rng, const Characteristic& chi, const std::vector<Prime>& primes) {
    Integer den = 1;
    for (const Prime& p : primes)
        if (chi(p).is_finite() && rng.chance(0.25))
            den *= prime_power(p, static_cast<std::uint64_t>(rng.uniform(1, 2)));
    return den;
}

bool divides(const Prime& p, const Integer& n) { return mpz_divisible_p(n.get_mpz_t(), p.value().get_mpz_t()) != 0; }

Integer scaled_residue(Rng& rng, const Prime& p, ExtNat e, const Integer& q) {
    return mod(Integer(prime_power(p, e.value()) * rng.below(q)), q);
}

// T(η)-style torsion element: coordinate p^{η(p)}·u at a random subset of primes.
GroupElement torsion_member(const Qd1Group& G, const Characteristic& eta, Rng& rng, const TrialConfig& cfg) {
    const Characteristic& chi = G.cochar();
    if (!G.is_reduced()) {
        const Integer& m = G.modulus();
        Integer b = 0;
        for (const auto& [p, k] : chi.exceptions()) {
            ExtNat e = eta(p);
            if (e.is_infinite() || e >= k) continue;
            Integer q = prime_power(p, k.value());
            Integer lift = m / q;
            b += scaled_residue(rng, p, e, q) * lift * mod_inverse(mod(lift, q), q);
        }
        return elem_split(G, 0, b);
    }
    std::map<Prime, Integer> ov;
    for (const Prime& p : candidate_primes(cfg, chi, eta)) {
        ExtNat e = eta(p);
        if (!is_finite_nonzero_at(chi, p) || e.is_infinite() || !rng.chance(2.0 / 3.0)) continue;
        ov.emplace(p, scaled_residue(rng, p, e, G.local_modulus(p)));
    }
    return elem(G, 0, std::move(ov));
}

GroupElement full_member(const Qd1Group& G, const Characteristic& eta, Rng& rng, const TrialConfig& cfg) {
    if (!has_infinite_order_members(G, eta) || rng.chance(0.25)) return torsion_member(G, eta, rng, cfg);
    const Characteristic& chi = G.cochar();
    std::vector<Prime> cand = candidate_primes(cfg, chi, eta);
    if (!G.is_reduced()) {
        Rational q(random_numerator(rng, cand), random_denominator(rng, chi, cand));
        q.canonicalize();
        return add(elem_split(G, q, 0), torsion_member(G, eta, rng, cfg));
    }
    Integer num = random_numerator(rng, cand);
    for (const Prime& p : cand)
        if (chi(p).is_infinite()) num *= prime_power(p, eta(p).value());
    Integer den = random_denominator(rng, chi, cand);
    std::map<Prime, Integer> ov;
    for (const Prime& p : cand) {
        if (!is_finite_nonzero_at(chi, p)) continue;
        ExtNat e = eta(p);
        if (e.is_infinite()) ov.emplace(p, 0);
        else if (!e.is_zero() || divides(p, den) || rng.chance(1.0 / 3.0))
            ov.emplace(p, scaled_residue(rng, p, e, G.local_modulus(p)));
    }
    Rational r(num, den);
    r.canonicalize();
    return elem(G, r, std::move(ov));
}

} // namespace

Characteristic random_cochar(Rng& rng, const TrialConfig& cfg, CocharShape shape, std::optional<int> default_kind) {
    switch (shape) {
    case CocharShape::integers: return Characteristic::all_infinite();
    case CocharShape::non_reduced: {
        Characteristic::ExceptionMap ex;
        for (unsigned long p = 2; p <= cfg.max_prime; ++p)
            if (is_prime(Integer(p)) && rng.chance(0.5))
                ex.emplace(Prime(p), ExtNat(static_cast<std::uint64_t>(rng.uniform(0, cfg.max_exp))));
        return Characteristic(ExtNat(0), std::move(ex));
    }
    default: break;
    }
    for (;;) {
        Characteristic chi = draw_cochar(rng, cfg, default_kind);
        if (shape == CocharShape::reduced && is_zero_type(chi)) continue;
        if (shape == CocharShape::not_integers && chi == Characteristic::all_infinite()) continue;
        return chi;
    }
}

GroupElement random_non_torsion(const Qd1Group& G, Rng& rng, const TrialConfig& cfg) {
    const Characteristic& chi = G.cochar();
    std::vector<Prime> cand = candidate_primes(cfg, chi, chi);
    Rational r(random_numerator(rng, cand), random_denominator(rng, chi, cand));
    r.canonicalize();
    if (!G.is_reduced()) return elem_split(G, r, rng.below(G.modulus()));
    std::map<Prime, Integer> ov;
    for (const Prime& p : cand) {
        if (!is_finite_nonzero_at(chi, p)) continue;
        if (divides(p, Integer(r.get_den())) || rng.chance(1.0 / 3.0)) ov.emplace(p, rng.below(G.local_modulus(p)));
    }
    return elem(G, r, std::move(ov));
}

GroupElement random_torsion(const Qd1Group& G, Rng& rng, const TrialConfig& cfg) {
    if (!G.is_reduced()) return elem_split(G, 0, rng.below(G.modulus()));
    std::map<Prime, Integer> ov;
    for (const Prime& p : candidate_primes(cfg, G.cochar(), G.cochar()))
        if (is_finite_nonzero_at(G.cochar(), p) && rng.chance(0.5)) ov.emplace(p, rng.below(G.local_modulus(p)));
    return elem(G, 0, std::move(ov));
}

GroupElement random_element(const Qd1Group& G, Rng& rng, const TrialConfig& cfg) {
    return rng.chance(0.25) ? random_torsion(G, rng, cfg) : random_non_torsion(G, rng, cfg);
}

GroupElement sample_member(const SubgroupDescriptor& d, Rng& rng, const TrialConfig& cfg) {
    const Qd1Group& G = d.group();
    std::optional<GroupElement> x;
    switch (d.kind()) {
    case SubgroupDescriptor::Kind::full_invariant: x = full_member(G, d.eta(), rng, cfg); break;
    case SubgroupDescriptor::Kind::torsion_invariant: x = torsion_member(G, d.eta(), rng, cfg); break;
    case SubgroupDescriptor::Kind::sum_with_cyclic:
        x = add(torsion_member(G, d.eta(), rng, cfg), zmul(rng.uniform(-6, 6), *d.generator()));
        break;
    }
    if (!contains(d, *x)) throw std::logic_error("sample_member produced " + x->to_string() + " outside " + d.to_string());
    return *x;
}

// ---- checks ------------------------------------------------------------------

CheckReport ideal_two_way_check(const Multiplication& mult, const GroupElement& g, const SubgroupDescriptor& d,
                                const TrialConfig& cfg, Rng& rng) {
    CheckReport rep{"ideal-two-way"};
    const Qd1Group& G = mult.group();
    for (std::size_t i = 0; i < cfg.samples_per_instance; ++i, ++rep.trials) {
        GroupElement x = random_element(G, rng, cfg);
        Integer k = rng.uniform(-6, 6);
        GroupElement b = add(multiply(mult, g, x), zmul(k, g));
        if (!contains(d, b)) rep.fail(rep.trials, "superset: g*x+k*g=" + b.to_string() + " not in " + d.to_string() + " in " + G.describe());
    }
    for (std::size_t i = 0; i < cfg.samples_per_instance; ++i, ++rep.trials) {
        GroupElement b = sample_member(d, rng, cfg);
        try {
            auto w = ideal_member_witness(mult, g, b);
            if (!w) rep.fail(rep.trials, "subset: " + b.to_string() + " has no witness in (g)x");
            else if (!(evaluate(mult, g, *w) == b))
                rep.fail(rep.trials, "subset: witness " + w->to_string() + " does not recompute to " + b.to_string());
        } catch (const std::exception& e) {
            rep.fail(rep.trials, "subset: " + b.to_string() + " raised " + e.what());
        }
    }
    return rep;
}

CheckReport ring_axiom_check(const Multiplication& mult, const TrialConfig& cfg, Rng& rng) {
    CheckReport rep{"ring-axioms"};
    const Qd1Group& G = mult.group();
    const GroupElement e = basis(G);
    if (!(multiply(mult, e, e) == element_of_mult(mult)))
        rep.fail(0, "e*e=" + multiply(mult, e, e).to_string() + " differs from m=" + element_of_mult(mult).to_string());
    for (std::size_t i = 0; i < cfg.samples_per_instance; ++i) {
        ++rep.trials;
        GroupElement a = random_element(G, rng, cfg), b = random_element(G, rng, cfg), c = random_element(G, rng, cfg);
        GroupElement ab = multiply(mult, a, b);
        std::string triple = " a=" + a.to_string() + " b=" + b.to_string() + " c=" + c.to_string();
        if (!(ab == multiply(mult, b, a))) rep.fail(i, "commutativity" + triple);
        if (!(multiply(mult, ab, c) == multiply(mult, a, multiply(mult, b, c)))) rep.fail(i, "associativity" + triple);
        if (!(multiply(mult, add(a, b), c) == add(multiply(mult, a, c), multiply(mult, b, c))))
            rep.fail(i, "distributivity" + triple);
        GroupElement m2 = random_element(G, rng, cfg);
        Multiplication sum = make_mult(G, add(element_of_mult(mult), m2));
        if (!(multiply(sum, a, b) == add(ab, multiply(make_mult(G, m2), a, b))))
            rep.fail(i, "additivity in e*e, m2=" + m2.to_string() + triple);
    }
    return rep;
}

} // namespace qd1::oracle

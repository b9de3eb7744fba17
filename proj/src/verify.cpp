#include "qd1/verify.hpp"

#include <algorithm>
#include <exception>

#include "json.hpp"
#include "qd1/errors.hpp"
#include "qd1/mutation.hpp"

namespace qd1::verify {

using oracle::CheckReport;
using oracle::CocharShape;
using oracle::Rng;
using oracle::TrialConfig;

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.passed(); });
}

std::string SuiteReport::text() const {
    std::string out;
    for (const CheckReport& c : checks) out += c.line() + "\n";
    out += std::string(passed() ? "PASS" : "FAIL") + " suite=" + suite + "\n";
    return out;
}

std::string SuiteReport::json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["passed"] = passed();
    j["checks"] = nlohmann::json::array();
    for (const CheckReport& c : checks) {
        nlohmann::json cj{{"check", c.check}, {"passed", c.passed()}, {"trials", c.trials}, {"failures", c.failures}};
        cj["fail_at"] = c.fail_at ? nlohmann::json(*c.fail_at) : nlohmann::json(nullptr);
        cj["detail"] = c.detail;
        j["checks"].push_back(cj);
    }
    return j.dump();
}

namespace {

enum Stream : std::uint64_t {
    s_ring = 1, s_torsion_cyclic, s_nontorsion, s_torsion, s_products, s_absolute, s_ai, s_mult, s_heights
};

void absorb(CheckReport& into, const CheckReport& part, std::size_t instance) {
    into.trials += part.trials;
    if (part.passed()) return;
    if (into.failures == 0) {
        into.fail_at = instance;
        into.detail = "instance " + std::to_string(instance) + ": " + part.detail;
    }
    into.failures += part.failures;
}

// One trial of `rep`; an exception counts as a failure.
template <class F>
void trial(CheckReport& rep, std::size_t index, F&& body) {
    ++rep.trials;
    try {
        if (std::string why = body(); !why.empty()) rep.fail(index, why);
    } catch (const std::exception& e) {
        rep.fail(index, std::string("exception: ") + e.what());
    }
}

Qd1Group random_group(Rng& rng, const TrialConfig& cfg, CocharShape shape, std::optional<int> kind = std::nullopt) {
    return build_group(oracle::random_cochar(rng, cfg, shape, kind));
}

SubgroupDescriptor cyclic(const Qd1Group& G, const GroupElement& g) {
    return plus_cyclic(torsion_inv(G, Characteristic::all_infinite()), g);
}

std::string in_group(const Qd1Group& G) { return " in " + G.describe(); }

} // namespace

SuiteReport ring_laws(const TrialConfig& cfg) {
    CheckReport axioms{"ring-axioms"}, unital{"unital"}, errors{"ring-axioms-errors"};
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng(cfg.seed, s_ring, i);
        trial(errors, i, [&]() -> std::string {
            Qd1Group G = random_group(rng, cfg, CocharShape::any, static_cast<int>(i % 3));
            GroupElement m = oracle::random_element(G, rng, cfg);
            absorb(axioms, oracle::ring_axiom_check(make_mult(G, m), cfg, rng), i);
            Multiplication one = make_mult(G, basis(G));
            for (std::size_t j = 0; j < std::min<std::size_t>(cfg.samples_per_instance, 50); ++j) {
                GroupElement g = oracle::random_element(G, rng, cfg);
                if (!(multiply(one, basis(G), g) == g)) unital.fail(i, "e*g != g for g=" + g.to_string() + in_group(G));
                ++unital.trials;
            }
            return {};
        });
    }
    return {"ring-axioms", {axioms, unital, errors}};
}

SuiteReport torsion_cyclic(const TrialConfig& cfg) {
    CheckReport witness{"torsion-witness"}, multiples{"torsion-multiples"}, errors{"torsion-errors"};
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng(cfg.seed, s_torsion_cyclic, i);
        trial(errors, i, [&]() -> std::string {
            // Redraw until g ≠ 0; groups such as Z have no torsion at all.
            Qd1Group G = random_group(rng, cfg, CocharShape::any);
            GroupElement g = oracle::random_torsion(G, rng, cfg);
            for (int attempt = 0; attempt < 50 && g == zero(G); ++attempt) {
                G = random_group(rng, cfg, CocharShape::any);
                g = oracle::random_torsion(G, rng, cfg);
            }
            SubgroupDescriptor t = torsion_inv(G, char_of(g));
            for (std::size_t j = 0; j < cfg.samples_per_instance; ++j) {
                GroupElement u = oracle::sample_member(t, rng, cfg);
                trial(witness, i, [&]() -> std::string {
                    Integer n = torsion_witness(g, u);
                    if (zmul(n, g) == u) return {};
                    return "n=" + n.get_str() + " g=" + g.to_string() + " u=" + u.to_string() + in_group(G);
                });
                Integer n = rng.uniform(-1000, 1000);
                trial(multiples, i, [&]() -> std::string {
                    if (contains(t, zmul(n, g))) return {};
                    return n.get_str() + "*g outside T(char g), g=" + g.to_string() + in_group(G);
                });
            }
            return {};
        });
    }
    return {"torsion-cyclic", {witness, multiples, errors}};
}

SuiteReport principal_nontorsion(const TrialConfig& cfg) {
    CheckReport shape{"full-invariant-form"}, two_way{"ideal-two-way"}, solver{"solver-agreement"},
        errors{"principal-nontorsion-errors"};
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng(cfg.seed, s_nontorsion, i);
        trial(errors, i, [&]() -> std::string {
            Qd1Group G = random_group(rng, cfg, CocharShape::reduced);
            Multiplication mult = make_mult(G, oracle::random_non_torsion(G, rng, cfg));
            GroupElement g = oracle::random_non_torsion(G, rng, cfg);
            SubgroupDescriptor d = principal_ideal(mult, g);
            SubgroupDescriptor expected = full_inv(G, char_of(g));
            trial(shape, i, [&]() -> std::string {
                return equals(d, expected) ? "" : d.to_string() + " != " + expected.to_string();
            });
            absorb(two_way, oracle::ideal_two_way_check(mult, g, d, cfg, rng), i);
            for (std::size_t j = 0; j < cfg.samples_per_instance; ++j) {
                GroupElement b = oracle::random_element(G, rng, cfg);
                trial(solver, i, [&]() -> std::string {
                    auto w = solve_in_principal(mult, g, b);
                    std::string ctx = " g=" + g.to_string() + " b=" + b.to_string() + in_group(G);
                    if (w && !(evaluate(mult, g, *w) == b)) return "witness " + w->to_string() + " fails" + ctx;
                    if (w.has_value() != contains(expected, b)) return "solver disagrees with membership" + ctx;
                    return {};
                });
            }
            return {};
        });
    }
    return {"principal-nontorsion", {shape, two_way, solver, errors}};
}

SuiteReport principal_torsion(const TrialConfig& cfg) {
    CheckReport every_ring{"torsion-generator-ideal"}, two_way{"ideal-two-way"}, reduced{"reduced-equal"},
        nonreduced{"nonreduced-separated"}, errors{"principal-torsion-errors"};
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng(cfg.seed, s_torsion, i);
        trial(errors, i, [&]() -> std::string {
            Qd1Group G = random_group(rng, cfg, CocharShape::any);
            GroupElement g = oracle::random_torsion(G, rng, cfg);
            SubgroupDescriptor t = torsion_inv(G, char_of(g));
            for (int k = 0; k < 5; ++k) {
                Multiplication mult = make_mult(G, oracle::random_element(G, rng, cfg));
                trial(every_ring, i, [&]() -> std::string {
                    SubgroupDescriptor d = principal_ideal(mult, g);
                    return equals(d, t) ? "" : d.to_string() + " != " + t.to_string();
                });
                if (k == 0) absorb(two_way, oracle::ideal_two_way_check(mult, g, t, cfg, rng), i);
            }

            Qd1Group R = random_group(rng, cfg, CocharShape::reduced);
            GroupElement gr = oracle::random_torsion(R, rng, cfg);
            trial(reduced, i, [&]() -> std::string {
                SubgroupDescriptor tr = torsion_inv(R, char_of(gr)), fr = full_inv(R, char_of(gr));
                return equals(tr, fr) ? "" : tr.to_string() + " != " + fr.to_string() + in_group(R);
            });

            Qd1Group N = random_group(rng, cfg, CocharShape::non_reduced);
            GroupElement gn = oracle::random_torsion(N, rng, cfg);
            trial(nonreduced, i, [&]() -> std::string {
                SubgroupDescriptor tn = torsion_inv(N, char_of(gn)), fn = full_inv(N, char_of(gn));
                GroupElement sep = elem_split(N, 1, 0);
                if (equals(tn, fn)) return tn.to_string() + " == " + fn.to_string() + in_group(N);
                if (!contains(fn, sep) || contains(tn, sep)) return "(1,0) does not separate" + in_group(N);
                return {};
            });
            return {};
        });
    }
    return {"principal-torsion", {every_ring, two_way, reduced, nonreduced, errors}};
}

SuiteReport principal_torsion_products(const TrialConfig& cfg) {
    CheckReport two_way{"ideal-two-way"}, agreement{"witness-agreement"}, errors{"principal-products-errors"};
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng(cfg.seed, s_products, i);
        trial(errors, i, [&]() -> std::string {
            Qd1Group G = random_group(rng, cfg, CocharShape::any);
            Multiplication mult = make_mult(G, oracle::random_torsion(G, rng, cfg));
            GroupElement g = oracle::random_non_torsion(G, rng, cfg);
            SubgroupDescriptor d = principal_ideal(mult, g);
            absorb(two_way, oracle::ideal_two_way_check(mult, g, d, cfg, rng), i);
            for (std::size_t j = 0; j < cfg.samples_per_instance; ++j) {
                GroupElement b = add(oracle::random_torsion(G, rng, cfg), zmul(rng.uniform(-6, 6), g));
                trial(agreement, i, [&]() -> std::string {
                    auto w = ideal_member_witness(mult, g, b);
                    std::string ctx = " g=" + g.to_string() + " b=" + b.to_string() + in_group(G);
                    if (w && !(evaluate(mult, g, *w) == b)) return "witness " + w->to_string() + " fails" + ctx;
                    if (w.has_value() != contains(d, b)) return "witness disagrees with membership" + ctx;
                    return {};
                });
            }
            return {};
        });
    }
    return {"principal-torsion-products", {two_way, agreement, errors}};
}

SuiteReport absolute_principal(const TrialConfig& cfg) {
    CheckReport matches{"absolute-equals-principal"}, absolute{"absolute-under-sampled-rings"},
        errors{"absolute-errors"};
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng(cfg.seed, s_absolute, i);
        trial(errors, i, [&]() -> std::string {
            Qd1Group G = random_group(rng, cfg, CocharShape::any);
            GroupElement g = oracle::random_element(G, rng, cfg);
            SubgroupDescriptor A = principal_absolute_ideal(G, g);
            trial(matches, i, [&]() -> std::string {
                std::string ctx = " g=" + g.to_string() + in_group(G);
                if (is_torsion(g)) {
                    if (!equals(A, torsion_inv(G, char_of(g)))) return "absolute != T(char g)" + ctx;
                    Multiplication any = make_mult(G, oracle::random_element(G, rng, cfg));
                    if (!equals(A, principal_ideal(any, g))) return "absolute != principal" + ctx;
                    return {};
                }
                for (const GroupElement& m : {basis(G), oracle::random_non_torsion(G, rng, cfg)})
                    if (!equals(A, principal_ideal(make_mult(G, m), g)))
                        return "absolute != principal under m=" + m.to_string() + ctx;
                return {};
            });
            for (int k = 0; k < 3; ++k) {
                Multiplication mult = make_mult(G, oracle::random_element(G, rng, cfg));
                GroupElement a = oracle::sample_member(A, rng, cfg), x = oracle::random_element(G, rng, cfg);
                trial(absolute, i, [&]() -> std::string {
                    GroupElement ax = multiply(mult, a, x);
                    if (contains(A, ax) && contains(A, g)) return {};
                    return "a*x=" + ax.to_string() + " left " + A.to_string() + in_group(G);
                });
            }
            return {};
        });
    }
    return {"absolute-principal", {matches, absolute, errors}};
}

SuiteReport ai_classification(const TrialConfig& cfg) {
    CheckReport integers{"integers-ai"}, verdict{"ai-verdict"}, witness{"non-absolute-witness"},
        witness_ideal{"witness-ideal-two-way"}, ai_ideals{"ai-principal-absolute"}, errors{"ai-errors"};
    auto compare_ideals = [&](const Multiplication& mult, Rng& rng, std::size_t i) {
        const Qd1Group& G = mult.group();
        for (std::size_t j = 0; j < cfg.samples_per_instance; ++j) {
            GroupElement g = oracle::random_element(G, rng, cfg);
            trial(ai_ideals, i, [&]() -> std::string {
                if (equals(principal_ideal(mult, g), principal_absolute_ideal(G, g))) return {};
                return "principal != absolute for g=" + g.to_string() + in_group(G);
            });
        }
    };
    const std::size_t n_integers = std::max<std::size_t>(1, cfg.trials / 5);
    for (std::size_t i = 0; i < n_integers; ++i) {
        Rng rng(cfg.seed, s_ai, i);
        trial(errors, i, [&]() -> std::string {
            Qd1Group Z = random_group(rng, cfg, CocharShape::integers);
            Multiplication mult = make_mult(Z, oracle::random_element(Z, rng, cfg));
            trial(integers, i, [&]() -> std::string {
                if (!is_ai_ring(mult) || !is_fi_ring(mult)) return "ring on Z not AI";
                try {
                    non_absolute_ideal_witness(mult);
                    return "witness produced for an AI ring";
                } catch (const RingIsAiError&) {
                    return {};
                }
            });
            compare_ideals(mult, rng, i);
            return {};
        });
    }
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng(cfg.seed, s_ai, n_integers + i);
        trial(errors, i, [&]() -> std::string {
            Qd1Group G = random_group(rng, cfg, CocharShape::not_integers);
            GroupElement m = oracle::random_element(G, rng, cfg);
            Multiplication mult = make_mult(G, m);
            bool ai = is_ai_ring(mult);
            trial(verdict, i, [&]() -> std::string {
                if (ai == is_torsion(m) || is_fi_ring(mult) != ai)
                    return "verdict " + std::to_string(ai) + " for m=" + m.to_string() + in_group(G);
                return {};
            });
            if (ai) {
                compare_ideals(mult, rng, i);
                return {};
            }
            NonAbsoluteWitness w = non_absolute_ideal_witness(mult);
            SubgroupDescriptor z = cyclic(G, w.e0);
            trial(witness, i, [&]() -> std::string {
                std::string ctx = " " + w.to_string() + in_group(G);
                if (!equals(principal_ideal(mult, w.e0), z)) return "(e0) != Z*e0" + ctx;
                if (!contains(full_inv(G, char_of(w.e0)), w.violator)) return "violator outside G(char e0)" + ctx;
                if (contains(z, w.violator)) return "violator inside Z*e0" + ctx;
                if (!(zmul(w.p.value(), w.violator) == w.e0)) return "p*violator != e0" + ctx;
                if (equals(principal_ideal(mult, w.e0), principal_absolute_ideal(G, w.e0)))
                    return "(e0) is absolute" + ctx;
                return {};
            });
            absorb(witness_ideal, oracle::ideal_two_way_check(mult, w.e0, z, cfg, rng), i);
            return {};
        });
    }
    return {"ai-classification", {integers, verdict, witness, witness_ideal, ai_ideals, errors}};
}

SuiteReport mult_iso(const TrialConfig& cfg) {
    CheckReport round_trip{"mult-round-trip"}, additive{"mult-additive"}, nai{"nai-subgroup"}, errors{"mult-errors"};
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng(cfg.seed, s_mult, i);
        trial(errors, i, [&]() -> std::string {
            Qd1Group G = random_group(rng, cfg, CocharShape::any);
            auto rand = [&] { return oracle::random_element(G, rng, cfg); };
            GroupElement m = rand();
            trial(round_trip, i, [&]() -> std::string {
                return element_of_mult(make_mult(G, m)) == m ? "" : "round trip lost m=" + m.to_string();
            });
            GroupElement m1 = rand(), m2 = rand(), a = rand(), b = rand();
            trial(additive, i, [&]() -> std::string {
                GroupElement lhs = multiply(make_mult(G, add(m1, m2)), a, b);
                GroupElement rhs = add(multiply(make_mult(G, m1), a, b), multiply(make_mult(G, m2), a, b));
                return lhs == rhs ? "" : "m1=" + m1.to_string() + " m2=" + m2.to_string() + in_group(G);
            });
            GroupElement t1 = oracle::random_torsion(G, rng, cfg), t2 = oracle::random_torsion(G, rng, cfg);
            GroupElement f = oracle::random_non_torsion(G, rng, cfg);
            trial(nai, i, [&]() -> std::string {
                if (is_nai(make_mult(G, m)) != is_torsion(m)) return "is_nai differs from torsion for m=" + m.to_string();
                if (!is_nai(make_mult(G, add(t1, t2))) || !is_nai(make_mult(G, neg(t1))))
                    return "NAI not closed, t1=" + t1.to_string() + " t2=" + t2.to_string();
                if (is_nai(make_mult(G, add(f, t1)))) return "non-torsion coset inside NAI";
                return {};
            });
            return {};
        });
    }
    return {"mult-iso", {round_trip, additive, nai, errors}};
}

SuiteReport heights(const TrialConfig& cfg, std::uint64_t bound) {
    CheckReport agree{"height-oracle"};
    std::vector<Prime> small;
    for (const Prime& p : oracle::working_primes(cfg))
        if (p.value() <= cfg.max_prime) small.push_back(p);
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng(cfg.seed, s_heights, i);
        trial(agree, i, [&]() -> std::string {
            Qd1Group G = random_group(rng, cfg, CocharShape::any);
            GroupElement g = oracle::random_element(G, rng, cfg);
            const Prime& p = small[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(small.size()) - 1))];
            ExtNat h = height(g, p);
            oracle::HeightBound o = oracle::height_oracle(g, p, bound);
            if (oracle::height_agrees(h, o, bound)) return {};
            return "h_" + p.to_string() + "(" + g.to_string() + ")=" + h.to_string() + " oracle=" + std::to_string(o.k) +
                   (o.saturated ? "+" : "") + in_group(G);
        });
    }
    return {"heights", {agree}};
}

SuiteReport mutations(const TrialConfig& cfg) {
    TrialConfig small = cfg;
    small.trials = std::min<std::size_t>(cfg.trials, 30);
    small.samples_per_instance = std::min<std::size_t>(cfg.samples_per_instance, 20);
    const std::pair<mutation::Kind, const char*> kinds[] = {
        {mutation::Kind::lower_eta, "lowered-eta"},
        {mutation::Kind::drop_m_factor, "dropped-m-factor"},
        {mutation::Kind::skip_witness_verification, "skipped-witness-verification"},
    };
    SuiteReport out{"mutations", {}};
    for (const auto& [kind, name] : kinds) {
        CheckReport rep{std::string("mutation-") + name};
        mutation::Scoped on(kind);
        std::string caught;
        for (SuiteReport (*suite)(const TrialConfig&) : {&principal_nontorsion, &ring_laws, &principal_torsion_products}) {
            ++rep.trials;
            SuiteReport r = suite(small);
            if (!r.passed()) caught += (caught.empty() ? "" : ",") + r.suite;
        }
        if (caught.empty()) rep.fail(0, "no suite noticed the mutation");
        else rep.detail = "caught-by=" + caught;
        out.checks.push_back(rep);
    }
    return out;
}

std::vector<std::string> suite_names() {
    return {"lemma2.2", "lemma2.3", "thm2.4", "thm3.3", "thm3.4", "ring-axioms", "mult-iso", "heights", "mutations"};
}

SuiteReport run_named(const std::string& name, const TrialConfig& cfg) {
    cfg.validate();
    if (name == "lemma2.2") return torsion_cyclic(cfg);
    if (name == "lemma2.3") return principal_nontorsion(cfg);
    if (name == "thm2.4") {
        SuiteReport out{"thm2.4", {}};
        for (const SuiteReport& r : {principal_torsion(cfg), principal_nontorsion(cfg), principal_torsion_products(cfg)})
            for (CheckReport c : r.checks) {
                c.check = r.suite + "/" + c.check;
                out.checks.push_back(std::move(c));
            }
        return out;
    }
    if (name == "thm3.3") return absolute_principal(cfg);
    if (name == "thm3.4") return ai_classification(cfg);
    if (name == "ring-axioms") return ring_laws(cfg);
    if (name == "mult-iso") return mult_iso(cfg);
    if (name == "heights") return heights(cfg);
    if (name == "mutations") return mutations(cfg);
    throw DomainError("unknown suite '" + name + "'");
}

} // namespace qd1::verify

#include "qd1/cli.hpp"

#include <algorithm>
#include <ostream>

#include "CLI11.hpp"
#include "qd1/errors.hpp"
#include "qd1/ring.hpp"
#include "qd1/verify.hpp"

namespace qd1::cli {

namespace {

struct Flags {
    std::string cochar, elem, m, g, b, suite, format = "text";
    std::optional<std::uint64_t> seed;
    oracle::TrialConfig cfg;
};

// A parse error tagged with the flag it came from.
struct FlagError : Error {
    FlagError(const std::string& flag, const std::string& what) : Error("--" + flag + ": " + what) {}
};

Characteristic parse_cochar(const Flags& f) {
    try {
        return Characteristic::parse(f.cochar);
    } catch (const ParseError& e) {
        throw FlagError("cochar", e.what());
    }
}

GroupElement parse_element(const std::string& flag, const std::string& text, const Qd1Group& G) {
    try {
        return GroupElement::parse(text, G);
    } catch (const Error& e) {
        throw FlagError(flag, e.what());
    }
}

std::string support_string(const std::set<Prime>& s) {
    std::string out = "{";
    for (const Prime& p : s) out += (out.size() > 1 ? "," : "") + p.to_string();
    return out + "}";
}

int elem_info(const Flags& f, std::ostream& out) {
    Qd1Group G = build_group(parse_cochar(f));
    GroupElement g = parse_element("elem", f.elem, G);
    auto o = order(g);
    out << "element=" << g.to_string() << "\n"
        << "torsion=" << (is_torsion(g) ? "true" : "false") << "\n"
        << "order=" << (o ? o->get_str() : "inf") << "\n"
        << "char=" << char_of(g).to_string() << "\n"
        << "c=" << c_of(g).get_str() << "\n";
    if (G.is_reduced()) {
        Decomposition d = decompose(g);
        out << "decomposition=c=" << d.c.get_str() << ";r=" << to_string(d.r) << ";t=" << d.t.to_string()
            << ";support=" << support_string(d.support) << "\n";
    } else {
        out << "decomposition=q=" << to_string(g.rational_part()) << ";b=" << g.torsion_residue().get_str() << "\n";
    }
    return 0;
}

int ring_command(const std::string& cmd, const Flags& f, std::ostream& out) {
    Qd1Group G = build_group(parse_cochar(f));
    Multiplication mult = make_mult(G, parse_element("m", f.m, G));
    if (cmd == "classify") {
        bool ai = is_ai_ring(mult), fi = is_fi_ring(mult);
        out << "AI=" << (ai ? "true" : "false") << " FI=" << (fi ? "true" : "false") << "\n";
        return ai && fi ? 0 : 1;
    }
    if (cmd == "witness" && f.g.empty()) {
        try {
            out << non_absolute_ideal_witness(mult).to_string() << "\n";
            return 0;
        } catch (const RingIsAiError&) {
            out << "ring-is-AI\n";
            return 1;
        }
    }
    GroupElement g = parse_element("g", f.g, G);
    if (cmd == "ideal") {
        out << principal_ideal(mult, g).to_string() << "\n";
        return 0;
    }
    GroupElement b = parse_element("b", f.b, G);
    if (cmd == "mul") {
        out << multiply(mult, g, b).to_string() << "\n";
        return 0;
    }
    auto w = ideal_member_witness(mult, g, b);
    if (!w) {
        out << "not-member\n";
        return 1;
    }
    out << w->to_string() << "\n";
    return 0;
}

int verify_command(const Flags& f, std::ostream& out) {
    oracle::TrialConfig cfg = f.cfg;
    cfg.seed = *f.seed;
    verify::SuiteReport r = verify::run_named(f.suite, cfg);
    out << (f.format == "json" ? r.json() + "\n" : r.text());
    return r.passed() ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact arithmetic for rank-1 quotient divisible groups and their rings", "qd1"};
    app.require_subcommand(1);
    Flags f;
    std::string chosen;

    auto cochar = [&](CLI::App* c) { c->add_option("--cochar", f.cochar, "cocharacteristic, default=<v>[;p:v,...]")->required(); };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
        CLI::App* c = parent->add_subcommand(name, help);
        c->callback([&chosen, parent, name] { chosen = parent->get_name() + " " + name; });
        return c;
    };

    CLI::App* group = app.add_subcommand("group", "group queries")->require_subcommand(1);
    cochar(leaf(group, "describe", "print the group"));

    CLI::App* elem = app.add_subcommand("elem", "element queries")->require_subcommand(1);
    CLI::App* info = leaf(elem, "info", "invariants of an element");
    cochar(info);
    info->add_option("--elem", f.elem, "element spec")->required();

    CLI::App* ring = app.add_subcommand("ring", "ring queries")->require_subcommand(1);
    for (const char* name : {"mul", "ideal", "classify", "witness"}) {
        CLI::App* c = leaf(ring, name, std::string("ring ") + name);
        cochar(c);
        c->add_option("--m", f.m, "e x e as an element spec")->required();
        std::string n = name;
        if (n == "mul" || n == "ideal") c->add_option("--g", f.g)->required();
        if (n == "mul") c->add_option("--b", f.b)->required();
        if (n == "witness") {
            CLI::Option* g = c->add_option("--g", f.g, "generator; with --b, certify b in (g)");
            c->add_option("--b", f.b)->needs(g);
            g->needs("--b");
        }
    }

    CLI::App* ai = app.add_subcommand("ai", "absolute ideals")->require_subcommand(1);
    CLI::App* ai_ideal = leaf(ai, "ideal", "principal absolute ideal of g");
    cochar(ai_ideal);
    ai_ideal->add_option("--g", f.g)->required();

    CLI::App* ver = app.add_subcommand("verify", "run a randomized verification suite");
    ver->callback([&chosen] { chosen = "verify"; });
    ver->add_option("--suite", f.suite)->required()->check(CLI::IsMember(verify::suite_names()));
    ver->add_option("--seed", f.seed, "required for reproducibility")->required();
    ver->add_option("--cochar", f.cochar, "ignored; suites draw their own groups");
    ver->add_option("--trials", f.cfg.trials)->check(CLI::PositiveNumber);
    ver->add_option("--samples", f.cfg.samples_per_instance)->check(CLI::PositiveNumber);
    ver->add_option("--max-prime", f.cfg.max_prime)->check(CLI::Range(5u, 97u));
    ver->add_option("--max-exp", f.cfg.max_exp)->check(CLI::Range(1u, 12u));
    ver->add_option("--format", f.format)->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (chosen == "group describe") {
            out << build_group(parse_cochar(f)).describe() << "\n";
            return 0;
        }
        if (chosen == "elem info") return elem_info(f, out);
        if (chosen.rfind("ring ", 0) == 0) return ring_command(chosen.substr(5), f, out);
        if (chosen == "ai ideal") {
            Qd1Group G = build_group(parse_cochar(f));
            out << principal_absolute_ideal(G, parse_element("g", f.g, G)).to_string() << "\n";
            return 0;
        }
        if (chosen == "verify") return verify_command(f, out);
        err << "error: no command\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace qd1::cli

#include "qd1/group.hpp"

#include <cctype>

#include "qd1/errors.hpp"

namespace qd1 {

struct Qd1Group::State {
    Characteristic cochar;
    GroupKind kind;
    Integer modulus; // non-reduced only
};

Qd1Group::Qd1Group(Characteristic cochar) {
    auto st = std::make_shared<State>();
    st->kind = is_zero_type(cochar) ? GroupKind::non_reduced : GroupKind::reduced;
    st->modulus = 1;
    if (st->kind == GroupKind::non_reduced)
        for (const auto& [p, v] : cochar.exceptions()) st->modulus *= prime_power(p, v.value());
    st->cochar = std::move(cochar);
    state_ = std::move(st);
}

const Characteristic& Qd1Group::cochar() const noexcept { return state_->cochar; }
GroupKind Qd1Group::kind() const noexcept { return state_->kind; }

const Integer& Qd1Group::modulus() const {
    if (is_reduced()) throw UnsupportedCaseError("modulus() of a reduced group");
    return state_->modulus;
}

Integer Qd1Group::local_modulus(const Prime& p) const {
    ExtNat k = cochar()(p);
    if (k.is_infinite() || k.is_zero())
        throw DomainError("prime " + p.to_string() + " has exponent " + k.to_string());
    return prime_power(p, k.value());
}

std::string Qd1Group::describe() const {
    if (!is_reduced()) {
        std::string m = modulus().get_str();
        return "nonreduced m=" + m + " (Q (+) Z_" + m + ")";
    }
    return "reduced cochar=" + cochar().to_string() + (is_integers(*this) ? " (Z)" : "");
}

bool operator==(const Qd1Group& a, const Qd1Group& b) {
    return a.state_ == b.state_ || a.state_->cochar == b.state_->cochar;
}

Qd1Group build_group(const Characteristic& chi) { return Qd1Group(chi); }

bool is_integers(const Qd1Group& g) { return g.cochar() == Characteristic::all_infinite(); }

namespace {

void require_same(const GroupElement& a, const GroupElement& b) {
    if (!(a.group() == b.group())) throw GroupMismatchError();
}

bool divides(const Prime& p, const Integer& n) { return mpz_divisible_p(n.get_mpz_t(), p.value().get_mpz_t()) != 0; }

[[noreturn]] void bad_denominator(const Prime& p, const Characteristic& chi) {
    throw InvalidDenominatorError(p.to_string(), "denominator prime " + p.to_string() + " with exponent " +
                                                     chi(p).to_string() + " requires an override");
}

void check_denominator(const Characteristic& chi, const Integer& den, const std::map<Prime, Integer>& overrides) {
    if (den == 1) return;
    for (const auto& [p, v] : chi.exceptions()) {
        if (v.is_zero() || !divides(p, den)) continue;
        if (v.is_infinite()) {
            throw InvalidDenominatorError(p.to_string(), "denominator prime " + p.to_string() +
                                                             " has infinite exponent");
        }
        if (!overrides.contains(p)) bad_denominator(p, chi);
    }
    if (chi.default_value().is_zero()) return;
    // Every prime outside the exceptions has nonzero exponent here, so what is
    // left after removing exempt primes must be 1.
    Integer rest = den;
    for (const auto& [p, v] : chi.exceptions()) rest = strip_prime(rest, p);
    for (const auto& kv : overrides) rest = strip_prime(rest, kv.first);
    if (rest != 1) {
        const Prime& p = factorize(rest).begin()->first;
        if (chi.default_value().is_infinite()) {
            throw InvalidDenominatorError(p.to_string(), "denominator prime " + p.to_string() +
                                                             " has infinite exponent");
        }
        bad_denominator(p, chi);
    }
}

} // namespace

GroupElement elem(const Qd1Group& g, const Rational& r, std::map<Prime, Integer> overrides) {
    if (!g.is_reduced()) {
        if (!overrides.empty()) throw DomainError("overrides are not defined on Q (+) Z_m");
        return GroupElement(g, r, {}, 0);
    }
    const Characteristic& chi = g.cochar();
    for (auto& [p, a] : overrides) {
        if (!is_finite_nonzero_at(chi, p))
            throw DomainError("override at prime " + p.to_string() + " with exponent " + chi(p).to_string());
        a = mod(a, g.local_modulus(p));
    }
    Integer den(r.get_den());
    check_denominator(chi, den, overrides);
    std::erase_if(overrides, [&](const auto& kv) {
        const Prime& p = kv.first;
        return !divides(p, den) && kv.second == mod(r, g.local_modulus(p));
    });
    return GroupElement(g, r, std::move(overrides), 0);
}

GroupElement elem_split(const Qd1Group& g, const Rational& q, const Integer& b) {
    if (g.is_reduced()) throw UnsupportedCaseError("elem_split on a reduced group");
    return GroupElement(g, q, {}, mod(b, g.modulus()));
}

GroupElement zero(const Qd1Group& g) { return elem(g, 0); }
GroupElement basis(const Qd1Group& g) {
    return g.is_reduced() ? elem(g, 1) : elem_split(g, 1, mod(Integer(1), g.modulus()));
}

Integer GroupElement::coordinate(const Prime& p) const {
    Integer q = group_.local_modulus(p);
    if (!group_.is_reduced()) return mod(residue_, q);
    auto it = overrides_.find(p);
    if (it != overrides_.end()) return it->second;
    return mod(rational_, q);
}

bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.group_ == b.group_ && a.rational_ == b.rational_ && a.residue_ == b.residue_ &&
           a.overrides_ == b.overrides_;
}

std::string GroupElement::to_string() const {
    if (!group_.is_reduced()) return "q=" + qd1::to_string(rational_) + ";b=" + residue_.get_str();
    std::string out = "r=" + qd1::to_string(rational_);
    char sep = ';';
    for (const auto& [p, a] : overrides_) {
        out += sep;
        out += p.to_string() + ":" + a.get_str();
        sep = ',';
    }
    return out;
}

namespace {

class ElemParser {
public:
    ElemParser(std::string_view s, const Qd1Group& g) : s_(s), g_(g) {}

    GroupElement parse() {
        if (!g_.is_reduced()) {
            expect("q=");
            Rational q = parse_rational();
            expect(";b=");
            std::size_t at = pos_;
            Integer b = parse_integer(false, "residue");
            if (b >= g_.modulus()) throw ParseError(at, "expected residue in [0, " + g_.modulus().get_str() + ")");
            finish();
            return elem_split(g_, q, b);
        }
        expect("r=");
        std::size_t r_at = pos_;
        Rational r = parse_rational();
        std::map<Prime, Integer> overrides;
        if (pos_ < s_.size()) {
            expect(";");
            for (;;) {
                std::size_t at = pos_;
                Integer key = parse_integer(false, "prime");
                if (!is_prime(key)) throw ParseError(at, "expected a prime (got " + key.get_str() + ")");
                Prime p(key);
                if (!is_finite_nonzero_at(g_.cochar(), p))
                    throw ParseError(at, "expected a prime with finite nonzero exponent (got " + p.to_string() + ")");
                if (overrides.contains(p)) throw ParseError(at, "expected a prime not listed before");
                expect(":");
                std::size_t a_at = pos_;
                Integer a = parse_integer(false, "residue");
                Integer q = g_.local_modulus(p);
                if (a >= q) throw ParseError(a_at, "expected residue in [0, " + q.get_str() + ")");
                overrides.emplace(p, a);
                if (pos_ == s_.size()) break;
                expect(",");
            }
        }
        try {
            return elem(g_, r, std::move(overrides));
        } catch (const InvalidDenominatorError& e) {
            throw ParseError(r_at, "denominator violation at prime " + e.prime());
        }
    }

private:
    void expect(std::string_view lit) {
        if (s_.substr(pos_, lit.size()) != lit) throw ParseError(pos_, "expected '" + std::string(lit) + "'");
        pos_ += lit.size();
    }

    void finish() {
        if (pos_ != s_.size()) throw ParseError(pos_, "expected end of input");
    }

    Integer parse_integer(bool allow_sign, const char* what) {
        std::size_t start = pos_;
        if (allow_sign && pos_ < s_.size() && s_[pos_] == '-') ++pos_;
        std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (digits == pos_) throw ParseError(digits, std::string("expected ") + what);
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    Rational parse_rational() {
        Integer num = parse_integer(true, "integer");
        Integer den = 1;
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            std::size_t at = pos_;
            den = parse_integer(false, "denominator");
            if (den == 0) throw ParseError(at, "expected a nonzero denominator");
        }
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    std::string_view s_;
    const Qd1Group& g_;
    std::size_t pos_ = 0;
};

} // namespace

GroupElement GroupElement::parse(std::string_view text, const Qd1Group& g) { return ElemParser(text, g).parse(); }

namespace {

template <typename F>
GroupElement combine(const GroupElement& a, const GroupElement& b, const Rational& r, F coord) {
    const Qd1Group& g = a.group();
    if (!g.is_reduced()) return elem_split(g, r, coord(a.torsion_residue(), b.torsion_residue()));
    std::map<Prime, Integer> ov;
    for (const auto& kv : a.overrides()) ov.emplace(kv.first, 0);
    for (const auto& kv : b.overrides()) ov.emplace(kv.first, 0);
    for (auto& [p, v] : ov) v = coord(a.coordinate(p), b.coordinate(p));
    return elem(g, r, std::move(ov));
}

} // namespace

GroupElement add(const GroupElement& a, const GroupElement& b) {
    require_same(a, b);
    return combine(a, b, a.rational_part() + b.rational_part(),
                   [](const Integer& x, const Integer& y) { return Integer(x + y); });
}

GroupElement neg(const GroupElement& a) { return zmul(-1, a); }

GroupElement sub(const GroupElement& a, const GroupElement& b) { return add(a, neg(b)); }

GroupElement zmul(const Integer& n, const GroupElement& a) {
    return combine(a, a, n * a.rational_part(), [&](const Integer& x, const Integer&) { return Integer(n * x); });
}

ExtNat height(const GroupElement& g, const Prime& p) {
    ExtNat k = g.group().cochar()(p);
    if (k.is_zero()) return ExtNat::infinity();
    if (k.is_infinite()) {
        // Only reduced groups have infinite exponents; the coordinate is r itself.
        if (g.rational_part() == 0) return ExtNat::infinity();
        return ExtNat(static_cast<std::uint64_t>(vp(g.rational_part(), p)));
    }
    Integer c = g.coordinate(p);
    if (c == 0) return ExtNat::infinity();
    return ExtNat(static_cast<std::uint64_t>(vp(c, p)));
}

Characteristic char_of(const GroupElement& g) {
    const Characteristic& chi = g.group().cochar();
    Characteristic::ExceptionMap ex;
    auto record = [&](const Prime& p) { ex.emplace(p, height(g, p)); };

    if (!g.group().is_reduced() || g.rational_part() == 0) {
        // Torsion or Q ⊕ Z_m: only finitely many coordinates can be nonzero.
        for (const auto& [p, v] : chi.exceptions())
            if (v.is_finite() && !v.is_zero()) record(p);
        for (const auto& kv : g.overrides()) record(kv.first);
        return Characteristic(ExtNat::infinity(), std::move(ex));
    }
    for (const auto& kv : chi.exceptions()) record(kv.first);
    for (const auto& kv : g.overrides()) record(kv.first);
    if (chi.default_value().is_zero()) return Characteristic(ExtNat::infinity(), std::move(ex));
    for (const auto& kv : factorize(Integer(g.rational_part().get_num()))) record(kv.first);
    return Characteristic(ExtNat(0), std::move(ex));
}

bool is_torsion(const GroupElement& g) { return g.rational_part() == 0; }

std::optional<Integer> order(const GroupElement& g) {
    if (!is_torsion(g)) return std::nullopt;
    if (!g.group().is_reduced()) {
        const Integer& m = g.group().modulus();
        return Integer(m / gcd(g.torsion_residue(), m));
    }
    Integer o = 1;
    for (const auto& [p, a] : g.overrides()) {
        Integer q = g.group().local_modulus(p);
        o = lcm(o, Integer(q / gcd(a, q)));
    }
    return o;
}

Integer c_of(const GroupElement& g) {
    if (is_torsion(g)) return 0;
    const Characteristic& chi = g.group().cochar();
    if (!g.group().is_reduced()) return 1;
    Integer num = abs(Integer(g.rational_part().get_num()));
    if (chi.default_value().is_infinite()) {
        for (const auto& [p, v] : chi.exceptions())
            if (v.is_finite()) num = strip_prime(num, p);
        return num;
    }
    Integer c = 1;
    for (const auto& [p, v] : chi.exceptions())
        if (v.is_infinite()) c *= prime_power(p, static_cast<std::uint64_t>(vp(num, p)));
    return c;
}

GroupElement projected_basis(const Qd1Group& g, const std::set<Prime>& support) {
    std::map<Prime, Integer> zeros;
    for (const Prime& p : support) zeros.emplace(p, 0);
    return elem(g, 1, std::move(zeros));
}

Decomposition decompose_with(const GroupElement& g, const std::set<Prime>& extra) {
    const Qd1Group& G = g.group();
    if (!G.is_reduced()) throw UnsupportedCaseError("decomposition is defined on reduced groups only");
    const Characteristic& chi = G.cochar();
    for (const Prime& p : extra)
        if (!is_finite_nonzero_at(chi, p))
            throw DomainError("support prime " + p.to_string() + " must have finite nonzero exponent");

    std::set<Prime> support = extra;
    for (const auto& kv : g.overrides()) support.insert(kv.first);

    Integer c = c_of(g);
    Rational r = 0;
    if (c != 0) {
        r = g.rational_part() / c;
        Integer num(r.get_num()), den(r.get_den());
        if (chi.default_value().is_finite() && !chi.default_value().is_zero()) {
            for (const auto& kv : factorize(num * den))
                if (is_finite_nonzero_at(chi, kv.first)) support.insert(kv.first);
        } else {
            for (const auto& [p, v] : chi.exceptions())
                if (v.is_finite() && !v.is_zero() && (divides(p, num) || divides(p, den))) support.insert(p);
        }
    }
    std::map<Prime, Integer> tail;
    for (const Prime& p : support) tail.emplace(p, g.coordinate(p));
    return Decomposition{c, r, elem(G, 0, std::move(tail)), std::move(support)};
}

Decomposition decompose(const GroupElement& g) { return decompose_with(g, {}); }

GroupElement recombine(const Decomposition& d) {
    const Qd1Group& G = d.t.group();
    std::map<Prime, Integer> zeros;
    for (const Prime& p : d.support) zeros.emplace(p, 0);
    return add(elem(G, d.c * d.r, std::move(zeros)), d.t);
}

} // namespace qd1

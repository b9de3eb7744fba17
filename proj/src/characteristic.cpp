#include "qd1/characteristic.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "qd1/errors.hpp"

namespace qd1 {

Characteristic::Characteristic(ExtNat default_value, ExceptionMap exceptions)
    : default_(default_value), exceptions_(std::move(exceptions)) {
    std::erase_if(exceptions_, [&](const auto& kv) { return kv.second == default_; });
}

ExtNat Characteristic::operator()(const Prime& p) const {
    auto it = exceptions_.find(p);
    return it == exceptions_.end() ? default_ : it->second;
}

Characteristic Characteristic::with(const Prime& p, ExtNat v) const {
    ExceptionMap ex = exceptions_;
    ex.insert_or_assign(p, v);
    return Characteristic(default_, std::move(ex));
}

std::string Characteristic::to_string() const {
    std::string out = "default=" + default_.to_string();
    char sep = ';';
    for (const auto& [p, v] : exceptions_) {
        out += sep;
        out += p.to_string() + ":" + v.to_string();
        sep = ',';
    }
    return out;
}

namespace {

class CharParser {
public:
    explicit CharParser(std::string_view s) : s_(s) {}

    Characteristic parse() {
        expect_literal("default=");
        ExtNat def = parse_value();
        Characteristic::ExceptionMap ex;
        if (pos_ < s_.size()) {
            expect_literal(";");
            for (;;) {
                std::size_t at = pos_;
                Integer key = parse_integer("prime");
                if (!is_prime(key)) throw ParseError(at, "expected a prime (got " + key.get_str() + ")");
                Prime p(key);
                if (ex.contains(p)) throw ParseError(at, "expected a prime not listed before (" + p.to_string() + ")");
                expect_literal(":");
                ex.emplace(p, parse_value());
                if (pos_ == s_.size()) break;
                expect_literal(",");
            }
        }
        return Characteristic(def, std::move(ex));
    }

private:
    void expect_literal(std::string_view lit) {
        if (s_.substr(pos_, lit.size()) != lit) throw ParseError(pos_, "expected '" + std::string(lit) + "'");
        pos_ += lit.size();
    }

    Integer parse_integer(const char* what) {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError(start, std::string("expected ") + what);
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    ExtNat parse_value() {
        if (s_.substr(pos_, 3) == "inf") {
            pos_ += 3;
            return ExtNat::infinity();
        }
        std::size_t at = pos_;
        Integer v = parse_integer("nonnegative integer or 'inf'");
        if (!v.fits_ulong_p()) throw ParseError(at, "expected a value fitting 64 bits");
        return ExtNat(v.get_ui());
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Characteristic Characteristic::parse(std::string_view text) { return CharParser(text).parse(); }

std::vector<Prime> exception_primes(std::initializer_list<const Characteristic*> chars) {
    std::set<Prime> keys;
    for (const Characteristic* c : chars)
        for (const auto& kv : c->exceptions()) keys.insert(kv.first);
    return {keys.begin(), keys.end()};
}

bool equivalent(const Characteristic& a, const Characteristic& b) {
    if (a.default_value() != b.default_value()) return false;
    for (const Prime& p : exception_primes({&a, &b})) {
        ExtNat x = a(p), y = b(p);
        if (x != y && (x.is_infinite() || y.is_infinite())) return false;
    }
    return true;
}

bool is_zero_type(const Characteristic& chi) { return equivalent(chi, Characteristic::all_zero()); }

bool is_idempotent_type(const Characteristic& chi) {
    // Finite nonzero exceptions can be zeroed one by one; the default cannot.
    ExtNat d = chi.default_value();
    return d.is_zero() || d.is_infinite();
}

bool char_geq(const Characteristic& a, const Characteristic& b) {
    if (a.default_value() < b.default_value()) return false;
    for (const Prime& p : exception_primes({&a, &b}))
        if (a(p) < b(p)) return false;
    return true;
}

Characteristic meet(const Characteristic& a, const Characteristic& b) {
    return pointwise(a, b, [](ExtNat x, ExtNat y) { return min(x, y); });
}

bool in_support(const Characteristic& chi, const Prime& p) { return !chi(p).is_zero(); }

bool is_infinite_at(const Characteristic& chi, const Prime& p) { return chi(p).is_infinite(); }

bool is_finite_nonzero_at(const Characteristic& chi, const Prime& p) {
    ExtNat v = chi(p);
    return v.is_finite() && !v.is_zero();
}

} // namespace qd1

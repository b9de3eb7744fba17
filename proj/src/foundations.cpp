#include "qd1/foundations.hpp"

#include <array>
#include <vector>

#include "qd1/errors.hpp"

namespace qd1 {

std::uint64_t ExtNat::value() const {
    if (infinite_) throw DomainError("value() of an infinite height");
    return value_;
}

std::string ExtNat::to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

ExtNat min(ExtNat a, ExtNat b) noexcept { return a < b ? a : b; }
ExtNat max(ExtNat a, ExtNat b) noexcept { return a < b ? b : a; }

namespace {

constexpr std::array<unsigned long, 13> kWitnessBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// 3317044064679887385961981: Miller–Rabin on the 13 bases above is exact below this bound.
const Integer& deterministic_mr_bound() {
    static const Integer bound("3317044064679887385961981");
    return bound;
}

bool miller_rabin(const Integer& n, unsigned long base) {
    Integer d = n - 1;
    unsigned long s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    Integer a = base, x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (unsigned long b : kWitnessBases) {
        if (n == b) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
    }
    if (n >= deterministic_mr_bound()) return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
    for (unsigned long b : kWitnessBases)
        if (!miller_rabin(n, b)) return false;
    return true;
}

Prime::Prime(const Integer& p) : value_(p) {
    if (!is_prime(p)) throw DomainError(p.get_str() + " is not prime");
}

Prime next_prime(const Integer& n) {
    Integer c = n < 2 ? Integer(2) : Integer(n + 1);
    while (!is_prime(c)) ++c;
    return Prime(c);
}

Integer prime_power(const Prime& p, std::uint64_t k) {
    if (k > (1u << 20)) throw DomainError("exponent " + std::to_string(k) + " too large");
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), p.value().get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

std::int64_t vp(const Integer& x, const Prime& p) {
    if (x == 0) throw DomainError("valuation of zero");
    Integer rest = x;
    std::int64_t v = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.value().get_mpz_t())) {
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.value().get_mpz_t());
        ++v;
    }
    return v;
}

std::int64_t vp(const Rational& x, const Prime& p) {
    if (x == 0) throw DomainError("valuation of zero");
    return vp(Integer(x.get_num()), p) - vp(Integer(x.get_den()), p);
}

Integer strip_prime(Integer x, const Prime& p) {
    if (x == 0) return x;
    while (mpz_divisible_p(x.get_mpz_t(), p.value().get_mpz_t()))
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p.value().get_mpz_t());
    return x;
}

BezoutResult bezout(const Integer& a, const Integer& b) {
    if (a == 0 && b == 0) throw DomainError("bezout(0, 0) is undefined");
    BezoutResult r;
    mpz_gcdext(r.gcd.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Integer mod(const Integer& a, const Integer& n) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

Integer mod_inverse(const Integer& a, const Integer& q) {
    if (q <= 0) throw DomainError("modulus must be positive");
    if (q == 1) return 0;
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t()) == 0)
        throw NotInvertibleError(a.get_str() + " is not invertible modulo " + q.get_str());
    return mod(r, q);
}

Integer mod(const Rational& x, const Integer& n) {
    return mod(Integer(Integer(x.get_num()) * mod_inverse(Integer(x.get_den()), n)), n);
}

std::optional<Integer> solve_congruence(const Integer& a, const Integer& b, const Integer& n) {
    if (n <= 0) throw DomainError("modulus must be positive");
    Integer aa = mod(a, n), bb = mod(b, n);
    if (aa == 0) {
        if (bb == 0) return Integer(0);
        return std::nullopt;
    }
    Integer g = gcd(aa, n);
    if (!mpz_divisible_p(bb.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
    Integer n1 = n / g;
    Integer inv = mod_inverse(Integer(aa / g), n1);
    return mod(Integer(bb / g * inv), n1);
}

namespace {

Integer pollard_brent(const Integer& n, unsigned long c) {
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1, m = 64;
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = f(y);
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = q * abs(Integer(x - y)) % n;
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd(abs(Integer(x - ys)), n);
        } while (g == 1);
    }
    return g;
}

void factor_into(const Integer& n, std::map<Prime, std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[Prime(n)];
        return;
    }
    for (unsigned long c = 1;; ++c) {
        Integer d = pollard_brent(n, c);
        if (d != n) {
            factor_into(d, out);
            factor_into(Integer(n / d), out);
            return;
        }
    }
}

} // namespace

std::map<Prime, std::uint64_t> factorize(const Integer& n) {
    if (n == 0) throw DomainError("factorization of zero");
    std::map<Prime, std::uint64_t> out;
    Integer rest = abs(n);
    for (unsigned long d = 2; d < 1000 && rest > 1; d += (d == 2 ? 1 : 2)) {
        if (Integer(d) * d > rest) break;
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), d)) continue;
        std::uint64_t e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
            ++e;
        }
        out.emplace(Prime(d), e);
    }
    factor_into(rest, out);
    return out;
}

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

} // namespace qd1

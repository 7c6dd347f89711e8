#include "ltk/supernatural.hpp"

#include "ltk/errors.hpp"
#include "ltk/factorize.hpp"

#include <algorithm>
#include <sstream>

namespace ltk {

namespace {

using Exp = Supernatural::Exp;
using Default = Supernatural::Default;

Exp default_as_exp(Default d) {
    switch (d) {
        case Default::Zero: return Exp::fin(0);
        case Default::One: return Exp::fin(1);
        case Default::Infinity: return Exp::inf();
    }
    return Exp::fin(0);
}

Exp exp_max(const Exp& a, const Exp& b) {
    if (a.infinite || b.infinite) return Exp::inf();
    return Exp::fin(std::max(a.value, b.value));
}

Exp exp_min(const Exp& a, const Exp& b) {
    if (a.infinite) return b;
    if (b.infinite) return a;
    return Exp::fin(std::min(a.value, b.value));
}

Exp exp_add(const Exp& a, const Exp& b) {
    if (a.infinite || b.infinite) return Exp::inf();
    return Exp::fin(a.value + b.value);
}

std::optional<Default> exp_as_default(const Exp& e) {
    if (e.infinite) return Default::Infinity;
    if (e.value == 0) return Default::Zero;
    if (e.value == 1) return Default::One;
    return std::nullopt;
}

template <typename Combine>
Supernatural pointwise(const Supernatural& a, const Supernatural& b, Combine combine,
                       const char* opname) {
    Exp da = default_as_exp(a.default_exponent());
    Exp db = default_as_exp(b.default_exponent());
    Exp dnew = combine(da, db);
    auto def = exp_as_default(dnew);
    if (!def)
        throw InvalidInput(std::string(opname) +
                           ": result default exponent leaves {0,1,inf} (e.g. both operands have "
                           "default exponent 1)");
    std::map<mpz_class, Exp> out;
    auto touch = [&](const mpz_class& p) {
        Exp ea = a.exponent(p), eb = b.exponent(p);
        out[p] = combine(ea, eb);
    };
    for (const auto& [p, e] : a.explicit_exponents()) touch(p);
    for (const auto& [p, e] : b.explicit_exponents()) touch(p);
    return Supernatural(*def, std::move(out));
}

} // namespace

Supernatural::Supernatural(Default def, std::map<mpz_class, Exp> explicit_exponents)
    : def_(def), exp_(std::move(explicit_exponents)) {
    for (const auto& [p, e] : exp_) {
        if (p < 2 || !is_prime(p))
            throw InvalidInput("Supernatural: explicit key " + p.get_str() + " is not prime");
        if (!e.infinite && e.value < 0)
            throw InvalidInput("Supernatural: negative exponent");
    }
    canonicalize();
}

void Supernatural::canonicalize() {
    Exp d = default_as_exp(def_);
    for (auto it = exp_.begin(); it != exp_.end();)
        it = (it->second == d) ? exp_.erase(it) : std::next(it);
}

Supernatural Supernatural::from_natural(const mpz_class& n) {
    if (n < 1) throw InvalidInput("from_natural: requires n >= 1");
    std::map<mpz_class, Exp> m;
    for (const auto& [p, e] : factor_integer(n)) m[p] = Exp::fin(static_cast<long>(e));
    return Supernatural(Default::Zero, std::move(m));
}

Supernatural Supernatural::all_primes_once() { return Supernatural(Default::One, {}); }

Supernatural Supernatural::prime_power_infinite(const mpz_class& p) {
    std::map<mpz_class, Exp> m;
    m[p] = Exp::inf();
    return Supernatural(Default::Zero, std::move(m));
}

Supernatural::Exp Supernatural::exponent(const mpz_class& p) const {
    auto it = exp_.find(p);
    if (it != exp_.end()) return it->second;
    return default_as_exp(def_);
}

bool Supernatural::is_quasi_finite() const {
    if (def_ == Default::Infinity) return false;
    for (const auto& [p, e] : exp_)
        if (e.infinite) return false;
    return true;
}

Supernatural lcm(const Supernatural& a, const Supernatural& b) {
    return pointwise(a, b, exp_max, "lcm");
}

Supernatural gcd(const Supernatural& a, const Supernatural& b) {
    return pointwise(a, b, exp_min, "gcd");
}

Supernatural mul(const Supernatural& a, const Supernatural& b) {
    return pointwise(a, b, exp_add, "mul");
}

std::string Supernatural::to_string() const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&]() {
        if (!first) os << " * ";
        first = false;
    };
    if (def_ == Default::One) {
        sep();
        os << "prod_all_primes^1";
    } else if (def_ == Default::Infinity) {
        sep();
        os << "prod_all_primes^inf";
    }
    for (const auto& [p, e] : exp_) {
        sep();
        os << p.get_str();
        if (e.infinite)
            os << "^inf";
        else if (e.value != 1)
            os << "^" << e.value.get_str(); // includes ^0 overrides of a nonzero default
    }
    if (first) os << "1";
    return os.str();
}

Supernatural Supernatural::parse(const std::string& text) {
    auto fail = [&](size_t pos, const std::string& msg) -> Supernatural {
        throw InvalidInput("supernatural parse error at position " + std::to_string(pos) + ": " +
                           msg);
    };
    size_t i = 0;
    auto skip_ws = [&]() {
        while (i < text.size() && isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    Default def = Default::Zero;
    std::map<mpz_class, Exp> m;
    bool any = false;
    bool saw_default = false;
    skip_ws();
    while (i < text.size()) {
        if (any) {
            if (text[i] != '*') return fail(i, "expected '*'");
            ++i;
            skip_ws();
        }
        if (text.compare(i, 15, "prod_all_primes") == 0) {
            i += 15;
            Exp e = Exp::fin(1);
            if (i < text.size() && text[i] == '^') {
                ++i;
                if (text.compare(i, 3, "inf") == 0) {
                    e = Exp::inf();
                    i += 3;
                } else if (i < text.size() && text[i] == '1') {
                    e = Exp::fin(1);
                    ++i;
                } else {
                    return fail(i, "default exponent must be 1 or inf");
                }
            }
            if (saw_default) return fail(i, "duplicate prod_all_primes term");
            saw_default = true;
            def = e.infinite ? Default::Infinity : Default::One;
        } else if (isdigit(static_cast<unsigned char>(text[i]))) {
            size_t start = i;
            while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) ++i;
            mpz_class p(text.substr(start, i - start));
            Exp e = Exp::fin(1);
            if (i < text.size() && text[i] == '^') {
                ++i;
                if (text.compare(i, 3, "inf") == 0) {
                    e = Exp::inf();
                    i += 3;
                } else {
                    size_t es = i;
                    while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) ++i;
                    if (i == es) return fail(i, "expected exponent");
                    e = Exp::fin(mpz_class(text.substr(es, i - es)));
                }
            }
            if (p == 1) {
                if (!(e == Exp::fin(1)) && !(e == Exp::fin(0)))
                    return fail(start, "1 admits no exponent");
                // the term "1" contributes nothing
            } else {
                if (m.count(p)) return fail(start, "duplicate prime " + p.get_str());
                m[p] = e;
            }
        } else {
            return fail(i, "expected prime, 1, or prod_all_primes");
        }
        any = true;
        skip_ws();
    }
    if (!any) throw InvalidInput("supernatural parse error: empty input");
    return Supernatural(def, std::move(m));
}

} // namespace ltk

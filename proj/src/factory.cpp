#include "ltk/factory.hpp"

#include "ltk/errors.hpp"
#include "ltk/factorize.hpp"

#include <algorithm>

namespace ltk {

namespace {

// Tonelli-Shanks square root mod an odd prime; a must be a QR.
Int sqrt_mod_p(const Int& a_in, const Int& p) {
    Int a = a_in % p;
    if (a < 0) a += p;
    if (a == 0) return Int(0);
    if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1)
        throw InternalInconsistency("sqrt_mod_p: not a quadratic residue");
    if (p % 4 == 3) {
        Int e = (p + 1) / 4, r;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    }
    // write p - 1 = q 2^s
    Int q = p - 1;
    long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q >>= 1;
        ++s;
    }
    // find a non-residue z
    Int z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    Int m(s), c, t, r;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    Int e = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    while (t != 1) {
        Int tt = t;
        long i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        for (long j = 0; j < m.get_si() - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

} // namespace

std::optional<std::pair<Int, Int>> cornacchia(const Int& D, const Int& m) {
    if (D <= 0 || m <= D) return std::nullopt;
    // square roots of -D mod m; m is p or 4p here
    Int p = m;
    bool four = false;
    if (m % 4 == 0) {
        p = m / 4;
        four = true;
    }
    Int negd = (-D) % p;
    if (negd < 0) negd += p;
    if (negd == 0) return std::nullopt; // p | D: not split
    if (mpz_legendre(negd.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
    Int s = sqrt_mod_p(negd, p);
    std::vector<Int> roots;
    if (!four) {
        roots = {s, p - s};
    } else {
        // odd lifts r mod 4p with r^2 = -D (needs D = 3 mod 4)
        std::vector<Int> bases = {s, Int(p - s)};
        for (const Int& base : bases)
            for (int k = 0; k < 4; ++k) {
                Int r = base + k * p;
                if (r < m && mpz_odd_p(r.get_mpz_t())) roots.push_back(r);
            }
    }
    for (Int r0 : roots) {
        if (2 * r0 < m) r0 = m - r0;
        Int a = m, b = r0;
        while (b * b > m) {
            Int t = a % b;
            a = b;
            b = t;
        }
        Int x = b;
        Int rem = m - x * x;
        if (rem <= 0) continue;
        if (!mpz_divisible_p(rem.get_mpz_t(), D.get_mpz_t())) continue;
        Int y2;
        mpz_divexact(y2.get_mpz_t(), rem.get_mpz_t(), D.get_mpz_t());
        Int y = sqrt(y2);
        if (y * y != y2) continue;
        if (x <= 0 || y <= 0) continue;
        Int g;
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        if (g != 1) continue;
        return std::make_pair(x, y);
    }
    return std::nullopt;
}

namespace {

bool is_squarefree_int(const Int& n) {
    for (auto& [p, e] : factor_integer(n))
        if (e >= 2) return false;
    return true;
}

// all positive (x, y) in the orbit of a solution under the unit group
std::vector<std::pair<Int, Int>> unit_orbit(const Int& d, const Int& x, const Int& y) {
    std::vector<std::pair<Int, Int>> out;
    auto push = [&](const Int& a, const Int& b) {
        if (a > 0 && b > 0) out.emplace_back(a, b);
    };
    push(x, y);
    if (d == -1) {
        // multiplication by i: (x, y) -> (-y, x)
        push(y, x);
    } else if (d == -3) {
        // multiplication by (1 + sqrt(-3))/2 on (x + y sqrt(-3))/2:
        // (x, y) -> ((x - 3y)/2, (x + y)/2)
        Int a = x, b = y;
        for (int k = 0; k < 6; ++k) {
            Int a2 = (a - 3 * b) / 2, b2 = (a + b) / 2;
            a = a2;
            b = b2;
            push(abs(a), abs(b));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& u, const auto& v) {
        if (u.second != v.second) return u.second < v.second;
        return u.first < v.first;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SplitPrincipalWitness make_witness(const Int& p, const Int& d, const Int& x, const Int& y,
                                   long selector_precision) {
    SplitPrincipalWitness w;
    w.d = d;
    w.x = x;
    w.y = y;
    bool half = (d % 4 == -3) || ((d % 4) == 1); // d = 1 mod 4 (d negative: d % 4 == -3)
    // trace and norm of omega
    Int trace = half ? x : 2 * x;
    IntPoly m(std::vector<Int>{p, -trace, Int(1)});
    auto roots = isolate_all_roots(m); // two conjugate roots, im asc
    w.omega = AlgebraicNumber::from_verified_factor(m, roots.back());       // positive imag
    w.omega_conj = AlgebraicNumber::from_verified_factor(m, roots.front()); // negative imag
    // p-adic selectors under the fixed embedding: omega has valuation 1,
    // omega^c is the unit root (= trace mod p)
    w.omega.set_selector(select_padic_root(m, p, RootSeed::from_slope(Rat(1)), selector_precision));
    Int ures = trace % p;
    if (ures < 0) ures += p;
    w.omega_conj.set_selector(
        select_padic_root(m, p, RootSeed::from_residue(ures), selector_precision));
    return w;
}

} // namespace

SplitSearchResult find_split_principal(const Int& p, int count) {
    if (p < 3 || !is_prime(p)) throw NotPrime("find_split_principal: p must be an odd prime");
    SplitSearchResult out;
    for (Int ad = 1; static_cast<int>(out.found.size()) < count && ad <= 4 * p; ++ad) {
        Int d = -ad;
        if (!is_squarefree_int(ad)) continue;
        Int dmod = d % p;
        if (dmod < 0) dmod += p;
        if (dmod == 0) continue;
        if (mpz_legendre(dmod.get_mpz_t(), p.get_mpz_t()) != 1) continue; // not split
        bool half = mpz_fdiv_ui(d.get_mpz_t(), 4) == 1; // d = 1 mod 4
        std::optional<std::pair<Int, Int>> sol;
        if (half) {
            sol = cornacchia(ad, 4 * p); // odd-odd primitive solutions
            if (!sol) {
                // even-even solutions come from the integer form
                sol = cornacchia(ad, p);
            }
        } else {
            sol = cornacchia(ad, p);
        }
        if (!sol) {
            out.skipped_nonprincipal.push_back(d);
            continue;
        }
        // canonical representative: minimal (y, x) among unit multiples
        auto orbit = unit_orbit(d, sol->first, sol->second);
        out.found.push_back(make_witness(p, d, orbit.front().first, orbit.front().second, 64));
    }
    return out;
}

LubinTateInput build_example(const Int& p, long r,
                             const std::vector<SplitPrincipalWitness>& witnesses) {
    if (p < 3 || !is_prime(p)) throw NotPrime("build_example: p must be an odd prime");
    if (r < 1 || static_cast<long>(witnesses.size()) != r)
        throw InvalidInput("build_example: need exactly r witnesses");
    Int pm1 = p - 1;
    if (!mpz_divisible_p(pm1.get_mpz_t(), Int(r).get_mpz_t()))
        throw RadicalNotDividing("build_example: r must divide p - 1");
    // linear disjointness: no nonempty subset of the d's has square product
    size_t n = witnesses.size();
    for (size_t mask = 1; mask < (1u << n); ++mask) {
        Int prod = 1;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) prod *= witnesses[i].d;
        if (prod < 0) continue;
        Int s = sqrt(prod);
        if (s * s == prod)
            throw DisjointnessFailure(
                "build_example: a subset product of the d's is a perfect square; the fields are "
                "not linearly disjoint");
    }
    // pi_0 = omega_1 * prod_{i >= 2} omega_i^c
    AlgebraicNumber c = witnesses[0].omega;
    for (size_t i = 1; i < n; ++i) c = minpoly_product(c, witnesses[i].omega_conj);
    if (!c.selector() || c.selector()->vshift != 1)
        throw InternalInconsistency("build_example: pi_0 does not have valuation 1");
    LubinTateInput in;
    in.p = p;
    in.f = 1;
    in.r = r;
    in.c = c;
    Int seed = c.selector()->unit % p;
    if (seed < 0) seed += p;
    in.c_unit_seed = {seed};
    return in;
}

Verdict verify_example(const LubinTateInput& input, const ClassifyOptions& opts) {
    Verdict v = classify(input, opts);
    if (v.outcome != Outcome::NotKummerFaithful ||
        (v.clause != Clause::NormWeil && v.clause != Clause::Theorem3))
        throw FactoryContractViolation(
            "verify_example: expected NotKummerFaithful via NormWeil or Theorem3, got " +
            outcome_name(v.outcome) + "/" + clause_name(v.clause));
    return v;
}

} // namespace ltk

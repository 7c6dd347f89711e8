#include "ltk/factorize.hpp"

#include "ltk/errors.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace ltk {

// ---------------------------------------------------------------------------
// Integer primality / factorization
// ---------------------------------------------------------------------------

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace {

Int pollard_rho(const Int& n, unsigned long seed) {
    // Brent's cycle variant; n odd composite, not a prime power of small prime.
    std::mt19937_64 rng(seed);
    while (true) {
        Int c = Int(static_cast<unsigned long>(rng() % 1000) + 1);
        Int x = Int(static_cast<unsigned long>(rng() % 1000) + 2), y = x, d = 1;
        Int diff;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            diff = x - y;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 0 && d != 1 && d != n) return d;
    }
}

void factor_rec(const Int& n, std::map<Int, unsigned long>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_rho(n, 0x9E3779B97F4A7C15ULL);
    factor_rec(d, out);
    Int q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    factor_rec(q, out);
}

} // namespace

std::vector<std::pair<Int, unsigned long>> factor_integer(const Int& n_in) {
    Int n = abs(n_in);
    if (n <= 1) return {};
    std::map<Int, unsigned long> acc;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++acc[Int(p)];
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    unsigned long d = 41;
    while (n > 1 && d < 100000) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            ++acc[Int(d)];
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
        }
        d += 2;
    }
    if (n > 1) factor_rec(n, acc);
    return {acc.begin(), acc.end()};
}

bool prime_power_decompose(const Int& q, Int& p, unsigned long& f) {
    if (q < 2) return false;
    auto fac = factor_integer(q);
    if (fac.size() != 1) return false;
    p = fac[0].first;
    f = fac[0].second;
    return true;
}

unsigned long euler_phi(unsigned long n) {
    unsigned long r = n;
    for (auto& [p, e] : factor_integer(Int(n))) {
        unsigned long pl = p.get_ui();
        r -= r / pl;
        (void)e;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x]
// ---------------------------------------------------------------------------

namespace {

using ZpPoly = std::vector<Int>; // lowest degree first, coefficients in [0, p)

void zp_normalize(ZpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int zp_deg(const ZpPoly& a) { return static_cast<int>(a.size()) - 1; }

Int zp_inv(const Int& a, const Int& p) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
        throw InternalInconsistency("zp_inv: not invertible");
    return r;
}

ZpPoly zp_from(const IntPoly& f, const Int& p) {
    ZpPoly r(f.coeffs().size());
    for (size_t i = 0; i < r.size(); ++i) {
        r[i] = f.coeff(static_cast<int>(i)) % p;
        if (r[i] < 0) r[i] += p;
    }
    zp_normalize(r);
    return r;
}

ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    ZpPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    for (auto& v : r) v %= p;
    zp_normalize(r);
    return r;
}

ZpPoly zp_sub(const ZpPoly& a, const ZpPoly& b, const Int& p) {
    ZpPoly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) {
        r[i] -= b[i];
        if (r[i] < 0) r[i] += p;
    }
    zp_normalize(r);
    return r;
}

// a = q*b + r
void zp_divrem(const ZpPoly& a, const ZpPoly& b, const Int& p, ZpPoly& q, ZpPoly& r) {
    if (b.empty()) throw InternalInconsistency("zp_divrem by zero");
    r = a;
    q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Int(0));
    Int binv = zp_inv(b.back(), p);
    while (zp_deg(r) >= zp_deg(b)) {
        int shift = zp_deg(r) - zp_deg(b);
        Int f = (r.back() * binv) % p;
        q[static_cast<size_t>(shift)] = f;
        for (int j = 0; j <= zp_deg(b); ++j) {
            Int& t = r[static_cast<size_t>(shift + j)];
            t = (t - f * b[static_cast<size_t>(j)]) % p;
            if (t < 0) t += p;
        }
        zp_normalize(r);
        if (r.empty()) break;
    }
    zp_normalize(q);
}

ZpPoly zp_mod(const ZpPoly& a, const ZpPoly& b, const Int& p) {
    ZpPoly q, r;
    zp_divrem(a, b, p, q, r);
    return r;
}

ZpPoly zp_make_monic(const ZpPoly& a, const Int& p) {
    if (a.empty()) return a;
    Int inv = zp_inv(a.back(), p);
    ZpPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] * inv) % p;
    return r;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, const Int& p) {
    while (!b.empty()) {
        ZpPoly r = zp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return zp_make_monic(a, p);
}

// extended euclid: s*a + t*b = gcd (monic)
void zp_ext_gcd(const ZpPoly& a, const ZpPoly& b, const Int& p, ZpPoly& s, ZpPoly& t, ZpPoly& g) {
    ZpPoly r0 = a, r1 = b;
    ZpPoly s0 = {Int(1)}, s1 = {};
    ZpPoly t0 = {}, t1 = {Int(1)};
    while (!r1.empty()) {
        ZpPoly q, r;
        zp_divrem(r0, r1, p, q, r);
        ZpPoly s2 = zp_sub(s0, zp_mul(q, s1, p), p);
        ZpPoly t2 = zp_sub(t0, zp_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    Int inv = zp_inv(r0.back(), p);
    auto scale = [&](ZpPoly& v) {
        for (auto& c : v) c = (c * inv) % p;
    };
    scale(r0);
    scale(s0);
    scale(t0);
    g = r0;
    s = s0;
    t = t0;
}

ZpPoly zp_powmod_x(const Int& e, const ZpPoly& f, const Int& p) {
    // x^e mod f
    ZpPoly base = {Int(0), Int(1)};
    base = zp_mod(base, f, p);
    ZpPoly result = {Int(1)};
    Int exp = e;
    while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t())) result = zp_mod(zp_mul(result, base, p), f, p);
        base = zp_mod(zp_mul(base, base, p), f, p);
        exp >>= 1;
    }
    return result;
}

ZpPoly zp_powmod(ZpPoly base, Int exp, const ZpPoly& f, const Int& p) {
    base = zp_mod(base, f, p);
    ZpPoly result = {Int(1)};
    while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t())) result = zp_mod(zp_mul(result, base, p), f, p);
        base = zp_mod(zp_mul(base, base, p), f, p);
        exp >>= 1;
    }
    return result;
}

ZpPoly zp_mod_div(const ZpPoly& a, const ZpPoly& b, const Int& p) {
    ZpPoly q, r;
    zp_divrem(a, b, p, q, r);
    if (!r.empty()) throw InternalInconsistency("zp_mod_div: not divisible");
    return q;
}

// Cantor-Zassenhaus equal-degree splitting; f monic squarefree, all
// irreducible factors of degree d, p odd.
void zp_equal_degree(const ZpPoly& f, int d, const Int& p, std::mt19937_64& rng,
                     std::vector<ZpPoly>& out) {
    int n = zp_deg(f);
    if (n == d) {
        out.push_back(f);
        return;
    }
    Int pd;
    mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
    Int e = (pd - 1) / 2;
    while (true) {
        ZpPoly h(static_cast<size_t>(n), Int(0));
        for (auto& c : h) c = Int(static_cast<unsigned long>(rng() % 1000000007ULL)) % p;
        zp_normalize(h);
        if (zp_deg(h) < 1) continue;
        ZpPoly g = zp_gcd(f, h, p);
        if (zp_deg(g) > 0 && zp_deg(g) < n) {
            zp_equal_degree(g, d, p, rng, out);
            zp_equal_degree(zp_mod_div(f, g, p), d, p, rng, out);
            return;
        }
        ZpPoly w = zp_powmod(h, e, f, p);
        // w - 1
        if (w.empty())
            w = {p - 1};
        else {
            w[0] = (w[0] - 1) % p;
            if (w[0] < 0) w[0] += p;
            zp_normalize(w);
        }
        if (w.empty()) continue;
        g = zp_gcd(f, w, p);
        if (zp_deg(g) > 0 && zp_deg(g) < n) {
            zp_equal_degree(g, d, p, rng, out);
            zp_equal_degree(zp_mod_div(f, g, p), d, p, rng, out);
            return;
        }
    }
}

// Factor a monic squarefree polynomial over F_p (p odd) into monic irreducibles.
std::vector<ZpPoly> factor_mod_p(const ZpPoly& f_in, const Int& p, std::mt19937_64& rng) {
    std::vector<ZpPoly> out;
    ZpPoly f = f_in;
    // distinct-degree decomposition
    ZpPoly xq = {Int(0), Int(1)}; // x^(p^d) mod f, updated per d
    xq = zp_mod(xq, f, p);
    int d = 0;
    while (zp_deg(f) > 0) {
        ++d;
        if (2 * d > zp_deg(f)) {
            out.push_back(f);
            break;
        }
        xq = zp_powmod(xq, p, f, p);
        // gcd(x^(p^d) - x, f)
        ZpPoly t = zp_sub(xq, ZpPoly{Int(0), Int(1)}, p);
        ZpPoly g = zp_gcd(f, t, p);
        if (zp_deg(g) > 0) {
            zp_equal_degree(g, d, p, rng, out);
            f = zp_mod_div(f, g, p);
            xq = zp_mod(xq, f, p);
        }
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Hensel lifting and recombination
// ---------------------------------------------------------------------------

namespace {

Int symmetric_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    if (r * 2 > m) r -= m;
    return r;
}

IntPoly poly_symmetric_mod(const IntPoly& f, const Int& m) {
    std::vector<Int> c = f.coeffs();
    for (auto& v : c) v = symmetric_mod(v, m);
    return IntPoly(std::move(c));
}

IntPoly from_zp(const ZpPoly& a) {
    std::vector<Int> c(a.begin(), a.end());
    return IntPoly(std::move(c));
}

// Linear Hensel lift of a coprime monic bifactorization F = G*H mod p
// to modulus p^K. F, G, H monic over Z with F = G*H mod p.
void hensel_lift_pair(const IntPoly& F, IntPoly& G, IntPoly& H, const Int& p, long K) {
    ZpPoly g0 = zp_from(G, p), h0 = zp_from(H, p);
    ZpPoly s, t, g;
    zp_ext_gcd(g0, h0, p, s, t, g);
    if (zp_deg(g) != 0) throw InternalInconsistency("hensel_lift_pair: factors not coprime");
    Int pj = p;
    for (long j = 1; j < K; ++j) {
        // E = (F - G*H)/p^j mod p
        IntPoly diff = F - G * H;
        std::vector<Int> e(diff.coeffs().size());
        for (size_t i = 0; i < e.size(); ++i) {
            Int q;
            if (!mpz_divisible_p(diff.coeff(static_cast<int>(i)).get_mpz_t(), pj.get_mpz_t()))
                throw InternalInconsistency("hensel_lift_pair: drift");
            mpz_divexact(q.get_mpz_t(), diff.coeff(static_cast<int>(i)).get_mpz_t(), pj.get_mpz_t());
            e[i] = q % p;
            if (e[i] < 0) e[i] += p;
        }
        ZpPoly E(std::move(e));
        zp_normalize(E);
        if (!E.empty()) {
            // u = t*E mod g0 ; v = (E - u*h0)/g0
            ZpPoly u = zp_mod(zp_mul(t, E, p), g0, p);
            ZpPoly v = zp_mod_div(zp_sub(E, zp_mul(u, h0, p), p), g0, p);
            G = G + from_zp(u) * IntPoly::constant(pj);
            H = H + from_zp(v) * IntPoly::constant(pj);
        }
        pj *= p;
        G = poly_symmetric_mod(G, pj);
        H = poly_symmetric_mod(H, pj);
        if (!G.is_monic() || !H.is_monic())
            throw InternalInconsistency("hensel_lift_pair: lost monicity");
    }
    G = poly_symmetric_mod(G, pj);
    H = poly_symmetric_mod(H, pj);
    // keep monic: symmetric reduction cannot disturb a monic leading term
}

// Lift the monic factorization F = prod(fac) mod p to mod p^K.
std::vector<IntPoly> hensel_lift_tree(const IntPoly& F, const std::vector<ZpPoly>& fac,
                                      const Int& p, long K) {
    if (fac.size() == 1) {
        Int pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(K));
        return {poly_symmetric_mod(F, pk)};
    }
    size_t half = fac.size() / 2;
    ZpPoly gl = {Int(1)}, hr = {Int(1)};
    for (size_t i = 0; i < half; ++i) gl = zp_mul(gl, fac[i], p);
    for (size_t i = half; i < fac.size(); ++i) hr = zp_mul(hr, fac[i], p);
    IntPoly G = from_zp(gl), H = from_zp(hr);
    hensel_lift_pair(F, G, H, p, K);
    std::vector<ZpPoly> left(fac.begin(), fac.begin() + static_cast<long>(half));
    std::vector<ZpPoly> right(fac.begin() + static_cast<long>(half), fac.end());
    auto lf = hensel_lift_tree(G, left, p, K);
    auto rf = hensel_lift_tree(H, right, p, K);
    lf.insert(lf.end(), rf.begin(), rf.end());
    return lf;
}

// Landau-Mignotte style bound on factor coefficients of a monic F.
Int factor_coeff_bound(const IntPoly& F) {
    Int sumsq = 0;
    for (const auto& c : F.coeffs()) sumsq += c * c;
    Int norm = sqrt(sumsq) + 1;
    Int b = 1;
    mpz_mul_2exp(b.get_mpz_t(), norm.get_mpz_t(), static_cast<unsigned long>(F.degree() + 1));
    return b;
}

// Factor a primitive squarefree monic polynomial of degree >= 2.
std::vector<IntPoly> factor_monic_squarefree(const IntPoly& F) {
    // pick a prime with squarefree reduction and few modular factors
    std::mt19937_64 rng(0xC0FFEE ^ static_cast<unsigned long>(F.degree()));
    std::vector<ZpPoly> best;
    Int best_p = 0;
    int tried = 0;
    for (unsigned long pl = 3; tried < 4 && pl < 10000; pl += 2) {
        Int p(pl);
        if (!is_prime(p)) continue;
        ZpPoly fp = zp_from(F, p);
        if (zp_deg(fp) != F.degree()) continue; // cannot happen (monic), kept for clarity
        ZpPoly d = zp_from(F.derivative(), p);
        if (zp_deg(zp_gcd(fp, d, p)) != 0) continue;
        auto fac = factor_mod_p(zp_make_monic(fp, p), p, rng);
        ++tried;
        if (best.empty() || fac.size() < best.size()) {
            best = fac;
            best_p = p;
        }
        if (best.size() == 1) break;
    }
    if (best.empty()) throw InternalInconsistency("factor_monic_squarefree: no usable prime");
    if (best.size() == 1) return {F};

    const Int p = best_p;
    Int bound = factor_coeff_bound(F) * 2 + 1;
    long K = 1;
    Int pk = p;
    while (pk < bound) {
        pk *= p;
        ++K;
    }
    std::sort(best.begin(), best.end(),
              [](const ZpPoly& a, const ZpPoly& b) { return zp_deg(a) < zp_deg(b); });
    std::vector<IntPoly> lifted = hensel_lift_tree(poly_symmetric_mod(F, pk), best, p, K);

    // subset recombination
    std::vector<IntPoly> result;
    IntPoly rem = F;
    std::vector<bool> used(lifted.size(), false);
    size_t remaining = lifted.size();
    for (size_t take = 1; take <= remaining; ++take) {
        bool restart = true;
        while (restart) {
            restart = false;
            if (take > remaining / 2 + (remaining % 2)) break;
            // iterate subsets of size `take` over unused indices
            std::vector<size_t> idx;
            for (size_t i = 0; i < lifted.size(); ++i)
                if (!used[i]) idx.push_back(i);
            if (take > idx.size()) break;
            std::vector<size_t> sel(take);
            for (size_t i = 0; i < take; ++i) sel[i] = i;
            while (true) {
                IntPoly cand = IntPoly::one();
                for (size_t i : sel) cand = poly_symmetric_mod(cand * lifted[idx[i]], pk);
                bool ok = false;
                // quick constant-term divisibility test
                if (rem.constant_term() != 0 && cand.constant_term() != 0 &&
                    mpz_divisible_p(rem.constant_term().get_mpz_t(),
                                    cand.constant_term().get_mpz_t())) {
                    IntPoly q;
                    if (rem.divisible_by(cand, &q)) {
                        result.push_back(cand);
                        rem = q;
                        for (size_t i : sel) used[idx[i]] = true;
                        remaining -= take;
                        ok = true;
                    }
                } else if (rem.constant_term() == 0) {
                    IntPoly q;
                    if (rem.divisible_by(cand, &q)) {
                        result.push_back(cand);
                        rem = q;
                        for (size_t i : sel) used[idx[i]] = true;
                        remaining -= take;
                        ok = true;
                    }
                }
                if (ok) {
                    restart = true;
                    break;
                }
                // next combination
                long pos = static_cast<long>(take) - 1;
                while (pos >= 0 && sel[static_cast<size_t>(pos)] ==
                                       idx.size() - take + static_cast<size_t>(pos))
                    --pos;
                if (pos < 0) break;
                ++sel[static_cast<size_t>(pos)];
                for (size_t i = static_cast<size_t>(pos) + 1; i < take; ++i)
                    sel[i] = sel[i - 1] + 1;
            }
        }
    }
    if (rem.degree() > 0) result.push_back(rem);
    return result;
}

} // namespace

std::vector<IntPoly> factor_squarefree(const IntPoly& f_in) {
    IntPoly f = f_in.primitive_part();
    if (f.degree() < 1) return {};
    std::vector<IntPoly> out;
    if (f.constant_term() == 0) {
        out.push_back(IntPoly::variable());
        f = f.divexact(IntPoly::variable());
        if (f.degree() < 1) return out;
    }
    if (f.degree() == 1) {
        out.push_back(f);
        std::sort(out.begin(), out.end(),
                  [](const IntPoly& a, const IntPoly& b) { return IntPoly::compare(a, b) < 0; });
        return out;
    }
    const Int lc = f.leading();
    if (lc == 1) {
        auto fs = factor_monic_squarefree(f);
        out.insert(out.end(), fs.begin(), fs.end());
    } else {
        // monicize: F1(x) = lc^(n-1) f(x/lc), factor, map back by x -> lc*x
        int n = f.degree();
        std::vector<Int> c(static_cast<size_t>(n) + 1);
        c[static_cast<size_t>(n)] = 1;
        Int pw = 1;
        for (int i = n - 1; i >= 0; --i) {
            c[static_cast<size_t>(i)] = f.coeff(i) * pw;
            pw *= lc;
        }
        IntPoly F1(std::move(c));
        auto fs = factor_monic_squarefree(F1);
        for (auto& g : fs) {
            // roots of g are lc * (roots of f-factor); undo the scaling
            out.push_back(g.with_scaled_roots(Rat(1, 1) / Rat(lc)).primitive_part());
        }
    }
    std::sort(out.begin(), out.end(),
              [](const IntPoly& a, const IntPoly& b) { return IntPoly::compare(a, b) < 0; });
    return out;
}

std::vector<std::pair<IntPoly, int>> factorize(const IntPoly& f_in) {
    if (f_in.is_zero()) throw InvalidInput("factorize: zero polynomial");
    IntPoly f = f_in.primitive_part();
    std::vector<std::pair<IntPoly, int>> out;
    if (f.degree() < 1) return out;
    // Yun's squarefree decomposition
    IntPoly d = f.derivative();
    IntPoly a = poly_gcd(f, d);
    IntPoly b = f.divexact(a);
    IntPoly c = d.divexact(a) - b.derivative();
    int mult = 1;
    while (b.degree() >= 1) {
        IntPoly g = poly_gcd(b, c);
        if (g.degree() >= 1)
            for (const auto& irr : factor_squarefree(g)) out.emplace_back(irr, mult);
        IntPoly b2 = b.divexact(g);
        c = c.divexact(g) - b2.derivative();
        b = b2;
        ++mult;
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return IntPoly::compare(x.first, y.first) < 0;
    });
    return out;
}

bool is_irreducible_over_q(const IntPoly& f) {
    if (f.degree() < 1) return false;
    auto fac = factorize(f);
    return fac.size() == 1 && fac[0].second == 1;
}

IntPoly cyclotomic(unsigned long n) {
    if (n == 0) throw InvalidInput("cyclotomic: n must be positive");
    if (n == 1) return IntPoly({-1, 1});
    // Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}
    auto fac = factor_integer(Int(n));
    std::vector<unsigned long> primes;
    for (auto& [p, e] : fac) {
        primes.push_back(p.get_ui());
        (void)e;
    }
    IntPoly num = IntPoly::one(), den = IntPoly::one();
    size_t np = primes.size();
    for (size_t mask = 0; mask < (1u << np); ++mask) {
        unsigned long d = n;
        int bits = 0;
        for (size_t i = 0; i < np; ++i)
            if (mask & (1u << i)) {
                d /= primes[i];
                ++bits;
            }
        IntPoly t = IntPoly::monomial(1, static_cast<int>(d)) - IntPoly::one();
        if (bits % 2 == 0)
            num = num * t;
        else
            den = den * t;
    }
    return num.divexact(den);
}

} // namespace ltk

#include "ltk/padic.hpp"

#include "ltk/errors.hpp"
#include "ltk/factorize.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace ltk {

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

namespace {

long val_int(const Int& a, const Int& p, long cap) {
    if (a == 0) return cap;
    Int t = a;
    long v = 0;
    while (v < cap && mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

Int mod_reduce(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

} // namespace

Int PadicApprox::integer_value_mod(long K) const {
    if (unit == 0) return Int(0);
    if (vshift < 0) throw InternalInconsistency("integer_value_mod: negative valuation");
    if (K > precision + vshift)
        throw InternalInconsistency("integer_value_mod: precision exceeded");
    Int m = pow_int(p, static_cast<unsigned long>(K));
    return mod_reduce(unit * pow_int(p, static_cast<unsigned long>(vshift)), m);
}

std::string PadicApprox::to_string() const {
    if (is_zero()) return "0";
    std::string s = unit.get_str();
    if (vshift != 0) s = p.get_str() + "^" + std::to_string(vshift) + " * " + s;
    return s + " + O(" + p.get_str() + "^" + std::to_string(precision + vshift) + ")";
}

PadicApprox padic_mul(const PadicApprox& a, const PadicApprox& b) {
    if (a.p != b.p) throw InternalInconsistency("padic_mul: mixed primes");
    PadicApprox r;
    r.p = a.p;
    r.precision = std::min(a.precision, b.precision);
    if (a.is_zero() || b.is_zero()) {
        r.precision = std::min(a.precision, b.precision);
        return r;
    }
    r.vshift = a.vshift + b.vshift;
    r.unit = mod_reduce(a.unit * b.unit, pow_int(a.p, static_cast<unsigned long>(r.precision)));
    return r;
}

PadicApprox padic_neg(const PadicApprox& a) {
    PadicApprox r = a;
    if (!r.is_zero()) r.unit = mod_reduce(-r.unit, r.modulus());
    return r;
}

PadicApprox padic_pow(const PadicApprox& a, unsigned long e) {
    PadicApprox r;
    r.p = a.p;
    r.precision = a.precision;
    r.vshift = 0;
    r.unit = mod_reduce(Int(1), a.modulus());
    if (e == 0) return r;
    if (a.is_zero()) {
        r.unit = 0;
        return r;
    }
    r.vshift = a.vshift * static_cast<long>(e);
    Int m = a.modulus();
    Int u;
    mpz_powm_ui(u.get_mpz_t(), a.unit.get_mpz_t(), e, m.get_mpz_t());
    r.unit = u;
    return r;
}

PadicApprox padic_from_rational(const Int& p, const Rat& x, long N) {
    PadicApprox r;
    r.p = p;
    r.precision = N;
    if (x == 0) return r;
    Int num = x.get_num(), den = x.get_den();
    long vn = val_int(num, p, 1L << 30), vd = val_int(den, p, 1L << 30);
    r.vshift = vn - vd;
    Int un = num / pow_int(p, static_cast<unsigned long>(vn));
    Int ud = den / pow_int(p, static_cast<unsigned long>(vd));
    Int m = pow_int(p, static_cast<unsigned long>(N));
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), ud.get_mpz_t(), m.get_mpz_t()) == 0)
        throw InternalInconsistency("padic_from_rational: denominator not invertible");
    r.unit = mod_reduce(un * inv, m);
    return r;
}

// ---------------------------------------------------------------------------
// Newton polygon
// ---------------------------------------------------------------------------

namespace {

struct HullPoint {
    long i;
    long v;
};

// Lower convex hull of the valuation points, left to right.
std::vector<HullPoint> lower_hull(const std::vector<HullPoint>& pts) {
    std::vector<HullPoint> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // keep b only if it is strictly below segment a-pt
            // cross product (pt - a) x (b - a)
            long long dx1 = pt.i - a.i, dy1 = pt.v - a.v;
            long long dx2 = b.i - a.i, dy2 = b.v - a.v;
            if (dy2 * dx1 >= dy1 * dx2)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    return hull;
}

} // namespace

std::vector<NPSegment> newton_polygon(const IntPoly& f, const Int& p) {
    if (f.is_zero() || f.degree() < 1) throw InvalidInput("newton_polygon: degree must be >= 1");
    if (f.constant_term() == 0) throw ZeroConstantTerm("newton_polygon: f(0) = 0");
    std::vector<HullPoint> pts;
    const long cap = 1L << 30;
    for (int i = 0; i <= f.degree(); ++i) {
        if (f.coeff(i) == 0) continue;
        pts.push_back({i, val_int(f.coeff(i), p, cap)});
    }
    auto hull = lower_hull(pts);
    std::vector<NPSegment> segs;
    for (size_t k = 1; k < hull.size(); ++k) {
        Rat slope = Rat(hull[k - 1].v - hull[k].v) / Rat(hull[k].i - hull[k - 1].i);
        segs.push_back({slope, hull[k].i - hull[k - 1].i});
    }
    std::sort(segs.begin(), segs.end(),
              [](const NPSegment& a, const NPSegment& b) { return a.slope < b.slope; });
    return segs;
}

// ---------------------------------------------------------------------------
// Hensel lifting of a simple root
// ---------------------------------------------------------------------------

PadicApprox hensel_lift(const IntPoly& f, const Int& p, const Int& seed, long N) {
    if (!is_prime(p)) throw NotPrime("hensel_lift: p is not prime");
    Int x = mod_reduce(seed, p);
    if (mod_reduce(f.evaluate(x), p) != 0)
        throw NotSimpleRoot("hensel_lift: seed is not a root mod p");
    IntPoly df = f.derivative();
    if (mod_reduce(df.evaluate(x), p) == 0)
        throw NotSimpleRoot("hensel_lift: derivative vanishes at seed mod p");
    long k = 1;
    Int mod = p;
    while (k < N) {
        long k2 = std::min(2 * k, N);
        Int mod2 = pow_int(p, static_cast<unsigned long>(k2));
        Int fx = mod_reduce(f.evaluate(x), mod2);
        Int dfx = mod_reduce(df.evaluate(x), mod2);
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), mod2.get_mpz_t()) == 0)
            throw InternalInconsistency("hensel_lift: derivative not invertible");
        x = mod_reduce(x - fx * inv, mod2);
        k = k2;
        mod = mod2;
    }
    PadicApprox r;
    r.p = p;
    long v = val_int(x, p, N);
    if (v >= N) {
        r.precision = N;
        r.vshift = 0;
        r.unit = 0; // the root is 0 to this precision; only exact 0 stays here
        if (f.constant_term() == 0 && mod_reduce(seed, p) == 0) {
            // genuine zero root
            return r;
        }
        throw AmbiguousRoot("hensel_lift: root indistinguishable from 0 at this precision");
    }
    r.vshift = v;
    r.precision = N - v;
    Int u;
    mpz_divexact(u.get_mpz_t(), x.get_mpz_t(), pow_int(p, static_cast<unsigned long>(v)).get_mpz_t());
    r.unit = mod_reduce(u, pow_int(p, static_cast<unsigned long>(r.precision)));
    return r;
}

// ---------------------------------------------------------------------------
// Factor shapes over Q_p
// ---------------------------------------------------------------------------

namespace {

// Monic polynomial approximation mod p^prec (leading coefficient exactly 1).
struct PApprox {
    std::vector<Int> c; // lowest degree first; c.back() == 1
    long prec = 0;
};

struct ShapeCtx {
    Int p;
    long budget;
    std::vector<LocalFactor> out;
};

long val_coeff(const Int& a, const Int& p, long prec) { return val_int(a, p, prec); }

PApprox papprox_from(const IntPoly& f, const Int& p, long prec) {
    PApprox r;
    r.prec = prec;
    Int m = pow_int(p, static_cast<unsigned long>(prec));
    r.c.resize(static_cast<size_t>(f.degree()) + 1);
    for (int i = 0; i <= f.degree(); ++i) r.c[static_cast<size_t>(i)] = mod_reduce(f.coeff(i), m);
    r.c.back() = 1;
    return r;
}

int pdeg(const PApprox& a) { return static_cast<int>(a.c.size()) - 1; }

// Newton polygon of an approximation; sound while hull heights < prec,
// guaranteed here by checking the constant term is visible.
std::vector<std::pair<Rat, long>> np_of_approx(const PApprox& F, const Int& p) {
    std::vector<HullPoint> pts;
    if (F.c.front() == 0)
        throw FactorizationUndetermined("newton polygon: constant term below working precision");
    for (int i = 0; i <= pdeg(F); ++i) {
        const Int& a = F.c[static_cast<size_t>(i)];
        if (a == 0) continue; // treated as above the hull; sound, see caller
        long v = val_coeff(a, p, F.prec);
        if (v >= F.prec) continue;
        pts.push_back({i, v});
    }
    auto hull = lower_hull(pts);
    std::vector<std::pair<Rat, long>> segs;
    for (size_t k = 1; k < hull.size(); ++k) {
        Rat slope = Rat(hull[k - 1].v - hull[k].v) / Rat(hull[k].i - hull[k - 1].i);
        segs.push_back({slope, hull[k].i - hull[k - 1].i});
    }
    // hull order: slopes ascending in hull coordinates = root valuation descending
    return segs; // [0] = leftmost = largest root valuation; back() = smallest
}

// F_p[x] helpers for residual polynomials (coefficients reduced mod p).
std::vector<Int> residual_poly(const PApprox& F, const Int& p, long i1, long i2, long v1,
                               const Rat& slope) {
    // segment from (i1, v1) to (i2, v2), slope = root valuation = (v1-v2)/(i2-i1) = a/e
    long e = static_cast<long>(slope.get_den().get_si());
    long a = static_cast<long>(slope.get_num().get_si());
    long len = (i2 - i1) / e;
    std::vector<Int> R(static_cast<size_t>(len) + 1, Int(0));
    for (long j = 0; j <= len; ++j) {
        long idx = i1 + j * e;
        long height = v1 - j * a; // line height at idx
        const Int& coeff = F.c[static_cast<size_t>(idx)];
        if (coeff == 0) continue;
        long v = val_coeff(coeff, p, F.prec);
        if (v > height) continue;
        if (v < height) throw InternalInconsistency("residual_poly: point below hull");
        Int u;
        mpz_divexact(u.get_mpz_t(), coeff.get_mpz_t(),
                     pow_int(p, static_cast<unsigned long>(height)).get_mpz_t());
        R[static_cast<size_t>(j)] = mod_reduce(u, p);
    }
    return R;
}

// --- small F_p[x] toolkit (duplicated from factorize.cpp on purpose: that
// one is tuned for Zassenhaus; this one stays local to the shape pipeline) ---

void fp_norm(std::vector<Int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<Int> fp_mul(const std::vector<Int>& a, const std::vector<Int>& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    std::vector<Int> r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    for (auto& v : r) v = mod_reduce(v, p);
    fp_norm(r);
    return r;
}

std::vector<Int> fp_sub(const std::vector<Int>& a, const std::vector<Int>& b, const Int& p) {
    std::vector<Int> r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = mod_reduce(r[i] - b[i], p);
    fp_norm(r);
    return r;
}

void fp_divrem(const std::vector<Int>& a, const std::vector<Int>& b, const Int& p,
               std::vector<Int>& q, std::vector<Int>& r) {
    r = a;
    q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Int(0));
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t()) == 0)
        throw InternalInconsistency("fp_divrem: leading not invertible");
    while (r.size() >= b.size() && !r.empty()) {
        size_t shift = r.size() - b.size();
        Int f = mod_reduce(r.back() * inv, p);
        if (f != 0) {
            q[shift] = f;
            for (size_t j = 0; j < b.size(); ++j)
                r[shift + j] = mod_reduce(r[shift + j] - f * b[j], p);
        }
        fp_norm(r);
        if (r.size() < b.size()) break;
    }
    fp_norm(q);
}

std::vector<Int> fp_gcd(std::vector<Int> a, std::vector<Int> b, const Int& p) {
    fp_norm(a);
    fp_norm(b);
    while (!b.empty()) {
        std::vector<Int> q, r;
        fp_divrem(a, b, p, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Int inv;
        mpz_invert(inv.get_mpz_t(), a.back().get_mpz_t(), p.get_mpz_t());
        for (auto& v : a) v = mod_reduce(v * inv, p);
    }
    return a;
}

std::vector<Int> fp_deriv(const std::vector<Int>& a, const Int& p) {
    if (a.size() <= 1) return {};
    std::vector<Int> r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = mod_reduce(a[i] * static_cast<long>(i), p);
    fp_norm(r);
    return r;
}

bool fp_separable(const std::vector<Int>& a, const Int& p) {
    auto d = fp_deriv(a, p);
    if (d.empty()) return a.size() <= 2; // constant or linear
    return fp_gcd(a, d, p).size() == 1;
}

// irreducible factorization with multiplicities over F_p (p odd), monic input
std::vector<std::pair<std::vector<Int>, long>> fp_factor(const std::vector<Int>& a, const Int& p);

} // namespace

// fp_factor borrows the Zassenhaus-side modular factorization through a tiny
// IntPoly round trip; multiplicities recovered by repeated division.
namespace {

std::vector<std::pair<std::vector<Int>, long>> fp_factor(const std::vector<Int>& a_in,
                                                         const Int& p) {
    std::vector<std::pair<std::vector<Int>, long>> out;
    std::vector<Int> a = a_in;
    fp_norm(a);
    if (a.size() <= 1) return out;
    // make monic
    {
        Int inv;
        mpz_invert(inv.get_mpz_t(), a.back().get_mpz_t(), p.get_mpz_t());
        for (auto& v : a) v = mod_reduce(v * inv, p);
    }
    // strip x^k
    long xmult = 0;
    while (a.size() > 1 && a.front() == 0) {
        a.erase(a.begin());
        ++xmult;
    }
    if (xmult > 0) out.push_back({{Int(0), Int(1)}, xmult});
    if (a.size() <= 1) return out;
    // trial-root extraction for small degree, else full DDF via IntPoly detour
    // (degrees here are tiny: residual polynomials)
    std::vector<Int> work = a;
    // squarefree-part based recursion: factor squarefree part, divide out, repeat
    while (work.size() > 1) {
        std::vector<Int> d = fp_deriv(work, p);
        std::vector<Int> g = d.empty() ? work : fp_gcd(work, d, p);
        std::vector<Int> sqf;
        if (g.size() <= 1) {
            sqf = work;
        } else {
            std::vector<Int> q, r;
            fp_divrem(work, g, p, q, r);
            sqf = q; // squarefree part (p-th power parts stay in g; fine, loop continues)
        }
        if (sqf.size() <= 1) {
            // work is a p-th power: work(x) = h(x^p) = h(x)^p mod p
            size_t pl = static_cast<size_t>(p.get_ui());
            std::vector<Int> h((work.size() - 1) / pl + 1, Int(0));
            for (size_t i = 0; i < work.size(); ++i) {
                if (work[i] != 0) {
                    if (i % pl != 0) throw InternalInconsistency("fp_factor: bad p-th power");
                    h[i / pl] = work[i];
                }
            }
            auto sub = fp_factor(h, p);
            for (auto& [fac, m] : sub) {
                bool found = false;
                for (auto& [fac2, m2] : out)
                    if (fac2 == fac) {
                        m2 += m * static_cast<long>(pl);
                        found = true;
                    }
                if (!found) out.push_back({fac, m * static_cast<long>(pl)});
            }
            return out;
        }
        // factor the squarefree part via Cantor-Zassenhaus (shared helper style)
        // distinct-degree + equal-degree, inline minimal version
        std::vector<std::vector<Int>> irr;
        {
            std::vector<Int> f = sqf;
            std::vector<Int> x = {Int(0), Int(1)};
            // x^(p^d) mod f
            auto powmod = [&](std::vector<Int> base, Int e,
                              const std::vector<Int>& mod) -> std::vector<Int> {
                std::vector<Int> res = {Int(1)};
                std::vector<Int> q, r;
                fp_divrem(base, mod, p, q, r);
                base = r;
                while (e > 0) {
                    if (mpz_odd_p(e.get_mpz_t())) {
                        fp_divrem(fp_mul(res, base, p), mod, p, q, r);
                        res = r;
                    }
                    fp_divrem(fp_mul(base, base, p), mod, p, q, r);
                    base = r;
                    e >>= 1;
                }
                return res;
            };
            std::vector<Int> xq = x;
            {
                std::vector<Int> q, r;
                fp_divrem(xq, f, p, q, r);
                xq = r;
            }
            long d = 0;
            unsigned long rng_state = 12345;
            auto next_rand = [&]() {
                rng_state = rng_state * 6364136223846793005ULL + 1442695040888963407ULL;
                return rng_state >> 16;
            };
            std::function<void(const std::vector<Int>&, long)> edf =
                [&](const std::vector<Int>& g2, long dd) {
                    if (static_cast<long>(g2.size()) - 1 == dd) {
                        irr.push_back(g2);
                        return;
                    }
                    Int pd = pow_int(p, static_cast<unsigned long>(dd));
                    Int e = (pd - 1) / 2;
                    while (true) {
                        std::vector<Int> h(g2.size() - 1);
                        for (auto& v : h) v = mod_reduce(Int(next_rand()), p);
                        fp_norm(h);
                        if (h.size() < 2 && (h.empty() || h[0] == 0)) continue;
                        std::vector<Int> w = powmod(h, e, g2);
                        if (w.empty())
                            w = {mod_reduce(Int(-1), p)};
                        else
                            w[0] = mod_reduce(w[0] - 1, p);
                        fp_norm(w);
                        if (w.empty()) continue;
                        auto g3 = fp_gcd(g2, w, p);
                        if (g3.size() > 1 && g3.size() < g2.size()) {
                            std::vector<Int> q, r;
                            fp_divrem(g2, g3, p, q, r);
                            edf(g3, dd);
                            edf(q, dd);
                            return;
                        }
                    }
                };
            while (static_cast<long>(f.size()) - 1 > 0) {
                ++d;
                if (2 * d > static_cast<long>(f.size()) - 1) {
                    irr.push_back(f);
                    break;
                }
                xq = powmod(xq, p, f);
                auto t = fp_sub(xq, x, p);
                auto g2 = fp_gcd(f, t, p);
                if (g2.size() > 1) {
                    edf(g2, d);
                    std::vector<Int> q, r;
                    fp_divrem(f, g2, p, q, r);
                    f = q;
                    fp_divrem(xq, f, p, q, r);
                    xq = r;
                }
            }
        }
        // divide each irreducible out of `work` as often as possible
        for (auto& fac : irr) {
            long mult = 0;
            while (true) {
                std::vector<Int> q, r;
                if (static_cast<long>(work.size()) < static_cast<long>(fac.size())) break;
                fp_divrem(work, fac, p, q, r);
                if (!r.empty()) break;
                work = q;
                ++mult;
            }
            if (mult > 0) {
                bool found = false;
                for (auto& [fac2, m2] : out)
                    if (fac2 == fac) {
                        m2 += mult;
                        found = true;
                    }
                if (!found) out.push_back({fac, mult});
            }
        }
        fp_norm(work);
    }
    return out;
}

// linear Hensel split of a monic approximation P = G*H mod p^prec with
// coprime monic reductions gbar, hbar.
void papprox_hensel_split(const PApprox& P, const Int& p, const std::vector<Int>& gbar,
                          const std::vector<Int>& hbar, PApprox& G, PApprox& H) {
    // Bezout mod p
    std::vector<Int> r0 = gbar, r1 = hbar, s0 = {Int(1)}, s1 = {}, t0 = {}, t1 = {Int(1)};
    while (!r1.empty()) {
        std::vector<Int> q, r;
        fp_divrem(r0, r1, p, q, r);
        auto s2 = fp_sub(s0, fp_mul(q, s1, p), p);
        auto t2 = fp_sub(t0, fp_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) throw InternalInconsistency("hensel split: factors not coprime");
    {
        Int inv;
        mpz_invert(inv.get_mpz_t(), r0[0].get_mpz_t(), p.get_mpz_t());
        for (auto& v : s0) v = mod_reduce(v * inv, p);
        for (auto& v : t0) v = mod_reduce(v * inv, p);
    }
    // s0*gbar + t0*hbar = 1 mod p
    long prec = P.prec;
    Int pj = p;
    Int pfull = pow_int(p, static_cast<unsigned long>(prec));
    std::vector<Int> Gc(gbar.begin(), gbar.end());
    std::vector<Int> Hc(hbar.begin(), hbar.end());
    auto mul_full = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
        std::vector<Int> r(a.size() + b.size() - 1, Int(0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        for (auto& v : r) v = mod_reduce(v, pfull);
        return r;
    };
    for (long j = 1; j < prec; ++j) {
        // E = (P - G*H)/p^j mod p
        auto gh = mul_full(Gc, Hc);
        std::vector<Int> E(P.c.size(), Int(0));
        bool nonzero = false;
        for (size_t i = 0; i < P.c.size(); ++i) {
            Int d = mod_reduce(P.c[i] - (i < gh.size() ? gh[i] : Int(0)), pfull);
            if (d == 0) continue;
            // d divisible by p^j by construction
            Int t;
            if (!mpz_divisible_p(d.get_mpz_t(), pj.get_mpz_t()))
                throw InternalInconsistency("hensel split: drift");
            mpz_divexact(t.get_mpz_t(), d.get_mpz_t(), pj.get_mpz_t());
            E[i] = mod_reduce(t, p);
            if (E[i] != 0) nonzero = true;
        }
        if (nonzero) {
            std::vector<Int> Ev = E;
            fp_norm(Ev);
            std::vector<Int> q, u;
            fp_divrem(fp_mul(t0, Ev, p), gbar, p, q, u);
            // v = (E - u*hbar)/gbar
            std::vector<Int> rhs = fp_sub(Ev, fp_mul(u, hbar, p), p);
            std::vector<Int> v, rr;
            fp_divrem(rhs, gbar, p, v, rr);
            if (!rr.empty()) throw InternalInconsistency("hensel split: inexact correction");
            for (size_t i = 0; i < u.size(); ++i) {
                if (i >= Gc.size()) throw InternalInconsistency("hensel split: correction too long");
                Gc[i] = mod_reduce(Gc[i] + u[i] * pj, pfull);
            }
            for (size_t i = 0; i < v.size(); ++i) {
                if (i >= Hc.size()) throw InternalInconsistency("hensel split: correction too long");
                Hc[i] = mod_reduce(Hc[i] + v[i] * pj, pfull);
            }
        }
        pj *= p;
    }
    G.prec = prec;
    G.c = std::move(Gc);
    H.prec = prec;
    H.c = std::move(Hc);
    if (G.c.back() != 1 || H.c.back() != 1)
        throw InternalInconsistency("hensel split: lost monicity");
}

void process_whole(ShapeCtx& ctx, PApprox F);

// Pure-slope handling; F monic approx whose roots all have valuation `slope`.
void process_pure(ShapeCtx& ctx, const PApprox& F, const Rat& slope) {
    const Int& p = ctx.p;
    long n = pdeg(F);
    if (n == 0) return;
    long e = static_cast<long>(slope.get_den().get_si());
    long a = static_cast<long>(slope.get_num().get_si());
    if (e > 1) {
        std::vector<Int> R = residual_poly(F, p, 0, n, (a * n) / e, slope);
        if (!fp_separable(R, p))
            throw FactorizationUndetermined(
                "ramified segment with inseparable residual polynomial (slope " +
                slope.get_str() + ")");
        for (auto& [rho, mult] : fp_factor(R, p)) {
            if (mult != 1) throw InternalInconsistency("separable residual with multiplicity");
            long t = static_cast<long>(rho.size()) - 1;
            LocalFactor lf;
            lf.degree = e * t;
            lf.e = e;
            lf.f = t;
            lf.slope = slope;
            ctx.out.push_back(std::move(lf));
        }
        return;
    }
    // integral slope m: U(y) = F(p^m y)/p^(m n) is monic with unit roots
    long m = a;
    PApprox U;
    U.prec = F.prec - m * n;
    if (U.prec < 4)
        throw FactorizationUndetermined("precision exhausted while rescaling integral segment");
    Int pm = pow_int(p, static_cast<unsigned long>(U.prec));
    U.c.resize(F.c.size());
    for (long i = 0; i <= n; ++i) {
        // U_i = F_i * p^(m i) / p^(m n) = F_i / p^(m (n - i))
        const Int& fi = F.c[static_cast<size_t>(i)];
        long down = m * (n - i);
        if (fi == 0) {
            U.c[static_cast<size_t>(i)] = 0;
            continue;
        }
        long v = val_coeff(fi, p, F.prec);
        if (v < down) throw InternalInconsistency("process_pure: coefficient below hull");
        Int t;
        mpz_divexact(t.get_mpz_t(), fi.get_mpz_t(),
                     pow_int(p, static_cast<unsigned long>(down)).get_mpz_t());
        U.c[static_cast<size_t>(i)] = mod_reduce(t, pm);
    }
    U.c.back() = 1;
    // factor the reduction
    std::vector<Int> ubar(U.c.size());
    for (size_t i = 0; i < U.c.size(); ++i) ubar[i] = mod_reduce(U.c[i], p);
    fp_norm(ubar);
    auto rfac = fp_factor(ubar, p);
    // simple case: all multiplicity 1
    bool all_simple = true;
    for (auto& [rho, mult] : rfac)
        if (mult != 1) all_simple = false;
    auto unscale_lifted = [&](const PApprox& B) {
        // factor of U (deg L) -> factor of F: coefficients B_i * p^(m (L - i))
        long L = pdeg(B);
        std::vector<Int> lc(B.c.size());
        for (long i = 0; i <= L; ++i)
            lc[static_cast<size_t>(i)] =
                B.c[static_cast<size_t>(i)] * pow_int(p, static_cast<unsigned long>(m * (L - i)));
        return lc;
    };
    if (all_simple) {
        // shapes directly; lift factors for the `lifted` field
        std::vector<PApprox> parts(rfac.size());
        if (rfac.size() == 1) {
            parts[0] = U;
        } else {
            // split off one factor at a time
            PApprox rest = U;
            std::vector<Int> acc_rest;
            for (size_t i = 0; i + 1 < rfac.size(); ++i) {
                std::vector<Int> g = rfac[i].first;
                std::vector<Int> h = {Int(1)};
                for (size_t j = i + 1; j < rfac.size(); ++j) h = fp_mul(h, rfac[j].first, p);
                PApprox G, H;
                papprox_hensel_split(rest, p, g, h, G, H);
                parts[i] = G;
                rest = H;
            }
            parts.back() = rest;
        }
        for (size_t i = 0; i < rfac.size(); ++i) {
            long t = static_cast<long>(rfac[i].first.size()) - 1;
            LocalFactor lf;
            lf.degree = t;
            lf.e = 1;
            lf.f = t;
            lf.slope = Rat(m);
            lf.lifted = unscale_lifted(parts[i]);
            lf.lifted_precision = parts[i].prec;
            ctx.out.push_back(std::move(lf));
        }
        return;
    }
    // split U into coprime parts, one per distinct irreducible of the reduction
    std::vector<PApprox> parts(rfac.size());
    {
        PApprox rest = U;
        for (size_t i = 0; i + 1 < rfac.size(); ++i) {
            std::vector<Int> g = {Int(1)};
            for (long k = 0; k < rfac[i].second; ++k) g = fp_mul(g, rfac[i].first, p);
            std::vector<Int> h = {Int(1)};
            for (size_t j = i + 1; j < rfac.size(); ++j)
                for (long k = 0; k < rfac[j].second; ++k) h = fp_mul(h, rfac[j].first, p);
            PApprox G, H;
            papprox_hensel_split(rest, p, g, h, G, H);
            parts[i] = G;
            rest = H;
        }
        parts.back() = rest;
    }
    for (size_t i = 0; i < rfac.size(); ++i) {
        long t = static_cast<long>(rfac[i].first.size()) - 1;
        long mult = rfac[i].second;
        if (mult == 1) {
            LocalFactor lf;
            lf.degree = t;
            lf.e = 1;
            lf.f = t;
            lf.slope = Rat(m);
            lf.lifted = unscale_lifted(parts[i]);
            lf.lifted_precision = parts[i].prec;
            ctx.out.push_back(std::move(lf));
            continue;
        }
        if (t >= 2)
            throw FactorizationUndetermined(
                "repeated residue factor of degree >= 2 (unramified wild refinement)");
        // rho = y - c: shift and recurse on the Newton polygon of the translate
        Int c = mod_reduce(-rfac[i].first[0], p);
        PApprox V;
        V.prec = parts[i].prec;
        Int pv = pow_int(p, static_cast<unsigned long>(V.prec));
        // V(y) = part(y + c)
        {
            std::vector<Int> cur = parts[i].c;
            // Horner-style shift mod p^prec
            std::vector<Int> res(cur.size(), Int(0));
            res[0] = cur.back();
            size_t deg = 0;
            for (long k = static_cast<long>(cur.size()) - 2; k >= 0; --k) {
                // res = res * (y + c) + cur[k]
                ++deg;
                std::vector<Int> nres(deg + 1, Int(0));
                for (size_t t2 = 0; t2 <= deg - 1; ++t2) {
                    nres[t2 + 1] = mod_reduce(nres[t2 + 1] + res[t2], pv);
                    nres[t2] = mod_reduce(nres[t2] + res[t2] * c, pv);
                }
                nres[0] = mod_reduce(nres[0] + cur[static_cast<size_t>(k)], pv);
                res = std::move(nres);
            }
            V.c = std::move(res);
        }
        if (V.c.back() != 1) throw InternalInconsistency("shift lost monicity");
        size_t base = ctx.out.size();
        process_whole(ctx, V);
        // roots of this part all sit at valuation m in the original coordinates;
        // e/f/degree data from the recursion stands, slopes are overridden and
        // lifted coefficients are rebased (shift back, then unscale).
        for (size_t k = base; k < ctx.out.size(); ++k) {
            ctx.out[k].slope = Rat(m);
            if (!ctx.out[k].lifted.empty()) {
                // shift back: g(y) -> g(y - c), then unscale by p^m
                IntPoly g(std::vector<Int>(ctx.out[k].lifted.begin(), ctx.out[k].lifted.end()));
                IntPoly shifted = g.taylor_shift(-c);
                PApprox tmp;
                tmp.prec = ctx.out[k].lifted_precision;
                Int pm2 = pow_int(p, static_cast<unsigned long>(tmp.prec));
                tmp.c.resize(static_cast<size_t>(shifted.degree()) + 1);
                for (int ii = 0; ii <= shifted.degree(); ++ii)
                    tmp.c[static_cast<size_t>(ii)] = mod_reduce(shifted.coeff(ii), pm2);
                ctx.out[k].lifted = unscale_lifted(tmp);
            }
        }
    }
}

// Full pipeline: peel integral rightmost segments, process everything pure.
void process_whole(ShapeCtx& ctx, PApprox F) {
    const Int& p = ctx.p;
    while (true) {
        if (pdeg(F) == 0) return;
        auto segs = np_of_approx(F, p); // leftmost = largest valuation first
        if (segs.empty()) return;
        if (segs.size() == 1) {
            process_pure(ctx, F, segs[0].first);
            return;
        }
        // rightmost = smallest valuation
        Rat smin = segs.back().first;
        long L = segs.back().second;
        if (smin.get_den() != 1) {
            // cannot peel integrally; all segments must resolve residually
            long n = pdeg(F);
            long i_right = n;
            for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
                const Rat& s = it->first;
                long len = it->second;
                long i1 = i_right - len;
                long e = static_cast<long>(s.get_den().get_si());
                long a2 = static_cast<long>(s.get_num().get_si());
                long v1 = 0;
                // height at i1: sum over segments to the right of their drops
                // line height at i1 = sum_{segments right of i1} len*slope + 0
                {
                    Rat h(0);
                    long ir = n;
                    for (auto jt = segs.rbegin(); jt != segs.rend(); ++jt) {
                        if (ir <= i1) break;
                        long take = std::min(jt->second, ir - i1);
                        h += jt->first * take;
                        ir -= jt->second;
                    }
                    if (h.get_den() != 1)
                        throw InternalInconsistency("non-integral vertex height");
                    v1 = static_cast<long>(h.get_num().get_si());
                }
                std::vector<Int> R = residual_poly(F, p, i1, i_right, v1, s);
                if (e > 1) {
                    if (!fp_separable(R, p))
                        throw FactorizationUndetermined(
                            "ramified segment with inseparable residual polynomial");
                    for (auto& [rho, mult] : fp_factor(R, p)) {
                        (void)mult;
                        long t = static_cast<long>(rho.size()) - 1;
                        LocalFactor lf;
                        lf.degree = e * t;
                        lf.e = e;
                        lf.f = t;
                        lf.slope = s;
                        ctx.out.push_back(std::move(lf));
                    }
                } else {
                    for (auto& [rho, mult] : fp_factor(R, p)) {
                        if (mult != 1)
                            throw FactorizationUndetermined(
                                "repeated residue factor behind a fractional segment");
                        long t = static_cast<long>(rho.size()) - 1;
                        LocalFactor lf;
                        lf.degree = t;
                        lf.e = 1;
                        lf.f = t;
                        lf.slope = s;
                        ctx.out.push_back(std::move(lf));
                    }
                }
                (void)a2;
                i_right = i1;
            }
            return;
        }
        // peel: U(y) = F(p^m y)/p^(m n); reduction = y^(n-L) * residual
        long m = static_cast<long>(smin.get_num().get_si());
        long n = pdeg(F);
        PApprox U;
        U.prec = F.prec - m * n;
        if (U.prec < 4)
            throw FactorizationUndetermined("precision exhausted while peeling segment");
        Int pm = pow_int(p, static_cast<unsigned long>(U.prec));
        U.c.resize(F.c.size());
        for (long i = 0; i <= n; ++i) {
            const Int& fi = F.c[static_cast<size_t>(i)];
            long down = m * (n - i);
            if (fi == 0) {
                U.c[static_cast<size_t>(i)] = 0;
                continue;
            }
            long v = val_coeff(fi, p, F.prec);
            if (v < down) throw InternalInconsistency("peel: coefficient below hull");
            Int t;
            mpz_divexact(t.get_mpz_t(), fi.get_mpz_t(),
                         pow_int(p, static_cast<unsigned long>(down)).get_mpz_t());
            U.c[static_cast<size_t>(i)] = mod_reduce(t, pm);
        }
        U.c.back() = 1;
        std::vector<Int> ubar(U.c.size());
        for (size_t i = 0; i < U.c.size(); ++i) ubar[i] = mod_reduce(U.c[i], p);
        fp_norm(ubar);
        // ubar = y^(n-L) * R(y), R(0) != 0
        long k = 0;
        while (k < static_cast<long>(ubar.size()) && ubar[static_cast<size_t>(k)] == 0) ++k;
        if (k != n - L) throw InternalInconsistency("peel: unexpected reduction shape");
        std::vector<Int> ybar(static_cast<size_t>(k) + 1, Int(0));
        ybar.back() = 1;
        std::vector<Int> Rbar(ubar.begin() + k, ubar.end());
        PApprox A, B;
        papprox_hensel_split(U, p, ybar, Rbar, A, B);
        // B: unit-root part = the slope-m factor of F (after unscaling);
        // A: everything of larger valuation, handled in the next pass.
        PApprox Bf;
        Bf.prec = B.prec;
        {
            long Lb = pdeg(B);
            Bf.c.resize(B.c.size());
            Int pb = pow_int(p, static_cast<unsigned long>(Bf.prec));
            for (long i = 0; i <= Lb; ++i)
                Bf.c[static_cast<size_t>(i)] = mod_reduce(
                    B.c[static_cast<size_t>(i)] * pow_int(p, static_cast<unsigned long>(m * (Lb - i))),
                    pb);
            Bf.c.back() = 1;
        }
        process_pure(ctx, Bf, Rat(m));
        PApprox Af;
        Af.prec = A.prec;
        {
            long La = pdeg(A);
            Af.c.resize(A.c.size());
            Int pa = pow_int(p, static_cast<unsigned long>(Af.prec));
            for (long i = 0; i <= La; ++i)
                Af.c[static_cast<size_t>(i)] = mod_reduce(
                    A.c[static_cast<size_t>(i)] * pow_int(p, static_cast<unsigned long>(m * (La - i))),
                    pa);
            Af.c.back() = 1;
        }
        F = std::move(Af);
    }
}

} // namespace

std::vector<LocalFactor> factor_shape_over_qp(const IntPoly& f, const Int& p, long budget) {
    if (!is_prime(p)) throw NotPrime("factor_shape_over_qp: p must be prime");
    if (f.degree() < 1) throw InvalidInput("factor_shape_over_qp: degree must be >= 1");
    if (!f.is_monic()) throw InvalidInput("factor_shape_over_qp: f must be monic");
    if (f.constant_term() == 0) throw ZeroConstantTerm("factor_shape_over_qp: f(0) = 0");
    if (poly_gcd(f, f.derivative()).degree() != 0)
        throw InvalidInput("factor_shape_over_qp: f must be squarefree over Q");
    if (budget < 8) budget = 8;
    ShapeCtx ctx{p, budget, {}};
    process_whole(ctx, papprox_from(f, p, budget));
    // consistency: degrees sum to deg f, slope-weighted degrees to v_p(f(0))
    long dsum = 0;
    Rat ssum(0);
    for (const auto& lf : ctx.out) {
        dsum += lf.degree;
        ssum += lf.slope * lf.degree;
    }
    if (dsum != f.degree() || ssum != Rat(val_int(f.constant_term(), p, 1L << 30)))
        throw InternalInconsistency("factor_shape_over_qp: shape bookkeeping failed");
    std::sort(ctx.out.begin(), ctx.out.end(), [](const LocalFactor& a, const LocalFactor& b) {
        if (a.slope != b.slope) return a.slope < b.slope;
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.lifted < b.lifted;
    });
    return ctx.out;
}

std::vector<PadicApprox> qp_rational_roots(const IntPoly& f, const Int& p, long N) {
    auto shapes = factor_shape_over_qp(f, p, N);
    std::vector<PadicApprox> roots;
    for (const auto& lf : shapes) {
        if (lf.degree != 1 || lf.lifted.empty()) continue;
        // monic linear x + c: root = -c
        Int root = -lf.lifted[0];
        PadicApprox r;
        r.p = p;
        long prec = lf.lifted_precision;
        Int m = pow_int(p, static_cast<unsigned long>(prec));
        root = mod_reduce(root, m);
        long v = val_int(root, p, prec);
        if (v >= prec) {
            r.precision = prec;
            r.vshift = 0;
            r.unit = 0;
        } else {
            r.vshift = v;
            r.precision = prec - v;
            Int u;
            mpz_divexact(u.get_mpz_t(), root.get_mpz_t(),
                         pow_int(p, static_cast<unsigned long>(v)).get_mpz_t());
            r.unit = mod_reduce(u, pow_int(p, static_cast<unsigned long>(r.precision)));
        }
        roots.push_back(std::move(r));
    }
    return roots;
}

PadicApprox select_padic_root(const IntPoly& f, const Int& p, const RootSeed& seed, long N) {
    auto roots = qp_rational_roots(f, p, N);
    std::vector<PadicApprox> matches;
    for (auto& r : roots) {
        if (seed.kind == RootSeed::Kind::Residue) {
            if (r.vshift == 0 && !r.is_zero() && mod_reduce(r.unit - seed.residue, p) == 0)
                matches.push_back(r);
        } else {
            if (Rat(r.vshift) == seed.slope) matches.push_back(r);
        }
    }
    if (matches.empty()) throw NoSuchRoot("select_padic_root: no Q_p-rational root matches seed");
    if (matches.size() > 1)
        throw AmbiguousRoot("select_padic_root: several roots match the seed at this precision");
    return matches[0];
}

} // namespace ltk

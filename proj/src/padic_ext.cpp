#include "ltk/padic_ext.hpp"

#include "ltk/errors.hpp"
#include "ltk/factorize.hpp"

#include <algorithm>

namespace ltk {

namespace {

Int mod_reduce(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// irreducibility of a monic polynomial over F_p via x^(p^d) tests
bool fp_irreducible(const IntPoly& u, const Int& p) {
    int n = u.degree();
    if (n == 1) return true;
    // x^(p^n) == x mod u and gcd(x^(p^d) - x, u) == 1 for proper prime divisors d of n
    auto powx = [&](const Int& e) {
        // x^e mod (u, p)
        std::vector<Int> base = {Int(0), Int(1)};
        std::vector<Int> result = {Int(1)};
        auto mul = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
            if (a.empty() || b.empty()) return std::vector<Int>{};
            std::vector<Int> r(a.size() + b.size() - 1, Int(0));
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
            for (auto& v : r) v = mod_reduce(v, p);
            // reduce mod u
            while (r.size() > static_cast<size_t>(n)) {
                Int top = r.back();
                r.pop_back();
                if (top == 0) continue;
                for (int j = 0; j < n; ++j)
                    r[r.size() - static_cast<size_t>(n) + static_cast<size_t>(j)] = mod_reduce(
                        r[r.size() - static_cast<size_t>(n) + static_cast<size_t>(j)] -
                            top * u.coeff(j),
                        p);
            }
            while (!r.empty() && r.back() == 0) r.pop_back();
            return r;
        };
        Int ee = e;
        while (ee > 0) {
            if (mpz_odd_p(ee.get_mpz_t())) result = mul(result, base);
            base = mul(base, base);
            ee >>= 1;
        }
        return result;
    };
    Int pn = pow_int(p, static_cast<unsigned long>(n));
    auto xpn = powx(pn);
    std::vector<Int> xpoly = {Int(0), Int(1)};
    if (xpn != xpoly) return false;
    for (auto& [d, e] : factor_integer(Int(n))) {
        (void)e;
        long dd = n / static_cast<long>(d.get_si());
        Int pd = pow_int(p, static_cast<unsigned long>(dd));
        auto xd = powx(pd);
        // gcd(xd - x, u) must be 1; since u is irreducible iff xd != x for proper divisors
        // (u squarefree candidate), equality test suffices
        if (xd == xpoly) return false;
    }
    return true;
}

} // namespace

UnramifiedRing::UnramifiedRing(Int p, int f, long N) : p_(std::move(p)), f_(f), N_(N) {
    if (f_ < 1) throw InvalidInput("UnramifiedRing: f must be >= 1");
    if (N_ < 1) throw InvalidInput("UnramifiedRing: N must be >= 1");
    pN_ = pow_int(p_, static_cast<unsigned long>(N_));
    if (f_ == 1) {
        u_ = IntPoly::variable(); // unused
        frob_image_ = one();
        return;
    }
    // canonical u: smallest coefficient vector (base-p counter) giving an
    // irreducible monic polynomial of degree f mod p
    unsigned long pl = static_cast<unsigned long>(p_.get_ui());
    for (unsigned long counter = 0;; ++counter) {
        std::vector<Int> c(static_cast<size_t>(f_) + 1, Int(0));
        unsigned long k = counter;
        for (int i = 0; i < f_; ++i) {
            c[static_cast<size_t>(i)] = static_cast<long>(k % pl);
            k /= pl;
        }
        if (k > 0) throw InternalInconsistency("UnramifiedRing: no irreducible found");
        c.back() = 1;
        IntPoly cand(std::move(c));
        if (fp_irreducible(cand, p_)) {
            u_ = cand;
            break;
        }
    }
    // Frobenius image of y: Hensel root of u congruent to y^p mod p
    Elem yp = pow(generator(), p_);
    // reduce mod p to obtain the seed
    Elem seed(static_cast<size_t>(f_));
    for (int i = 0; i < f_; ++i) seed[static_cast<size_t>(i)] = mod_reduce(yp[static_cast<size_t>(i)], p_);
    frob_image_ = hensel_root(u_, seed);
}

UnramifiedRing::Elem UnramifiedRing::one() const {
    Elem e = zero();
    e[0] = 1;
    return e;
}

UnramifiedRing::Elem UnramifiedRing::from_int(const Int& a) const {
    Elem e = zero();
    e[0] = mod_reduce(a, pN_);
    return e;
}

UnramifiedRing::Elem UnramifiedRing::generator() const {
    Elem e = zero();
    if (f_ == 1) {
        e[0] = 1; // y == 1 degenerately; callers avoid this for f == 1
        return e;
    }
    e[1] = 1;
    return e;
}

bool UnramifiedRing::is_zero(const Elem& a) const {
    for (const auto& v : a)
        if (v != 0) return false;
    return true;
}

bool UnramifiedRing::equal_mod(const Elem& a, const Elem& b, long K) const {
    Int m = pow_int(p_, static_cast<unsigned long>(std::min(K, N_)));
    for (int i = 0; i < f_; ++i)
        if (mod_reduce(a[static_cast<size_t>(i)] - b[static_cast<size_t>(i)], m) != 0) return false;
    return true;
}

UnramifiedRing::Elem UnramifiedRing::add(const Elem& a, const Elem& b) const {
    Elem r(static_cast<size_t>(f_));
    for (int i = 0; i < f_; ++i)
        r[static_cast<size_t>(i)] =
            mod_reduce(a[static_cast<size_t>(i)] + b[static_cast<size_t>(i)], pN_);
    return r;
}

UnramifiedRing::Elem UnramifiedRing::sub(const Elem& a, const Elem& b) const {
    Elem r(static_cast<size_t>(f_));
    for (int i = 0; i < f_; ++i)
        r[static_cast<size_t>(i)] =
            mod_reduce(a[static_cast<size_t>(i)] - b[static_cast<size_t>(i)], pN_);
    return r;
}

UnramifiedRing::Elem UnramifiedRing::reduce_poly(std::vector<Int> c) const {
    // reduce mod u (monic) then mod p^N
    size_t fdeg = static_cast<size_t>(f_);
    while (c.size() > fdeg) {
        Int top = mod_reduce(c.back(), pN_);
        c.pop_back();
        if (top == 0) continue;
        for (int j = 0; j < f_; ++j) {
            size_t idx = c.size() - fdeg + static_cast<size_t>(j);
            c[idx] = c[idx] - top * u_.coeff(j);
        }
    }
    c.resize(fdeg, Int(0));
    for (auto& v : c) v = mod_reduce(v, pN_);
    return c;
}

UnramifiedRing::Elem UnramifiedRing::mul(const Elem& a, const Elem& b) const {
    std::vector<Int> c(2 * static_cast<size_t>(f_) - 1, Int(0));
    for (int i = 0; i < f_; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < f_; ++j)
            c[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    }
    return reduce_poly(std::move(c));
}

UnramifiedRing::Elem UnramifiedRing::pow(const Elem& a, const Int& e) const {
    Elem result = one();
    Elem base = a;
    Int ee = e;
    while (ee > 0) {
        if (mpz_odd_p(ee.get_mpz_t())) result = mul(result, base);
        base = mul(base, base);
        ee >>= 1;
    }
    return result;
}

UnramifiedRing::Elem UnramifiedRing::reduce_mod_p(const Elem& a) const {
    Elem r(static_cast<size_t>(f_));
    for (int i = 0; i < f_; ++i) r[static_cast<size_t>(i)] = mod_reduce(a[static_cast<size_t>(i)], p_);
    return r;
}

UnramifiedRing::Elem UnramifiedRing::invert(const Elem& a) const {
    if (valuation(a) != 0) throw InternalInconsistency("UnramifiedRing::invert: not a unit");
    // residue-field inverse via Fermat, then Newton x -> x(2 - a x)
    Int pf1 = pow_int(p_, static_cast<unsigned long>(f_)) - 2;
    Elem x = reduce_mod_p(pow(a, pf1));
    long k = 1;
    while (k < N_) {
        Elem ax = mul(a, x);
        Elem t = sub(from_int(2), ax);
        x = mul(x, t);
        k *= 2;
    }
    if (!equal_mod(mul(a, x), one(), N_))
        throw InternalInconsistency("UnramifiedRing::invert: Newton failed");
    return x;
}

UnramifiedRing::Elem UnramifiedRing::frobenius(const Elem& a) const {
    if (f_ == 1) return a;
    // substitute the generator by its Frobenius image
    Elem acc = zero();
    Elem pw = one();
    for (int i = 0; i < f_; ++i) {
        if (a[static_cast<size_t>(i)] != 0) {
            Elem term = pw;
            for (auto& v : term) v = mod_reduce(v * a[static_cast<size_t>(i)], pN_);
            acc = add(acc, term);
        }
        if (i + 1 < f_) pw = mul(pw, frob_image_);
    }
    return acc;
}

UnramifiedRing::Elem UnramifiedRing::eval_intpoly(const IntPoly& g, const Elem& x) const {
    Elem acc = zero();
    for (int i = g.degree(); i >= 0; --i) {
        acc = mul(acc, x);
        acc[0] = mod_reduce(acc[0] + g.coeff(i), pN_);
    }
    return acc;
}

long UnramifiedRing::valuation(const Elem& a) const {
    long best = N_;
    for (const auto& v : a) {
        if (v == 0) continue;
        Int t = v;
        long val = 0;
        while (val < best && mpz_divisible_p(t.get_mpz_t(), p_.get_mpz_t())) {
            mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p_.get_mpz_t());
            ++val;
        }
        best = std::min(best, val);
        if (best == 0) break;
    }
    return best;
}

UnramifiedRing::Elem UnramifiedRing::divide_by_p(const Elem& a, long k) const {
    Elem r(static_cast<size_t>(f_));
    Int pk = pow_int(p_, static_cast<unsigned long>(k));
    for (int i = 0; i < f_; ++i) {
        if (!mpz_divisible_p(a[static_cast<size_t>(i)].get_mpz_t(), pk.get_mpz_t()))
            throw InternalInconsistency("UnramifiedRing::divide_by_p: not divisible");
        Int t;
        mpz_divexact(t.get_mpz_t(), a[static_cast<size_t>(i)].get_mpz_t(), pk.get_mpz_t());
        r[static_cast<size_t>(i)] = t;
    }
    return r;
}

UnramifiedRing::Elem UnramifiedRing::hensel_root(const IntPoly& g, const Elem& seed_mod_p) const {
    IntPoly dg = g.derivative();
    Elem x = reduce_mod_p(seed_mod_p);
    if (valuation(eval_intpoly(g, x)) < 1)
        throw NotSimpleRoot("hensel_root: seed is not a root mod p");
    if (valuation(eval_intpoly(dg, x)) != 0)
        throw NotSimpleRoot("hensel_root: derivative vanishes at seed");
    long k = 1;
    while (k < N_) {
        Elem gx = eval_intpoly(g, x);
        Elem dgx = eval_intpoly(dg, x);
        Elem corr = mul(gx, invert(dgx));
        x = sub(x, corr);
        k *= 2;
    }
    // final check
    if (valuation(eval_intpoly(g, x)) < N_)
        throw InternalInconsistency("hensel_root: did not converge");
    return x;
}

UnramifiedRing::Elem UnramifiedRing::root_of_unity(long m) const {
    Int pf = pow_int(p_, static_cast<unsigned long>(f_));
    if (m <= 0 || (pf - 1) % m != 0)
        throw InvalidInput("root_of_unity: order does not divide p^f - 1");
    if (m == 1) return one();
    // find a residue-field element of exact order m: candidate = g^((p^f-1)/m)
    Int cof = (pf - 1) / m;
    auto order_divides = [&](const Elem& a, long d) {
        return equal_mod(pow(a, Int(d)), one(), 1);
    };
    for (unsigned long counter = 1;; ++counter) {
        // enumerate residue-field elements
        Elem g(static_cast<size_t>(f_), Int(0));
        unsigned long k = counter;
        unsigned long pl = static_cast<unsigned long>(p_.get_ui());
        for (int i = 0; i < f_ && k > 0; ++i) {
            g[static_cast<size_t>(i)] = static_cast<long>(k % pl);
            k /= pl;
        }
        if (k > 0) throw InternalInconsistency("root_of_unity: search exhausted");
        Elem cand = reduce_mod_p(pow(g, cof));
        if (equal_mod(cand, one(), 1)) continue;
        if (is_zero(cand)) continue;
        // need exact order m: check m/q powers for prime divisors q
        bool exact = true;
        for (auto& [q, e] : factor_integer(Int(m))) {
            (void)e;
            if (order_divides(cand, m / static_cast<long>(q.get_si()))) {
                exact = false;
                break;
            }
        }
        if (!exact) continue;
        // Teichmueller lift: Hensel root of x^m - 1 from cand
        IntPoly xm = IntPoly::monomial(1, static_cast<int>(m)) - IntPoly::one();
        return hensel_root(xm, cand);
    }
}

std::optional<UnramifiedRing::Elem> UnramifiedRing::unit_nth_root(const Elem& a, long r) const {
    if (valuation(a) != 0) throw InvalidInput("unit_nth_root: not a unit");
    if (mpz_divisible_p(Int(r).get_mpz_t(), p_.get_mpz_t()))
        throw InvalidInput("unit_nth_root: r must be prime to p");
    Int group = pow_int(p_, static_cast<unsigned long>(f_)) - 1;
    Int gg;
    {
        Int rz(r);
        mpz_gcd(gg.get_mpz_t(), rz.get_mpz_t(), group.get_mpz_t());
    }
    Elem ap = reduce_mod_p(a);
    // solvable in the residue field iff a^((p^f-1)/gcd(r, p^f-1)) == 1
    if (!equal_mod(reduce_mod_p(pow(ap, group / gg)), one(), 1)) return std::nullopt;
    std::optional<Elem> residue_solution;
    // fast path: x = a^s with r*s == 1 (mod group/gg) works when gcd(r, group/gg) = 1
    {
        Int red = group / gg;
        Int s;
        if (mpz_invert(s.get_mpz_t(), Int(r).get_mpz_t(), red.get_mpz_t()) != 0) {
            Elem cand = reduce_mod_p(pow(ap, mod_reduce(s, group)));
            if (equal_mod(reduce_mod_p(pow(cand, Int(r))), ap, 1)) residue_solution = cand;
        }
    }
    if (!residue_solution) {
        // bounded residue-field scan; fields here are tiny (input validation)
        Int size = pow_int(p_, static_cast<unsigned long>(f_));
        if (size > 2000000)
            throw FactorizationUndetermined("unit_nth_root: residue field too large to scan");
        unsigned long pl = static_cast<unsigned long>(p_.get_ui());
        for (Int counter = 1; counter < size; ++counter) {
            Elem x(static_cast<size_t>(f_), Int(0));
            Int k = counter;
            for (int i = 0; i < f_; ++i) {
                x[static_cast<size_t>(i)] = mod_reduce(k, Int(pl));
                k /= static_cast<long>(pl);
            }
            if (equal_mod(reduce_mod_p(pow(x, Int(r))), ap, 1)) {
                residue_solution = x;
                break;
            }
        }
        if (!residue_solution) return std::nullopt;
    }
    // Newton on x^r - a from the residue solution; r x^(r-1) is a unit
    Elem x = *residue_solution;
    long kk = 1;
    while (kk < N_) {
        Elem xr1 = pow(x, Int(r - 1));
        Elem gx = sub(mul(xr1, x), a);
        Elem dgx = xr1;
        for (auto& v : dgx) v = mod_reduce(v * r, pN_);
        x = sub(x, mul(gx, invert(dgx)));
        kk *= 2;
    }
    if (valuation(sub(pow(x, Int(r)), a)) < N_)
        throw InternalInconsistency("unit_nth_root: lift failed");
    return x;
}

// ---------------------------------------------------------------------------
// TameRing
// ---------------------------------------------------------------------------

TameRing::TameRing(const UnramifiedRing* base, int r, UnramifiedRing::Elem c)
    : base_(base), r_(r), c_(std::move(c)) {
    if (r_ < 1) throw InvalidInput("TameRing: r must be >= 1");
    if (base_->valuation(c_) != 1)
        throw InvalidInput("TameRing: c must have valuation exactly 1");
}

TameRing::Elem TameRing::zero() const {
    return Elem(static_cast<size_t>(r_), base_->zero());
}

TameRing::Elem TameRing::one() const {
    Elem e = zero();
    e[0] = base_->one();
    return e;
}

TameRing::Elem TameRing::from_base(const UnramifiedRing::Elem& a) const {
    Elem e = zero();
    e[0] = a;
    return e;
}

TameRing::Elem TameRing::uniformizer() const {
    Elem e = zero();
    if (r_ == 1) {
        e[0] = c_;
        return e;
    }
    e[1] = base_->one();
    return e;
}

bool TameRing::equal_mod(const Elem& a, const Elem& b, long K) const {
    for (int i = 0; i < r_; ++i)
        if (!base_->equal_mod(a[static_cast<size_t>(i)], b[static_cast<size_t>(i)], K))
            return false;
    return true;
}

TameRing::Elem TameRing::mul(const Elem& a, const Elem& b) const {
    std::vector<UnramifiedRing::Elem> conv(2 * static_cast<size_t>(r_) - 1, base_->zero());
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j)
            conv[static_cast<size_t>(i + j)] = base_->add(
                conv[static_cast<size_t>(i + j)],
                base_->mul(a[static_cast<size_t>(i)], b[static_cast<size_t>(j)]));
    Elem out = zero();
    for (int k = static_cast<int>(conv.size()) - 1; k >= 0; --k) {
        if (k >= r_) {
            // X^k = c * X^(k - r)
            conv[static_cast<size_t>(k - r_)] = base_->add(
                conv[static_cast<size_t>(k - r_)], base_->mul(conv[static_cast<size_t>(k)], c_));
        } else {
            out[static_cast<size_t>(k)] = conv[static_cast<size_t>(k)];
        }
    }
    return out;
}

TameRing::Elem TameRing::pow(const Elem& a, const Int& e) const {
    Elem result = one();
    Elem base = a;
    Int ee = e;
    while (ee > 0) {
        if (mpz_odd_p(ee.get_mpz_t())) result = mul(result, base);
        base = mul(base, base);
        ee >>= 1;
    }
    return result;
}

TameRing::Elem TameRing::eval_intpoly(const IntPoly& g, const Elem& x) const {
    Elem acc = zero();
    for (int i = g.degree(); i >= 0; --i) {
        acc = mul(acc, x);
        acc[0] = base_->add(acc[0], base_->from_int(g.coeff(i)));
    }
    return acc;
}

Rat TameRing::valuation(const Elem& a) const {
    Rat best(base_->precision() + 1);
    for (int i = 0; i < r_; ++i) {
        long v = base_->valuation(a[static_cast<size_t>(i)]);
        Rat cand = Rat(v) + Rat(i, r_);
        if (cand < best) best = cand;
    }
    return best;
}

} // namespace ltk

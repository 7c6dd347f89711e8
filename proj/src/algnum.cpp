#include "ltk/algnum.hpp"

#include "ltk/errors.hpp"
#include "ltk/factorize.hpp"
#include "ltk/interval.hpp"

#include <algorithm>

namespace ltk {

namespace {

// canonical minpoly form: primitive, positive leading coefficient
IntPoly canonical_minpoly(const IntPoly& f) { return f.primitive_part(); }

CertifiedRoot exact_point(const Rat& re, const Rat& im) {
    return CertifiedRoot{QPoint{re, im}, Rat(0)};
}

} // namespace

AlgebraicNumber::AlgebraicNumber() : AlgebraicNumber(rational(Rat(0))) {}

AlgebraicNumber AlgebraicNumber::rational(const Rat& r) {
    AlgebraicNumber a{Raw{}};
    a.minpoly_ = IntPoly(std::vector<Int>{-r.get_num(), r.get_den()});
    a.root_ = exact_point(r, Rat(0));
    return a;
}

AlgebraicNumber AlgebraicNumber::from_minpoly(const IntPoly& f_in) {
    IntPoly f = canonical_minpoly(f_in);
    if (f.degree() < 1) throw InvalidInput("AlgebraicNumber: constant minimal polynomial");
    if (!is_irreducible_over_q(f))
        throw InvalidInput("AlgebraicNumber: polynomial is not irreducible over Q");
    AlgebraicNumber a{Raw{}};
    a.minpoly_ = f;
    a.root_ = isolate_canonical_root(f);
    return a;
}

AlgebraicNumber AlgebraicNumber::from_verified_factor(IntPoly f, CertifiedRoot root) {
    AlgebraicNumber a{Raw{}};
    a.minpoly_ = std::move(f);
    a.root_ = std::move(root);
    return a;
}

AlgebraicNumber AlgebraicNumber::sqrt_of(const Int& d) {
    if (d == 0 || d == 1) throw InvalidInput("sqrt_of: d must not be 0 or 1");
    IntPoly f(std::vector<Int>{-d, Int(0), Int(1)});
    auto roots = isolate_all_roots(f); // sorted by (re, im)
    AlgebraicNumber a{Raw{}};
    a.minpoly_ = f;
    // principal root: positive real part (d > 0) or positive imaginary (d < 0)
    a.root_ = roots.back();
    if (d > 0) {
        if (!(a.root_.center.re > 0)) throw InternalInconsistency("sqrt_of: ordering");
    } else {
        if (!(a.root_.center.im > 0)) throw InternalInconsistency("sqrt_of: ordering");
    }
    return a;
}

std::optional<Rat> AlgebraicNumber::as_rational() const {
    if (minpoly_.degree() != 1) return std::nullopt;
    return Rat(-minpoly_.coeff(0)) / Rat(minpoly_.coeff(1));
}

bool AlgebraicNumber::is_zero() const {
    auto r = as_rational();
    return r && *r == 0;
}

AlgebraicNumber AlgebraicNumber::negated() const {
    AlgebraicNumber a{Raw{}};
    a.minpoly_ = minpoly_.with_negated_roots();
    a.root_ = CertifiedRoot{QPoint{-root_.center.re, -root_.center.im}, root_.radius};
    if (selector_) a.selector_ = padic_neg(*selector_);
    return a;
}

AlgebraicNumber AlgebraicNumber::scaled(const Rat& s) const {
    if (s == 0) return rational(Rat(0));
    AlgebraicNumber a{Raw{}};
    a.minpoly_ = minpoly_.with_scaled_roots(s);
    a.root_ = CertifiedRoot{QPoint{root_.center.re * s, root_.center.im * s},
                            root_.radius * abs(s)};
    if (selector_) a.selector_ = padic_mul(*selector_, padic_from_rational(selector_->p, s,
                                                                           selector_->precision));
    return a;
}

AlgebraicNumber AlgebraicNumber::plus_rational(const Rat& t) const {
    if (t == 0) return *this;
    // roots + t: scale roots by den, integer-shift, scale back
    const Int u = t.get_num(), v = t.get_den();
    AlgebraicNumber a{Raw{}};
    IntPoly g = minpoly_.with_scaled_roots(Rat(v));
    g = g.taylor_shift(-u); // roots + u
    a.minpoly_ = g.with_scaled_roots(Rat(1, 1) / Rat(v)).primitive_part();
    a.root_ = CertifiedRoot{QPoint{root_.center.re + t, root_.center.im}, root_.radius};
    if (selector_) {
        PadicApprox tv = padic_from_rational(selector_->p, t, selector_->precision);
        // addition of approximations
        const PadicApprox& s = *selector_;
        long K = std::min(s.precision + std::max(s.vshift, 0L),
                          tv.precision + std::max(tv.vshift, 0L));
        if (s.vshift >= 0 && tv.vshift >= 0) {
            Int sum = s.integer_value_mod(K) + tv.integer_value_mod(K);
            Int m = pow_int(s.p, static_cast<unsigned long>(K));
            sum %= m;
            if (sum < 0) sum += m;
            PadicApprox r;
            r.p = s.p;
            long vv = 0;
            Int t2 = sum;
            while (vv < K && t2 != 0 && mpz_divisible_p(t2.get_mpz_t(), s.p.get_mpz_t())) {
                mpz_divexact(t2.get_mpz_t(), t2.get_mpz_t(), s.p.get_mpz_t());
                ++vv;
            }
            if (sum == 0) {
                r.precision = K;
                r.unit = 0;
            } else {
                r.vshift = vv;
                r.precision = K - vv;
                r.unit = t2 % pow_int(s.p, static_cast<unsigned long>(r.precision));
            }
            a.selector_ = r;
        }
    }
    return a;
}

AlgebraicNumber AlgebraicNumber::conjugate_q_over(const Int& q) const {
    if (is_zero()) throw InvalidInput("conjugate_q_over: division by zero");
    AlgebraicNumber a{Raw{}};
    a.minpoly_ = minpoly_.with_inverted_roots(q).primitive_part();
    // q / z = q * conj(z) / |z|^2 on the exact center; the enclosure is
    // re-derived from scratch against the new minimal polynomial.
    Rat n2 = qp_norm2(root_.center);
    if (sgn(n2) > 0 && sgn(root_.radius) == 0) {
        QPoint c{Rat(q) * root_.center.re / n2, -Rat(q) * root_.center.im / n2};
        a.root_ = CertifiedRoot{c, Rat(0)};
    } else {
        // nearest root of the inverted polynomial to q / center
        Rat n2c = qp_norm2(root_.center);
        QPoint approx{Rat(q) * root_.center.re / n2c, -Rat(q) * root_.center.im / n2c};
        auto cr = certify_root_near(a.minpoly_, approx, Rat(0));
        if (!cr) throw IsolationFailure("conjugate_q_over: could not certify enclosure");
        a.root_ = *cr;
    }
    return a;
}

std::string AlgebraicNumber::to_string() const {
    auto r = as_rational();
    if (r) return r->get_str();
    return "root of " + minpoly_.to_string() + " near (" +
           std::to_string(root_.center.re.get_d()) + ", " +
           std::to_string(root_.center.im.get_d()) + ")";
}

// ---------------------------------------------------------------------------
// Products and powers
// ---------------------------------------------------------------------------

std::vector<IntPoly> product_minpoly_candidates(const IntPoly& fa, const IntPoly& fb) {
    IntPoly r = product_annihilator(fa, fb);
    return factor_squarefree(squarefree_part(r));
}

std::vector<IntPoly> power_minpoly_candidates(const IntPoly& f, long m) {
    IntPoly r = power_annihilator(f, static_cast<int>(m));
    return factor_squarefree(squarefree_part(r));
}

std::vector<IntPoly> radical_minpoly_candidates(const IntPoly& f, long r) {
    return factor_squarefree(squarefree_part(f.compose_xn(static_cast<int>(r))));
}

namespace {

// p-adic candidate selection: the unique factor vanishing at `value` to the
// working precision. Requires a nonnegative-valuation value.
std::optional<IntPoly> select_factor_padic(const std::vector<IntPoly>& cands,
                                           const PadicApprox& value) {
    if (value.vshift < 0) return std::nullopt;
    long K = value.precision + value.vshift;
    if (K < 8) return std::nullopt;
    Int m = pow_int(value.p, static_cast<unsigned long>(K));
    Int v = value.integer_value_mod(K);
    std::vector<const IntPoly*> alive;
    for (const auto& h : cands) {
        Int hv = h.evaluate(v) % m;
        if (hv < 0) hv += m;
        if (hv == 0) alive.push_back(&h);
    }
    if (alive.size() == 1) return *alive[0];
    return std::nullopt; // ambiguous at this precision
}

// box selection by interval refinement
IntPoly select_factor_boxes(const std::vector<IntPoly>& cands, const IntPoly& fa,
                            const IntPoly& fb, CertifiedRoot ra, CertifiedRoot rb,
                            CertifiedRoot* out_root) {
    for (int round = 0; round < 256; ++round) {
        BoxC prod = ra.box() * rb.box();
        std::vector<const IntPoly*> alive;
        for (const auto& h : cands)
            if (eval_on_box(h, prod).contains_zero()) alive.push_back(&h);
        if (alive.empty())
            throw InternalInconsistency("minpoly_product: no candidate factor survives");
        if (alive.size() == 1) {
            const IntPoly& h = *alive[0];
            // certify an isolating enclosure inside the product box
            QPoint center = qp_mul(ra.center, rb.center);
            auto cr = certify_root_near(h, center, Rat(0));
            if (cr) {
                BoxC cb = cr->box();
                if (cb.re.lo >= prod.re.lo && cb.re.hi <= prod.re.hi && cb.im.lo >= prod.im.lo &&
                    cb.im.hi <= prod.im.hi) {
                    *out_root = *cr;
                    return h;
                }
            }
        }
        ra = refine_enclosure(fa, ra);
        rb = refine_enclosure(fb, rb);
    }
    throw IsolationFailure("minpoly_product: 256 refinement rounds exhausted");
}

} // namespace

AlgebraicNumber minpoly_product(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.is_zero() || b.is_zero()) return AlgebraicNumber::rational(Rat(0));
    if (auto r = b.as_rational()) return a.scaled(*r);
    if (auto r = a.as_rational()) return b.scaled(*r);
    auto cands = product_minpoly_candidates(a.minpoly(), b.minpoly());
    std::optional<PadicApprox> sel;
    if (a.selector() && b.selector() && a.selector()->p == b.selector()->p)
        sel = padic_mul(*a.selector(), *b.selector());
    if (sel) {
        auto h = select_factor_padic(cands, *sel);
        if (h) {
            AlgebraicNumber out =
                AlgebraicNumber::from_verified_factor(*h, isolate_canonical_root(*h));
            out.set_selector(*sel);
            return out;
        }
        throw AmbiguousRoot("minpoly_product: p-adic selection ambiguous; raise precision");
    }
    CertifiedRoot root;
    IntPoly h = select_factor_boxes(cands, a.minpoly(), b.minpoly(), a.enclosure(), b.enclosure(),
                                    &root);
    return AlgebraicNumber::from_verified_factor(h, root);
}

AlgebraicNumber minpoly_power(const AlgebraicNumber& a, long m) {
    if (m < 1) throw InvalidInput("minpoly_power: exponent must be >= 1");
    if (m == 1) return a;
    if (auto r = a.as_rational()) {
        Rat acc = 1;
        for (long i = 0; i < m; ++i) acc *= *r;
        return AlgebraicNumber::rational(acc);
    }
    auto cands = power_minpoly_candidates(a.minpoly(), m);
    if (a.selector() && a.selector()->vshift >= 0) {
        PadicApprox val = padic_pow(*a.selector(), static_cast<unsigned long>(m));
        auto h = select_factor_padic(cands, val);
        if (h) {
            AlgebraicNumber out =
                AlgebraicNumber::from_verified_factor(*h, isolate_canonical_root(*h));
            out.set_selector(val);
            return out;
        }
        throw AmbiguousRoot("minpoly_power: p-adic selection ambiguous; raise precision");
    }
    // box route
    CertifiedRoot ra = a.enclosure();
    for (int round = 0; round < 256; ++round) {
        BoxC pw = ra.box();
        BoxC acc = pw;
        for (long i = 1; i < m; ++i) acc = acc * pw;
        std::vector<const IntPoly*> alive;
        for (const auto& h : cands)
            if (eval_on_box(h, acc).contains_zero()) alive.push_back(&h);
        if (alive.empty()) throw InternalInconsistency("minpoly_power: no candidate survives");
        if (alive.size() == 1) {
            QPoint c = ra.center;
            QPoint cp = c;
            for (long i = 1; i < m; ++i) cp = qp_mul(cp, c);
            auto cr = certify_root_near(*alive[0], cp, Rat(0));
            if (cr) {
                BoxC cb = cr->box();
                if (cb.re.lo >= acc.re.lo && cb.re.hi <= acc.re.hi && cb.im.lo >= acc.im.lo &&
                    cb.im.hi <= acc.im.hi)
                    return AlgebraicNumber::from_verified_factor(*alive[0], *cr);
            }
        }
        ra = refine_enclosure(a.minpoly(), ra);
    }
    throw IsolationFailure("minpoly_power: 256 refinement rounds exhausted");
}

// ---------------------------------------------------------------------------
// Weil q-integers
// ---------------------------------------------------------------------------

bool is_weil_minpoly(const IntPoly& f_in, const Int& q) {
    Int p;
    unsigned long fexp;
    if (!prime_power_decompose(q, p, fexp))
        throw InvalidPrimePower("is_weil_q_integer: q = " + q.get_str() +
                                " is not a prime power");
    IntPoly f = f_in.primitive_part();
    if (f.degree() < 1) throw InvalidInput("is_weil_minpoly: constant polynomial");
    if (!f.is_monic()) return false; // not an algebraic integer
    if (f.constant_term() == 0) return false;
    if (f.degree() == 1) {
        Int a0 = -f.coeff(0);
        return a0 * a0 == q;
    }
    IntPoly h = squarefree_part(trace_annihilator(f, q)).primitive_part();
    // boundary roots at +-2 sqrt(q)
    IntPoly boundary(std::vector<Int>{-4 * q, Int(0), Int(1)});
    IntPoly m = poly_gcd(h, boundary);
    IntPoly h1 = (m.degree() >= 1) ? h.divexact(m).primitive_part() : h;
    if (h1.degree() == 0) return true;
    auto chain = sturm_chain(h1);
    long inside;
    Int isq = sqrt(q);
    if (isq * isq == q) {
        Rat B(2 * isq);
        inside = sign_variations_at(chain, -B) - sign_variations_at(chain, B);
    } else {
        inside = sign_variations_at_2sqrt(chain, q, -1) - sign_variations_at_2sqrt(chain, q, +1);
    }
    return inside == h1.degree();
}

bool is_weil_q_integer(const AlgebraicNumber& a, const Int& q) {
    return is_weil_minpoly(a.minpoly(), q);
}

// ---------------------------------------------------------------------------
// Roots of unity
// ---------------------------------------------------------------------------

std::optional<unsigned long> root_of_unity_order(const IntPoly& minpoly_in) {
    IntPoly f = minpoly_in.primitive_part();
    if (!f.is_monic()) return std::nullopt;
    long n = f.degree();
    if (n < 1) return std::nullopt;
    // phi(m) = n forces m <= 2 n^2 + 1 (phi(m) >= sqrt(m/2))
    unsigned long bound = 2 * static_cast<unsigned long>(n) * static_cast<unsigned long>(n) + 1;
    for (unsigned long m = 1; m <= bound; ++m) {
        if (euler_phi(m) != static_cast<unsigned long>(n)) continue;
        if (f == cyclotomic(m)) return m;
    }
    return std::nullopt;
}

std::optional<unsigned long> is_root_of_unity(const AlgebraicNumber& a) {
    return root_of_unity_order(a.minpoly());
}

bool is_in_mu(const AlgebraicNumber& a, unsigned long n) {
    auto ord = is_root_of_unity(a);
    return ord && n % *ord == 0;
}

} // namespace ltk

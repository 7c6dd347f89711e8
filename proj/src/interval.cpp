#include "ltk/interval.hpp"

#include <algorithm>

namespace ltk {

RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

Rat BoxC::diam_sq_upper() const {
    Rat w = re.width(), h = im.width();
    return w * w + h * h;
}

BoxC operator+(const BoxC& a, const BoxC& b) { return {a.re + b.re, a.im + b.im}; }
BoxC operator-(const BoxC& a, const BoxC& b) { return {a.re - b.re, a.im - b.im}; }
BoxC operator-(const BoxC& a) { return {-a.re, -a.im}; }

BoxC operator*(const BoxC& a, const BoxC& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BoxC eval_on_box(const IntPoly& f, const BoxC& z) {
    BoxC acc = BoxC::point(0, 0);
    for (int i = f.degree(); i >= 0; --i) {
        acc = acc * z;
        acc.re = acc.re + RatInterval::point(Rat(f.coeff(i)));
    }
    return acc;
}

QPoint qp_mul(const QPoint& a, const QPoint& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

QPoint qp_sub(const QPoint& a, const QPoint& b) { return {a.re - b.re, a.im - b.im}; }

Rat qp_norm2(const QPoint& a) { return a.re * a.re + a.im * a.im; }

QPoint qp_div(const QPoint& a, const QPoint& b) {
    Rat n2 = qp_norm2(b);
    return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
}

QPoint eval_at_point(const IntPoly& f, const QPoint& z) {
    QPoint acc{0, 0};
    for (int i = f.degree(); i >= 0; --i) {
        acc = qp_mul(acc, z);
        acc.re += Rat(f.coeff(i));
    }
    return acc;
}

Rat rational_sqrt_upper(const Rat& v) {
    if (sgn(v) < 0) return Rat(0);
    // scale to an integer: v = n/d; sqrt(v) = sqrt(n*d)/d
    Int n = v.get_num(), d = v.get_den();
    Int nd = n * d;
    Int s = sqrt(nd) + 1;
    return Rat(s) / Rat(d);
}

Rat rational_sqrt_lower(const Rat& v) {
    if (sgn(v) <= 0) return Rat(0);
    Int n = v.get_num(), d = v.get_den();
    Int nd = n * d;
    Int s = sqrt(nd); // floor
    return Rat(s) / Rat(d);
}

Rat dyadic_round(const Rat& v, unsigned long bits) {
    Int scaled_num = v.get_num();
    mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), bits);
    Int q;
    // round-to-nearest division
    Int den = v.get_den();
    Int r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), den.get_mpz_t());
    if (r * 2 >= den) q += 1;
    Rat out(q);
    Rat twop;
    Int tp = 1;
    mpz_mul_2exp(tp.get_mpz_t(), tp.get_mpz_t(), bits);
    return out / Rat(tp);
}

} // namespace ltk

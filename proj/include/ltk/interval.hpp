#pragma once

#include "ltk/intpoly.hpp"

namespace ltk {

/// Closed interval with exact rational endpoints.
struct RatInterval {
    Rat lo, hi;
    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}
    static RatInterval point(const Rat& v) { return {v, v}; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
};

RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a);
RatInterval operator*(const RatInterval& a, const RatInterval& b);

/// Axis-aligned complex rectangle with exact rational corners.
struct BoxC {
    RatInterval re, im;
    static BoxC point(const Rat& x, const Rat& y) {
        return {RatInterval::point(x), RatInterval::point(y)};
    }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    Rat diam_sq_upper() const; // upper bound on squared diameter
};

BoxC operator+(const BoxC& a, const BoxC& b);
BoxC operator-(const BoxC& a, const BoxC& b);
BoxC operator-(const BoxC& a);
BoxC operator*(const BoxC& a, const BoxC& b);

// Interval Horner evaluation of f over the box z.
BoxC eval_on_box(const IntPoly& f, const BoxC& z);

// Exact complex rational point arithmetic.
struct QPoint {
    Rat re, im;
};
QPoint qp_mul(const QPoint& a, const QPoint& b);
QPoint qp_sub(const QPoint& a, const QPoint& b);
QPoint qp_div(const QPoint& a, const QPoint& b); // b != 0
Rat qp_norm2(const QPoint& a);                   // |a|^2
QPoint eval_at_point(const IntPoly& f, const QPoint& z);

// Smallest rational r with r^2 >= v (within a factor 2 slack); v >= 0.
Rat rational_sqrt_upper(const Rat& v);
// A rational r with 0 <= r^2 <= v.
Rat rational_sqrt_lower(const Rat& v);

// Round to a dyadic rational with denominator 2^bits (toward nearest).
Rat dyadic_round(const Rat& v, unsigned long bits);

} // namespace ltk

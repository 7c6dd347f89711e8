#pragma once

#include "ltk/intpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ltk {

Int pow_int(const Int& base, unsigned long e);

/// Truncated p-adic number: value = p^vshift * unit with the unit known
/// modulo p^precision. The only inexact object in the library.
struct PadicApprox {
    Int p;
    long precision = 0;
    long vshift = 0;
    Int unit = 0; // in [0, p^precision); 0 encodes the exact zero

    bool is_zero() const { return unit == 0; }
    Int modulus() const { return pow_int(p, static_cast<unsigned long>(precision)); }
    // The value as an integer residue mod p^K; requires vshift >= 0 and
    // K <= precision + vshift.
    Int integer_value_mod(long K) const;
    std::string to_string() const;
};

PadicApprox padic_mul(const PadicApprox& a, const PadicApprox& b);
PadicApprox padic_neg(const PadicApprox& a);
PadicApprox padic_pow(const PadicApprox& a, unsigned long e);
// x must have nonnegative valuation at p unless vshift absorbs it.
PadicApprox padic_from_rational(const Int& p, const Rat& x, long N);

/// Newton polygon segment: slope = common valuation of the attached roots
/// (v_p(p) = 1), multiplicity = horizontal length.
struct NPSegment {
    Rat slope;
    long multiplicity;
};

// Segments in ascending slope order; requires f(0) != 0.
std::vector<NPSegment> newton_polygon(const IntPoly& f, const Int& p);

// Simple-root Hensel lifting: seed with f(seed) = 0 mod p, f'(seed) != 0 mod p.
PadicApprox hensel_lift(const IntPoly& f, const Int& p, const Int& seed, long N);

/// Shape of one Q_p-irreducible factor: degree = e * f, slope = valuation of
/// its roots; `lifted` holds monic coefficient approximations mod
/// p^lifted_precision when the pipeline produced them (lowest degree first).
struct LocalFactor {
    long degree = 0;
    long e = 1;
    long f = 1;
    Rat slope;
    std::vector<Int> lifted;
    long lifted_precision = 0;
};

// Multiset of Q_p-irreducible factor shapes of a monic squarefree f.
// Throws FactorizationUndetermined for wild segments beyond the
// slope-and-residual method; the driver retries with a doubled budget.
std::vector<LocalFactor> factor_shape_over_qp(const IntPoly& f, const Int& p, long budget);

struct RootSeed {
    enum class Kind { Residue, Slope } kind = Kind::Residue;
    Int residue; // unit residue mod p (Kind::Residue)
    Rat slope;   // target valuation (Kind::Slope)
    static RootSeed from_residue(Int r) { return {Kind::Residue, std::move(r), Rat(0)}; }
    static RootSeed from_slope(Rat s) { return {Kind::Slope, Int(0), std::move(s)}; }
};

// Certified selection of a simple Q_p-rational root matching the seed.
// Throws NoSuchRoot / AmbiguousRoot.
PadicApprox select_padic_root(const IntPoly& f, const Int& p, const RootSeed& seed, long N);

// All Q_p-rational roots (degree-1 local factors) as approximations.
std::vector<PadicApprox> qp_rational_roots(const IntPoly& f, const Int& p, long N);

} // namespace ltk

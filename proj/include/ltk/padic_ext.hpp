#pragma once

#include "ltk/intpoly.hpp"
#include "ltk/padic.hpp"

#include <vector>

namespace ltk {

/// Arithmetic in the unramified extension Z_p[y]/(u(y)) mod p^N, where u is
/// the canonical monic irreducible of degree f mod p (smallest in base-p
/// coefficient order). Elements are coefficient vectors of length f with
/// entries in [0, p^N).
class UnramifiedRing {
public:
    using Elem = std::vector<Int>;

    UnramifiedRing(Int p, int f, long N);

    const Int& p() const { return p_; }
    int f() const { return f_; }
    long precision() const { return N_; }
    const Int& modulus() const { return pN_; }
    const IntPoly& generator_minpoly() const { return u_; }

    Elem zero() const { return Elem(static_cast<size_t>(f_), Int(0)); }
    Elem one() const;
    Elem from_int(const Int& a) const;
    Elem generator() const; // the class of y

    bool is_zero(const Elem& a) const;
    bool equal_mod(const Elem& a, const Elem& b, long K) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, const Int& e) const;
    Elem invert(const Elem& a) const; // a must be a unit
    Elem frobenius(const Elem& a) const;

    Elem eval_intpoly(const IntPoly& g, const Elem& x) const;

    // min over coordinates of v_p, capped at N
    long valuation(const Elem& a) const;
    Elem divide_by_p(const Elem& a, long k) const; // exact division by p^k

    // Hensel: the root of g in this ring congruent to seed mod p, where the
    // derivative at the seed is a unit. Throws NotSimpleRoot.
    Elem hensel_root(const IntPoly& g, const Elem& seed_mod_p) const;

    // a residue-field element of multiplicative order m (m | p^f - 1),
    // Teichmueller-lifted to a root of x^m - 1
    Elem root_of_unity(long m) const;

    // solve x^r = a for a unit a, if the residue equation is solvable;
    // nullopt otherwise (r coprime to p)
    std::optional<Elem> unit_nth_root(const Elem& a, long r) const;

    Elem reduce_mod_p(const Elem& a) const;

private:
    Elem reduce_poly(std::vector<Int> c) const; // mod (u, p^N)
    Int p_;
    int f_;
    long N_;
    Int pN_;
    IntPoly u_;
    Elem frob_image_; // Frobenius image of the generator
};

/// The totally tamely ramified extension ring Z_{p^f}[X]/(X^r - c) mod p^N
/// with v_p(c) = 1 (Eisenstein, so the quotient is a domain of ramification
/// index r). Elements: vectors of r UnramifiedRing elements.
class TameRing {
public:
    using Elem = std::vector<UnramifiedRing::Elem>;

    TameRing(const UnramifiedRing* base, int r, UnramifiedRing::Elem c);

    const UnramifiedRing& base() const { return *base_; }
    int r() const { return r_; }

    Elem zero() const;
    Elem one() const;
    Elem from_base(const UnramifiedRing::Elem& a) const;
    Elem uniformizer() const; // the class of X

    bool equal_mod(const Elem& a, const Elem& b, long K) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, const Int& e) const;
    Elem eval_intpoly(const IntPoly& g, const Elem& x) const;

    // valuation in units of 1/r (returns num/den with den | r), capped
    Rat valuation(const Elem& a) const;

private:
    const UnramifiedRing* base_;
    int r_;
    UnramifiedRing::Elem c_;
};

} // namespace ltk

#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ltk {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense univariate polynomial with unbounded integer coefficients,
/// stored lowest degree first. The zero polynomial has an empty
/// coefficient vector and degree -1.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly zero() { return IntPoly(); }
    static IntPoly one() { return constant(1); }
    static IntPoly constant(Int c);
    static IntPoly variable(); // x
    static IntPoly monomial(Int c, int deg);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Int>& coeffs() const { return c_; }
    // Coefficient of x^i; zero beyond the degree.
    const Int& coeff(int i) const;
    const Int& leading() const;
    const Int& constant_term() const;
    bool is_monic() const;

    IntPoly operator-() const;
    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(const Int& k) const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return c_ != o.c_; }

    IntPoly shifted_up(int k) const; // multiply by x^k

    Int evaluate(const Int& x) const;
    Rat evaluate(const Rat& x) const;

    IntPoly derivative() const;

    Int content() const;            // gcd of coefficients, >= 0; sign of leading kept apart
    IntPoly primitive_part() const; // content removed, leading coefficient > 0

    // Exact division; throws InternalInconsistency if not divisible.
    IntPoly divexact(const IntPoly& d) const;
    bool divisible_by(const IntPoly& d, IntPoly* quotient = nullptr) const; // d | *this ?

    // Pseudo-remainder: lc(d)^(deg-degd+1) * this = q*d + r.
    IntPoly pseudo_rem(const IntPoly& d) const;

    // Substitutions on the root set.
    IntPoly with_negated_roots() const;           // roots -> -root
    IntPoly with_scaled_roots(const Rat& s) const; // roots -> s*root (primitive part)
    IntPoly with_inverted_roots(const Int& q) const; // roots -> q/root (needs nonzero constant term)
    IntPoly compose_xn(int n) const;              // f(x^n)
    IntPoly taylor_shift(const Int& a) const;     // f(x + a)

    // Total ordering for canonical output: by degree, then coefficients from the top.
    static int compare(const IntPoly& a, const IntPoly& b);

    std::string to_string(const std::string& var = "x") const;

private:
    void normalize();
    std::vector<Int> c_;
};

// Resultant of two nonzero polynomials via the subresultant PRS.
Int resultant(const IntPoly& a, const IntPoly& b);

// Primitive gcd (leading coefficient > 0).
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

IntPoly squarefree_part(const IntPoly& f);

Int discriminant(const IntPoly& f);

/// Bivariate polynomial as a vector of coefficients in y, each an IntPoly in x.
struct BiPoly {
    std::vector<IntPoly> cy; // cy[i] multiplies y^i
    int ydeg() const { return static_cast<int>(cy.size()) - 1; }
    int max_xdeg() const;
};

// Res_y(A, B) as a polynomial in x, computed by evaluation/interpolation.
IntPoly resultant_y(const BiPoly& a, const BiPoly& b);

// Annihilator of {alpha*beta : f(alpha)=0, g(beta)=0}: Res_y(f(y), y^deg(g)*g(x/y)).
IntPoly product_annihilator(const IntPoly& f, const IntPoly& g);
// Annihilator of {alpha^n}.
IntPoly power_annihilator(const IntPoly& f, int n);
// Annihilator of {alpha + q/alpha}: Res_y(f(y), y^2 - x*y + q).
IntPoly trace_annihilator(const IntPoly& f, const Int& q);

// Number of real roots of squarefree f in the half-open interval (lo, hi].
// Rational roots at the endpoints are handled by exact deflation.
long sturm_count(const IntPoly& f, const Rat& lo, const Rat& hi);

// Sturm chain of a squarefree polynomial (each member primitive, signs preserved).
std::vector<IntPoly> sturm_chain(const IntPoly& f);
long sign_variations_at(const std::vector<IntPoly>& chain, const Rat& x);
// Sign variations at +/- 2*sqrt(q) for integer q > 0 (q need not be a square),
// and at plus/minus infinity.
long sign_variations_at_2sqrt(const std::vector<IntPoly>& chain, const Int& q, int sign);
long sign_variations_at_infinity(const std::vector<IntPoly>& chain, int sign);

// Sign of a + b*sqrt(q), q > 0 not a perfect square.
int quadratic_surd_sign(const Rat& a, const Rat& b, const Int& q);

} // namespace ltk

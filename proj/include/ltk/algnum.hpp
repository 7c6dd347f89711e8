#pragma once

#include "ltk/intpoly.hpp"
#include "ltk/padic.hpp"
#include "ltk/rootbox.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ltk {

/// Exact algebraic number: primitive irreducible minimal polynomial over Q
/// (positive leading coefficient; monic iff the number is an algebraic
/// integer), a certified complex enclosure designating one root, and an
/// optional p-adic selector pinning a root in a fixed algebraic closure
/// of Q_p.
class AlgebraicNumber {
public:
    AlgebraicNumber(); // the number 0
    static AlgebraicNumber rational(const Rat& r);
    static AlgebraicNumber integer(const Int& n) { return rational(Rat(n)); }
    // Checks irreducibility, isolates the canonical (first by (re, im)) root.
    static AlgebraicNumber from_minpoly(const IntPoly& f);
    // Trusted construction from a pre-verified irreducible factor.
    static AlgebraicNumber from_verified_factor(IntPoly f, CertifiedRoot root);
    // Principal square root of a squarefree integer d != 0, 1: the positive
    // real root for d > 0, the positive-imaginary root for d < 0.
    static AlgebraicNumber sqrt_of(const Int& d);

    const IntPoly& minpoly() const { return minpoly_; }
    const CertifiedRoot& enclosure() const { return root_; }
    const std::optional<PadicApprox>& selector() const { return selector_; }
    void set_selector(PadicApprox s) { selector_ = std::move(s); }

    int degree() const { return minpoly_.degree(); }
    bool is_rational() const { return minpoly_.degree() == 1; }
    std::optional<Rat> as_rational() const;
    bool is_algebraic_integer() const { return minpoly_.is_monic(); }
    bool is_zero() const;

    AlgebraicNumber negated() const;
    AlgebraicNumber scaled(const Rat& s) const;     // s * a
    AlgebraicNumber plus_rational(const Rat& t) const;
    AlgebraicNumber conjugate_q_over(const Int& q) const; // q / a (a != 0)

    std::string to_string() const;

private:
    struct Raw {};
    explicit AlgebraicNumber(Raw) {}
    IntPoly minpoly_;
    CertifiedRoot root_;
    std::optional<PadicApprox> selector_;
    friend AlgebraicNumber minpoly_product(const AlgebraicNumber&, const AlgebraicNumber&);
    friend AlgebraicNumber minpoly_power(const AlgebraicNumber&, long m);
};

// Exact product a*b: minpoly selected among the irreducible factors of the
// product annihilator, by the p-adic selectors when both carry one, else by
// interval refinement of the enclosures (IsolationFailure after 256 rounds).
AlgebraicNumber minpoly_product(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber minpoly_power(const AlgebraicNumber& a, long m);

// Irreducible factor lists used by callers that do their own root selection.
std::vector<IntPoly> product_minpoly_candidates(const IntPoly& fa, const IntPoly& fb);
std::vector<IntPoly> power_minpoly_candidates(const IntPoly& f, long m);
std::vector<IntPoly> radical_minpoly_candidates(const IntPoly& f, long r); // factors of f(x^r)

// Weil q-integer test, fully exact (Sturm-based; no floating point).
bool is_weil_q_integer(const AlgebraicNumber& a, const Int& q);
bool is_weil_minpoly(const IntPoly& f, const Int& q);

// Some(m) with m minimal such that a^m = 1.
std::optional<unsigned long> is_root_of_unity(const AlgebraicNumber& a);
std::optional<unsigned long> root_of_unity_order(const IntPoly& minpoly);

// True iff a is a root of unity of order dividing n.
bool is_in_mu(const AlgebraicNumber& a, unsigned long n);

} // namespace ltk

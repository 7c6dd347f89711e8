#include "ltk/hondatate.hpp"

#include "ltk/errors.hpp"
#include "ltk/factorize.hpp"

#include <numeric>

namespace ltk {

std::vector<PlaceData> places_from_shapes(const std::vector<LocalFactor>& shapes, const Int& q) {
    Int p;
    unsigned long fq;
    if (!prime_power_decompose(q, p, fq))
        throw InvalidPrimePower("places_from_shapes: q is not a prime power");
    std::vector<PlaceData> out;
    for (const auto& lf : shapes) {
        PlaceData pd;
        pd.e = lf.e;
        pd.f = lf.f;
        // ord_v(pi_hat) = e_v * v_p(pi_hat) = e_i * slope; integral by
        // integrality of pi_hat on each slope
        Rat ord = lf.slope * lf.e;
        if (ord.get_den() != 1)
            throw InvalidInput("places_from_shapes: non-integral ord_v (factor is not a single "
                               "place of the assumed maximal-order context)");
        pd.ord_pi_hat = static_cast<long>(ord.get_num().get_si());
        Rat inv = Rat(pd.ord_pi_hat * pd.f, static_cast<long>(fq));
        // reduce mod 1 into [0, 1)
        Int whole = inv.get_num() / inv.get_den(); // floor for nonnegative
        inv -= Rat(whole);
        if (sgn(inv) < 0) inv += 1;
        pd.invariant = inv;
        out.push_back(pd);
    }
    return out;
}

std::vector<PlaceData> places_above_p(const IntPoly& pi_hat_minpoly, const Int& q, long budget) {
    if (!is_weil_minpoly(pi_hat_minpoly, q))
        throw InvalidInput("places_above_p: pi_hat is not a Weil q-integer");
    // pi_hat^2 == q <=> minpoly is x^2 - q, or x -+ sqrt(q) for square q
    IntPoly f = pi_hat_minpoly.primitive_part();
    {
        IntPoly x2q(std::vector<Int>{-q, Int(0), Int(1)});
        bool real_case = (f == x2q);
        if (f.degree() == 1) {
            Int root = -f.coeff(0);
            if (root * root == q) real_case = true;
        }
        if (real_case)
            throw RealWeilNumber("places_above_p: pi_hat^2 = q; Z has a real place and the "
                                 "norm-form reduction applies");
    }
    Int p;
    unsigned long fq;
    prime_power_decompose(q, p, fq);
    auto shapes = factor_shape_over_qp(f, p, budget);
    return places_from_shapes(shapes, q);
}

IsogenyInvariants isogeny_invariants(const std::vector<PlaceData>& places, long deg_z) {
    IsogenyInvariants inv;
    inv.places = places;
    Int d = 1;
    for (const auto& pl : places) {
        Int den = pl.invariant.get_den();
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), den.get_mpz_t());
    }
    inv.d = static_cast<long>(d.get_si());
    if ((inv.d * deg_z) % 2 != 0)
        throw OddProduct("isogeny_invariants: d * [Z:Q] is odd; inconsistent input");
    inv.g = inv.d * deg_z / 2;
    return inv;
}

bool check_condition_iii_1(const std::vector<PlaceData>& places, long f) {
    for (const auto& pl : places)
        if ((pl.ord_pi_hat * pl.f) % f != 0) return false;
    return true;
}

bool check_condition_iii_2_degrees(const std::vector<long>& degrees, long local_degree) {
    for (long d : degrees)
        for (long n = 2; n * local_degree <= d; ++n)
            if (d == n * local_degree) return false;
    return true;
}

bool check_condition_iii_2(const std::vector<LocalFactor>& shapes, long local_degree) {
    std::vector<long> degrees;
    degrees.reserve(shapes.size());
    for (const auto& lf : shapes) degrees.push_back(lf.degree);
    return check_condition_iii_2_degrees(degrees, local_degree);
}

} // namespace ltk

#pragma once

#include "ltk/algnum.hpp"
#include "ltk/padic.hpp"

#include <vector>

namespace ltk {

/// A place v of Z = Q(pi_hat) above p: ramification/residue data, the
/// normalized valuation of pi_hat at v, and the local Brauer invariant
/// ord_v(pi_hat) * f_v / f mod 1, stored in [0, 1).
struct PlaceData {
    long e = 1;
    long f = 1;
    long ord_pi_hat = 0; // ord_v normalized by ord_v(Z^x) = Z
    Rat invariant;       // in [0, 1)
};

/// Numerical shadow of the isogeny class attached to pi_hat: d is the order
/// of the endomorphism algebra's Brauer class, and 2g = d * [Z:Q].
struct IsogenyInvariants {
    std::vector<PlaceData> places;
    long d = 1;
    long g = 1;
};

// Places of Q(pi_hat) above p for a Weil q-integer pi_hat with pi_hat^2 != q.
// Throws RealWeilNumber when pi_hat^2 == q (Z then has a real place) and
// propagates FactorizationUndetermined from the local factorization.
std::vector<PlaceData> places_above_p(const IntPoly& pi_hat_minpoly, const Int& q, long budget);
std::vector<PlaceData> places_from_shapes(const std::vector<LocalFactor>& shapes, const Int& q);

IsogenyInvariants isogeny_invariants(const std::vector<PlaceData>& places, long deg_z);

// Theorem-condition checks on the place data.
bool check_condition_iii_1(const std::vector<PlaceData>& places, long f);
bool check_condition_iii_2(const std::vector<LocalFactor>& shapes, long local_degree);
bool check_condition_iii_2_degrees(const std::vector<long>& degrees, long local_degree);

} // namespace ltk

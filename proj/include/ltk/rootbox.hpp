#pragma once

#include "ltk/interval.hpp"

#include <optional>
#include <vector>

namespace ltk {

/// A certified complex root enclosure: some root of the polynomial lies
/// within |z - center| <= radius, and the implied box holds exactly one root.
struct CertifiedRoot {
    QPoint center;
    Rat radius;
    BoxC box() const {
        return {RatInterval(center.re - radius, center.re + radius),
                RatInterval(center.im - radius, center.im + radius)};
    }
};

// Lower bound on the squared minimal distance between distinct roots
// (Mahler). For degree <= 1 a large placeholder is returned.
Rat root_separation_sq_lower(const IntPoly& f);

// Cauchy-style upper bound on the magnitude of every root.
Rat root_magnitude_upper(const IntPoly& f);

// Certify a root near the rational starting point using exact Newton steps;
// the returned enclosure satisfies 8*radius^2 < root separation^2, so its box
// isolates exactly one root. Returns nullopt when Newton fails to settle.
std::optional<CertifiedRoot> certify_root_near(const IntPoly& f, QPoint start,
                                               const Rat& extra_radius_sq_cap);

// Isolating enclosures for all roots of a squarefree polynomial, sorted by
// (re, im). Throws IsolationFailure when numeric hints cannot be certified.
std::vector<CertifiedRoot> isolate_all_roots(const IntPoly& f);

// First root in the canonical (re, im) order.
CertifiedRoot isolate_canonical_root(const IntPoly& f);

// Shrink an enclosure around its root by a Newton polish (at least halving
// the radius); the root stays inside both the old and the new box.
CertifiedRoot refine_enclosure(const IntPoly& f, const CertifiedRoot& r);

} // namespace ltk

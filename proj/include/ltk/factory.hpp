#pragma once

#include "ltk/certifier.hpp"

#include <optional>
#include <vector>

namespace ltk {

/// An imaginary quadratic field Q(sqrt(d)) in which p splits into principal
/// primes, together with a generator omega of one prime above p and its
/// complex conjugate: omega * omega^c = p exactly.
struct SplitPrincipalWitness {
    Int d; // negative squarefree, (d/p) = 1
    Int x, y; // canonical norm-form solution (x^2 + |d| y^2 = p or 4p)
    AlgebraicNumber omega;      // positive imaginary part, v_p = 1 under the embedding
    AlgebraicNumber omega_conj; // the complex conjugate, a p-adic unit
};

// Primitive solution of x^2 + D y^2 = m with x, y > 0 (Cornacchia descent).
std::optional<std::pair<Int, Int>> cornacchia(const Int& D, const Int& m);

struct SplitSearchResult {
    std::vector<SplitPrincipalWitness> found;
    std::vector<Int> skipped_nonprincipal; // split but no principal generator
};

// The `count` smallest |d| with d negative squarefree, (d/p) = 1, and a
// principal prime above p; skipped d's are reported alongside.
SplitSearchResult find_split_principal(const Int& p, int count);

// pi_0 = omega_1 * prod_{i >= 2} omega_i^c and pi = pi_0^(1/r):
// the Lubin-Tate input for k = Q_p(pi). Throws DisjointnessFailure /
// RadicalNotDividing on invalid witness combinations.
LubinTateInput build_example(const Int& p, long r,
                             const std::vector<SplitPrincipalWitness>& witnesses);

// classify + the factory-level contract that the outcome is
// NotKummerFaithful with clause NormWeil or Theorem3.
Verdict verify_example(const LubinTateInput& input, const ClassifyOptions& opts = {});

} // namespace ltk

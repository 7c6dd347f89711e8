#pragma once

#include "ltk/intpoly.hpp"

#include <utility>
#include <vector>

namespace ltk {

// Irreducible factorization over Q of a nonzero integer polynomial,
// returned as primitive polynomials with positive leading coefficient,
// paired with multiplicities and sorted canonically (IntPoly::compare).
// The content is dropped.
std::vector<std::pair<IntPoly, int>> factorize(const IntPoly& f);

// Factors of a squarefree primitive polynomial, canonically sorted.
std::vector<IntPoly> factor_squarefree(const IntPoly& f);

bool is_irreducible_over_q(const IntPoly& f);

// n-th cyclotomic polynomial.
IntPoly cyclotomic(unsigned long n);

// Euler phi for machine-size n.
unsigned long euler_phi(unsigned long n);

// Deterministic Miller-Rabin suitable for the sizes in this project.
bool is_prime(const Int& n);

// Prime factorization of |n| (trial division + Pollard rho), sorted.
std::vector<std::pair<Int, unsigned long>> factor_integer(const Int& n);

// Writes q = p^f with p prime, f >= 1; returns false if q is not a prime power.
bool prime_power_decompose(const Int& q, Int& p, unsigned long& f);

} // namespace ltk

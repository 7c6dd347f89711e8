#pragma once

#include "ltk/algnum.hpp"
#include "ltk/hondatate.hpp"
#include "ltk/padic_ext.hpp"
#include "ltk/supernatural.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ltk {

/// Input describing k = Q_{p^f}(pi) with pi = c^(1/r): a tame-type
/// uniformizer given by an exact algebraic number c with v_p(c) = 1 and a
/// p-adic seed pinning the embedding. The residue field of k has q = p^f
/// elements and r is the ramification index over the maximal unramified
/// subfield.
struct LubinTateInput {
    Int p;
    long f = 1;
    long r = 1;
    AlgebraicNumber c;
    // Residue seed of the unit part c/p in the canonical Z_{p^f} basis
    // (length f, entries mod p^seed_precision). The seed must pin a simple
    // unit root of the rescaled minimal polynomial of c.
    std::vector<Int> c_unit_seed;
    long seed_precision = 1;

    Int q() const { return pow_int(p, static_cast<unsigned long>(f)); }
};

enum class Outcome { NotKummerFaithful, KummerFaithful, Undecided, ScopeError };
enum class Clause { TorallyNotKF, NormWeil, Theorem3, Contrapositive1, QuestionGap, Transfer, Tower, None };

std::string outcome_name(Outcome o);
std::string clause_name(Clause c);

/// One swept pi_hat candidate: a representative tuple (r_sigma), its class
/// data (s-vector over the Frobenius orbit, zeta exponent), the exact minimal
/// polynomial, a truncated p-adic value, and the Weil verdict.
struct CandidateReport {
    std::vector<int> tuple; // flat index i*r + j: orbit member i, zeta power j
    std::vector<long> s_vector;
    long zeta_exp = 0;
    long weight = 0; // sum of s_vector
    IntPoly minpoly;
    std::vector<Int> value_flat; // TameRing element, r*f entries mod p^value_precision
    long value_precision = 0;
    bool weil = false;
    // Theorem-3 evaluation outcome for Weil candidates:
    // "applied", "cond_ii_failed", "r_not_dividing_pm1", "iii_failed_<b1><b2>"
    std::string theorem3_status;
};

struct Theorem3Witness {
    CandidateReport candidate;
    std::vector<LocalFactor> local_factors;
    IsogenyInvariants invariants;
    long local_degree = 1;
    bool cond_ii = false;
    bool cond_iii1 = false;
    bool cond_iii2 = false;
};

struct TransferData {
    std::string recipe; // "nth_root" | "unramified_norm_one"
    long parameter = 1;
    Rat ratio;           // pi_0^{-f'} Nr_{k/k_0}(pi), always a rational root of unity here
    unsigned long ratio_order = 1;
};

struct Verdict {
    Outcome outcome = Outcome::ScopeError;
    Clause clause = Clause::None;
    long precision_used = 0;

    // clause 1 / 2 payload
    IntPoly nr_minpoly;
    std::optional<unsigned long> mu_order;
    bool pi_hat_sq_eq_q_reduction = false;

    // sweep payload (KummerFaithful witness, Undecided witnesses, audit)
    std::vector<CandidateReport> sweep;
    bool sweep_ran = false;
    long tuple_count = 0; // 2^(f r)

    std::optional<Theorem3Witness> theorem3;
    std::vector<std::string> notes;

    // towers
    std::string tower_kind;
    std::string tower_degree;

    // transfers
    std::optional<TransferData> transfer;
    std::shared_ptr<LubinTateInput> base_input; // transfer provenance
    std::shared_ptr<Verdict> base_verdict;

    std::string scope_error;
};

struct ClassifyOptions {
    long precision = 64;
    long max_precision = 1024;
    bool audit = false;
};

// Convenience constructors for inputs.
LubinTateInput make_input_qp(const Int& p, long r, const AlgebraicNumber& c,
                             const std::vector<Int>& unit_seed, long seed_precision = 1);
// f = 1, c rational integer multiple of p
LubinTateInput make_input_rational_c(const Int& p, long r, const Rat& c);

// Validates structure (p odd prime, r | p^f - 1, c monic irreducible with a
// v_p = 1 root at the seed) and the Galois condition. Throws InvalidInput.
void validate_input(const LubinTateInput& input, long precision);

// Nr_{k/Q_p}(pi) as an exact algebraic number.
AlgebraicNumber norm_over_qp(const LubinTateInput& input, long precision = 64);

// The deduplicated finite candidate set {prod sigma(pi)^{r_sigma}}.
std::vector<CandidateReport> candidate_pi_hats(const LubinTateInput& input, long precision = 64);
std::vector<AlgebraicNumber> candidate_pi_hats_algnum(const LubinTateInput& input,
                                                      long precision = 64);

// The verdict engine: Prop-4.1-style torus test, the norm Weil test, the
// exhaustive candidate sweep, and the Honda-Tate condition checks, with the
// documented clause precedence. Never throws for Retryable failures; these
// surface as Outcome::ScopeError after the precision ladder is exhausted.
Verdict classify(const LubinTateInput& input, const ClassifyOptions& opts = {});

enum class TowerKind { Unramified, TameGalois };
Verdict classify_tower(TowerKind kind, const Supernatural& degree);

struct TransferRecipe {
    enum class Kind { NthRoot, UnramifiedNormOne } kind;
    long parameter = 1;
    static TransferRecipe nth_root(long n) { return {Kind::NthRoot, n}; }
    static TransferRecipe unramified_norm_one(long fprime) {
        return {Kind::UnramifiedNormOne, fprime};
    }
};

struct TransferResult {
    LubinTateInput derived;
    Verdict verdict;
};

// Prop-4.13 transfers: derive a new non-Kummer-faithful input from a
// NotKummerFaithful base without re-running the sweep.
TransferResult transfer_not_kf(const LubinTateInput& base, const Verdict& base_verdict,
                               const TransferRecipe& recipe);

} // namespace ltk

#include "ltk/certifier.hpp"

#include "ltk/errors.hpp"
#include "ltk/factorize.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>

namespace ltk {

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::NotKummerFaithful: return "not_kummer_faithful";
        case Outcome::KummerFaithful: return "kummer_faithful";
        case Outcome::Undecided: return "undecided";
        case Outcome::ScopeError: return "scope_error";
    }
    return "?";
}

std::string clause_name(Clause c) {
    switch (c) {
        case Clause::TorallyNotKF: return "torally_not_kf";
        case Clause::NormWeil: return "norm_weil";
        case Clause::Theorem3: return "theorem3";
        case Clause::Contrapositive1: return "contrapositive1";
        case Clause::QuestionGap: return "question_gap";
        case Clause::Transfer: return "transfer";
        case Clause::Tower: return "tower";
        case Clause::None: return "none";
    }
    return "?";
}

namespace {

struct PadicContext {
    std::unique_ptr<UnramifiedRing> R;
    std::unique_ptr<TameRing> O;
    UnramifiedRing::Elem c_value; // valuation 1
    std::vector<UnramifiedRing::Elem> orbit;
    UnramifiedRing::Elem zeta; // primitive r-th root of unity (one() for r = 1)
    std::vector<UnramifiedRing::Elem> w; // w_i^r = c_i / c_1
    long N = 0;
};

// rescaled minimal polynomial G with G(c/p) = 0 and integral coefficients
IntPoly rescaled_unit_poly(const IntPoly& m, const Int& p) {
    long v0 = 1L << 30;
    const long cap = 1L << 30;
    std::vector<Int> c(static_cast<size_t>(m.degree()) + 1);
    for (int i = 0; i <= m.degree(); ++i) {
        c[static_cast<size_t>(i)] = m.coeff(i) * pow_int(p, static_cast<unsigned long>(i));
        if (c[static_cast<size_t>(i)] != 0) {
            Int t = c[static_cast<size_t>(i)];
            long v = 0;
            while (v < cap && mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
                ++v;
            }
            v0 = std::min(v0, v);
        }
    }
    Int pv = pow_int(p, static_cast<unsigned long>(v0));
    for (auto& x : c) {
        Int t;
        mpz_divexact(t.get_mpz_t(), x.get_mpz_t(), pv.get_mpz_t());
        x = t;
    }
    return IntPoly(std::move(c));
}

long disc_valuation(const IntPoly& f, const Int& p) {
    Int d = discriminant(f);
    long v = 0;
    while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

PadicContext build_context(const LubinTateInput& in, long N) {
    PadicContext ctx;
    // precision floor: beyond the discriminant valuation all roots separate
    long floor_n = 8;
    if (in.c.minpoly().degree() >= 2) floor_n = std::max(floor_n, disc_valuation(in.c.minpoly(), in.p) + 4);
    ctx.N = std::max(N, floor_n);
    ctx.R = std::make_unique<UnramifiedRing>(in.p, static_cast<int>(in.f), ctx.N);
    IntPoly G = rescaled_unit_poly(in.c.minpoly(), in.p);
    if (static_cast<long>(in.c_unit_seed.size()) != in.f)
        throw InvalidInput("input: seed must have f entries");
    UnramifiedRing::Elem seed(in.c_unit_seed.begin(), in.c_unit_seed.end());
    UnramifiedRing::Elem u = ctx.R->hensel_root(G, seed); // throws NotSimpleRoot
    ctx.c_value = ctx.R->mul(ctx.R->from_int(in.p), u);
    if (ctx.R->valuation(ctx.R->eval_intpoly(in.c.minpoly(), ctx.c_value)) < ctx.N)
        throw InternalInconsistency("build_context: c value does not satisfy its minimal polynomial");
    ctx.orbit.push_back(ctx.c_value);
    for (long i = 1; i < in.f; ++i) ctx.orbit.push_back(ctx.R->frobenius(ctx.orbit.back()));
    ctx.zeta = in.r > 1 ? ctx.R->root_of_unity(in.r) : ctx.R->one();
    // w_i^r = c_i / c_1
    UnramifiedRing::Elem u1 = ctx.R->divide_by_p(ctx.c_value, 1);
    UnramifiedRing::Elem u1inv = ctx.R->invert(u1);
    ctx.w.push_back(ctx.R->one());
    for (long i = 1; i < in.f; ++i) {
        UnramifiedRing::Elem ui = ctx.R->divide_by_p(ctx.orbit[static_cast<size_t>(i)], 1);
        UnramifiedRing::Elem ratio = ctx.R->mul(ui, u1inv);
        auto wi = ctx.R->unit_nth_root(ratio, in.r);
        if (!wi)
            throw InvalidInput(
                "input: k is not Galois over Q_p (a Frobenius twist of c has no r-th root in the "
                "unramified field)");
        ctx.w.push_back(*wi);
    }
    ctx.O = std::make_unique<TameRing>(ctx.R.get(), static_cast<int>(in.r), ctx.c_value);
    return ctx;
}

// select the unique irreducible candidate vanishing at `value` in R
IntPoly select_by_ring_value(const std::vector<IntPoly>& cands, const UnramifiedRing& R,
                             const UnramifiedRing::Elem& value) {
    const IntPoly* hit = nullptr;
    for (const auto& h : cands) {
        if (R.valuation(R.eval_intpoly(h, value)) >= R.precision()) {
            if (hit) throw AmbiguousRoot("minimal polynomial selection ambiguous in Z_{p^f}");
            hit = &h;
        }
    }
    if (!hit) throw InternalInconsistency("no candidate minimal polynomial vanishes at the value");
    return *hit;
}

IntPoly select_by_tame_value(const std::vector<IntPoly>& cands, const TameRing& O,
                             const TameRing::Elem& value, long N) {
    const IntPoly* hit = nullptr;
    for (const auto& h : cands) {
        if (O.valuation(O.eval_intpoly(h, value)) >= Rat(N)) {
            if (hit) throw AmbiguousRoot("minimal polynomial selection ambiguous in the tame ring");
            hit = &h;
        }
    }
    if (!hit) throw InternalInconsistency("no candidate minimal polynomial vanishes at the value");
    return *hit;
}

// minimal polynomial and ring value of prod_i orbit[i]^{s_i}
struct GammaInfo {
    IntPoly minpoly;
    UnramifiedRing::Elem value;
};

GammaInfo gamma_of_svector(const PadicContext& ctx, const LubinTateInput& in,
                           const std::vector<long>& svec) {
    GammaInfo g;
    g.minpoly = IntPoly(std::vector<Int>{Int(-1), Int(1)}); // x - 1
    g.value = ctx.R->one();
    for (size_t i = 0; i < svec.size(); ++i) {
        for (long k = 0; k < svec[i]; ++k) {
            UnramifiedRing::Elem nv = ctx.R->mul(g.value, ctx.orbit[i]);
            IntPoly nm;
            if (g.minpoly.degree() == 1 && g.minpoly.coeff(1) == 1 && g.minpoly.coeff(0) == -1) {
                nm = in.c.minpoly(); // 1 * c_i
            } else {
                auto cands = product_minpoly_candidates(g.minpoly, in.c.minpoly());
                nm = select_by_ring_value(cands, *ctx.R, nv);
            }
            g.minpoly = nm;
            g.value = nv;
        }
    }
    return g;
}

std::vector<Int> flatten_tame(const TameRing::Elem& v) {
    std::vector<Int> out;
    for (const auto& base : v)
        for (const auto& x : base) out.push_back(x);
    return out;
}

std::vector<CandidateReport> sweep_candidates(const PadicContext& ctx, const LubinTateInput& in) {
    long fr = in.f * in.r;
    if (fr > 16)
        throw FactorizationUndetermined("candidate sweep with f*r > 16 embeddings is out of scope");
    // enumerate all tuples, group by (s-vector, zeta exponent)
    std::map<std::pair<std::vector<long>, long>, unsigned long> classes;
    for (unsigned long mask = 0; mask < (1ul << fr); ++mask) {
        std::vector<long> svec(static_cast<size_t>(in.f), 0);
        long a = 0;
        for (long i = 0; i < in.f; ++i)
            for (long j = 0; j < in.r; ++j)
                if (mask & (1ul << (i * in.r + j))) {
                    ++svec[static_cast<size_t>(i)];
                    a = (a + j) % in.r;
                }
        auto key = std::make_pair(svec, a);
        if (!classes.count(key)) classes[key] = mask;
    }
    // cache gamma data per s-vector
    std::map<std::vector<long>, GammaInfo> gammas;
    std::vector<CandidateReport> reports;
    for (const auto& [key, mask] : classes) {
        const auto& [svec, a] = key;
        CandidateReport rep;
        rep.s_vector = svec;
        rep.zeta_exp = a;
        rep.weight = 0;
        for (long s : svec) rep.weight += s;
        for (long b = 0; b < fr; ++b)
            rep.tuple.push_back((mask >> b) & 1u);
        auto it = gammas.find(svec);
        if (it == gammas.end()) it = gammas.emplace(svec, gamma_of_svector(ctx, in, svec)).first;
        const GammaInfo& gi = it->second;
        // candidate value in the tame ring
        UnramifiedRing::Elem base = ctx.R->pow(ctx.zeta, Int(a));
        for (size_t i = 0; i < svec.size(); ++i)
            base = ctx.R->mul(base, ctx.R->pow(ctx.w[i], Int(svec[static_cast<size_t>(i)])));
        TameRing::Elem value = ctx.O->from_base(base);
        value = ctx.O->mul(value, ctx.O->pow(ctx.O->uniformizer(), Int(rep.weight)));
        // minimal polynomial: the factor of M_gamma(x^r) vanishing at the value
        if (in.r == 1) {
            rep.minpoly = gi.minpoly;
        } else {
            auto cands = radical_minpoly_candidates(gi.minpoly, in.r);
            rep.minpoly = select_by_tame_value(cands, *ctx.O, value, ctx.N);
        }
        rep.value_flat = flatten_tame(value);
        rep.value_precision = ctx.N;
        rep.weil = is_weil_minpoly(rep.minpoly, in.q());
        reports.push_back(std::move(rep));
    }
    // dedup by (minpoly, value)
    std::vector<CandidateReport> dedup;
    for (auto& rep : reports) {
        bool dup = false;
        for (auto& seen : dedup) {
            if (IntPoly::compare(rep.minpoly, seen.minpoly) == 0 &&
                rep.value_flat == seen.value_flat) {
                dup = true;
                break;
            }
        }
        if (!dup) dedup.push_back(std::move(rep));
    }
    // canonical order: weight, then zeta exponent, then s-vector
    std::sort(dedup.begin(), dedup.end(), [](const CandidateReport& x, const CandidateReport& y) {
        if (x.weight != y.weight) return x.weight < y.weight;
        if (x.zeta_exp != y.zeta_exp) return x.zeta_exp < y.zeta_exp;
        return x.s_vector < y.s_vector;
    });
    return dedup;
}

// Nr = (-1)^((r-1) f) * prod_i c_i
struct NormInfo {
    IntPoly minpoly;
    UnramifiedRing::Elem value;
    int sign = 1;
};

NormInfo norm_info(const PadicContext& ctx, const LubinTateInput& in) {
    std::vector<long> all_ones(static_cast<size_t>(in.f), 1);
    GammaInfo g = gamma_of_svector(ctx, in, all_ones);
    NormInfo n;
    n.sign = ((in.r - 1) * in.f) % 2 == 0 ? 1 : -1;
    n.minpoly = n.sign == 1 ? g.minpoly : g.minpoly.with_negated_roots();
    n.value = n.sign == 1 ? g.value : ctx.R->sub(ctx.R->zero(), g.value);
    return n;
}

std::optional<PadicApprox> qp_selector_from_ring(const UnramifiedRing& R,
                                                 const UnramifiedRing::Elem& v, const Int& p) {
    // representable iff only the constant coordinate is nonzero
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] != 0) return std::nullopt;
    PadicApprox a;
    a.p = p;
    long val = R.valuation(v);
    if (val >= R.precision()) {
        a.precision = R.precision();
        a.unit = 0;
        return a;
    }
    a.vshift = val;
    a.precision = R.precision() - val;
    Int t;
    mpz_divexact(t.get_mpz_t(), v[0].get_mpz_t(),
                 pow_int(p, static_cast<unsigned long>(val)).get_mpz_t());
    a.unit = t % pow_int(p, static_cast<unsigned long>(a.precision));
    return a;
}

bool c_is_qp_rational(const PadicContext& ctx) {
    for (size_t i = 1; i < ctx.c_value.size(); ++i)
        if (ctx.c_value[i] != 0) return false;
    return true;
}

// exact certification that c (the selected root) lies in Q_p: its minimal
// polynomial has a degree-1 local factor whose root matches the value to a
// precision past the discriminant valuation
bool certify_c_in_qp(const PadicContext& ctx, const LubinTateInput& in) {
    if (!c_is_qp_rational(ctx)) return false;
    if (in.c.minpoly().degree() == 1) return true;
    long need = disc_valuation(in.c.minpoly(), in.p) + 2;
    long N = std::max(ctx.N, need);
    auto roots = qp_rational_roots(in.c.minpoly(), in.p, N);
    Int cv = ctx.c_value[0] % pow_int(in.p, static_cast<unsigned long>(need));
    for (const auto& root : roots) {
        if (root.vshift != 1) continue;
        Int rv = root.integer_value_mod(need);
        if ((rv - cv) % pow_int(in.p, static_cast<unsigned long>(need)) == 0) return true;
    }
    return false;
}

bool pi_hat_squared_is_q(const IntPoly& h, const Int& q) {
    if (h.degree() == 2 && h.is_monic() && h.coeff(1) == 0 && h.coeff(0) == -q) return true;
    if (h.degree() == 1 && h.is_monic()) {
        Int root = -h.coeff(0);
        return root * root == q;
    }
    return false;
}

Verdict classify_at_precision(const LubinTateInput& in, long N, bool audit) {
    PadicContext ctx = build_context(in, N);
    Verdict v;
    v.precision_used = ctx.N;
    v.tuple_count = 1L << (in.f * in.r);
    const Int q = in.q();

    NormInfo nr = norm_info(ctx, in);
    v.nr_minpoly = nr.minpoly;

    // clause 1: q^{-1} Nr in mu_{p-1}
    IntPoly scaled = nr.minpoly.with_scaled_roots(Rat(1) / Rat(q));
    auto order = root_of_unity_order(scaled);
    unsigned long pm1 = static_cast<unsigned long>(Int(in.p - 1).get_ui());
    bool clause1 = order && pm1 % *order == 0;
    if (clause1) {
        v.outcome = Outcome::NotKummerFaithful;
        v.clause = Clause::TorallyNotKF;
        v.mu_order = order;
        if (audit) {
            v.sweep = sweep_candidates(ctx, in);
            v.sweep_ran = true;
        }
        return v;
    }

    // clause 2: Nr in W(q)
    if (is_weil_minpoly(nr.minpoly, q)) {
        v.outcome = Outcome::NotKummerFaithful;
        v.clause = Clause::NormWeil;
        if (audit) {
            v.sweep = sweep_candidates(ctx, in);
            v.sweep_ran = true;
        }
        return v;
    }

    // clause 3: the sweep
    v.sweep = sweep_candidates(ctx, in);
    v.sweep_ran = true;
    std::vector<CandidateReport*> weil;
    for (auto& rep : v.sweep)
        if (rep.weil) weil.push_back(&rep);

    if (weil.empty()) {
        v.outcome = Outcome::KummerFaithful;
        v.clause = Clause::Contrapositive1;
        return v;
    }

    // clause 5: Theorem-3 checks per Weil candidate
    bool cond_ii = certify_c_in_qp(ctx, in);
    bool zeta_in_qp = (pm1 % static_cast<unsigned long>(in.r)) == 0;
    for (CandidateReport* rep : weil) {
        if (pi_hat_squared_is_q(rep->minpoly, q)) {
            // the norm-form reduction: clause 1 must fire on re-run
            if (clause1) {
                v.outcome = Outcome::NotKummerFaithful;
                v.clause = Clause::TorallyNotKF;
                v.pi_hat_sq_eq_q_reduction = true;
                return v;
            }
            throw InternalInconsistency(
                "pi_hat^2 = q reached with q^{-1}Nr not a root of unity; this contradicts the "
                "norm identity");
        }
        if (!cond_ii) {
            rep->theorem3_status = "cond_ii_failed";
            v.notes.push_back("theorem3 skipped: pi^r lies in Q_{p^f} but not certifiably in Q_p");
            continue;
        }
        if (!zeta_in_qp) {
            rep->theorem3_status = "r_not_dividing_pm1";
            v.notes.push_back(
                "theorem3 skipped: r does not divide p-1, the implemented local-degree argument "
                "needs mu_r inside Q_p");
            continue;
        }
        long local_degree = in.r / std::gcd(in.r, rep->weight);
        auto shapes = factor_shape_over_qp(rep->minpoly, in.p, ctx.N);
        auto places = places_from_shapes(shapes, q);
        bool iii1 = check_condition_iii_1(places, in.f);
        bool iii2 = check_condition_iii_2(shapes, local_degree);
        if (iii1 && iii2) {
            rep->theorem3_status = "applied";
            Theorem3Witness w;
            w.candidate = *rep;
            w.local_factors = shapes;
            w.invariants = isogeny_invariants(places, rep->minpoly.degree());
            w.local_degree = local_degree;
            w.cond_ii = true;
            w.cond_iii1 = iii1;
            w.cond_iii2 = iii2;
            v.theorem3 = std::move(w);
            v.outcome = Outcome::NotKummerFaithful;
            v.clause = Clause::Theorem3;
            return v;
        }
        rep->theorem3_status =
            std::string("iii_failed_") + (iii1 ? "1" : "0") + (iii2 ? "1" : "0");
        v.notes.push_back("theorem3 conditions failed for a Weil candidate: iii-1 " +
                          std::string(iii1 ? "holds" : "fails") + ", iii-2 " +
                          std::string(iii2 ? "holds" : "fails"));
    }

    v.outcome = Outcome::Undecided;
    v.clause = Clause::QuestionGap;
    return v;
}

} // namespace

LubinTateInput make_input_qp(const Int& p, long r, const AlgebraicNumber& c,
                             const std::vector<Int>& unit_seed, long seed_precision) {
    LubinTateInput in;
    in.p = p;
    in.f = 1;
    in.r = r;
    in.c = c;
    in.c_unit_seed = unit_seed;
    in.seed_precision = seed_precision;
    return in;
}

LubinTateInput make_input_rational_c(const Int& p, long r, const Rat& c) {
    if (c.get_den() != 1) throw InvalidInput("rational c must be an integer uniformizer");
    Int cz = c.get_num();
    if (!mpz_divisible_p(cz.get_mpz_t(), p.get_mpz_t()))
        throw InvalidInput("c must have p-adic valuation 1");
    Int u;
    mpz_divexact(u.get_mpz_t(), cz.get_mpz_t(), p.get_mpz_t());
    if (mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t()))
        throw InvalidInput("c must have p-adic valuation exactly 1");
    LubinTateInput in;
    in.p = p;
    in.f = 1;
    in.r = r;
    in.c = AlgebraicNumber::rational(c);
    Int seed = u % p;
    if (seed < 0) seed += p;
    in.c_unit_seed = {seed};
    return in;
}

void validate_input(const LubinTateInput& in, long precision) {
    if (in.p < 2 || !is_prime(in.p)) throw NotPrime("p = " + in.p.get_str() + " is not prime");
    if (in.p == 2)
        throw InvalidInput("p = 2 is out of scope (the torsion of Z_2^x differs from mu_{p-1})");
    if (in.f < 1) throw InvalidInput("f must be >= 1");
    if (in.r < 1) throw InvalidInput("r must be >= 1");
    Int qm1 = in.q() - 1;
    if (!mpz_divisible_p(qm1.get_mpz_t(), Int(in.r).get_mpz_t()))
        throw InvalidInput("r must divide p^f - 1 (k must contain mu_r to be Galois)");
    if (!in.c.minpoly().is_monic())
        throw InvalidInput("c must be an algebraic integer (monic minimal polynomial)");
    build_context(in, precision); // throws on seed/Galois problems
}

AlgebraicNumber norm_over_qp(const LubinTateInput& in, long precision) {
    PadicContext ctx = build_context(in, precision);
    NormInfo nr = norm_info(ctx, in);
    AlgebraicNumber out = AlgebraicNumber::from_verified_factor(
        nr.minpoly, isolate_canonical_root(nr.minpoly));
    auto sel = qp_selector_from_ring(*ctx.R, nr.value, in.p);
    if (sel) out.set_selector(*sel);
    return out;
}

std::vector<CandidateReport> candidate_pi_hats(const LubinTateInput& in, long precision) {
    PadicContext ctx = build_context(in, precision);
    return sweep_candidates(ctx, in);
}

std::vector<AlgebraicNumber> candidate_pi_hats_algnum(const LubinTateInput& in, long precision) {
    auto reps = candidate_pi_hats(in, precision);
    std::vector<AlgebraicNumber> out;
    out.reserve(reps.size());
    for (const auto& rep : reps)
        out.push_back(AlgebraicNumber::from_verified_factor(
            rep.minpoly, isolate_canonical_root(rep.minpoly)));
    return out;
}

Verdict classify(const LubinTateInput& in, const ClassifyOptions& opts) {
    validate_input(in, opts.precision);
    long N = opts.precision;
    std::string last_error;
    while (N <= opts.max_precision) {
        try {
            return classify_at_precision(in, N, opts.audit);
        } catch (const Retryable& e) {
            last_error = e.what();
            N *= 2;
        }
    }
    Verdict v;
    v.outcome = Outcome::ScopeError;
    v.clause = Clause::None;
    v.precision_used = N / 2;
    v.scope_error = last_error.empty() ? "precision ladder exhausted" : last_error;
    return v;
}

Verdict classify_tower(TowerKind kind, const Supernatural& degree) {
    Verdict v;
    v.clause = Clause::Tower;
    v.tower_kind = kind == TowerKind::Unramified ? "unramified" : "tame_galois";
    v.tower_degree = degree.to_string();
    v.precision_used = 0;
    v.outcome = degree.is_quasi_finite() ? Outcome::KummerFaithful : Outcome::NotKummerFaithful;
    return v;
}

TransferResult transfer_not_kf(const LubinTateInput& base, const Verdict& base_verdict,
                               const TransferRecipe& recipe) {
    if (base_verdict.outcome != Outcome::NotKummerFaithful)
        throw RecipeInvalid("transfer_not_kf: base verdict must be NotKummerFaithful");
    if (recipe.parameter < 1) throw RecipeInvalid("transfer_not_kf: parameter must be >= 1");
    TransferResult out;
    out.derived = base;
    TransferData data;
    data.parameter = recipe.parameter;
    if (recipe.kind == TransferRecipe::Kind::NthRoot) {
        data.recipe = "nth_root";
        out.derived.r = base.r * recipe.parameter;
        // Nr_{k/k_0}(pi) = (-1)^(n-1) pi_0, so the ratio is a sign
        data.ratio = (recipe.parameter % 2 == 1) ? Rat(1) : Rat(-1);
        data.ratio_order = (recipe.parameter % 2 == 1) ? 1 : 2;
    } else {
        data.recipe = "unramified_norm_one";
        out.derived.f = base.f * recipe.parameter;
        // pi' = pi is a uniformizer of the unramified extension with
        // Nr_{k'/k}(pi) = pi^{f'}
        data.ratio = Rat(1);
        data.ratio_order = 1;
        // the seed extends by zero coordinates in the larger unramified basis
        out.derived.c_unit_seed = base.c_unit_seed;
        out.derived.c_unit_seed.resize(static_cast<size_t>(out.derived.f), Int(0));
    }
    Verdict v;
    v.outcome = Outcome::NotKummerFaithful;
    v.clause = Clause::Transfer;
    v.precision_used = base_verdict.precision_used;
    v.transfer = data;
    v.base_input = std::make_shared<LubinTateInput>(base);
    v.base_verdict = std::make_shared<Verdict>(base_verdict);
    out.verdict = std::move(v);
    return out;
}

} // namespace ltk

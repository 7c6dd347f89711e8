// lt-kummer: decide Kummer-faithfulness of Lubin-Tate extensions where the
// implemented theorems decide, construct the split-principal example family,
// and emit/verify JSON certificates.

#include "ltk/certificate.hpp"
#include "ltk/certifier.hpp"
#include "ltk/errors.hpp"
#include "ltk/factorize.hpp"
#include "ltk/factory.hpp"
#include "ltk/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ltk;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitScope = 3;
constexpr int kExitIo = 4;

void write_certificate(const std::string& text, const std::string& out_path,
                       const std::string& default_name) {
    std::cout << text;
    std::string path = out_path;
    if (path.empty()) {
        const char* dir = std::getenv("LT_CERT_DIR");
        if (dir && *dir) path = std::string(dir) + "/" + default_name;
    }
    if (!path.empty()) {
        std::ofstream out(path);
        if (!out) throw std::ios_base::failure("cannot open " + path);
        out << text;
        if (!out) throw std::ios_base::failure("write failed: " + path);
    }
}

LubinTateInput input_from_flags(const Int& p, long f, long r, const std::string& cpoly,
                                long unit_seed_flag, bool have_seed) {
    IntPoly m = parse_poly(cpoly).primitive_part();
    if (f != 1)
        throw InvalidInput("command-line input supports f = 1; use transfer/JSON inputs for "
                           "unramified extensions");
    if (m.degree() == 1) {
        Rat c = Rat(-m.coeff(0)) / Rat(m.coeff(1));
        LubinTateInput in = make_input_rational_c(p, r, c);
        return in;
    }
    if (!is_irreducible_over_q(m)) throw InvalidInput("--c polynomial must be irreducible over Q");
    AlgebraicNumber c = AlgebraicNumber::from_minpoly(m);
    // derive the unit seed: a valuation-1 root pinned by --c-unit-seed, or the
    // unique valuation-1 root when no seed is given
    std::vector<PadicApprox> roots = qp_rational_roots(m, p, 64);
    std::vector<PadicApprox> val1;
    for (auto& root : roots)
        if (root.vshift == 1) val1.push_back(root);
    if (val1.empty())
        throw InvalidInput("--c has no Q_p-rational root of valuation 1 (not a uniformizer)");
    PadicApprox chosen = val1[0];
    if (have_seed) {
        bool found = false;
        for (auto& root : val1) {
            Int u = root.unit % p;
            if (u < 0) u += p;
            if (u == unit_seed_flag % p.get_si()) {
                chosen = root;
                found = true;
                break;
            }
        }
        if (!found) throw InvalidInput("--c-unit-seed does not match any valuation-1 root");
    } else if (val1.size() > 1) {
        throw InvalidInput(
            "--c has several valuation-1 roots; pin one with --c-unit-seed (unit residue mod p)");
    }
    c.set_selector(chosen);
    Int seed = chosen.unit % p;
    if (seed < 0) seed += p;
    return make_input_qp(p, r, c, {seed});
}

json verdict_summary(const Verdict& v) {
    json s;
    s["outcome"] = outcome_name(v.outcome);
    s["clause"] = clause_name(v.clause);
    return s;
}

int run_classify(const Int& p, long f, long r, const std::string& cpoly, long seed, bool have_seed,
                 long precision, bool audit, const std::string& out) {
    LubinTateInput in = input_from_flags(p, f, r, cpoly, seed, have_seed);
    ClassifyOptions opts;
    opts.precision = precision;
    opts.audit = audit;
    Verdict v = classify(in, opts);
    write_certificate(certificate_to_json(&in, v), out, "classify.json");
    return v.outcome == Outcome::ScopeError ? kExitScope : kExitOk;
}

int run_factory(const Int& p, long r, long precision, const std::string& out) {
    auto search = find_split_principal(p, static_cast<int>(r));
    if (static_cast<long>(search.found.size()) < r)
        throw InvalidInput("factory: not enough split-principal fields below the search bound");
    LubinTateInput in = build_example(p, r, search.found);
    ClassifyOptions opts;
    opts.precision = precision;
    Verdict v = verify_example(in, opts);
    // print the construction alongside the certificate
    json info;
    info["witnesses"] = json::array();
    for (const auto& w : search.found) {
        json jw;
        jw["d"] = w.d.get_str();
        jw["x"] = w.x.get_str();
        jw["y"] = w.y.get_str();
        jw["omega_minpoly"] = json::parse("[]");
        json arr = json::array();
        for (int i = 0; i <= w.omega.minpoly().degree(); ++i)
            arr.push_back(w.omega.minpoly().coeff(i).get_str());
        jw["omega_minpoly"] = arr;
        info["witnesses"].push_back(jw);
    }
    json skipped = json::array();
    for (const auto& d : search.skipped_nonprincipal) skipped.push_back(d.get_str());
    info["skipped_nonprincipal"] = skipped;
    info["c_minpoly_text"] = poly_to_text(in.c.minpoly());
    std::cout << info.dump(2) << "\n";
    write_certificate(certificate_to_json(&in, v), out, "factory.json");
    return kExitOk;
}

int run_tower(const std::string& kind, const std::string& degree, const std::string& out) {
    TowerKind k;
    if (kind == "unramified")
        k = TowerKind::Unramified;
    else if (kind == "tame_galois")
        k = TowerKind::TameGalois;
    else
        throw InvalidInput("tower kind must be 'unramified' or 'tame_galois'");
    Supernatural deg = Supernatural::parse(degree);
    Verdict v = classify_tower(k, deg);
    write_certificate(certificate_to_json(nullptr, v), out, "tower.json");
    return kExitOk;
}

int run_transfer(const std::string& base_path, const std::string& recipe, long n, long precision,
                 const std::string& out) {
    std::ifstream f(base_path);
    if (!f) throw std::ios_base::failure("cannot open " + base_path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string base_text = ss.str();
    auto check = verify_certificate_text(base_text);
    if (!check.ok) throw InvalidInput("base certificate does not verify: " + check.reason);
    json bj = json::parse(base_text);
    if (bj.value("kind", "") != "classify")
        throw InvalidInput("transfer bases must be classify certificates");
    if (bj.at("outcome").get<std::string>() != "not_kummer_faithful")
        throw RecipeInvalid("transfer base must be NotKummerFaithful");
    // rebuild the base input and re-classify (cheap; keeps the base verdict
    // attached in full fidelity)
    const json& ji = bj.at("input");
    Int p(ji.at("p").get<std::string>());
    long bf = ji.at("f").get<long>();
    long br = ji.at("r").get<long>();
    std::vector<Int> coeffs;
    for (const auto& e : ji.at("c_minpoly")) coeffs.emplace_back(e.get<std::string>());
    IntPoly m(coeffs);
    LubinTateInput base;
    base.p = p;
    base.f = bf;
    base.r = br;
    base.c = m.degree() == 1 ? AlgebraicNumber::rational(Rat(-m.coeff(0)) / Rat(m.coeff(1)))
                             : AlgebraicNumber::from_minpoly(m);
    for (const auto& e : ji.at("c_unit_seed")) base.c_unit_seed.emplace_back(e.get<std::string>());
    base.seed_precision = ji.at("seed_precision").get<long>();
    ClassifyOptions opts;
    opts.precision = precision;
    Verdict bv = classify(base, opts);
    if (bv.outcome != Outcome::NotKummerFaithful)
        throw RecipeInvalid("re-classified base is not NotKummerFaithful");
    TransferRecipe rec = recipe == "nth_root" ? TransferRecipe::nth_root(n)
                                              : TransferRecipe::unramified_norm_one(n);
    if (recipe != "nth_root" && recipe != "unramified_norm_one")
        throw InvalidInput("recipe must be nth_root or unramified_norm_one");
    TransferResult res = transfer_not_kf(base, bv, rec);
    write_certificate(certificate_to_json(&res.derived, res.verdict), out, "transfer.json");
    return kExitOk;
}

int run_verify(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::ios_base::failure("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    auto res = verify_certificate_text(ss.str());
    json j;
    j["valid"] = res.ok;
    if (!res.ok) j["reason"] = res.reason;
    std::cout << j.dump(2) << "\n";
    return res.ok ? kExitOk : kExitScope;
}

int run_weil(const std::string& poly, const Int& q) {
    IntPoly f = parse_poly(poly).primitive_part();
    Int p;
    unsigned long fe;
    if (!prime_power_decompose(q, p, fe))
        throw InvalidPrimePower("--q must be a prime power");
    if (!is_irreducible_over_q(f))
        throw InvalidInput("--poly must be irreducible (a minimal polynomial)");
    json j;
    j["weil"] = is_weil_minpoly(f, q);
    std::cout << j.dump() << "\n";
    return kExitOk;
}

int run_hondatate(const std::string& poly, const Int& q, long precision) {
    IntPoly f = parse_poly(poly).primitive_part();
    if (!is_irreducible_over_q(f))
        throw InvalidInput("--poly must be irreducible (a minimal polynomial)");
    auto places = places_above_p(f, q, precision);
    auto inv = isogeny_invariants(places, f.degree());
    json j;
    j["d"] = inv.d;
    j["g"] = inv.g;
    json arr = json::array();
    for (const auto& pl : inv.places) {
        json e;
        e["e"] = pl.e;
        e["f"] = pl.f;
        e["ord"] = pl.ord_pi_hat;
        e["inv"] = pl.invariant.get_str();
        arr.push_back(e);
    }
    j["places"] = arr;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kummer-faithfulness certifier for Lubin-Tate extensions of p-adic fields"};
    app.require_subcommand(1);

    std::string p_str = "5", c_str, out, degree, kind = "unramified", recipe, cert_path, poly,
                q_str;
    long f = 1, r = 1, seed = 0, n = 1, precision = 64;
    bool audit = false;
    bool have_seed = false;

    auto* classify_cmd = app.add_subcommand("classify", "classify k_pi for k = Q_p(c^(1/r))");
    classify_cmd->add_option("--p", p_str, "odd prime p")->required();
    classify_cmd->add_option("--f", f, "residue degree of k over Q_p (default 1)");
    classify_cmd->add_option("--r", r, "tame ramification index (r | p^f - 1)");
    classify_cmd->add_option("--c", c_str, "minimal polynomial of c = pi^r over Q")->required();
    classify_cmd->add_option("--c-unit-seed", seed, "unit residue mod p pinning the root of c")
        ->each([&](const std::string&) { have_seed = true; });
    classify_cmd->add_option("--precision", precision, "p-adic working precision (default 64)");
    classify_cmd->add_flag("--audit", audit, "run the candidate sweep even when an early clause fires");
    classify_cmd->add_option("--out", out, "also write the certificate to this path");

    auto* factory_cmd = app.add_subcommand("factory", "build the split-principal example family");
    factory_cmd->add_option("--p", p_str, "odd prime p")->required();
    factory_cmd->add_option("--r", r, "number of quadratic fields (r | p - 1)")->required();
    factory_cmd->add_option("--precision", precision, "p-adic working precision");
    factory_cmd->add_option("--out", out, "also write the certificate to this path");

    auto* tower_cmd = app.add_subcommand("tower", "classify unramified/tame Galois towers");
    tower_cmd->add_option("--kind", kind, "unramified | tame_galois")->required();
    tower_cmd->add_option("--degree", degree, "supernatural degree, e.g. \"2^inf * 3\"")->required();
    tower_cmd->add_option("--out", out, "also write the certificate to this path");

    auto* transfer_cmd = app.add_subcommand("transfer", "derive a new NotKF input (Prop-style transfers)");
    transfer_cmd->add_option("--base", cert_path, "base classify certificate (json)")->required();
    transfer_cmd->add_option("--recipe", recipe, "nth_root | unramified_norm_one")->required();
    transfer_cmd->add_option("--n", n, "recipe parameter")->required();
    transfer_cmd->add_option("--precision", precision, "p-adic working precision");
    transfer_cmd->add_option("--out", out, "also write the certificate to this path");

    auto* verify_cmd = app.add_subcommand("verify", "replay a certificate");
    verify_cmd->add_option("certificate", cert_path, "certificate file")->required();

    auto* weil_cmd = app.add_subcommand("weil", "exact Weil q-integer test");
    weil_cmd->add_option("--poly", poly, "minimal polynomial")->required();
    weil_cmd->add_option("--q", q_str, "prime power q")->required();

    auto* ht_cmd = app.add_subcommand("hondatate", "places above p and isogeny invariants");
    ht_cmd->add_option("--poly", poly, "minimal polynomial of a Weil q-integer")->required();
    ht_cmd->add_option("--q", q_str, "prime power q")->required();
    ht_cmd->add_option("--precision", precision, "p-adic working precision");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (classify_cmd->parsed()) {
            Int p(p_str);
            if (!is_prime(p)) throw NotPrime("--p " + p_str + " is not prime");
            return run_classify(p, f, r, c_str, seed, have_seed, precision, audit, out);
        }
        if (factory_cmd->parsed()) {
            Int p(p_str);
            if (!is_prime(p)) throw NotPrime("--p " + p_str + " is not prime");
            return run_factory(p, r, precision, out);
        }
        if (tower_cmd->parsed()) return run_tower(kind, degree, out);
        if (transfer_cmd->parsed()) return run_transfer(cert_path, recipe, n, precision, out);
        if (verify_cmd->parsed()) return run_verify(cert_path);
        if (weil_cmd->parsed()) return run_weil(poly, Int(q_str));
        if (ht_cmd->parsed()) return run_hondatate(poly, Int(q_str), precision);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Retryable& e) {
        std::cerr << "scope error: " << e.what() << "\n";
        return kExitScope;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitScope;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

#include "ltk/certificate.hpp"
#include "ltk/certifier.hpp"
#include "ltk/errors.hpp"
#include "ltk/factorize.hpp"
#include "ltk/factory.hpp"
#include "ltk/parse.hpp"
#include "ltk/supernatural.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;
using namespace ltk;

namespace {

IntPoly poly_from_text(const std::string& text) { return parse_poly(text).primitive_part(); }

std::vector<std::string> poly_coeffs(const IntPoly& f) {
    std::vector<std::string> out;
    for (int i = 0; i <= f.degree(); ++i) out.push_back(f.coeff(i).get_str());
    return out;
}

py::dict shape_to_dict(const LocalFactor& lf) {
    py::dict d;
    d["degree"] = lf.degree;
    d["e"] = lf.e;
    d["f"] = lf.f;
    d["slope"] = lf.slope.get_str();
    return d;
}

py::dict place_to_dict(const PlaceData& pl) {
    py::dict d;
    d["e"] = pl.e;
    d["f"] = pl.f;
    d["ord"] = pl.ord_pi_hat;
    d["inv"] = pl.invariant.get_str();
    return d;
}

LubinTateInput input_from_args(const std::string& p, long r, const std::string& c_poly,
                               long unit_seed) {
    Int pz(p);
    if (!is_prime(pz)) throw NotPrime("p is not prime");
    IntPoly m = poly_from_text(c_poly);
    if (m.degree() == 1) return make_input_rational_c(pz, r, Rat(-m.coeff(0)) / Rat(m.coeff(1)));
    AlgebraicNumber c = AlgebraicNumber::from_minpoly(m);
    std::vector<PadicApprox> roots = qp_rational_roots(m, pz, 64);
    for (auto& root : roots) {
        if (root.vshift != 1) continue;
        Int u = root.unit % pz;
        if (u < 0) u += pz;
        if (unit_seed < 0 || u == unit_seed) {
            c.set_selector(root);
            return make_input_qp(pz, r, c, {u});
        }
    }
    throw InvalidInput("no valuation-1 root of c matches the seed");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact Kummer-faithfulness certifier for Lubin-Tate extensions";

    py::register_exception<InvalidInput>(m, "InvalidInputError");
    py::register_exception<Retryable>(m, "RetryableError");

    py::class_<Supernatural>(m, "Supernatural")
        .def_static("parse", &Supernatural::parse)
        .def_static("from_natural",
                    [](long n) { return Supernatural::from_natural(Int(n)); })
        .def_static("all_primes_once", &Supernatural::all_primes_once)
        .def_static("prime_power_infinite",
                    [](long p) { return Supernatural::prime_power_infinite(Int(p)); })
        .def("is_quasi_finite", &Supernatural::is_quasi_finite)
        .def("__str__", &Supernatural::to_string)
        .def("__eq__", [](const Supernatural& a, const Supernatural& b) { return a == b; })
        .def("lcm", [](const Supernatural& a, const Supernatural& b) { return lcm(a, b); })
        .def("gcd", [](const Supernatural& a, const Supernatural& b) { return gcd(a, b); })
        .def("mul", [](const Supernatural& a, const Supernatural& b) { return mul(a, b); });

    m.def(
        "is_weil_q_integer",
        [](const std::string& poly, const std::string& q) {
            return is_weil_minpoly(poly_from_text(poly), Int(q));
        },
        py::arg("poly"), py::arg("q"),
        "Exact Weil q-integer test on a minimal polynomial given as text.");

    m.def(
        "sturm_count",
        [](const std::string& poly, const std::string& lo, const std::string& hi) {
            return sturm_count(poly_from_text(poly), Rat(lo), Rat(hi));
        },
        py::arg("poly"), py::arg("lo"), py::arg("hi"),
        "Number of real roots in (lo, hi] of a squarefree polynomial.");

    m.def(
        "root_of_unity_order",
        [](const std::string& poly) -> py::object {
            auto ord = root_of_unity_order(poly_from_text(poly));
            if (!ord) return py::none();
            return py::cast(*ord);
        },
        py::arg("poly"));

    m.def(
        "newton_polygon",
        [](const std::string& poly, const std::string& p) {
            py::list out;
            for (auto& seg : newton_polygon(poly_from_text(poly), Int(p))) {
                py::dict d;
                d["slope"] = seg.slope.get_str();
                d["multiplicity"] = seg.multiplicity;
                out.append(d);
            }
            return out;
        },
        py::arg("poly"), py::arg("p"));

    m.def(
        "hensel_lift",
        [](const std::string& poly, const std::string& p, long seed, long n) {
            auto r = hensel_lift(poly_from_text(poly), Int(p), Int(seed), n);
            return r.integer_value_mod(std::min(n, r.precision + r.vshift)).get_str();
        },
        py::arg("poly"), py::arg("p"), py::arg("seed"), py::arg("precision"));

    m.def(
        "factor_shape_over_qp",
        [](const std::string& poly, const std::string& p, long budget) {
            py::list out;
            for (auto& lf : factor_shape_over_qp(poly_from_text(poly), Int(p), budget))
                out.append(shape_to_dict(lf));
            return out;
        },
        py::arg("poly"), py::arg("p"), py::arg("budget") = 64);

    m.def(
        "places_above_p",
        [](const std::string& poly, const std::string& q, long budget) {
            py::list out;
            for (auto& pl : places_above_p(poly_from_text(poly), Int(q), budget))
                out.append(place_to_dict(pl));
            return out;
        },
        py::arg("poly"), py::arg("q"), py::arg("budget") = 64);

    m.def(
        "factorize",
        [](const std::string& poly) {
            py::list out;
            for (auto& [f, mult] : factorize(poly_from_text(poly))) {
                py::dict d;
                d["coeffs"] = poly_coeffs(f);
                d["text"] = poly_to_text(f);
                d["multiplicity"] = mult;
                out.append(d);
            }
            return out;
        },
        py::arg("poly"));

    m.def(
        "classify",
        [](const std::string& p, long r, const std::string& c_poly, long unit_seed,
           long precision) {
            LubinTateInput in = input_from_args(p, r, c_poly, unit_seed);
            ClassifyOptions opts;
            opts.precision = precision;
            Verdict v = classify(in, opts);
            return certificate_to_json(&in, v);
        },
        py::arg("p"), py::arg("r"), py::arg("c_poly"), py::arg("unit_seed") = -1,
        py::arg("precision") = 64,
        "Classify k_pi for k = Q_p(c^(1/r)); returns the JSON certificate.");

    m.def(
        "factory_example",
        [](const std::string& p, long r, long precision) {
            auto search = find_split_principal(Int(p), static_cast<int>(r));
            if (static_cast<long>(search.found.size()) < r)
                throw InvalidInput("not enough split-principal fields");
            LubinTateInput in = build_example(Int(p), r, search.found);
            ClassifyOptions opts;
            opts.precision = precision;
            Verdict v = verify_example(in, opts);
            return certificate_to_json(&in, v);
        },
        py::arg("p"), py::arg("r"), py::arg("precision") = 64,
        "Build and certify the split-principal example family; returns the JSON certificate.");

    m.def(
        "classify_tower",
        [](const std::string& kind, const std::string& degree) {
            TowerKind k = kind == "unramified" ? TowerKind::Unramified : TowerKind::TameGalois;
            if (kind != "unramified" && kind != "tame_galois")
                throw InvalidInput("kind must be unramified or tame_galois");
            Verdict v = classify_tower(k, Supernatural::parse(degree));
            return certificate_to_json(nullptr, v);
        },
        py::arg("kind"), py::arg("degree"));

    m.def(
        "verify_certificate",
        [](const std::string& json_text) {
            auto res = verify_certificate_text(json_text);
            py::dict d;
            d["valid"] = res.ok;
            d["reason"] = res.reason;
            return d;
        },
        py::arg("json_text"), "Replay a JSON certificate; returns {valid, reason}.");

#ifdef VERSION_INFO
#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}

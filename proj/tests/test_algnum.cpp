#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ltk/algnum.hpp"
#include "ltk/errors.hpp"
#include "ltk/factorize.hpp"

#include <complex>
#include <random>

using namespace ltk;

namespace {

// Test-only numeric oracle: Durand-Kerner in long double (~64-bit mantissa),
// independent of the library's exact path and of its numeric hinting code.
std::vector<std::complex<long double>> oracle_roots(const IntPoly& f) {
    int n = f.degree();
    std::vector<std::complex<long double>> c(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) c[static_cast<size_t>(i)] = f.coeff(i).get_d();
    for (auto& v : c) v /= c.back();
    std::vector<std::complex<long double>> z(static_cast<size_t>(n));
    std::complex<long double> seed(0.4L, 0.9L), cur(1.0L, 0.0L);
    for (auto& zi : z) {
        cur *= seed;
        zi = cur;
    }
    for (int it = 0; it < 500; ++it) {
        long double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<long double> num = 0;
            for (int k = n; k >= 0; --k) num = num * z[static_cast<size_t>(i)] + c[static_cast<size_t>(k)];
            std::complex<long double> den = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
            if (den == std::complex<long double>(0)) continue;
            auto step = num / den;
            z[static_cast<size_t>(i)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-17L) break;
    }
    return z;
}

// oracle verdict: -1 = boundary band (undecidable at 1e-10), 0/1 otherwise
int oracle_weil(const IntPoly& f, const Int& q) {
    if (!f.is_monic()) return 0;
    long double qq = static_cast<long double>(q.get_d());
    int verdict = 1;
    for (auto& z : oracle_roots(f)) {
        long double m2 = std::norm(z);
        if (std::abs(m2 - qq) < 1e-10L * qq) return -1;
        if (std::abs(m2 - qq) > 1e-10L * qq && m2 != qq) {
            if (std::abs(m2 - qq) / qq > 1e-10L) verdict = 0;
        }
        if (verdict == 0) break;
    }
    return verdict;
}

} // namespace

TEST_CASE("minpoly_product on the named examples") {
    auto s2 = AlgebraicNumber::sqrt_of(2), s3 = AlgebraicNumber::sqrt_of(3);
    CHECK(minpoly_product(s2, s3).minpoly() == IntPoly({-6, 0, 1}));
    CHECK(minpoly_product(s2, AlgebraicNumber::rational(1)).minpoly() == s2.minpoly());
    auto a = AlgebraicNumber::from_minpoly(IntPoly({7, -1, 1}));
    auto abar = a.conjugate_q_over(Int(7));
    auto prod = minpoly_product(a, abar);
    CHECK(prod.minpoly() == IntPoly({-7, 1}));
    CHECK(prod.as_rational() == Rat(7));
}

TEST_CASE("minpoly_power on the named examples") {
    auto a = AlgebraicNumber::from_minpoly(IntPoly({7, -1, 1}));
    CHECK(minpoly_power(a, 2).minpoly() == IntPoly({49, 13, 1}));
    CHECK(minpoly_power(a, 1).minpoly() == a.minpoly());
    CHECK(minpoly_power(AlgebraicNumber::sqrt_of(2), 2).as_rational() == Rat(2));
}

TEST_CASE("product is commutative and associative on a seed set") {
    std::vector<AlgebraicNumber> seeds;
    seeds.push_back(AlgebraicNumber::rational(Rat(3, 2)));
    seeds.push_back(AlgebraicNumber::rational(-2));
    seeds.push_back(AlgebraicNumber::sqrt_of(2));
    seeds.push_back(AlgebraicNumber::sqrt_of(-1));
    seeds.push_back(AlgebraicNumber::sqrt_of(5));
    seeds.push_back(AlgebraicNumber::sqrt_of(-11));
    seeds.push_back(AlgebraicNumber::from_minpoly(IntPoly({7, -1, 1})));
    seeds.push_back(AlgebraicNumber::from_minpoly(IntPoly({5, -4, 1})));
    seeds.push_back(AlgebraicNumber::from_minpoly(IntPoly({-2, 0, 0, 1}))); // 2^(1/3)
    seeds.push_back(AlgebraicNumber::from_minpoly(IntPoly({1, 1, 1})));     // zeta_3
    for (size_t i = 0; i < seeds.size(); ++i)
        for (size_t j = i + 1; j < seeds.size(); j += 2) {
            auto ab = minpoly_product(seeds[i], seeds[j]);
            auto ba = minpoly_product(seeds[j], seeds[i]);
            CHECK(ab.minpoly() == ba.minpoly());
        }
    // associativity on a few triples
    for (size_t i = 0; i < 4; ++i) {
        auto& x = seeds[i];
        auto& y = seeds[i + 2];
        auto& z = seeds[i + 4];
        auto l = minpoly_product(minpoly_product(x, y), z);
        auto r = minpoly_product(x, minpoly_product(y, z));
        CHECK(l.minpoly() == r.minpoly());
    }
}

TEST_CASE("weil test on the named examples") {
    CHECK(is_weil_minpoly(IntPoly({7, -1, 1}), Int(7)));
    CHECK_FALSE(is_weil_minpoly(IntPoly({-7, 1}), Int(7)));
    CHECK(is_weil_minpoly(IntPoly({-7, 0, 1}), Int(7))); // boundary beta = +-2 sqrt q
    CHECK_FALSE(is_weil_minpoly(IntPoly({7, -6, 1}), Int(7)));
    CHECK(is_weil_minpoly(IntPoly({49, 13, 1}), Int(49)));
    CHECK_THROWS_AS(is_weil_minpoly(IntPoly({-1, 1}), Int(12)), InvalidPrimePower);
}

TEST_CASE("weil closure under powers and conjugates") {
    std::vector<IntPoly> weil5;
    for (long t = -4; t <= 4; ++t) {
        IntPoly f({5, t, 1});
        if (t * t < 20 && is_irreducible_over_q(f)) weil5.push_back(f);
    }
    for (const auto& f : weil5) {
        REQUIRE(is_weil_minpoly(f, Int(5)));
        auto a = AlgebraicNumber::from_minpoly(f);
        for (long m : {2L, 3L}) {
            Int qm = pow_int(Int(5), static_cast<unsigned long>(m));
            CHECK(is_weil_minpoly(minpoly_power(a, m).minpoly(), qm));
        }
        // conjugate q/alpha stays Weil
        CHECK(is_weil_minpoly(a.conjugate_q_over(Int(5)).minpoly(), Int(5)));
    }
}

TEST_CASE("weil agrees with the numeric oracle on random small polynomials") {
    std::mt19937_64 rng(0x57AB1E);
    const std::vector<Int> qs = {Int(4), Int(5), Int(7), Int(9), Int(25), Int(49)};
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        int deg = 2 + static_cast<int>(rng() % 2);
        std::vector<Int> c(static_cast<size_t>(deg) + 1);
        for (auto& v : c) v = static_cast<long>(rng() % 41) - 20;
        c.back() = 1;
        IntPoly f(c);
        if (poly_gcd(f, f.derivative()).degree() != 0) continue;
        if (f.constant_term() == 0) continue;
        const Int& q = qs[trial % qs.size()];
        int oracle = oracle_weil(f, q);
        if (oracle < 0) continue; // boundary band: the exact method is authoritative
        bool exact = is_weil_minpoly(f, q);
        CHECK(exact == (oracle == 1));
        ++checked;
    }
    CHECK(checked > 1500);
}

TEST_CASE("roots of unity") {
    CHECK(is_root_of_unity(AlgebraicNumber::rational(1)) == 1ul);
    CHECK(is_root_of_unity(AlgebraicNumber::rational(-1)) == 2ul);
    CHECK(root_of_unity_order(IntPoly({1, 0, 1})) == 4ul);
    CHECK(root_of_unity_order(IntPoly({1, 1, 1})) == 3ul);
    CHECK(root_of_unity_order(IntPoly({1, -1, 1})) == 6ul);
    CHECK_FALSE(root_of_unity_order(IntPoly({-1, -1, 1})).has_value());
    CHECK_FALSE(root_of_unity_order(IntPoly({-2, 1})).has_value());
    // every cyclotomic round-trips
    for (unsigned long m : {1ul, 2ul, 3ul, 4ul, 5ul, 6ul, 8ul, 12ul, 15ul, 30ul})
        CHECK(root_of_unity_order(cyclotomic(m)) == m);
}

TEST_CASE("is_in_mu") {
    CHECK(is_in_mu(AlgebraicNumber::rational(-1), 6));
    CHECK(is_in_mu(AlgebraicNumber::rational(1), 1));
    CHECK_FALSE(is_in_mu(AlgebraicNumber::rational(2), 6));
    auto i = AlgebraicNumber::sqrt_of(-1);
    CHECK(is_in_mu(i, 4));
    CHECK(is_in_mu(i, 8));
    CHECK_FALSE(is_in_mu(i, 6));
}

TEST_CASE("rational helpers and enclosures") {
    auto a = AlgebraicNumber::from_minpoly(IntPoly({5, -4, 1})); // 2 +- i
    auto b = a.scaled(Rat(1, 5));
    CHECK(b.minpoly() == IntPoly({1, -4, 5})); // 5x^2 - 4x + 1
    auto c = a.plus_rational(Rat(-2)); // +- i
    CHECK(c.minpoly() == IntPoly({1, 0, 1}));
    auto d = a.negated();
    CHECK(d.minpoly() == IntPoly({5, 4, 1}));
    // enclosure sanity: the box contains the root to its certified radius
    auto s2 = AlgebraicNumber::sqrt_of(2);
    CHECK(s2.enclosure().center.im == 0);
    CHECK(s2.enclosure().center.re > 1);
    CHECK(s2.enclosure().center.re < 2);
}

TEST_CASE("isolation failure surfaces as the documented error") {
    // minpoly_product on reducible input is rejected upstream by from_minpoly
    CHECK_THROWS_AS(AlgebraicNumber::from_minpoly(IntPoly({-1, 0, 1})), InvalidInput);
    CHECK_THROWS_AS(AlgebraicNumber::from_minpoly(IntPoly({5})), InvalidInput);
}

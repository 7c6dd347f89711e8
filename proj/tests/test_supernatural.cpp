#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ltk/errors.hpp"
#include "ltk/supernatural.hpp"

#include <vector>

using namespace ltk;
using Exp = Supernatural::Exp;
using Default = Supernatural::Default;

TEST_CASE("construction and canonical form") {
    auto n = Supernatural::from_natural(mpz_class(360));
    CHECK(n.exponent(2) == Exp::fin(3));
    CHECK(n.exponent(3) == Exp::fin(2));
    CHECK(n.exponent(5) == Exp::fin(1));
    CHECK(n.exponent(7) == Exp::fin(0));
    CHECK(n.to_string() == "2^3 * 3^2 * 5");

    // explicit entries equal to the default are dropped
    Supernatural s(Default::One, {{mpz_class(3), Exp::fin(1)}});
    CHECK(s.explicit_exponents().empty());
    CHECK(s == Supernatural::all_primes_once());

    CHECK_THROWS_AS(Supernatural(Default::Zero, {{mpz_class(4), Exp::fin(1)}}), InvalidInput);
}

TEST_CASE("lcm gcd mul on the named examples") {
    auto a = mul(Supernatural::prime_power_infinite(2), Supernatural::from_natural(3)); // 2^inf * 3
    auto b = Supernatural::from_natural(45); // 3^2 * 5
    auto l = lcm(a, b);
    CHECK(l.exponent(2).infinite);
    CHECK(l.exponent(3) == Exp::fin(2));
    CHECK(l.exponent(5) == Exp::fin(1));

    CHECK(lcm(b, Supernatural::one()) == b);
    CHECK(lcm(Supernatural::from_natural(12), Supernatural::from_natural(18)) ==
          Supernatural::from_natural(36));

    auto g = gcd(a, Supernatural::from_natural(10));
    CHECK(g == Supernatural::from_natural(2));
    CHECK(gcd(b, Supernatural::one()) == Supernatural::one());
    CHECK(gcd(Supernatural::from_natural(12), Supernatural::from_natural(18)) ==
          Supernatural::from_natural(6));

    CHECK(mul(Supernatural::from_natural(2), Supernatural::from_natural(2)) ==
          Supernatural::from_natural(4));
    CHECK(mul(Supernatural::prime_power_infinite(2), Supernatural::from_natural(2)) ==
          Supernatural::prime_power_infinite(2));
    CHECK(mul(Supernatural::one(), b) == b);

    // default exponents leave {0,1,inf}: rejected
    CHECK_THROWS_AS(mul(Supernatural::all_primes_once(), Supernatural::all_primes_once()),
                    InvalidInput);
}

TEST_CASE("quasi-finiteness") {
    CHECK(Supernatural::all_primes_once().is_quasi_finite());
    CHECK_FALSE(Supernatural::prime_power_infinite(2).is_quasi_finite());
    CHECK(Supernatural::from_natural(360).is_quasi_finite());
    CHECK_FALSE(Supernatural(Default::Infinity, {}).is_quasi_finite());
    // infinite default with one finite override is still not quasi-finite
    CHECK_FALSE(Supernatural(Default::Infinity, {{mpz_class(2), Exp::fin(1)}}).is_quasi_finite());
}

TEST_CASE("lattice laws on exponent vectors over three primes") {
    // exponents range over {0, 1, 2, inf}; exhaustive distributivity check
    std::vector<Exp> exps = {Exp::fin(0), Exp::fin(1), Exp::fin(2), Exp::inf()};
    std::vector<Supernatural> all;
    for (auto& e2 : exps)
        for (auto& e3 : exps)
            for (auto& e5 : exps) {
                std::map<mpz_class, Exp> m;
                m[2] = e2;
                m[3] = e3;
                m[5] = e5;
                all.emplace_back(Default::Zero, std::move(m));
            }
    // distributive lattice: a lcm (b gcd c) == (a lcm b) gcd (a lcm c), rolled
    // over a fixed stride to keep the triple count manageable
    for (size_t i = 0; i < all.size(); i += 7)
        for (size_t j = 0; j < all.size(); j += 11)
            for (size_t k = 0; k < all.size(); k += 13) {
                const auto &a = all[i], &b = all[j], &c = all[k];
                CHECK(lcm(a, gcd(b, c)) == gcd(lcm(a, b), lcm(a, c)));
                CHECK(gcd(a, lcm(b, c)) == lcm(gcd(a, b), gcd(a, c)));
            }
    // mul(a,b) divides lcm*gcd, with equality when finite
    for (size_t i = 0; i < all.size(); i += 5)
        for (size_t j = 0; j < all.size(); j += 9) {
            const auto &a = all[i], &b = all[j];
            auto prod = mul(a, b);
            auto lg = mul(lcm(a, b), gcd(a, b));
            bool finite = a.is_quasi_finite() && b.is_quasi_finite();
            // divides = pointwise <=
            for (const auto& pr : {mpz_class(2), mpz_class(3), mpz_class(5)}) {
                auto ep = prod.exponent(pr);
                auto el = lg.exponent(pr);
                bool le = el.infinite || (!ep.infinite && ep.value <= el.value);
                CHECK(le);
            }
            if (finite) CHECK(prod == lg);
        }
}

TEST_CASE("quasi-finite multiplicativity for default-0 inputs") {
    auto a = Supernatural::from_natural(12);
    auto b = Supernatural::prime_power_infinite(7);
    auto c = Supernatural::from_natural(35);
    CHECK(mul(a, c).is_quasi_finite() == (a.is_quasi_finite() && c.is_quasi_finite()));
    CHECK(mul(a, b).is_quasi_finite() == (a.is_quasi_finite() && b.is_quasi_finite()));
    CHECK_FALSE(mul(b, c).is_quasi_finite());
}

TEST_CASE("text round trips") {
    for (const char* text : {"1", "2", "2^inf", "2^inf * 3^2 * 5", "prod_all_primes^1",
                             "prod_all_primes^1 * 2^3", "prod_all_primes^inf"}) {
        auto s = Supernatural::parse(text);
        CHECK(s.to_string() == text);
        CHECK(Supernatural::parse(s.to_string()) == s);
    }
    // default-1 with an override back to zero
    Supernatural s(Default::One, {{mpz_class(5), Exp::fin(0)}});
    CHECK(s.to_string() == "prod_all_primes^1 * 5^0");
    CHECK(Supernatural::parse(s.to_string()) == s);

    CHECK_THROWS_AS(Supernatural::parse(""), InvalidInput);
    CHECK_THROWS_AS(Supernatural::parse("2 *"), InvalidInput);
    CHECK_THROWS_AS(Supernatural::parse("4^2"), InvalidInput);
    CHECK_THROWS_AS(Supernatural::parse("2^"), InvalidInput);
    CHECK_THROWS_AS(Supernatural::parse("2 3"), InvalidInput);
}

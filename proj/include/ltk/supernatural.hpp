#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>

namespace ltk {

/// A supernatural number: formal product over all primes l of l^(n_l) with
/// n_l a natural number or infinity. Finitely many exponents are stored
/// explicitly; every other prime gets `default_exponent`, one of 0, 1 or
/// infinity. Canonical form: the explicit map never repeats the default.
class Supernatural {
public:
    struct Exp {
        bool infinite = false;
        mpz_class value = 0; // meaningful when !infinite
        static Exp inf() { return Exp{true, 0}; }
        static Exp fin(mpz_class v) { return Exp{false, std::move(v)}; }
        bool operator==(const Exp& o) const {
            return infinite == o.infinite && (infinite || value == o.value);
        }
    };
    enum class Default { Zero, One, Infinity };

    Supernatural() = default; // the number 1
    Supernatural(Default def, std::map<mpz_class, Exp> explicit_exponents);

    static Supernatural one() { return Supernatural(); }
    static Supernatural from_natural(const mpz_class& n);
    // prod over all primes of l^1 (Remark-4.12-style degree)
    static Supernatural all_primes_once();
    static Supernatural prime_power_infinite(const mpz_class& p);

    Default default_exponent() const { return def_; }
    const std::map<mpz_class, Exp>& explicit_exponents() const { return exp_; }
    Exp exponent(const mpz_class& p) const;

    bool operator==(const Supernatural& o) const { return def_ == o.def_ && exp_ == o.exp_; }

    bool is_quasi_finite() const;

    std::string to_string() const;
    static Supernatural parse(const std::string& text);

    friend Supernatural lcm(const Supernatural& a, const Supernatural& b);
    friend Supernatural gcd(const Supernatural& a, const Supernatural& b);
    friend Supernatural mul(const Supernatural& a, const Supernatural& b);

private:
    void canonicalize();
    Default def_ = Default::Zero;
    std::map<mpz_class, Exp> exp_;
};

Supernatural lcm(const Supernatural& a, const Supernatural& b);
Supernatural gcd(const Supernatural& a, const Supernatural& b);
Supernatural mul(const Supernatural& a, const Supernatural& b);

} // namespace ltk

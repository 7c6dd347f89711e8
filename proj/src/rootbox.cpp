#include "ltk/rootbox.hpp"

#include "ltk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace ltk {

Rat root_separation_sq_lower(const IntPoly& f) {
    int n = f.degree();
    if (n <= 1) return Rat(Int(1) << 62);
    // Mahler: sep(f)^2 > 3 * n^-(n+2) * ||f||_2^-(2(n-1))
    Int sumsq = 0;
    for (const auto& c : f.coeffs()) sumsq += c * c;
    Int npow;
    mpz_ui_pow_ui(npow.get_mpz_t(), static_cast<unsigned long>(n),
                  static_cast<unsigned long>(n + 2));
    Int normpow;
    mpz_pow_ui(normpow.get_mpz_t(), sumsq.get_mpz_t(), static_cast<unsigned long>(n - 1));
    return Rat(3) / (Rat(npow) * Rat(normpow));
}

Rat root_magnitude_upper(const IntPoly& f) {
    // 1 + max |c_i| / |lc|
    if (f.degree() < 1) return Rat(1);
    Int mx = 0;
    for (const auto& c : f.coeffs()) mx = std::max(mx, Int(abs(c)));
    Rat b = Rat(mx) / Rat(abs(f.leading()));
    return b + 1;
}

namespace {

// Durand-Kerner in double precision; hints only, never trusted.
std::vector<std::complex<double>> numeric_roots(const IntPoly& f, int iterations) {
    int n = f.degree();
    std::vector<std::complex<double>> c(static_cast<size_t>(n) + 1);
    // scale coefficients into double range (roots unchanged under global scaling)
    long emax = -1000000;
    for (int i = 0; i <= n; ++i) {
        if (f.coeff(i) == 0) continue;
        long e;
        mpz_get_d_2exp(&e, f.coeff(i).get_mpz_t());
        emax = std::max(emax, e);
    }
    for (int i = 0; i <= n; ++i) {
        long e = 0;
        double m = f.coeff(i) == 0 ? 0.0 : mpz_get_d_2exp(&e, f.coeff(i).get_mpz_t());
        c[static_cast<size_t>(i)] = std::ldexp(m, static_cast<int>(e - emax));
    }
    // make monic in doubles
    std::complex<double> lc = c.back();
    for (auto& v : c) v /= lc;
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = 0;
        for (int i = n; i >= 0; --i) acc = acc * z + c[static_cast<size_t>(i)];
        return acc;
    };
    double radius = 0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[static_cast<size_t>(i)]));
    radius = 1.0 + radius;
    std::vector<std::complex<double>> z(static_cast<size_t>(n));
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> cur(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
        cur *= seed;
        z[static_cast<size_t>(i)] = cur * radius;
    }
    for (int it = 0; it < iterations; ++it) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> num = eval(z[static_cast<size_t>(i)]);
            std::complex<double> den = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]);
            if (den == std::complex<double>(0)) {
                z[static_cast<size_t>(i)] += std::complex<double>(1e-8, 1e-8);
                continue;
            }
            std::complex<double> step = num / den;
            z[static_cast<size_t>(i)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14 * radius) break;
    }
    return z;
}

Rat clamp_to_dyadic(double v, unsigned long bits) {
    if (!std::isfinite(v)) return Rat(0);
    Rat r;
    mpq_set_d(r.get_mpq_t(), v);
    return dyadic_round(r, bits);
}

} // namespace

std::optional<CertifiedRoot> certify_root_near(const IntPoly& f, QPoint z,
                                               const Rat& extra_radius_sq_cap) {
    const int n = f.degree();
    if (n < 1) return std::nullopt;
    if (n == 1) {
        // exact rational root
        QPoint root{Rat(-f.coeff(0)) / Rat(f.coeff(1)), Rat(0)};
        return CertifiedRoot{root, Rat(0)};
    }
    Rat sep_sq = root_separation_sq_lower(f);
    Rat target_sq = sep_sq / 9; // 8*r^2 < sep^2 with margin
    if (sgn(extra_radius_sq_cap) > 0 && extra_radius_sq_cap < target_sq)
        target_sq = extra_radius_sq_cap;
    unsigned long bits = 128;
    IntPoly df = f.derivative();
    for (int iter = 0; iter < 80; ++iter) {
        QPoint fz = eval_at_point(f, z);
        Rat fz2 = qp_norm2(fz);
        if (sgn(fz2) == 0) return CertifiedRoot{z, Rat(0)};
        QPoint dz = eval_at_point(df, z);
        Rat dz2 = qp_norm2(dz);
        if (sgn(dz2) == 0) {
            z.re += Rat(1, 1000003);
            continue;
        }
        // distance to the nearest root is at most n*|f(z)|/|f'(z)|
        Rat rho_sq = Rat(n) * Rat(n) * fz2 / dz2;
        if (rho_sq < target_sq) {
            Rat radius = rational_sqrt_upper(rho_sq);
            if (radius * radius * 8 < sep_sq &&
                (sgn(extra_radius_sq_cap) <= 0 || radius * radius <= extra_radius_sq_cap))
                return CertifiedRoot{z, radius};
        }
        QPoint step = qp_div(fz, dz);
        z = qp_sub(z, step);
        z.re = dyadic_round(z.re, bits);
        z.im = dyadic_round(z.im, bits);
        if (bits < (1ul << 20)) bits *= 2;
    }
    return std::nullopt;
}

std::vector<CertifiedRoot> isolate_all_roots(const IntPoly& f) {
    int n = f.degree();
    if (n < 1) throw IsolationFailure("isolate_all_roots: constant polynomial");
    for (int attempt = 0; attempt < 3; ++attempt) {
        auto hints = numeric_roots(f, 400 << attempt);
        std::vector<CertifiedRoot> out;
        bool ok = true;
        for (auto& h : hints) {
            QPoint start{clamp_to_dyadic(h.real(), 96), clamp_to_dyadic(h.imag(), 96)};
            auto c = certify_root_near(f, start, Rat(0));
            if (!c) {
                ok = false;
                break;
            }
            out.push_back(*c);
        }
        if (!ok) continue;
        // pairwise disjoint boxes certify completeness: n boxes, one root each
        auto disjoint = [](const CertifiedRoot& a, const CertifiedRoot& b) {
            Rat dre = abs(a.center.re - b.center.re);
            Rat dim = abs(a.center.im - b.center.im);
            Rat rr = a.radius + b.radius;
            return dre > rr || dim > rr;
        };
        for (size_t i = 0; ok && i < out.size(); ++i)
            for (size_t j = i + 1; ok && j < out.size(); ++j)
                if (!disjoint(out[i], out[j])) ok = false;
        if (!ok) continue;
        std::sort(out.begin(), out.end(), [](const CertifiedRoot& a, const CertifiedRoot& b) {
            int c = cmp(a.center.re, b.center.re);
            if (c != 0) return c < 0;
            return cmp(a.center.im, b.center.im) < 0;
        });
        return out;
    }
    throw IsolationFailure("isolate_all_roots: could not certify numeric root hints for degree " +
                           std::to_string(n));
}

CertifiedRoot isolate_canonical_root(const IntPoly& f) { return isolate_all_roots(f).front(); }

CertifiedRoot refine_enclosure(const IntPoly& f, const CertifiedRoot& r) {
    if (sgn(r.radius) == 0) return r;
    Rat cap = (r.radius * r.radius) / 16;
    auto c = certify_root_near(f, r.center, cap);
    if (c) {
        // Accept only if the new box nests inside the old one; then the root
        // it isolates is the root of the old box, not a neighbour Newton
        // drifted to.
        Rat dre = abs(c->center.re - r.center.re) + c->radius;
        Rat dim = abs(c->center.im - r.center.im) + c->radius;
        if (dre <= r.radius && dim <= r.radius) return *c;
    }
    throw IsolationFailure("refine_enclosure: polish failed");
}

} // namespace ltk

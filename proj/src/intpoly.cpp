#include "ltk/intpoly.hpp"

#include "ltk/errors.hpp"

#include <algorithm>
#include <sstream>

namespace ltk {

namespace {
const Int kZero = 0;
}

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    normalize();
}

IntPoly IntPoly::constant(Int c) {
    IntPoly p;
    if (c != 0) p.c_.push_back(std::move(c));
    return p;
}

IntPoly IntPoly::variable() { return monomial(1, 1); }

IntPoly IntPoly::monomial(Int c, int deg) {
    IntPoly p;
    if (c != 0) {
        p.c_.assign(static_cast<size_t>(deg) + 1, Int(0));
        p.c_[static_cast<size_t>(deg)] = std::move(c);
    }
    return p;
}

void IntPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Int& IntPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(i)];
}

const Int& IntPoly::leading() const {
    if (c_.empty()) return kZero;
    return c_.back();
}

const Int& IntPoly::constant_term() const {
    if (c_.empty()) return kZero;
    return c_.front();
}

bool IntPoly::is_monic() const { return !c_.empty() && c_.back() == 1; }

IntPoly IntPoly::operator-() const {
    IntPoly r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const Int& k) const {
    IntPoly r(*this);
    for (auto& v : r.c_) v *= k;
    r.normalize();
    return r;
}

IntPoly IntPoly::shifted_up(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<Int> r(c_.size() + static_cast<size_t>(k), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i + static_cast<size_t>(k)] = c_[i];
    return IntPoly(std::move(r));
}

Int IntPoly::evaluate(const Int& x) const {
    Int acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rat IntPoly::evaluate(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<Int> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return IntPoly(std::move(r));
}

Int IntPoly::content() const {
    Int g = 0;
    for (const auto& v : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    Int g = content();
    if (leading() < 0) g = -g;
    IntPoly r(*this);
    for (auto& v : r.c_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return r;
}

IntPoly IntPoly::divexact(const IntPoly& d) const {
    IntPoly q;
    if (!divisible_by(d, &q)) throw InternalInconsistency("divexact: not divisible");
    return q;
}

bool IntPoly::divisible_by(const IntPoly& d, IntPoly* quotient) const {
    if (d.is_zero()) return false;
    if (is_zero()) {
        if (quotient) *quotient = IntPoly();
        return true;
    }
    if (degree() < d.degree()) return false;
    std::vector<Int> rem = c_;
    std::vector<Int> q(static_cast<size_t>(degree() - d.degree()) + 1, Int(0));
    const Int& lc = d.leading();
    for (int i = degree(); i >= d.degree(); --i) {
        Int& top = rem[static_cast<size_t>(i)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return false;
        Int f;
        mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
        q[static_cast<size_t>(i - d.degree())] = f;
        for (int j = 0; j <= d.degree(); ++j)
            rem[static_cast<size_t>(i - d.degree() + j)] -= f * d.coeff(j);
    }
    for (const auto& v : rem)
        if (v != 0) return false;
    if (quotient) *quotient = IntPoly(std::move(q));
    return true;
}

IntPoly IntPoly::pseudo_rem(const IntPoly& d) const {
    if (d.is_zero()) throw InternalInconsistency("pseudo_rem by zero");
    if (degree() < d.degree()) return *this;
    IntPoly r = *this;
    const Int& lc = d.leading();
    int steps = degree() - d.degree() + 1;
    for (int s = 0; s < steps; ++s) {
        if (r.is_zero() || r.degree() < d.degree()) {
            r = r * lc; // keep the lc^(delta+1) normalization exact
            continue;
        }
        Int top = r.leading();
        int shift = r.degree() - d.degree();
        IntPoly t = (r * lc) - (d * top).shifted_up(shift);
        r = std::move(t);
    }
    return r;
}

IntPoly IntPoly::with_negated_roots() const {
    IntPoly r(*this);
    for (size_t i = 0; i < r.c_.size(); ++i)
        if (i % 2 == 1) r.c_[i] = -r.c_[i];
    if (!r.c_.empty() && r.c_.back() < 0)
        for (auto& v : r.c_) v = -v;
    return r;
}

IntPoly IntPoly::with_scaled_roots(const Rat& s) const {
    // roots -> s * root: v^n f(x*v/u)-style rescale, then primitive part
    if (is_zero()) return IntPoly();
    if (s == 0) throw InternalInconsistency("with_scaled_roots: zero scale");
    const Int u = s.get_num(), v = s.get_den();
    int n = degree();
    std::vector<Int> r(c_.size());
    // coefficient of x^i gets u^(n-i) * v^i
    std::vector<Int> up(static_cast<size_t>(n) + 1), vp(static_cast<size_t>(n) + 1);
    up[0] = 1;
    vp[0] = 1;
    for (int i = 1; i <= n; ++i) {
        up[static_cast<size_t>(i)] = up[static_cast<size_t>(i - 1)] * u;
        vp[static_cast<size_t>(i)] = vp[static_cast<size_t>(i - 1)] * v;
    }
    for (int i = 0; i <= n; ++i)
        r[static_cast<size_t>(i)] =
            c_[static_cast<size_t>(i)] * up[static_cast<size_t>(n - i)] * vp[static_cast<size_t>(i)];
    return IntPoly(std::move(r)).primitive_part();
}

IntPoly IntPoly::with_inverted_roots(const Int& q) const {
    // roots -> q/root: x^n f(q/x) has coefficient f_(n-i) * q^(n-i) at x^i.
    if (constant_term() == 0) throw ZeroConstantTerm("with_inverted_roots: zero constant term");
    int n = degree();
    std::vector<Int> r(c_.size());
    Int qp = 1;
    for (int i = n; i >= 0; --i) {
        r[static_cast<size_t>(i)] = c_[static_cast<size_t>(n - i)] * qp;
        qp *= q;
    }
    return IntPoly(std::move(r)).primitive_part();
}

IntPoly IntPoly::compose_xn(int n) const {
    if (is_zero()) return IntPoly();
    std::vector<Int> r(static_cast<size_t>(degree()) * static_cast<size_t>(n) + 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i * static_cast<size_t>(n)] = c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::taylor_shift(const Int& a) const {
    // Horner: f(x+a) built from the top coefficient down.
    IntPoly r;
    IntPoly xa(std::vector<Int>{a, Int(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * xa + IntPoly::constant(*it);
    return r;
}

int IntPoly::compare(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (int i = a.degree(); i >= 0; --i) {
        int c = cmp(a.coeff(i), b.coeff(i));
        if (c != 0) return c;
    }
    return 0;
}

std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Int& a = coeff(i);
        if (a == 0) continue;
        Int abs_a = abs(a);
        if (first) {
            if (a < 0) os << "-";
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        if (i == 0 || abs_a != 1) os << abs_a.get_str();
        if (i > 0) {
            if (abs_a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Resultants and gcds
// ---------------------------------------------------------------------------

namespace {

Int int_pow(Int base, long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

} // namespace

Int resultant(const IntPoly& a_in, const IntPoly& b_in) {
    if (a_in.is_zero() || b_in.is_zero())
        throw InternalInconsistency("resultant of zero polynomial");
    if (a_in.degree() == 0) return int_pow(a_in.leading(), b_in.degree());
    if (b_in.degree() == 0) return int_pow(b_in.leading(), a_in.degree());

    IntPoly A = a_in, B = b_in;
    int s = 1;
    if (A.degree() < B.degree()) {
        if ((A.degree() % 2) == 1 && (B.degree() % 2) == 1) s = -s;
        std::swap(A, B);
    }
    Int ca = A.content(), cb = B.content();
    if (A.leading() < 0) ca = -ca;
    if (B.leading() < 0) cb = -cb;
    A = A.primitive_part();
    B = B.primitive_part();
    Int t = int_pow(ca, B.degree()) * int_pow(cb, A.degree());
    Int g = 1, h = 1;
    while (true) {
        int delta = A.degree() - B.degree();
        if ((A.degree() % 2) == 1 && (B.degree() % 2) == 1) s = -s;
        IntPoly R = A.pseudo_rem(B);
        A = B;
        Int denom = g * int_pow(h, delta);
        if (!R.is_zero()) {
            std::vector<Int> rc = R.coeffs();
            for (auto& v : rc) {
                if (!mpz_divisible_p(v.get_mpz_t(), denom.get_mpz_t()))
                    throw InternalInconsistency("subresultant: inexact division");
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), denom.get_mpz_t());
            }
            B = IntPoly(std::move(rc));
        } else {
            B = IntPoly();
        }
        if (B.is_zero()) return Int(0); // common factor of positive degree
        g = A.leading();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            // h = g^delta / h^(delta-1)
            Int num = int_pow(g, delta);
            Int den = int_pow(h, delta - 1);
            if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
                throw InternalInconsistency("subresultant: inexact h update");
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (B.degree() == 0) {
            // final: h' = lc(B)^deg(A) / h^(deg(A)-1)
            Int num = int_pow(B.leading(), A.degree());
            Int den = int_pow(h, A.degree() - 1);
            if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
                throw InternalInconsistency("subresultant: inexact final division");
            Int hf;
            mpz_divexact(hf.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            return Int(s) * t * hf;
        }
    }
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.is_zero() ? IntPoly() : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    IntPoly A = a.primitive_part(), B = b.primitive_part();
    if (A.degree() < B.degree()) std::swap(A, B);
    while (!B.is_zero()) {
        IntPoly R = A.pseudo_rem(B).primitive_part();
        A = B;
        B = R;
        if (A.degree() < B.degree()) std::swap(A, B);
    }
    return A.primitive_part();
}

IntPoly squarefree_part(const IntPoly& f) {
    if (f.is_zero() || f.degree() == 0) return f.primitive_part();
    IntPoly g = poly_gcd(f, f.derivative());
    if (g.degree() == 0) return f.primitive_part();
    return f.primitive_part().divexact(g);
}

Int discriminant(const IntPoly& f) {
    if (f.degree() < 1) throw InternalInconsistency("discriminant of constant");
    Int res = resultant(f, f.derivative());
    Int lc = f.leading();
    Int d;
    mpz_divexact(d.get_mpz_t(), res.get_mpz_t(), lc.get_mpz_t());
    long n = f.degree();
    if (((n * (n - 1) / 2) % 2) == 1) d = -d;
    return d;
}

// ---------------------------------------------------------------------------
// Bivariate resultants by evaluation/interpolation
// ---------------------------------------------------------------------------

int BiPoly::max_xdeg() const {
    int d = -1;
    for (const auto& p : cy) d = std::max(d, p.degree());
    return d;
}

namespace {

IntPoly bipoly_eval_x(const BiPoly& a, const Int& t) {
    std::vector<Int> r(a.cy.size());
    for (size_t i = 0; i < a.cy.size(); ++i) r[i] = a.cy[i].evaluate(t);
    return IntPoly(std::move(r));
}

} // namespace

IntPoly resultant_y(const BiPoly& a, const BiPoly& b) {
    int m = a.ydeg(), n = b.ydeg();
    if (m < 0 || n < 0) throw InternalInconsistency("resultant_y of zero polynomial");
    if (a.cy.back().is_zero() || b.cy.back().is_zero())
        throw InternalInconsistency("resultant_y: leading y-coefficient is zero");
    long bound = static_cast<long>(n) * std::max(a.max_xdeg(), 0) +
                 static_cast<long>(m) * std::max(b.max_xdeg(), 0);
    long npoints = bound + 1;
    std::vector<Rat> xs, ys;
    xs.reserve(static_cast<size_t>(npoints));
    ys.reserve(static_cast<size_t>(npoints));
    Int t = 0;
    long step = 0;
    while (static_cast<long>(xs.size()) < npoints) {
        // points 0, 1, -1, 2, -2, ...
        if (step == 0)
            t = 0;
        else if (step % 2 == 1)
            t = (step + 1) / 2;
        else
            t = -(step / 2);
        ++step;
        if (a.cy.back().evaluate(t) == 0 || b.cy.back().evaluate(t) == 0) continue;
        IntPoly fa = bipoly_eval_x(a, t);
        IntPoly fb = bipoly_eval_x(b, t);
        Int r = resultant(fa, fb);
        xs.emplace_back(t);
        ys.emplace_back(r);
    }
    // Newton interpolation over Q.
    std::vector<Rat> coef = ys; // divided differences
    for (size_t j = 1; j < coef.size(); ++j)
        for (size_t i = coef.size() - 1; i >= j; --i)
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
    // Expand Newton form to standard basis.
    std::vector<Rat> poly(coef.size(), Rat(0));
    std::vector<Rat> basis(coef.size(), Rat(0)); // current product (x - x0)...(x - x_{k-1})
    basis[0] = 1;
    size_t basis_deg = 0;
    for (size_t k = 0; k < coef.size(); ++k) {
        for (size_t i = 0; i <= basis_deg; ++i) poly[i] += coef[k] * basis[i];
        if (k + 1 < coef.size()) {
            // basis *= (x - xs[k])
            for (size_t i = basis_deg + 1; i > 0; --i)
                basis[i] = basis[i - 1] - xs[k] * basis[i];
            basis[0] = -xs[k] * basis[0];
            ++basis_deg;
        }
    }
    std::vector<Int> out(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) {
        if (poly[i].get_den() != 1)
            throw InternalInconsistency("resultant_y: non-integer interpolation result");
        out[i] = poly[i].get_num();
    }
    return IntPoly(std::move(out));
}

IntPoly product_annihilator(const IntPoly& f, const IntPoly& g) {
    // Res_y(f(y), y^m g(x/y)) with m = deg g; the y^k coefficient is g_{m-k} x^{m-k}.
    if (f.is_zero() || g.is_zero()) throw InternalInconsistency("product_annihilator: zero input");
    int m = g.degree();
    BiPoly A;
    A.cy.resize(static_cast<size_t>(f.degree()) + 1);
    for (int i = 0; i <= f.degree(); ++i) A.cy[static_cast<size_t>(i)] = IntPoly::constant(f.coeff(i));
    BiPoly B;
    B.cy.resize(static_cast<size_t>(m) + 1);
    for (int k = 0; k <= m; ++k)
        B.cy[static_cast<size_t>(k)] = IntPoly::monomial(g.coeff(m - k), m - k);
    return resultant_y(A, B);
}

IntPoly power_annihilator(const IntPoly& f, int n) {
    if (n < 1) throw InternalInconsistency("power_annihilator: n must be >= 1");
    if (n == 1) return f;
    // Res_y(f(y), x - y^n)
    BiPoly A;
    A.cy.resize(static_cast<size_t>(f.degree()) + 1);
    for (int i = 0; i <= f.degree(); ++i) A.cy[static_cast<size_t>(i)] = IntPoly::constant(f.coeff(i));
    BiPoly B;
    B.cy.assign(static_cast<size_t>(n) + 1, IntPoly());
    B.cy[0] = IntPoly::variable();
    B.cy[static_cast<size_t>(n)] = IntPoly::constant(-1);
    return resultant_y(A, B);
}

IntPoly trace_annihilator(const IntPoly& f, const Int& q) {
    // Res_y(f(y), y^2 - x*y + q)
    BiPoly A;
    A.cy.resize(static_cast<size_t>(f.degree()) + 1);
    for (int i = 0; i <= f.degree(); ++i) A.cy[static_cast<size_t>(i)] = IntPoly::constant(f.coeff(i));
    BiPoly B;
    B.cy.resize(3);
    B.cy[0] = IntPoly::constant(q);
    B.cy[1] = IntPoly::monomial(-1, 1);
    B.cy[2] = IntPoly::one();
    return resultant_y(A, B);
}

// ---------------------------------------------------------------------------
// Sturm sequences
// ---------------------------------------------------------------------------

namespace {

// Remainder of a by b over Q, returned as a primitive IntPoly with the sign
// of the true rational remainder (multiplied through by a positive rational).
IntPoly rational_rem_primitive(const IntPoly& a, const IntPoly& b) {
    std::vector<Rat> r(a.coeffs().begin(), a.coeffs().end());
    int db = b.degree();
    Rat lcb(b.leading());
    while (static_cast<int>(r.size()) - 1 >= db) {
        int da = static_cast<int>(r.size()) - 1;
        Rat f = r.back() / lcb;
        for (int j = 0; j <= db; ++j) r[static_cast<size_t>(da - db + j)] -= f * Rat(b.coeff(j));
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.empty()) return IntPoly();
    }
    // clear denominators with a positive multiplier
    Int den = 1;
    for (const auto& v : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<Int> out(r.size());
    for (size_t i = 0; i < r.size(); ++i) {
        Rat scaled = r[i] * Rat(den);
        out[i] = scaled.get_num();
    }
    IntPoly p(std::move(out));
    Int g = p.content();
    if (g > 1) {
        std::vector<Int> c = p.coeffs();
        for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        p = IntPoly(std::move(c));
    }
    return p;
}

} // namespace

std::vector<IntPoly> sturm_chain(const IntPoly& f) {
    std::vector<IntPoly> chain;
    chain.push_back(f);
    IntPoly d = f.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (true) {
        const IntPoly& a = chain[chain.size() - 2];
        const IntPoly& b = chain.back();
        IntPoly r = rational_rem_primitive(a, b);
        if (r.is_zero()) break;
        chain.push_back(-r);
        if (chain.back().degree() == 0) break;
    }
    return chain;
}

long sign_variations_at(const std::vector<IntPoly>& chain, const Rat& x) {
    long v = 0;
    int prev = 0;
    for (const auto& p : chain) {
        int s = sgn(p.evaluate(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

int quadratic_surd_sign(const Rat& a, const Rat& b, const Int& q) {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // compare |a| with |b|*sqrt(q): sign of a + b sqrt(q) is sa iff a^2 > q b^2
    Rat a2 = a * a, qb2 = Rat(q) * b * b;
    int c = cmp(a2, qb2);
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
}

long sign_variations_at_2sqrt(const std::vector<IntPoly>& chain, const Int& q, int sign) {
    // evaluate each chain member at sign*2*sqrt(q) by splitting into even/odd parts
    long v = 0;
    int prev = 0;
    for (const auto& p : chain) {
        // p(x) = E(x^2) + x*O(x^2); at x = 2 sqrt(q) the x^(2k) term is (4q)^k.
        Rat even = 0, odd = 0;
        Rat fourq(Int(4) * q);
        Rat pw = 1;
        for (int i = 0; i <= p.degree(); ++i) {
            if (i % 2 == 0)
                even += Rat(p.coeff(i)) * pw;
            else {
                odd += Rat(p.coeff(i)) * pw;
                pw *= fourq;
            }
        }
        Rat b = Rat(2 * sign) * odd;
        int s = quadratic_surd_sign(even, b, q);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

long sign_variations_at_infinity(const std::vector<IntPoly>& chain, int sign) {
    long v = 0;
    int prev = 0;
    for (const auto& p : chain) {
        if (p.is_zero()) continue;
        int s = sgn(p.leading());
        if (sign < 0 && (p.degree() % 2) == 1) s = -s;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

long sturm_count(const IntPoly& f_in, const Rat& lo, const Rat& hi) {
    if (f_in.is_zero()) throw InternalInconsistency("sturm_count of zero polynomial");
    if (!(lo < hi)) throw InvalidInput("sturm_count: requires lo < hi");
    IntPoly f = f_in.primitive_part();
    long extra = 0;
    // exact deflation of rational roots sitting at the endpoints
    auto deflate_at = [&](const Rat& pt) {
        // divide f by (den*x - num)
        IntPoly lin(std::vector<Int>{-pt.get_num(), pt.get_den()});
        f = f.divexact(lin).primitive_part();
    };
    while (!f.is_zero() && f.degree() >= 1 && f.evaluate(lo) == 0) deflate_at(lo);
    while (!f.is_zero() && f.degree() >= 1 && f.evaluate(hi) == 0) {
        deflate_at(hi);
        ++extra; // hi is included in (lo, hi]
    }
    if (f.degree() < 1) return extra;
    auto chain = sturm_chain(f);
    return extra + sign_variations_at(chain, lo) - sign_variations_at(chain, hi);
}

} // namespace ltk

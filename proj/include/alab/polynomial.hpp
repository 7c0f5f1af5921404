// polynomial.hpp
// Sparse multivariate polynomials over Q.  Monomials are exponent vectors
// ordered degree-lexicographically; that order fixes every canonical form in
// the engine (leading coefficients, monic denominators, printing).
//
// gcd is the primitive PRS: recurse on the main variable, strip contents,
// iterate pseudo-remainders.  Adequate for the desk-scale inputs this engine
// targets; no modular or sparse interpolation tricks.
#pragma once

#include "alab/errors.hpp"
#include "alab/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace alab {

using Mono = std::vector<int>; // exponent per variable

inline int mono_total_degree(const Mono& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}

/// Degree-lexicographic order: compare total degree, then exponents left to
/// right (higher exponent on an earlier variable wins).
struct DegLexLess {
    bool operator()(const Mono& a, const Mono& b) const {
        int da = mono_total_degree(a), db = mono_total_degree(b);
        if (da != db) return da < db;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

class Poly {
public:
    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const Rat& c) {
        Poly p(nvars);
        if (c != 0) p.terms_[Mono(nvars, 0)] = c;
        return p;
    }
    static Poly variable(int nvars, int index) {
        Poly p(nvars);
        Mono m(nvars, 0);
        m.at(index) = 1;
        p.terms_[m] = 1;
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && mono_total_degree(terms_.begin()->first) == 0);
    }
    Rat constant_value() const {
        if (terms_.empty()) return 0;
        return terms_.begin()->second;
    }

    const std::map<Mono, Rat, DegLexLess>& terms() const { return terms_; }

    int total_degree() const {
        if (terms_.empty()) return -1;
        return mono_total_degree(terms_.rbegin()->first);
    }

    /// Leading (deg-lex greatest) monomial and coefficient.
    const Mono& leading_mono() const { return terms_.rbegin()->first; }
    const Rat& leading_coeff() const { return terms_.rbegin()->second; }

    void add_term(const Mono& m, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r(nvars_);
        for (auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        check_vars(o);
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_vars(o);
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_vars(b);
        Poly r(a.nvars_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) {
                Mono m(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const Rat& c) {
        if (c == 0) { terms_.clear(); return *this; }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
    friend Poly operator*(const Rat& c, Poly a) { return a *= c; }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Poly pow(int e) const {
        if (e < 0) throw Error("Poly::pow: negative exponent");
        Poly r = constant(nvars_, 1);
        Poly base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    Poly derivative(int var) const {
        Poly r(nvars_);
        for (auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Mono d = m;
            d[var] -= 1;
            r.add_term(d, c * m[var]);
        }
        return r;
    }

    Rat eval(const std::vector<Rat>& point) const {
        Rat total = 0;
        for (auto& [m, c] : terms_) {
            Rat v = c;
            for (int i = 0; i < nvars_; ++i)
                for (int e = 0; e < m[i]; ++e) v *= point[size_t(i)];
            total += v;
        }
        return total;
    }

    int degree_in(int var) const {
        int d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m[var]);
        return d;
    }

    /// Weighted degree of a monomial; -1 sentinel for the zero polynomial.
    /// Homogeneity check returns the common weight through `weight`.
    bool is_weight_homogeneous(const std::vector<int>& w, long& weight) const {
        bool first = true;
        for (auto& [m, c] : terms_) {
            long deg = 0;
            for (int i = 0; i < nvars_; ++i) deg += long(m[i]) * w[size_t(i)];
            if (first) {
                weight = deg;
                first = false;
            } else if (deg != weight) {
                return false;
            }
        }
        if (first) weight = 0; // zero polynomial: homogeneous of any weight
        return true;
    }

    std::string to_string(const std::vector<std::string>& names) const;

private:
    void check_vars(const Poly& o) const {
        if (nvars_ != o.nvars_) throw Error("Poly: variable count mismatch");
    }

    int nvars_;
    std::map<Mono, Rat, DegLexLess> terms_;
};

inline std::string Poly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    // deg-lex descending, so the leading term prints first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Mono& m = it->first;
        Rat c = it->second;
        bool neg = c < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (neg) c = -c;
        std::string vars;
        for (int i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += names[size_t(i)];
            if (m[i] != 1) vars += "^" + std::to_string(m[i]);
        }
        if (vars.empty()) {
            out += alab::to_string(c);
        } else if (c == 1) {
            out += vars;
        } else {
            out += alab::to_string(c) + "*" + vars;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact division and gcd
// ---------------------------------------------------------------------------

/// Exact multivariate division; throws if the division does not come out even.
inline Poly divexact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZeroExpression("polynomial division by zero");
    Poly rem = a;
    Poly quot(a.nvars());
    const Mono& lmB = b.leading_mono();
    const Rat& lcB = b.leading_coeff();
    while (!rem.is_zero()) {
        const Mono& lmR = rem.leading_mono();
        Mono q(size_t(a.nvars()));
        for (int i = 0; i < a.nvars(); ++i) {
            q[size_t(i)] = lmR[size_t(i)] - lmB[size_t(i)];
            if (q[size_t(i)] < 0) throw Error("divexact: not divisible");
        }
        Rat qc = rem.leading_coeff() / lcB;
        Poly t(a.nvars());
        t.add_term(q, qc);
        quot += t;
        rem -= t * b;
    }
    return quot;
}

inline bool divides(const Poly& b, const Poly& a) {
    try {
        divexact(a, b);
        return true;
    } catch (const Error&) {
        return false;
    }
}

namespace detail {

/// View of p as a univariate polynomial in `var` with Poly coefficients.
inline std::vector<Poly> coeffs_in(const Poly& p, int var) {
    int d = p.degree_in(var);
    std::vector<Poly> cs(size_t(d) + 1, Poly(p.nvars()));
    for (auto& [m, c] : p.terms()) {
        Mono rest = m;
        int e = rest[size_t(var)];
        rest[size_t(var)] = 0;
        cs[size_t(e)].add_term(rest, c);
    }
    return cs;
}

inline Poly from_coeffs(const std::vector<Poly>& cs, int var, int nvars) {
    Poly p(nvars);
    for (size_t e = 0; e < cs.size(); ++e) {
        Poly shift = Poly::variable(nvars, var).pow(int(e));
        p += cs[e] * shift;
    }
    return p;
}

} // namespace detail

Poly poly_gcd(const Poly& a, const Poly& b);

namespace detail {

/// Makes the deg-lex leading coefficient 1.
inline Poly monic(const Poly& p) {
    if (p.is_zero()) return p;
    Poly r = p;
    r *= Rat(1) / p.leading_coeff();
    return r;
}

inline Poly gcd_list(const std::vector<Poly>& ps, int nvars) {
    Poly g(nvars);
    for (const Poly& p : ps) {
        if (p.is_zero()) continue;
        g = g.is_zero() ? monic(p) : poly_gcd(g, p);
        if (g.is_constant() && !g.is_zero()) return Poly::constant(nvars, 1);
    }
    return g;
}

/// Pseudo-remainder of a by b in the variable `var`; multiplies through by
/// powers of lc(b) so that all steps stay in the polynomial ring.
inline Poly prem(Poly r, const Poly& b, int var) {
    int db = b.degree_in(var);
    auto bc = coeffs_in(b, var);
    Poly lb = bc[size_t(db)];
    while (!r.is_zero() && r.degree_in(var) >= db) {
        int dr = r.degree_in(var);
        auto rc = coeffs_in(r, var);
        Poly lr = rc[size_t(dr)];
        Poly shift = Poly::variable(r.nvars(), var).pow(dr - db);
        r = lb * r - lr * shift * b;
    }
    return r;
}

} // namespace detail

/// gcd over Q[x_1..x_p], monic-normalized under deg-lex.  gcd(0,0) = 0.
inline Poly poly_gcd(const Poly& a, const Poly& b) {
    using namespace detail;
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return Poly::constant(a.nvars(), 1);

    // main variable: first variable occurring in either operand
    int var = -1;
    for (int i = 0; i < a.nvars() && var < 0; ++i)
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) var = i;

    auto ac = coeffs_in(a, var);
    auto bc = coeffs_in(b, var);
    Poly ca = gcd_list(ac, a.nvars());
    Poly cb = gcd_list(bc, b.nvars());
    Poly ppa = divexact(a, ca);
    Poly ppb = divexact(b, cb);
    Poly cont = poly_gcd(ca, cb);

    Poly r0 = ppa, r1 = ppb;
    if (r0.degree_in(var) < r1.degree_in(var)) std::swap(r0, r1);
    while (!r1.is_zero()) {
        if (r1.degree_in(var) == 0) {
            // v-free primitive remainder: the v-part of the gcd is trivial
            r0 = Poly::constant(a.nvars(), 1);
            break;
        }
        Poly r2 = prem(r0, r1, var);
        if (!r2.is_zero()) {
            Poly c2 = gcd_list(coeffs_in(r2, var), a.nvars());
            r2 = divexact(r2, c2);
        }
        r0 = r1;
        r1 = r2;
    }
    if (!r0.is_constant()) {
        Poly c0 = gcd_list(coeffs_in(r0, var), a.nvars());
        r0 = divexact(r0, c0);
    }
    return monic(cont * r0);
}

} // namespace alab

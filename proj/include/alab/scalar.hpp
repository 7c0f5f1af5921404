// scalar.hpp
// ScalarExpr: elements of the differential coefficient ring.  A value is a
// finite sum of terms
//
//     (rational function in the coordinates) * (monomial in the exp generators)
//
// keyed by the generator monomial.  Canonical form: each rational function is
// gcd-reduced with monic denominator, zero terms are absent.  Equality of
// canonical forms decides mathematical equality.
//
// Division is closed only against single-term divisors (rational function
// times generator monomial); that is all the calculus ever needs, and the
// operator throws otherwise.
#pragma once

#include "alab/errors.hpp"
#include "alab/polynomial.hpp"
#include "alab/ring.hpp"

#include <map>
#include <string>
#include <vector>

namespace alab {

/// Reduced fraction of polynomials over Q.
class RationalFunction {
public:
    RationalFunction() = default;
    explicit RationalFunction(Poly num)
        : num_(std::move(num)), den_(Poly::constant(num_.nvars(), 1)) {}
    RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZeroExpression("rational function denominator is zero");
        reduce();
    }

    static RationalFunction constant(int nvars, const Rat& c) {
        return RationalFunction(Poly::constant(nvars, c));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    int nvars() const { return num_.nvars(); }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw DivisionByZeroExpression("rational function division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RationalFunction derivative(int var) const {
        // quotient rule; reduction happens in the constructor
        return RationalFunction(num_.derivative(var) * den_ - num_ * den_.derivative(var),
                                den_ * den_);
    }

    Rat eval(const std::vector<Rat>& pt) const {
        Rat d = den_.eval(pt);
        if (d == 0) throw PoleAtPoint("denominator vanishes at the sample point");
        return num_.eval(pt) / d;
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (is_polynomial()) return num_.to_string(names);
        std::string n = num_.to_string(names);
        std::string d = den_.to_string(names);
        if (num_.terms().size() > 1) n = "(" + n + ")";
        if (den_.terms().size() > 1) d = "(" + d + ")";
        return n + "/" + d;
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Poly::constant(num_.nvars(), 1);
            return;
        }
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = divexact(num_, g);
            den_ = divexact(den_, g);
        }
        // monic denominator under deg-lex
        Rat lc = den_.leading_coeff();
        if (lc != 1) {
            Rat inv = Rat(1) / lc;
            num_ *= inv;
            den_ *= inv;
        }
    }

    Poly num_, den_;
};

class ScalarExpr {
public:
    ScalarExpr() = default;
    explicit ScalarExpr(RingPtr ctx) : ctx_(std::move(ctx)) {}

    static ScalarExpr zero(const RingPtr& ctx) { return ScalarExpr(ctx); }
    static ScalarExpr constant(const RingPtr& ctx, const Rat& c) {
        ScalarExpr s(ctx);
        s.add_term(ExpMono(size_t(ctx->ngens()), 0),
                   RationalFunction::constant(ctx->ncoords(), c));
        return s;
    }
    static ScalarExpr one(const RingPtr& ctx) { return constant(ctx, 1); }
    static ScalarExpr coordinate(const RingPtr& ctx, int i) {
        return from_poly(ctx, Poly::variable(ctx->ncoords(), i));
    }
    static ScalarExpr from_poly(const RingPtr& ctx, const Poly& p) {
        ScalarExpr s(ctx);
        s.add_term(ExpMono(size_t(ctx->ngens()), 0), RationalFunction(p));
        return s;
    }
    static ScalarExpr from_rf(const RingPtr& ctx, RationalFunction rf) {
        ScalarExpr s(ctx);
        s.add_term(ExpMono(size_t(ctx->ngens()), 0), std::move(rf));
        return s;
    }
    /// exp(g) for a polynomial g expressible over the declared generators.
    static ScalarExpr exponential(const RingPtr& ctx, const Poly& g, int power = 1) {
        ExpMono e = ctx->express_exp(g);
        for (int& x : e) x *= power;
        ScalarExpr s(ctx);
        s.add_term(e, RationalFunction::constant(ctx->ncoords(), 1));
        return s;
    }

    const RingPtr& ctx() const { return ctx_; }
    const std::map<ExpMono, RationalFunction>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    bool is_rational_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() != 1) return false;
        auto& [e, rf] = *terms_.begin();
        return mono_exp_is_zero(e) && rf.is_polynomial() && rf.num().is_constant();
    }
    Rat rational_value() const {
        if (terms_.empty()) return 0;
        return terms_.begin()->second.num().constant_value();
    }

    /// True when the value lies in Q[x1..xp] (no generators, no denominators).
    bool is_polynomial() const {
        for (auto& [e, rf] : terms_)
            if (!mono_exp_is_zero(e) || !rf.is_polynomial()) return false;
        return true;
    }
    Poly as_polynomial() const {
        if (terms_.empty()) return Poly(ctx_ ? ctx_->ncoords() : 0);
        if (!is_polynomial()) throw Error("ScalarExpr is not a polynomial");
        return terms_.begin()->second.num();
    }

    ScalarExpr operator-() const {
        ScalarExpr r(ctx_);
        for (auto& [e, rf] : terms_) r.terms_[e] = -rf;
        return r;
    }
    ScalarExpr& operator+=(const ScalarExpr& o) {
        merge_ctx(o);
        for (auto& [e, rf] : o.terms_) add_term(e, rf);
        return *this;
    }
    ScalarExpr& operator-=(const ScalarExpr& o) {
        merge_ctx(o);
        for (auto& [e, rf] : o.terms_) add_term(e, -rf);
        return *this;
    }
    friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
    friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }

    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
        a.require_ctx();
        ScalarExpr r(a.ctx_ ? a.ctx_ : b.ctx_);
        for (auto& [ea, fa] : a.terms_)
            for (auto& [eb, fb] : b.terms_) {
                ExpMono e = ea;
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, fa * fb);
            }
        return r;
    }
    ScalarExpr& operator*=(const ScalarExpr& o) { return *this = *this * o; }
    friend ScalarExpr operator*(const ScalarExpr& a, const Rat& c) {
        ScalarExpr r(a.ctx_);
        if (c == 0) return r;
        for (auto& [e, rf] : a.terms_)
            r.terms_[e] = rf * RationalFunction::constant(a.ctx_->ncoords(), c);
        return r;
    }
    friend ScalarExpr operator*(const Rat& c, const ScalarExpr& a) { return a * c; }

    /// Exact division by a single-term scalar.
    friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
        if (b.is_zero()) throw DivisionByZeroExpression("scalar division by zero");
        if (b.terms_.size() != 1)
            throw NonFactorableQuotient("division by a multi-term scalar is not closed");
        auto& [eb, fb] = *b.terms_.begin();
        ScalarExpr r(a.ctx_ ? a.ctx_ : b.ctx_);
        for (auto& [ea, fa] : a.terms_) {
            ExpMono e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] -= eb[i];
            r.add_term(e, fa / fb);
        }
        return r;
    }

    friend bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const ScalarExpr& a, const ScalarExpr& b) { return !(a == b); }

    ScalarExpr derivative(int var) const {
        require_ctx();
        if (var < 0 || var >= ctx_->ncoords())
            throw UnknownIdentifier("derivative with respect to an undeclared coordinate");
        ScalarExpr r(ctx_);
        for (auto& [e, rf] : terms_) {
            RationalFunction d = rf.derivative(var);
            // d(exp g) = (dg) exp g contributes rf * sum_t e_t dg_t/dx
            Poly chain(ctx_->ncoords());
            for (size_t t = 0; t < e.size(); ++t)
                if (e[t] != 0) chain += ctx_->gen_exponents[t].derivative(var) * Rat(e[t]);
            if (!chain.is_zero()) d = d + rf * RationalFunction(chain);
            r.add_term(e, d);
        }
        return r;
    }
    ScalarExpr derivative(const std::string& coord) const {
        require_ctx();
        int i = ctx_->coord_index(coord);
        if (i < 0) throw UnknownIdentifier("not a coordinate: " + coord);
        return derivative(i);
    }

    Rat eval(const std::vector<Rat>& pt) const {
        require_ctx();
        if (int(pt.size()) != ctx_->ncoords()) throw Error("point has wrong dimension");
        Rat total = 0;
        for (auto& [e, rf] : terms_) {
            for (size_t t = 0; t < e.size(); ++t) {
                if (e[t] == 0) continue;
                if (ctx_->gen_exponents[t].eval(pt) != 0)
                    throw TranscendentalValue("exp generator has nonzero exponent at the point");
                // exponent evaluates to 0: factor is exactly 1
            }
            total += rf.eval(pt);
        }
        return total;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto& [e, rf] : terms_) {
            std::string factor = rf.to_string(ctx_->coords);
            std::string gens;
            for (size_t t = 0; t < e.size(); ++t) {
                if (e[t] == 0) continue;
                if (!gens.empty()) gens += "*";
                gens += "exp(" + ctx_->gen_exponents[t].to_string(ctx_->coords) + ")";
                if (e[t] != 1) gens += "^" + std::to_string(e[t]);
            }
            std::string term;
            if (gens.empty())
                term = factor;
            else if (factor == "1")
                term = gens;
            else if (factor == "-1")
                term = "-" + gens;
            else {
                bool needs_parens = rf.num().terms().size() > 1 && rf.is_polynomial();
                term = (needs_parens ? "(" + factor + ")" : factor) + "*" + gens;
            }
            if (out.empty())
                out = term;
            else if (!term.empty() && term[0] == '-')
                out += " - " + term.substr(1);
            else
                out += " + " + term;
        }
        return out;
    }

private:
    static bool mono_exp_is_zero(const ExpMono& e) {
        for (int x : e)
            if (x != 0) return false;
        return true;
    }
    void require_ctx() const {
        if (!ctx_) throw Error("ScalarExpr without ring context");
    }
    void merge_ctx(const ScalarExpr& o) {
        if (!ctx_) ctx_ = o.ctx_;
        else if (o.ctx_) require_same_ring(ctx_, o.ctx_);
    }
    void add_term(const ExpMono& e, const RationalFunction& rf) {
        if (rf.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, rf);
        } else {
            RationalFunction sum = it->second + rf;
            if (sum.is_zero()) terms_.erase(it);
            else it->second = sum;
        }
    }

    RingPtr ctx_;
    std::map<ExpMono, RationalFunction> terms_;
};

} // namespace alab

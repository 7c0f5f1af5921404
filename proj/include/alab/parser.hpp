// parser.hpp
// Recursive-descent parser for the expression grammar used by fixture files
// and witness serialization:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-')* base ('^' ['-'] digits)?
//   base   := digits | identifier | 'exp' '(' expr ')' | '(' expr ')'
//
// Whitespace-insensitive.  Identifiers must be declared coordinates; exp
// arguments must normalize to integer combinations of the declared generator
// exponents.  normalize() is parse + canonical form, and the canonical form
// is what ScalarExpr maintains by construction.
#pragma once

#include "alab/errors.hpp"
#include "alab/scalar.hpp"

#include <cctype>
#include <string>

namespace alab {

class ExprParser {
public:
    ExprParser(std::string src, RingPtr ctx) : src_(std::move(src)), ctx_(std::move(ctx)) {}

    ScalarExpr parse() {
        ScalarExpr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    ScalarExpr parse_expr() {
        ScalarExpr e = parse_term();
        for (;;) {
            skip_ws();
            if (match('+')) e += parse_term();
            else if (match('-')) e -= parse_term();
            else return e;
        }
    }

    ScalarExpr parse_term() {
        ScalarExpr e = parse_factor();
        for (;;) {
            skip_ws();
            if (match('*')) {
                e *= parse_factor();
            } else if (match('/')) {
                ScalarExpr d = parse_factor();
                if (d.is_zero())
                    throw DivisionByZeroExpression("divisor normalizes to zero in \"" + src_ + "\"");
                e = e / d;
            } else {
                return e;
            }
        }
    }

    ScalarExpr parse_factor() {
        skip_ws();
        bool neg = false;
        while (peek() == '+' || peek() == '-') {
            if (get() == '-') neg = !neg;
            skip_ws();
        }
        ScalarExpr e = parse_base();
        skip_ws();
        if (match('^')) {
            skip_ws();
            bool eneg = match('-');
            skip_ws();
            if (!std::isdigit(peek())) fail("expected integer exponent after '^'");
            long k = parse_digits();
            e = power(e, eneg ? -k : k);
        }
        return neg ? -e : e;
    }

    ScalarExpr parse_base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            ScalarExpr e = parse_expr();
            skip_ws();
            if (!match(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(c)) return ScalarExpr::constant(ctx_, Rat(parse_digits()));
        if (std::isalpha(c) || c == '_') {
            std::string id = parse_identifier();
            if (id == "exp") {
                skip_ws();
                if (!match('(')) fail("expected '(' after exp");
                ScalarExpr arg = parse_expr();
                skip_ws();
                if (!match(')')) fail("expected ')'");
                if (!arg.is_polynomial())
                    fail("exp argument must be a polynomial in the coordinates");
                return ScalarExpr::exponential(ctx_, arg.as_polynomial());
            }
            int ci = ctx_->coord_index(id);
            if (ci >= 0) return ScalarExpr::coordinate(ctx_, ci);
            int gi = ctx_->gen_index(id);
            if (gi >= 0)
                return ScalarExpr::exponential(ctx_, ctx_->gen_exponents[size_t(gi)]);
            throw UnknownIdentifier(id + " (at column " + std::to_string(pos_) + ")");
        }
        fail(std::string("unexpected character '") + (c ? std::string(1, c) : "<end>") + "'");
        return ScalarExpr(); // unreachable
    }

    ScalarExpr power(const ScalarExpr& e, long k) {
        if (k == 0) return ScalarExpr::one(ctx_);
        bool inv = k < 0;
        long n = inv ? -k : k;
        ScalarExpr r = ScalarExpr::one(ctx_);
        for (long i = 0; i < n; ++i) r *= e;
        if (!inv) return r;
        if (r.is_zero())
            throw DivisionByZeroExpression("zero raised to a negative power");
        return ScalarExpr::one(ctx_) / r;
    }

    std::string parse_identifier() {
        size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(src_[pos_]) || src_[pos_] == '_')) ++pos_;
        return src_.substr(start, pos_ - start);
    }
    long parse_digits() {
        size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(src_[pos_])) ++pos_;
        if (pos_ == start) fail("expected digits");
        if (pos_ - start > 17) fail("integer literal too large");
        return std::stol(src_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(src_[pos_])) ++pos_;
    }
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    char get() { return src_[pos_++]; }
    bool match(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " (column " + std::to_string(pos_ + 1) + " of \"" + src_ + "\")");
    }

    std::string src_;
    RingPtr ctx_;
    size_t pos_ = 0;
};

/// Parse + canonicalize a raw expression over the given ring.
inline ScalarExpr normalize(const std::string& raw, const RingPtr& ctx) {
    return ExprParser(raw, ctx).parse();
}

/// evaluate_at_point over named coordinates.
inline Rat evaluate_at_point(const ScalarExpr& e, const std::map<std::string, Rat>& pt) {
    const RingPtr& ctx = e.ctx();
    std::vector<Rat> coords(size_t(ctx->ncoords()));
    for (auto& [name, value] : pt) {
        int i = ctx->coord_index(name);
        if (i < 0) throw UnknownIdentifier("point assigns undeclared coordinate " + name);
        coords[size_t(i)] = value;
    }
    if (pt.size() != coords.size()) throw Error("point must assign every coordinate");
    return e.eval(coords);
}

} // namespace alab

// ring.hpp
// RingContext: the differential coefficient ring presentation.  Base
// coordinates x_1..x_p plus formally-exponential generators u_t = exp(g_t)
// with polynomial exponents.  Contexts are immutable and shared by value
// types; every ScalarExpr keeps a handle to its context.
#pragma once

#include "alab/errors.hpp"
#include "alab/linalg.hpp"
#include "alab/polynomial.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace alab {

using ExpMono = std::vector<int>; // exponent per declared generator

struct RingContext;
using RingPtr = std::shared_ptr<const RingContext>;

struct RingContext {
    std::vector<std::string> coords;
    std::vector<std::string> gen_names;
    std::vector<Poly> gen_exponents; // exponent polynomial of each generator

    static RingPtr make(std::vector<std::string> coords,
                        std::vector<std::pair<std::string, Poly>> gens = {}) {
        auto ctx = std::make_shared<RingContext>();
        ctx->coords = std::move(coords);
        std::set<std::string> seen(ctx->coords.begin(), ctx->coords.end());
        if (seen.size() != ctx->coords.size())
            throw ValidationError("duplicate coordinate identifiers");
        for (auto& [name, expo] : gens) {
            if (!seen.insert(name).second)
                throw ValidationError("generator identifier collides: " + name);
            if (expo.nvars() != int(ctx->coords.size()))
                throw ValidationError("generator exponent has wrong variable count");
            ctx->gen_names.push_back(name);
            ctx->gen_exponents.push_back(expo);
        }
        return ctx;
    }

    int ncoords() const { return int(coords.size()); }
    int ngens() const { return int(gen_names.size()); }

    int coord_index(const std::string& name) const {
        for (size_t i = 0; i < coords.size(); ++i)
            if (coords[i] == name) return int(i);
        return -1;
    }
    int gen_index(const std::string& name) const {
        for (size_t i = 0; i < gen_names.size(); ++i)
            if (gen_names[i] == name) return int(i);
        return -1;
    }

    /// Expresses a polynomial g as an integer combination of the declared
    /// generator exponents, so exp(g) becomes a generator monomial.
    ExpMono express_exp(const Poly& g) const {
        ExpMono e(gen_names.size(), 0);
        if (g.is_zero()) return e;
        if (gen_names.empty())
            throw UnknownIdentifier("exp(...) used but no exponential generator is declared");
        // collect all monomials appearing in g or any generator exponent
        std::map<Mono, size_t, DegLexLess> rows;
        auto note = [&](const Poly& p) {
            for (auto& [m, c] : p.terms())
                if (!rows.count(m)) rows.emplace(m, rows.size());
        };
        note(g);
        for (const Poly& ge : gen_exponents) note(ge);
        QMatrix A(rows.size(), gen_names.size());
        std::vector<Rat> b(rows.size(), Rat(0));
        for (size_t t = 0; t < gen_exponents.size(); ++t)
            for (auto& [m, c] : gen_exponents[t].terms()) A.at(rows[m], t) = c;
        for (auto& [m, c] : g.terms()) b[rows[m]] = c;
        auto sol = A.solve(b);
        if (!sol)
            throw UnknownIdentifier("exp argument is not a combination of declared generators");
        for (size_t t = 0; t < sol->size(); ++t) {
            if (!is_integer((*sol)[t]))
                throw UnknownIdentifier("exp argument needs a non-integer generator power");
            e[t] = int(numerator((*sol)[t]));
        }
        // verify (solver guarantees it, but the combination must be exact)
        Poly check(g.nvars());
        for (size_t t = 0; t < gen_exponents.size(); ++t)
            check += gen_exponents[t] * Rat(e[t]);
        if (!(check == g))
            throw UnknownIdentifier("exp argument is not a combination of declared generators");
        return e;
    }
};

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return;
    if (a && b && a->coords == b->coords && a->gen_names == b->gen_names) return;
    throw Error("ring context mismatch");
}

} // namespace alab

// checks.hpp
// Result type shared by all verification operations, plus the deterministic
// sample generators.  A check never throws on a negative verdict: failures
// carry witnesses (serialized sample + residual) in the outcome.
#pragma once

#include "alab/algebroid.hpp"

#include <string>
#include <vector>

namespace alab {

struct CheckOutcome {
    std::string name;
    bool pass = true;
    bool skipped = false;
    std::vector<std::string> witnesses;
    long cases = 0; // how many instances were verified

    void fail(const std::string& witness) {
        pass = false;
        witnesses.push_back(witness);
    }
    void skip(const std::string& reason) {
        skipped = true;
        witnesses.push_back(reason);
    }
    void count() { ++cases; }
};

enum class SampleLevel { Basis = 0, Linear = 1, Quadratic = 2 };

inline SampleLevel sample_level_from_string(const std::string& s) {
    if (s == "basis") return SampleLevel::Basis;
    if (s == "linear") return SampleLevel::Linear;
    if (s == "quadratic") return SampleLevel::Quadratic;
    throw ValidationError("unknown sample level: " + s);
}

namespace detail {

inline void monomials_of_degree(int nvars, int deg, Mono& scratch, int from,
                                std::vector<Mono>& out) {
    if (deg == 0) {
        out.push_back(scratch);
        return;
    }
    if (from >= nvars) return;
    for (int take = deg; take >= 0; --take) {
        scratch[size_t(from)] = take;
        monomials_of_degree(nvars, deg - take, scratch, from + 1, out);
        scratch[size_t(from)] = 0;
    }
}

} // namespace detail

/// All monomials of total degree exactly `deg`, deterministic order.
inline std::vector<Mono> monomials_of_degree(int nvars, int deg) {
    std::vector<Mono> out;
    Mono scratch(size_t(nvars), 0);
    detail::monomials_of_degree(nvars, deg, scratch, 0, out);
    return out;
}

/// Degree-k forms used as verification samples: basis forms e_I*, optionally
/// multiplied by coordinates (Linear) and degree-2 monomials (Quadratic).
inline std::vector<AForm> form_samples(const RingPtr& ctx, int rank, int k, SampleLevel level) {
    std::vector<AForm> out;
    int p = ctx->ncoords();
    for (int d = 0; d <= int(level); ++d) {
        for (const Mono& mono : monomials_of_degree(p, d)) {
            Poly c(p);
            c.add_term(mono, 1);
            ScalarExpr coeff = ScalarExpr::from_poly(ctx, c);
            for (Mask mask : subsets_of_size(rank, k))
                out.push_back(coeff * AForm::basis(ctx, rank, mask));
        }
    }
    return out;
}

inline std::vector<MultiVector> multivector_samples(const RingPtr& ctx, int rank, int k,
                                                    SampleLevel level) {
    std::vector<MultiVector> out;
    int p = ctx->ncoords();
    for (int d = 0; d <= int(level); ++d) {
        for (const Mono& mono : monomials_of_degree(p, d)) {
            Poly c(p);
            c.add_term(mono, 1);
            ScalarExpr coeff = ScalarExpr::from_poly(ctx, c);
            for (Mask mask : subsets_of_size(rank, k))
                out.push_back(coeff * MultiVector::basis(ctx, rank, mask));
        }
    }
    return out;
}

} // namespace alab

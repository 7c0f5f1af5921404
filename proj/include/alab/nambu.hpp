// nambu.hpp
// Nambu structures of order n >= 3 on a Lie algebroid: the contraction maps
// Pi_k, the Nambu condition
//
//     [Pi(alpha), Pi]_A beta = -Pi( iota_{Pi(beta)} d_A alpha ),
//
// the induced bracket << alpha, beta >>_* = L_{Pi alpha} beta - iota_{Pi beta} d_A alpha
// on (n-1)-forms with anchor a o Pi_{n-1}, the derived checks (Leibniz axioms,
// morphism property, fundamental identity of the pushed-forward bracket), and
// the pointwise distribution D = Pi_{n-1}(Lambda^{n-1} A*).
//
// Universally quantified section identities are verified on finite sample
// sets (basis forms and their monomial multiples); residuals are exact, so a
// reported failure is conclusive.
#pragma once

#include "alab/checks.hpp"

#include <functional>
#include <vector>

namespace alab {

class NambuStructure {
public:
    NambuStructure(LieAlgebroid A, int order, MultiVector pi)
        : A_(std::move(A)), n_(order), pi_(std::move(pi)) {
        if (n_ < 3)
            throw ValidationError("Nambu structures of order n < 3 are rejected (n >= 3 required)");
        if (n_ > A_.rank()) throw ValidationError("Nambu order exceeds algebroid rank");
        if (pi_.degree() != n_) throw DegreeMismatch("Pi must have degree n");
        if (pi_.rank() != A_.rank()) throw RankMismatch("Pi rank must match the algebroid");
    }

    const LieAlgebroid& algebroid() const { return A_; }
    const RingPtr& ctx() const { return A_.ctx(); }
    int order() const { return n_; }
    int rank() const { return A_.rank(); }
    const MultiVector& pi() const { return pi_; }

    /// Pi_k(alpha) = iota_alpha Pi.
    MultiVector pi_k(const AForm& alpha) const {
        if (alpha.degree() > n_) throw DegreeMismatch("pi_k needs degree <= n");
        return contract_form(alpha, pi_);
    }

    /// << alpha, beta >>_* on (n-1)-forms.
    AForm leibniz_bracket(const AForm& alpha, const AForm& beta) const {
        if (alpha.degree() != n_ - 1 || beta.degree() != n_ - 1)
            throw DegreeMismatch("leibniz_bracket needs (n-1)-forms");
        return A_.lie_derivative(pi_k(alpha), beta) - contract_mv(pi_k(beta), A_.d_A(alpha));
    }

    /// {f_1,...,f_n}_Pi = <Pi, d_A f_1 ^ ... ^ d_A f_n>.
    ScalarExpr nambu_poisson_bracket(const std::vector<ScalarExpr>& fs) const {
        if (int(fs.size()) != n_) throw DegreeMismatch("bracket takes n arguments");
        AForm w = AForm::scalar(ctx(), rank(), ScalarExpr::one(ctx()));
        for (const ScalarExpr& f : fs) w = wedge(w, A_.d_A(f));
        return pairing(w, pi_);
    }

    std::vector<AForm> default_samples(SampleLevel level) const {
        return form_samples(ctx(), rank(), n_ - 1, level);
    }

private:
    LieAlgebroid A_;
    int n_;
    MultiVector pi_;
};

/// View of the Leibniz algebroid (Lambda^{n-1} A*, <<.,.>>_*, a o Pi_{n-1}).
/// The bracket is replaceable so harnesses can exercise corrupted brackets.
struct LeibnizAlgebroidView {
    const NambuStructure& N;
    std::function<AForm(const AForm&, const AForm&)> bracket;

    explicit LeibnizAlgebroidView(const NambuStructure& n) : N(n) {
        bracket = [&n](const AForm& a, const AForm& b) { return n.leibniz_bracket(a, b); };
    }
    std::vector<ScalarExpr> anchor_field(const AForm& alpha) const {
        return N.algebroid().anchor_field(N.pi_k(alpha));
    }
};

// ---------------------------------------------------------------------------
// checks
// ---------------------------------------------------------------------------

inline CheckOutcome check_nambu_condition(const NambuStructure& N,
                                          const std::vector<AForm>& samples) {
    CheckOutcome out{"nambu_condition"};
    if (samples.empty()) throw ValidationError("check_nambu_condition needs samples");
    const LieAlgebroid& A = N.algebroid();
    // quadratic pair loops run on a deterministic prefix past 48 samples
    size_t cap = samples.size() > 48 ? 48 : samples.size();
    for (size_t ia = 0; ia < cap; ++ia) {
        const AForm& alpha = samples[ia];
        MultiVector pia = N.pi_k(alpha);
        MultiVector br = A.schouten_bracket(pia, N.pi());
        AForm da = A.d_A(alpha);
        for (size_t ib = 0; ib < cap; ++ib) {
            const AForm& beta = samples[ib];
            out.count();
            MultiVector lhs = contract_form(beta, br);
            MultiVector rhs = -N.pi_k(contract_mv(N.pi_k(beta), da));
            MultiVector residual = lhs - rhs;
            if (!residual.is_zero())
                out.fail("alpha = " + alpha.to_string() + ", beta = " + beta.to_string() +
                         ", residual = " + residual.to_string());
        }
    }
    return out;
}

/// Fundamental identity of {.,...,.}_Pi over all strictly increasing tuples of
/// distinct monomials of degree 1..bound.  Tuples with repeated entries and
/// permutations reduce to these by multilinearity and alternation, and
/// constant arguments annihilate both sides, so this sample set carries the
/// full content of the bound.
inline CheckOutcome check_fundamental_identity(const NambuStructure& N, int degree_bound) {
    CheckOutcome out{"fundamental_identity"};
    const RingPtr& ctx = N.ctx();
    int n = N.order();
    std::vector<ScalarExpr> monos;
    for (int d = 1; d <= degree_bound; ++d)
        for (const Mono& m : monomials_of_degree(ctx->ncoords(), d)) {
            Poly p(ctx->ncoords());
            p.add_term(m, 1);
            monos.push_back(ScalarExpr::from_poly(ctx, p));
        }
    if (int(monos.size()) < n) return out; // vacuous at this bound

    std::vector<int> f_idx(size_t(n - 1), 0);
    std::vector<int> g_idx(size_t(n), 0);
    std::function<bool(std::vector<int>&, int, int, const std::function<bool()>&)> tuples =
        [&](std::vector<int>& idx, int pos, int from, const std::function<bool()>& body) -> bool {
        if (pos == int(idx.size())) return body();
        for (int i = from; i < int(monos.size()); ++i) {
            idx[size_t(pos)] = i;
            if (!tuples(idx, pos + 1, i + 1, body)) return false;
        }
        return true;
    };

    auto bracket = [&](const std::vector<ScalarExpr>& fs) { return N.nambu_poisson_bracket(fs); };

    tuples(f_idx, 0, 0, [&]() {
        return tuples(g_idx, 0, 0, [&]() -> bool {
            out.count();
            std::vector<ScalarExpr> gs;
            for (int i : g_idx) gs.push_back(monos[size_t(i)]);
            std::vector<ScalarExpr> outer;
            for (int i : f_idx) outer.push_back(monos[size_t(i)]);
            outer.push_back(bracket(gs));
            ScalarExpr lhs = bracket(outer);
            ScalarExpr rhs = ScalarExpr::zero(ctx);
            for (int i = 0; i < n; ++i) {
                std::vector<ScalarExpr> inner;
                for (int j : f_idx) inner.push_back(monos[size_t(j)]);
                inner.push_back(gs[size_t(i)]);
                std::vector<ScalarExpr> args = gs;
                args[size_t(i)] = bracket(inner);
                rhs += bracket(args);
            }
            if (lhs != rhs) {
                std::string fs_str, gs_str;
                for (int j : f_idx) fs_str += monos[size_t(j)].to_string() + " ";
                for (int j : g_idx) gs_str += monos[size_t(j)].to_string() + " ";
                out.fail("f = [ " + fs_str + "], g = [ " + gs_str +
                         "], residual = " + (lhs - rhs).to_string());
                return false; // first counterexample
            }
            return true;
        });
    });
    return out;
}

inline CheckOutcome check_leibniz_axioms(const LeibnizAlgebroidView& V,
                                         const std::vector<AForm>& samples) {
    CheckOutcome out{"leibniz_axioms"};
    const NambuStructure& N = V.N;
    const LieAlgebroid& A = N.algebroid();
    const RingPtr& ctx = N.ctx();

    // left Leibniz identity.  The triple loop is cubic in the sample count;
    // past 18 samples it runs on a deterministic prefix (basis forms come
    // first in form_samples, so the basis set is always covered).
    size_t triple_cap = samples.size() > 18 ? 18 : samples.size();
    for (size_t ia = 0; ia < triple_cap; ++ia)
        for (size_t ib = 0; ib < triple_cap; ++ib)
            for (size_t ic = 0; ic < triple_cap; ++ic) {
                const AForm &a = samples[ia], &b = samples[ib], &c = samples[ic];
                out.count();
                AForm lhs = V.bracket(a, V.bracket(b, c));
                AForm rhs = V.bracket(V.bracket(a, b), c) + V.bracket(b, V.bracket(a, c));
                if (lhs != rhs) {
                    out.fail("Leibniz identity: a = " + a.to_string() + ", b = " + b.to_string() +
                             ", c = " + c.to_string() +
                             ", residual = " + (lhs - rhs).to_string());
                    if (out.witnesses.size() >= 3) return out;
                }
            }

    // module rule << a, f b >> = f << a,b >> + a(Pi a)(f) b
    size_t pair_cap = samples.size() > 48 ? 48 : samples.size();
    for (size_t ia = 0; ia < pair_cap; ++ia)
        for (size_t ib = 0; ib < pair_cap; ++ib)
            for (int j = 0; j < ctx->ncoords(); ++j) {
                const AForm &a = samples[ia], &b = samples[ib];
                out.count();
                ScalarExpr f = ScalarExpr::coordinate(ctx, j);
                AForm lhs = V.bracket(a, f * b);
                AForm rhs = f * V.bracket(a, b) + A.anchor_apply(N.pi_k(a), f) * b;
                if (lhs != rhs)
                    out.fail("module rule: a = " + a.to_string() + ", b = " + b.to_string() +
                             ", f = " + f.to_string());
            }

    // anchor property a(Pi << a,b >>) = [a(Pi a), a(Pi b)]
    for (size_t ia = 0; ia < pair_cap; ++ia)
        for (size_t ib = 0; ib < pair_cap; ++ib) {
            const AForm &a = samples[ia], &b = samples[ib];
            out.count();
            std::vector<ScalarExpr> lhs = A.anchor_field(N.pi_k(V.bracket(a, b)));
            std::vector<ScalarExpr> X = A.anchor_field(N.pi_k(a));
            std::vector<ScalarExpr> Y = A.anchor_field(N.pi_k(b));
            bool ok = true;
            for (int l = 0; l < ctx->ncoords() && ok; ++l) {
                ScalarExpr comm = ScalarExpr::zero(ctx);
                for (int u = 0; u < ctx->ncoords(); ++u)
                    comm += X[size_t(u)] * Y[size_t(l)].derivative(u) -
                            Y[size_t(u)] * X[size_t(l)].derivative(u);
                if (lhs[size_t(l)] != comm) ok = false;
            }
            if (!ok)
                out.fail("anchor property: a = " + a.to_string() + ", b = " + b.to_string());
        }
    return out;
}

/// Morphism property Pi << a,b >>_* = [Pi a, Pi b]_A.
inline CheckOutcome check_morphism(const NambuStructure& N, const std::vector<AForm>& samples) {
    CheckOutcome out{"morphism"};
    const LieAlgebroid& A = N.algebroid();
    size_t cap = samples.size() > 48 ? 48 : samples.size();
    for (size_t ia = 0; ia < cap; ++ia)
        for (size_t ib = 0; ib < cap; ++ib) {
            const AForm &a = samples[ia], &b = samples[ib];
            out.count();
            MultiVector lhs = N.pi_k(N.leibniz_bracket(a, b));
            MultiVector rhs = A.schouten_bracket(N.pi_k(a), N.pi_k(b));
            if (lhs != rhs)
                out.fail("alpha = " + a.to_string() + ", beta = " + b.to_string() +
                         ", residual = " + (lhs - rhs).to_string());
        }
    return out;
}

/// Basis of D(pt) = Pi_{n-1}(Lambda^{n-1} A*_pt); throws SingularPoint when
/// Pi vanishes at pt.
inline std::vector<MultiVector> distribution_D(const NambuStructure& N,
                                               const std::vector<Rat>& pt) {
    const RingPtr& ctx = N.ctx();
    int m = N.rank();
    bool nonzero = false;
    for (auto& [mask, c] : N.pi().comps())
        if (c.eval(pt) != 0) nonzero = true;
    if (!nonzero) throw SingularPoint("Pi vanishes at the sample point");

    std::vector<std::vector<Rat>> rows;
    std::vector<MultiVector> basis;
    for (Mask alpha : subsets_of_size(m, N.order() - 1)) {
        MultiVector v = N.pi_k(AForm::basis(ctx, m, alpha));
        std::vector<Rat> row(size_t(m), Rat(0));
        for (auto& [mask, c] : v.comps()) row[size_t(indices_of(mask)[0] - 1)] = c.eval(pt);
        // keep v if it enlarges the span
        QMatrix span(rows.size() + 1, size_t(m));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < size_t(m); ++j) span.at(i, j) = rows[i][j];
        for (size_t j = 0; j < size_t(m); ++j) span.at(rows.size(), j) = row[j];
        if (span.rank() == rows.size() + 1) {
            rows.push_back(row);
            MultiVector vec(ctx, m, 1);
            for (int i = 0; i < m; ++i)
                if (row[size_t(i)] != 0)
                    vec.add(Mask(1) << i, ScalarExpr::constant(ctx, row[size_t(i)]));
            basis.push_back(vec);
        }
    }
    return basis;
}

struct PointRegularity {
    std::vector<Rat> point;
    bool regular = false;
    bool decomposable = false;
};

inline std::vector<PointRegularity> regularity_report(const NambuStructure& N,
                                                      const std::vector<std::vector<Rat>>& pts) {
    std::vector<PointRegularity> out;
    for (const auto& pt : pts) {
        PointRegularity r;
        r.point = pt;
        for (auto& [mask, c] : N.pi().comps())
            if (c.eval(pt) != 0) r.regular = true;
        r.decomposable = plucker_decomposable_at(N.pi(), pt);
        out.push_back(r);
    }
    return out;
}

} // namespace alab

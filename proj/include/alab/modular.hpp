// modular.hpp
// Orientation forms, the modular multisection, the modular 1-cocycle and its
// properties, and bounded-ansatz nullity decision.
//
// The defining relation inverted here is
//
//     L_{Pi alpha} nu = ( iota_alpha Mtilde + (-1)^(n-1) iota_{d_A alpha} Pi ) nu
//
// solved for the components of Mtilde over all basis (n-1)-forms alpha; the
// d_A f-tuple relation L_{Pi(d f_1 ^...^ d f_{n-1})} nu = (iota_... Mtilde) nu
// is then re-verified on coordinate tuples.  All contractions are the
// convention-pinned ones from exterior.hpp; with those conventions and odd n
// the multisection coincides with delta_nu(Pi), which the tests cross-check.
#pragma once

#include "alab/nambu.hpp"

#include <optional>

namespace alab {

/// Nowhere-vanishing top form with a syntactic nonvanishing certificate:
/// the single coefficient is a nonzero rational constant times a generator
/// monomial (so exp(g) * constant).
class OrientationForm {
public:
    OrientationForm(RingPtr ctx, int rank, ScalarExpr coeff)
        : ctx_(std::move(ctx)), rank_(rank), coeff_(std::move(coeff)) {
        validate();
    }

    static OrientationForm standard(const RingPtr& ctx, int rank) {
        return OrientationForm(ctx, rank, ScalarExpr::one(ctx));
    }

    const RingPtr& ctx() const { return ctx_; }
    int rank() const { return rank_; }
    const ScalarExpr& coeff() const { return coeff_; }
    Mask top_mask() const { return (rank_ >= 31) ? ~Mask(0) : (Mask(1) << rank_) - 1; }

    AForm form() const {
        AForm nu(ctx_, rank_, rank_);
        nu.set(top_mask(), coeff_);
        return nu;
    }

    /// nu' = exp(g) nu.
    OrientationForm twist(const Poly& g) const {
        return OrientationForm(ctx_, rank_, coeff_ * ScalarExpr::exponential(ctx_, g));
    }
    OrientationForm scale(const Rat& q) const {
        if (q == 0) throw ValidationError("orientation form scale must be nonzero");
        return OrientationForm(ctx_, rank_, coeff_ * q);
    }

    /// Exact quotient of a top-degree form by nu.
    ScalarExpr divide_top(const AForm& omega) const {
        if (omega.degree() != rank_) throw DegreeMismatch("divide_top expects a top form");
        return omega.coeff(top_mask()) / coeff_;
    }

    bool is_weight_homogeneous() const {
        // certificate restricts the coefficient to constant * generator
        // monomial; only the pure constant is weight-homogeneous
        return coeff_.is_rational_constant();
    }

private:
    void validate() const {
        if (coeff_.is_zero())
            throw ValidationError("orientation form must be nonvanishing");
        if (coeff_.term_count() != 1)
            throw NonFactorableQuotient(
                "orientation certificate needs a single term exp(g)*constant");
        auto& [gm, rf] = *coeff_.terms().begin();
        if (!rf.is_polynomial() || !rf.num().is_constant())
            throw ValidationError("orientation coefficient must be a rational constant "
                                  "times exp(g); it could vanish otherwise");
    }

    RingPtr ctx_;
    int rank_;
    ScalarExpr coeff_;
};

struct ModularData {
    MultiVector m_tilde; // degree n-1

    /// The 1-cocycle alpha |-> iota_alpha Mtilde (full contraction).
    ScalarExpr cocycle(const AForm& alpha) const {
        return contract_form(alpha, m_tilde).scalar_value();
    }
    /// Partial contraction iota_beta Mtilde for deg beta < n-1.
    MultiVector contract(const AForm& beta) const { return contract_form(beta, m_tilde); }
};

inline ModularData modular_multisection(const NambuStructure& N, const OrientationForm& nu) {
    const LieAlgebroid& A = N.algebroid();
    const RingPtr& ctx = N.ctx();
    if (!A.spanning_hypothesis())
        throw SpanningHypothesisFails("modular multisection needs the spanning hypothesis");
    int m = N.rank(), n = N.order();
    AForm nu_form = nu.form();
    int lead = half_floor_sign(n - 1);
    int sgn_n1 = ((n - 1) % 2 == 0) ? 1 : -1;

    MultiVector mt(ctx, m, n - 1);
    for (Mask I : subsets_of_size(m, n - 1)) {
        AForm alpha = AForm::basis(ctx, m, I);
        MultiVector pia = N.pi_k(alpha);
        ScalarExpr q = nu.divide_top(A.lie_derivative(pia, nu_form));
        ScalarExpr ida = contract_form(A.d_A(alpha), N.pi()).scalar_value();
        ScalarExpr value = (sgn_n1 > 0) ? q - ida : q + ida; // iota_alpha Mtilde
        mt.add(I, (lead > 0) ? value : -value);
    }
    ModularData md{mt};

    // re-verify the defining d_A f-tuple relation on coordinate tuples
    std::vector<AForm> dxs;
    for (int j = 0; j < ctx->ncoords(); ++j)
        dxs.push_back(A.d_A(ScalarExpr::coordinate(ctx, j)));
    for (Mask T : subsets_of_size(ctx->ncoords(), n - 1)) {
        AForm alpha = AForm::scalar(ctx, m, ScalarExpr::one(ctx));
        for (int j : indices_of(T)) alpha = wedge(alpha, dxs[size_t(j - 1)]);
        AForm lhs = A.lie_derivative(N.pi_k(alpha), nu_form);
        AForm rhs = md.cocycle(alpha) * nu_form;
        if (lhs != rhs)
            throw Error("modular multisection failed its defining-relation re-verification");
    }
    return md;
}

/// d_script{A} M (alpha,beta) = a(Pi a)(iota_b Mt) - a(Pi b)(iota_a Mt)
///                              - iota_{<<a,b>>} Mt  must vanish.
inline CheckOutcome check_cocycle(const ModularData& md, const NambuStructure& N,
                                  const std::vector<AForm>& samples) {
    CheckOutcome out{"modular_cocycle"};
    const LieAlgebroid& A = N.algebroid();
    size_t cap = samples.size() > 48 ? 48 : samples.size();
    for (size_t ia = 0; ia < cap; ++ia)
        for (size_t ib = 0; ib < cap; ++ib) {
            const AForm &a = samples[ia], &b = samples[ib];
            out.count();
            ScalarExpr r = A.anchor_apply(N.pi_k(a), md.cocycle(b)) -
                           A.anchor_apply(N.pi_k(b), md.cocycle(a)) -
                           md.cocycle(N.leibniz_bracket(a, b));
            if (!r.is_zero())
                out.fail("alpha = " + a.to_string() + ", beta = " + b.to_string() +
                         ", residual = " + r.to_string());
        }
    return out;
}

/// With nu' = exp(g) nu the cocycles differ by the coboundary of g:
/// iota_a Mtilde' - iota_a Mtilde = a(Pi a)(g) for every basis alpha.
inline CheckOutcome check_orientation_change(const NambuStructure& N, const OrientationForm& nu,
                                             const Poly& g) {
    CheckOutcome out{"orientation_change"};
    const LieAlgebroid& A = N.algebroid();
    const RingPtr& ctx = N.ctx();
    ModularData base = modular_multisection(N, nu);
    ModularData twisted = modular_multisection(N, nu.twist(g));
    ScalarExpr gs = ScalarExpr::from_poly(ctx, g);
    for (Mask I : subsets_of_size(N.rank(), N.order() - 1)) {
        out.count();
        AForm alpha = AForm::basis(ctx, N.rank(), I);
        ScalarExpr diff = twisted.cocycle(alpha) - base.cocycle(alpha);
        ScalarExpr expect = A.anchor_apply(N.pi_k(alpha), gs);
        if (diff != expect)
            out.fail("alpha = " + alpha.to_string() + ", difference = " + diff.to_string() +
                     ", expected = " + expect.to_string());
    }
    return out;
}

struct NullityResult {
    std::optional<ScalarExpr> potential; // g with iota_alpha Mt = a(Pi alpha)(g)
    std::string message;
};

namespace detail {

/// Collects a ScalarExpr-linear equation sum_j c_j v_j = b into rational rows
/// keyed by (generator monomial, coordinate monomial), clearing denominators.
struct LinearCollector {
    explicit LinearCollector(int nvars) : nvars_(nvars) {}

    int nvars_;
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;

    void add_equation(const std::vector<ScalarExpr>& coeffs, const ScalarExpr& b) {
        // common denominator across the equation
        Poly common(nvars_);
        auto fold = [&](const ScalarExpr& e) {
            for (auto& [gm, rf] : e.terms())
                common = common.is_zero() ? rf.den() : common * rf.den();
        };
        fold(b);
        for (auto& c : coeffs) fold(c);
        if (common.is_zero()) common = Poly::constant(nvars_, 1);

        std::map<std::pair<ExpMono, Mono>, size_t> feature;
        auto features_of = [&](const ScalarExpr& e, auto&& record) {
            for (auto& [gm, rf] : e.terms()) {
                Poly cleared = divexact(rf.num() * common, rf.den());
                for (auto& [mono, coeff] : cleared.terms()) record(gm, mono, coeff);
            }
        };
        // first pass: feature index
        auto note = [&](const ExpMono& gm, const Mono& mono, const Rat&) {
            auto key = std::make_pair(gm, mono);
            if (!feature.count(key)) feature.emplace(key, feature.size());
        };
        features_of(b, note);
        for (auto& c : coeffs) features_of(c, note);
        size_t base_row = rows.size();
        for (size_t i = 0; i < feature.size(); ++i) {
            rows.emplace_back(coeffs.size(), Rat(0));
            rhs.emplace_back(0);
        }
        features_of(b, [&](const ExpMono& gm, const Mono& mono, const Rat& c) {
            rhs[base_row + feature[{gm, mono}]] += c;
        });
        for (size_t j = 0; j < coeffs.size(); ++j)
            features_of(coeffs[j], [&](const ExpMono& gm, const Mono& mono, const Rat& c) {
                rows[base_row + feature[{gm, mono}]][j] += c;
            });
    }

    std::optional<std::vector<Rat>> solve(size_t unknowns) const {
        QMatrix A(rows.size(), unknowns);
        std::vector<Rat> b(rows.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            for (size_t j = 0; j < unknowns; ++j) A.at(i, j) = rows[i][j];
            b[i] = rhs[i];
        }
        return A.solve(b);
    }
};

} // namespace detail

/// Searches a potential g (polynomial of total degree <= degree_bound, plus
/// single generator powers u^{+-1} times such polynomials when allow_exp)
/// with iota_alpha Mtilde = a(Pi alpha)(g) for every basis (n-1)-form alpha.
/// The system is linear over Q and solved exactly; on success the proof-step
/// form Mtilde = (-1)^(n-1) Pi_1(d_A g) is re-verified.
inline NullityResult solve_nullity(const ModularData& md, const NambuStructure& N,
                                   int degree_bound, bool allow_exp = false) {
    const LieAlgebroid& A = N.algebroid();
    const RingPtr& ctx = N.ctx();
    std::vector<ScalarExpr> ansatz;
    for (int d = 0; d <= degree_bound; ++d)
        for (const Mono& m : monomials_of_degree(ctx->ncoords(), d)) {
            Poly p(ctx->ncoords());
            p.add_term(m, 1);
            ScalarExpr base = ScalarExpr::from_poly(ctx, p);
            ansatz.push_back(base);
            if (allow_exp)
                for (int t = 0; t < ctx->ngens(); ++t)
                    for (int e : {1, -1})
                        ansatz.push_back(base *
                                         ScalarExpr::exponential(ctx, ctx->gen_exponents[size_t(t)], e));
        }

    detail::LinearCollector collector(ctx->ncoords());
    for (Mask I : subsets_of_size(N.rank(), N.order() - 1)) {
        AForm alpha = AForm::basis(ctx, N.rank(), I);
        MultiVector pia = N.pi_k(alpha);
        std::vector<ScalarExpr> coeffs;
        for (const ScalarExpr& t : ansatz) coeffs.push_back(A.anchor_apply(pia, t));
        collector.add_equation(coeffs, md.cocycle(alpha));
    }
    auto sol = collector.solve(ansatz.size());
    if (!sol) {
        return {std::nullopt, "NotFoundWithinBound: no potential of degree <= " +
                                  std::to_string(degree_bound) +
                                  (allow_exp ? " (exp ansatz included)" : "")};
    }
    ScalarExpr g = ScalarExpr::zero(ctx);
    for (size_t j = 0; j < ansatz.size(); ++j)
        if ((*sol)[j] != 0) g += ansatz[j] * (*sol)[j];

    // re-substitute, then verify the Pi_1 form of the proof step
    for (Mask I : subsets_of_size(N.rank(), N.order() - 1)) {
        AForm alpha = AForm::basis(ctx, N.rank(), I);
        if (md.cocycle(alpha) != A.anchor_apply(N.pi_k(alpha), g))
            return {std::nullopt, "internal: solved potential fails re-substitution"};
    }
    MultiVector expect = N.pi_k(A.d_A(g));
    if ((N.order() - 1) % 2 != 0) expect = -expect;
    if (!(md.m_tilde == expect))
        return {std::nullopt, "internal: Mtilde != (-1)^(n-1) Pi_1(d_A g)"};
    return {g, "potential found"};
}

/// Lemma 3.3: L_{a o Pi(alpha)} Lambda = (-1)^n (iota_{d_A alpha} Pi) Lambda,
/// with Lambda the anchor pushforward of Pi living on the tangent algebroid
/// of the chart.
inline CheckOutcome check_lemma33(const NambuStructure& N, const std::vector<AForm>& samples) {
    CheckOutcome out{"lemma_3_3"};
    const LieAlgebroid& A = N.algebroid();
    const RingPtr& ctx = N.ctx();
    if (!A.spanning_hypothesis())
        throw SpanningHypothesisFails("Lemma 3.3 check needs the spanning hypothesis");
    LieAlgebroid T = LieAlgebroid::tangent(ctx);
    int p = ctx->ncoords();

    // Lambda = anchor pushforward of Pi
    MultiVector lambda(ctx, p, N.order());
    for (auto& [mask, c] : N.pi().comps()) {
        MultiVector w = MultiVector::scalar(ctx, p, c);
        for (int i : indices_of(mask)) {
            MultiVector leg(ctx, p, 1);
            for (int j = 0; j < p; ++j) {
                const ScalarExpr& a = A.anchor(i - 1, j);
                if (!a.is_zero()) leg.add(Mask(1) << j, a);
            }
            w = wedge(w, leg);
        }
        lambda += w;
    }

    int sgn_n = (N.order() % 2 == 0) ? 1 : -1;
    for (const AForm& alpha : samples) {
        out.count();
        std::vector<ScalarExpr> field = A.anchor_field(N.pi_k(alpha));
        MultiVector X(ctx, p, 1);
        for (int j = 0; j < p; ++j)
            if (!field[size_t(j)].is_zero()) X.add(Mask(1) << j, field[size_t(j)]);
        MultiVector lhs = T.lie_derivative_mv(X, lambda);
        ScalarExpr ida = contract_form(A.d_A(alpha), N.pi()).scalar_value();
        MultiVector rhs = (ida * lambda);
        if (sgn_n < 0) rhs = -rhs;
        if (lhs != rhs)
            out.fail("alpha = " + alpha.to_string() +
                     ", residual = " + (lhs - rhs).to_string());
    }
    return out;
}

/// Eq. (3.5): iota_{d<<a,b>>} Pi = a(Pi a)(iota_{db} Pi) - a(Pi b)(iota_{da} Pi).
inline CheckOutcome check_eq_crucial(const NambuStructure& N, const std::vector<AForm>& samples) {
    CheckOutcome out{"eq_3_5"};
    const LieAlgebroid& A = N.algebroid();
    auto ip = [&](const AForm& w) { return contract_form(w, N.pi()).scalar_value(); };
    size_t cap = samples.size() > 48 ? 48 : samples.size();
    for (size_t ia = 0; ia < cap; ++ia)
        for (size_t ib = 0; ib < cap; ++ib) {
            const AForm &a = samples[ia], &b = samples[ib];
            out.count();
            ScalarExpr lhs = ip(A.d_A(N.leibniz_bracket(a, b)));
            ScalarExpr rhs = A.anchor_apply(N.pi_k(a), ip(A.d_A(b))) -
                             A.anchor_apply(N.pi_k(b), ip(A.d_A(a)));
            if (lhs != rhs)
                out.fail("alpha = " + a.to_string() + ", beta = " + b.to_string() +
                         ", residual = " + (lhs - rhs).to_string());
        }
    return out;
}

} // namespace alab

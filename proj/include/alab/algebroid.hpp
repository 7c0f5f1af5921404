// algebroid.hpp
// Lie algebroid on a single trivialized chart, presented by an anchor matrix
// and a table of structure functions:
//
//     a(e_i) = sum_j anchor[i][j] d/dx_j,      [e_i, e_j] = sum_k c_ijk e_k.
//
// Brackets extend to function coefficients by the Leibniz rule, to
// multivectors as the Schouten bracket (a Gerstenhaber bracket pinned by
// [X,f] = a(X)f), and the coboundary d_A / Lie derivative follow the usual
// multilinear formulas evaluated on basis sections.
//
// Optional integer weights (per coordinate, per section) make the calculus
// weight-graded; the complexes module relies on that to stratify.
#pragma once

#include "alab/exterior.hpp"
#include "alab/parser.hpp"

#include <optional>
#include <string>
#include <vector>

namespace alab {

struct AlgebroidWeights {
    std::vector<int> coord;   // weight of each coordinate, all >= 1
    std::vector<int> section; // weight of each basis section
};

struct AxiomReport {
    bool jacobi_ok = true;
    bool anchor_morphism_ok = true;
    bool leibniz_rule_ok = true;
    std::vector<std::string> counterexamples;
    bool all_ok() const { return jacobi_ok && anchor_morphism_ok && leibniz_rule_ok; }
};

class LieAlgebroid {
public:
    LieAlgebroid(RingPtr ctx, int rank, std::vector<std::vector<ScalarExpr>> anchor,
                 std::optional<AlgebroidWeights> weights = std::nullopt)
        : ctx_(std::move(ctx)),
          rank_(rank),
          anchor_(std::move(anchor)),
          structure_(size_t(rank) * size_t(rank) * size_t(rank), ScalarExpr::zero(ctx_)),
          weights_(std::move(weights)) {
        if (rank_ < 1 || rank_ > 31) throw ValidationError("rank out of range");
        if (int(anchor_.size()) != rank_) throw ValidationError("anchor must have `rank` rows");
        for (auto& row : anchor_)
            if (int(row.size()) != ctx_->ncoords())
                throw ValidationError("anchor row must have one entry per coordinate");
        if (weights_) {
            if (int(weights_->coord.size()) != ctx_->ncoords() ||
                int(weights_->section.size()) != rank_)
                throw ValidationError("weight vectors have wrong lengths");
            for (int w : weights_->coord)
                if (w < 1) throw ValidationError("coordinate weights must be positive");
        }
    }

    /// Tangent algebroid of the chart: identity anchor, zero bracket,
    /// coordinates of weight 1 and sections of weight -1.
    static LieAlgebroid tangent(const RingPtr& ctx) {
        int p = ctx->ncoords();
        std::vector<std::vector<ScalarExpr>> anchor;
        anchor.resize(size_t(p));
        for (int i = 0; i < p; ++i) {
            anchor[size_t(i)].assign(size_t(p), ScalarExpr::zero(ctx));
            anchor[size_t(i)][size_t(i)] = ScalarExpr::one(ctx);
        }
        AlgebroidWeights w{std::vector<int>(size_t(p), 1), std::vector<int>(size_t(p), -1)};
        return LieAlgebroid(ctx, p, std::move(anchor), w);
    }

    const RingPtr& ctx() const { return ctx_; }
    int rank() const { return rank_; }
    int base_dim() const { return ctx_->ncoords(); }
    const ScalarExpr& anchor(int i, int j) const { return anchor_[size_t(i)][size_t(j)]; }
    const std::optional<AlgebroidWeights>& weights() const { return weights_; }

    /// [e_i, e_j] = sum_k c(i,j,k) e_k; antisymmetry is enforced on write.
    const ScalarExpr& structure(int i, int j, int k) const {
        return structure_[idx(i, j, k)];
    }
    void set_structure(int i, int j, int k, const ScalarExpr& c) {
        if (i == j) {
            if (!c.is_zero()) throw ValidationError("structure function c[i][i][k] must vanish");
            return;
        }
        structure_[idx(i, j, k)] = c;
        structure_[idx(j, i, k)] = -c;
    }

    void validate_weights() const {
        if (!weights_) return;
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < base_dim(); ++j)
                require_homogeneous(anchor(i, j),
                                    weights_->section[size_t(i)] + weights_->coord[size_t(j)],
                                    "anchor entry");
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j)
                for (int k = 0; k < rank_; ++k)
                    require_homogeneous(structure(i, j, k),
                                        weights_->section[size_t(i)] + weights_->section[size_t(j)] -
                                            weights_->section[size_t(k)],
                                        "structure function");
    }

    // -- calculus ---------------------------------------------------------

    ScalarExpr anchor_apply(const MultiVector& X, const ScalarExpr& f) const {
        require_rank(X);
        if (X.degree() != 1) throw DegreeMismatch("anchor_apply needs a section (degree 1)");
        ScalarExpr out = ScalarExpr::zero(ctx_);
        for (auto& [mask, coeff] : X.comps()) {
            int i = indices_of(mask)[0] - 1;
            for (int j = 0; j < base_dim(); ++j) {
                const ScalarExpr& a = anchor(i, j);
                if (a.is_zero()) continue;
                out += coeff * a * f.derivative(j);
            }
        }
        return out;
    }

    /// Components of a(X) as a vector field on the base.
    std::vector<ScalarExpr> anchor_field(const MultiVector& X) const {
        require_rank(X);
        if (X.degree() != 1) throw DegreeMismatch("anchor_field needs a section");
        std::vector<ScalarExpr> v(size_t(base_dim()), ScalarExpr::zero(ctx_));
        for (auto& [mask, coeff] : X.comps()) {
            int i = indices_of(mask)[0] - 1;
            for (int j = 0; j < base_dim(); ++j) v[size_t(j)] += coeff * anchor(i, j);
        }
        return v;
    }

    MultiVector bracket_sections(const MultiVector& X, const MultiVector& Y) const {
        require_rank(X);
        require_rank(Y);
        if (X.degree() != 1 || Y.degree() != 1)
            throw DegreeMismatch("bracket_sections needs sections (degree 1)");
        MultiVector out(ctx_, rank_, 1);
        for (auto& [mi, f] : X.comps()) {
            int i = indices_of(mi)[0] - 1;
            for (auto& [mj, g] : Y.comps()) {
                int j = indices_of(mj)[0] - 1;
                ScalarExpr fg = f * g;
                for (int k = 0; k < rank_; ++k) {
                    const ScalarExpr& c = structure(i, j, k);
                    if (!c.is_zero()) out.add(Mask(1) << k, fg * c);
                }
                out.add(mj, f * basis_anchor_apply(i, g));
                out.add(mi, -(g * basis_anchor_apply(j, f)));
            }
        }
        return out;
    }

    AForm d_A(const AForm& phi) const {
        require_rank(phi);
        int k = phi.degree();
        AForm out(ctx_, rank_, k + 1);
        if (k + 1 > rank_) return out;
        for (Mask S : subsets_of_size(rank_, k + 1)) {
            std::vector<int> idxs = indices_of(S);
            ScalarExpr total = ScalarExpr::zero(ctx_);
            for (size_t r = 0; r < idxs.size(); ++r) {
                Mask rest = S & ~(Mask(1) << (idxs[r] - 1));
                ScalarExpr val = phi.coeff(rest);
                if (val.is_zero()) continue;
                ScalarExpr term = basis_anchor_apply(idxs[r] - 1, val);
                total += (r % 2 == 0) ? term : -term;
            }
            for (size_t r = 0; r + 1 < idxs.size(); ++r)
                for (size_t s = r + 1; s < idxs.size(); ++s) {
                    Mask rest = S & ~(Mask(1) << (idxs[r] - 1)) & ~(Mask(1) << (idxs[s] - 1));
                    int outer = ((r + 1 + s + 1) % 2 == 0) ? 1 : -1;
                    for (int t = 0; t < rank_; ++t) {
                        const ScalarExpr& c = structure(idxs[r] - 1, idxs[s] - 1, t);
                        if (c.is_zero()) continue;
                        Mask tbit = Mask(1) << t;
                        if (rest & tbit) continue;
                        ScalarExpr val = phi.coeff(rest | tbit);
                        if (val.is_zero()) continue;
                        int below = std::popcount(rest & (tbit - 1));
                        int sign = outer * ((below % 2 == 0) ? 1 : -1);
                        total += (sign > 0) ? c * val : -(c * val);
                    }
                }
            out.add(S, total);
        }
        return out;
    }

    AForm d_A(const ScalarExpr& f) const {
        return d_A(AForm::scalar(ctx_, rank_, f));
    }

    AForm lie_derivative(const MultiVector& X, const AForm& phi) const {
        require_rank(X);
        require_rank(phi);
        if (X.degree() != 1) throw DegreeMismatch("lie_derivative needs a section");
        int k = phi.degree();
        AForm out(ctx_, rank_, k);
        for (Mask S : subsets_of_size(rank_, k)) {
            std::vector<int> idxs = indices_of(S);
            ScalarExpr total = anchor_apply(X, phi.coeff(S));
            for (size_t r = 0; r < idxs.size(); ++r) {
                MultiVector b = bracket_sections(X, MultiVector::basis(ctx_, rank_, Mask(1) << (idxs[r] - 1)));
                Mask rest = S & ~(Mask(1) << (idxs[r] - 1));
                for (auto& [mt, h] : b.comps()) {
                    if (rest & mt) continue;
                    ScalarExpr val = phi.coeff(rest | mt);
                    if (val.is_zero()) continue;
                    int below = std::popcount(rest & (mt - 1));
                    // move the slot-r insertion to its sorted position
                    int swaps = int(r) - below;
                    int sign = (swaps % 2 == 0) ? 1 : -1;
                    total -= (sign > 0) ? h * val : -(h * val);
                }
            }
            out.add(S, total);
        }
        return out;
    }

    /// Schouten bracket on multivectors, normalized by [X,f] = a(X)f and the
    /// right Leibniz rule [P, Q^R] = [P,Q]^R + (-1)^((p-1) q) Q^[P,R].
    MultiVector schouten_bracket(const MultiVector& P, const MultiVector& Q) const {
        require_rank(P);
        require_rank(Q);
        int p = P.degree(), q = Q.degree();
        int out_deg = std::max(0, p + q - 1);
        MultiVector out(ctx_, rank_, out_deg);
        if (p == 0 && q == 0) return out;
        for (auto& [mi, f] : P.comps())
            for (auto& [mj, g] : Q.comps())
                out += schouten_term(f, mi, g, mj);
        return out;
    }

    MultiVector lie_derivative_mv(const MultiVector& X, const MultiVector& P) const {
        return schouten_bracket(X, P);
    }

    // -- verification ------------------------------------------------------

    AxiomReport check_lie_axioms() const {
        AxiomReport rep;
        for (int i = 0; i < rank_; ++i)
            for (int j = i + 1; j < rank_; ++j)
                for (int k = j + 1; k < rank_; ++k) {
                    MultiVector ei = basis_section(i), ej = basis_section(j), ek = basis_section(k);
                    MultiVector jac = bracket_sections(bracket_sections(ei, ej), ek);
                    jac += bracket_sections(bracket_sections(ej, ek), ei);
                    jac += bracket_sections(bracket_sections(ek, ei), ej);
                    if (!jac.is_zero()) {
                        rep.jacobi_ok = false;
                        rep.counterexamples.push_back(
                            "jacobi(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) +
                            ",e" + std::to_string(k + 1) + ") = " + jac.to_string());
                    }
                }
        for (int i = 0; i < rank_; ++i)
            for (int j = i + 1; j < rank_; ++j) {
                MultiVector br = bracket_sections(basis_section(i), basis_section(j));
                for (int l = 0; l < base_dim(); ++l) {
                    // [a(e_i), a(e_j)](x_l) vs a([e_i,e_j])(x_l)
                    ScalarExpr lhs = ScalarExpr::zero(ctx_);
                    for (int u = 0; u < base_dim(); ++u)
                        lhs += anchor(i, u) * anchor(j, l).derivative(u) -
                               anchor(j, u) * anchor(i, l).derivative(u);
                    ScalarExpr rhs = ScalarExpr::zero(ctx_);
                    for (auto& [mt, h] : br.comps())
                        rhs += h * anchor(indices_of(mt)[0] - 1, l);
                    if (lhs != rhs) {
                        rep.anchor_morphism_ok = false;
                        rep.counterexamples.push_back(
                            "anchor morphism fails on (e" + std::to_string(i + 1) + ",e" +
                            std::to_string(j + 1) + "), coordinate " + ctx_->coords[size_t(l)] +
                            ": residual " + (lhs - rhs).to_string());
                    }
                }
            }
        std::vector<ScalarExpr> fs{ScalarExpr::one(ctx_)};
        for (int j = 0; j < base_dim(); ++j) fs.push_back(ScalarExpr::coordinate(ctx_, j));
        for (int i = 0; i < rank_ && rep.leibniz_rule_ok; ++i)
            for (int j = 0; j < rank_ && rep.leibniz_rule_ok; ++j)
                for (const ScalarExpr& f : fs) {
                    MultiVector lhs = bracket_sections(basis_section(i), f * basis_section(j));
                    MultiVector rhs = f * bracket_sections(basis_section(i), basis_section(j)) +
                                      basis_anchor_apply(i, f) * basis_section(j);
                    if (lhs != rhs) {
                        rep.leibniz_rule_ok = false;
                        rep.counterexamples.push_back(
                            "Leibniz rule fails on (e" + std::to_string(i + 1) + ", f e" +
                            std::to_string(j + 1) + ") with f = " + f.to_string());
                        break;
                    }
                }
        return rep;
    }

    /// d_A x_1, ..., d_A x_p span the dual sections over the fraction field
    /// iff the anchor matrix has full row rank m.
    bool spanning_hypothesis() const {
        std::vector<std::vector<ScalarExpr>> rows = anchor_;
        int rank_found = 0;
        size_t cols = size_t(base_dim());
        for (size_t col = 0; col < cols && rank_found < rank_; ++col) {
            size_t pivot = size_t(rank_found);
            while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
            if (pivot == rows.size()) continue;
            std::swap(rows[size_t(rank_found)], rows[pivot]);
            const std::vector<ScalarExpr> prow = rows[size_t(rank_found)];
            for (size_t r = 0; r < rows.size(); ++r) {
                if (int(r) == rank_found || rows[r][col].is_zero()) continue;
                ScalarExpr factor = rows[r][col];
                for (size_t cc = 0; cc < cols; ++cc)
                    rows[r][cc] = prow[col] * rows[r][cc] - factor * prow[cc];
            }
            ++rank_found;
        }
        return rank_found == rank_;
    }

    MultiVector basis_section(int i) const {
        return MultiVector::basis(ctx_, rank_, Mask(1) << i);
    }

private:
    size_t idx(int i, int j, int k) const {
        return (size_t(i) * size_t(rank_) + size_t(j)) * size_t(rank_) + size_t(k);
    }
    void require_rank(int r) const {
        if (r != rank_) throw RankMismatch("element rank does not match algebroid rank");
    }
    template <typename T>
    void require_rank(const Graded<T>& g) const {
        require_rank(g.rank());
    }

    ScalarExpr basis_anchor_apply(int i, const ScalarExpr& f) const {
        ScalarExpr out = ScalarExpr::zero(ctx_);
        for (int j = 0; j < base_dim(); ++j) {
            const ScalarExpr& a = anchor(i, j);
            if (!a.is_zero()) out += a * f.derivative(j);
        }
        return out;
    }

    void require_homogeneous(const ScalarExpr& e, long expected, const char* what) const {
        if (e.is_zero()) return;
        for (auto& [gm, rf] : e.terms()) {
            for (int x : gm)
                if (x != 0) throw ValidationError(std::string(what) + " involves an exp generator; not weight-homogeneous");
            long wn = 0, wd = 0;
            if (!rf.num().is_weight_homogeneous(weights_->coord, wn) ||
                !rf.den().is_weight_homogeneous(weights_->coord, wd) || wn - wd != expected)
                throw ValidationError(std::string(what) + " is not weight-homogeneous of degree " +
                                      std::to_string(expected));
        }
    }

    /// Schouten bracket of two coefficient terms f e_I, g e_J.
    MultiVector schouten_term(const ScalarExpr& f, Mask I, const ScalarExpr& g, Mask J) const {
        int p = mask_size(I), q = mask_size(J);
        MultiVector out(ctx_, rank_, std::max(0, p + q - 1));
        if (p == 0 && q == 0) return out;
        if (p == 0) {
            // graded antisymmetry: [P,Q] = -(-1)^((p-1)(q-1)) [Q,P]
            MultiVector rev = schouten_term(g, J, f, I);
            int sign = ((q - 1) % 2 == 0) ? 1 : -1; // (p-1)(q-1) = -(q-1)
            return (sign > 0) ? -rev : rev;
        }
        std::vector<int> iv = indices_of(I);
        if (q == 0) {
            // [f e_I, g] = f sum_k (-1)^(p-k) a(e_{i_k})(g) e_{I \ i_k}
            for (size_t k = 0; k < iv.size(); ++k) {
                ScalarExpr ag = basis_anchor_apply(iv[k] - 1, g);
                if (ag.is_zero()) continue;
                int sign = ((p - int(k) - 1) % 2 == 0) ? 1 : -1;
                ScalarExpr val = f * ag;
                out.add(I & ~(Mask(1) << (iv[k] - 1)), sign > 0 ? val : -val);
            }
            return out;
        }
        std::vector<int> jv = indices_of(J);
        // f g [P0, Q0]
        for (size_t k = 0; k < iv.size(); ++k)
            for (size_t l = 0; l < jv.size(); ++l) {
                int i = iv[k] - 1, j = jv[l] - 1;
                MultiVector br(ctx_, rank_, 1);
                for (int t = 0; t < rank_; ++t) {
                    const ScalarExpr& c = structure(i, j, t);
                    if (!c.is_zero()) br.add(Mask(1) << t, c);
                }
                if (br.is_zero()) continue;
                int sign = ((int(k) + int(l)) % 2 == 0) ? 1 : -1; // (-1)^(k+l), 1-based
                MultiVector rest = wedge(mv_basis(I & ~(Mask(1) << i)), mv_basis(J & ~(Mask(1) << j)));
                MultiVector piece = wedge(br, rest);
                out += (f * g) * (sign > 0 ? piece : -piece);
            }
        // f [P0, g] ^ Q0
        {
            MultiVector pg = schouten_term(ScalarExpr::one(ctx_), I, g, 0);
            out += f * wedge(pg, mv_basis(J));
        }
        // -(-1)^((p-1)(q-1)) g [Q0, f] ^ P0
        {
            MultiVector qf = schouten_term(ScalarExpr::one(ctx_), J, f, 0);
            MultiVector piece = g * wedge(qf, mv_basis(I));
            int sign = ((p - 1) * (q - 1)) % 2 == 0 ? 1 : -1;
            out += (sign > 0) ? -piece : piece;
        }
        return out;
    }

    MultiVector mv_basis(Mask m) const { return MultiVector::basis(ctx_, rank_, m); }

    RingPtr ctx_;
    int rank_;
    std::vector<std::vector<ScalarExpr>> anchor_;
    std::vector<ScalarExpr> structure_;
    std::optional<AlgebroidWeights> weights_;
};

} // namespace alab

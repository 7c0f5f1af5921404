// complexes.hpp
// Exact homology machinery on weight-stratified complexes.
//
// With coordinate weights cw (all >= 1) and section weights sw declared on
// the algebroid, assign
//
//     wt( x^a e_I* ) = wdeg(a) - sum_{i in I} sw_i        (forms)
//     wt( x^a e_I  ) = wdeg(a) + sum_{i in I} sw_i        (multivectors)
//
// Both weights are additive under wedge, contraction and pairing, d_A is
// weight-0 for a weight-valid algebroid, and delta_nu is weight-0 whenever
// the orientation coefficient is constant.  Each stratum (fixed weight) is a
// finite-dimensional Q-vector space, so kernels, images, quotients and Betti
// numbers are exact rank computations.
//
// Cochain strata are labeled by the form weight w; chain strata by
// s = -wt(P), which for constant-coefficient tangent fixtures is the
// familiar (multivector degree) - (polynomial degree).
#pragma once

#include "alab/linalg.hpp"
#include "alab/modular.hpp"

#include <map>
#include <string>
#include <vector>

namespace alab {

// ---------------------------------------------------------------------------
// flat_nu, delta_nu
// ---------------------------------------------------------------------------

inline AForm flat_nu(const MultiVector& P, const OrientationForm& nu) {
    return contract_mv(P, nu.form());
}

/// Inverse of flat_nu on a (m-k)-form; exact because the orientation
/// coefficient is a single invertible term.
inline MultiVector flat_nu_inverse(const AForm& omega, const OrientationForm& nu, int k) {
    int m = nu.rank();
    if (omega.degree() != m - k) throw DegreeMismatch("flat_nu_inverse degree mismatch");
    MultiVector P(nu.ctx(), m, k);
    Mask full = nu.top_mask();
    for (Mask S : subsets_of_size(m, k)) {
        Mask rest = full & ~S;
        ScalarExpr w = omega.coeff(rest);
        if (w.is_zero()) continue;
        int sign = half_floor_sign(k) * shuffle_sign(S, rest);
        ScalarExpr coeff = w / nu.coeff();
        P.add(S, sign > 0 ? coeff : -coeff);
    }
    return P;
}

/// delta_nu = flat^-1 o d_A o flat; the canonical Nambu boundary operator.
/// On sections it is the divergence: L_X nu = delta_nu(X) nu.
inline MultiVector delta_nu(const MultiVector& P, const LieAlgebroid& A,
                            const OrientationForm& nu) {
    int k = P.degree();
    if (k == 0) return MultiVector(P.ctx(), P.rank(), 0); // boundary of functions
    return flat_nu_inverse(A.d_A(flat_nu(P, nu)), nu, k - 1);
}

/// The two section/contraction identities of the homology calculus:
///   (1) L_X flat(P) = flat(L_X P) + delta(X) flat(P)
///   (2) iota_alpha(delta(P)) = (-1)^deg(alpha) ( delta(iota_alpha P) - iota_{d alpha} P )
/// (2) is the convention-consistent form of the contraction identity; the
/// stated one matches it up to the (-1)^deg(alpha) factor forced by the
/// [i/2]-sign contraction laws.
inline CheckOutcome check_delta_identities(const LieAlgebroid& A, const OrientationForm& nu,
                                           const std::vector<MultiVector>& ps,
                                           const std::vector<MultiVector>& xs,
                                           const std::vector<AForm>& alphas) {
    CheckOutcome out{"delta_identities"};
    for (const MultiVector& P : ps) {
        AForm fp = flat_nu(P, nu);
        MultiVector dP = delta_nu(P, A, nu);
        for (const MultiVector& X : xs) {
            out.count();
            AForm lhs = A.lie_derivative(X, fp);
            ScalarExpr divX = delta_nu(X, A, nu).scalar_value();
            AForm rhs = flat_nu(A.lie_derivative_mv(X, P), nu) + divX * fp;
            if (lhs != rhs)
                out.fail("L_X flat identity: P = " + P.to_string() + ", X = " + X.to_string());
        }
        for (const AForm& alpha : alphas) {
            if (alpha.degree() > P.degree() || alpha.degree() < 1) continue;
            out.count();
            MultiVector lhs = contract_form(alpha, dP);
            MultiVector rhs = delta_nu(contract_form(alpha, P), A, nu) -
                              contract_form(A.d_A(alpha), P);
            if (alpha.degree() % 2 != 0) rhs = -rhs;
            if (lhs != rhs)
                out.fail("contraction identity: P = " + P.to_string() +
                         ", alpha = " + alpha.to_string() +
                         ", residual = " + (lhs - rhs).to_string());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// stratum bases
// ---------------------------------------------------------------------------

struct BasisElt {
    Mask mask;
    Mono mono;
};
using StratumBasis = std::vector<BasisElt>;

namespace detail {

inline void weighted_monomials(const std::vector<int>& cw, long deg, Mono& scratch, size_t from,
                               std::vector<Mono>& out) {
    if (deg == 0) {
        out.push_back(scratch);
        return;
    }
    if (deg < 0 || from >= cw.size()) return;
    for (long take = 0; take * cw[from] <= deg; ++take) {
        scratch[from] = int(take);
        weighted_monomials(cw, deg - take * cw[from], scratch, from + 1, out);
    }
    scratch[from] = 0;
}

} // namespace detail

inline std::vector<Mono> weighted_monomials(const std::vector<int>& cw, long deg) {
    std::vector<Mono> out;
    if (deg < 0) return out;
    if (cw.empty()) {
        if (deg == 0) out.push_back(Mono{});
        return out;
    }
    Mono scratch(cw.size(), 0);
    detail::weighted_monomials(cw, deg, scratch, 0, out);
    return out;
}

class Strata {
public:
    explicit Strata(const LieAlgebroid& A) : A_(A) {
        if (!A.weights())
            throw NotWeightHomogeneous("stratified computation needs declared weights");
        A.validate_weights();
        w_ = *A.weights();
    }

    const RingPtr& ctx() const { return A_.ctx(); }
    int rank() const { return A_.rank(); }

    long section_weight(Mask mask) const {
        long s = 0;
        for (int i : indices_of(mask)) s += w_.section[size_t(i - 1)];
        return s;
    }
    long mono_weight(const Mono& m) const {
        long d = 0;
        for (size_t i = 0; i < m.size(); ++i) d += long(m[i]) * w_.coord[i];
        return d;
    }

    StratumBasis form_basis(int k, long w) const {
        StratumBasis out;
        for (Mask I : subsets_of_size(rank(), k)) {
            long d = w + section_weight(I);
            for (const Mono& m : weighted_monomials(w_.coord, d)) out.push_back({I, m});
        }
        return out;
    }
    StratumBasis mv_basis(int k, long u) const {
        StratumBasis out;
        for (Mask I : subsets_of_size(rank(), k)) {
            long d = u - section_weight(I);
            for (const Mono& m : weighted_monomials(w_.coord, d)) out.push_back({I, m});
        }
        return out;
    }

    template <typename Tag>
    Graded<Tag> element(const BasisElt& e) const {
        Poly p(ctx()->ncoords());
        p.add_term(e.mono, 1);
        Graded<Tag> g(ctx(), rank(), mask_size(e.mask));
        g.set(e.mask, ScalarExpr::from_poly(ctx(), p));
        return g;
    }
    AForm form_element(const BasisElt& e) const { return element<FormTag>(e); }
    MultiVector mv_element(const BasisElt& e) const { return element<VectorTag>(e); }

    template <typename Tag>
    Graded<Tag> from_vector(const StratumBasis& basis, const std::vector<Rat>& v) const {
        Graded<Tag> g(ctx(), rank(), basis.empty() ? 0 : mask_size(basis[0].mask));
        for (size_t i = 0; i < basis.size(); ++i) {
            if (v[i] == 0) continue;
            Poly p(ctx()->ncoords());
            p.add_term(basis[i].mono, v[i]);
            g.add(basis[i].mask, ScalarExpr::from_poly(ctx(), p));
        }
        return g;
    }

    /// Expands a polynomial-coefficient element in a stratum basis; any term
    /// outside the basis means the element is not homogeneous of this weight.
    template <typename Tag>
    std::vector<Rat> to_vector(const Graded<Tag>& g, const StratumBasis& basis) const {
        std::map<std::pair<Mask, Mono>, size_t> index;
        for (size_t i = 0; i < basis.size(); ++i) index[{basis[i].mask, basis[i].mono}] = i;
        std::vector<Rat> v(basis.size(), Rat(0));
        for (auto& [mask, c] : g.comps()) {
            if (!c.is_polynomial())
                throw NotWeightHomogeneous("element has non-polynomial coefficients");
            Poly poly = c.as_polynomial();
            for (auto& [mono, q] : poly.terms()) {
                auto it = index.find({mask, mono});
                if (it == index.end())
                    throw NotWeightHomogeneous("element does not lie in the stratum");
                v[it->second] = q;
            }
        }
        return v;
    }

    /// Weight of a homogeneous multivector; throws when mixed.
    long mv_weight(const MultiVector& P) const {
        bool have = false;
        long u = 0;
        for (auto& [mask, c] : P.comps()) {
            if (!c.is_polynomial())
                throw NotWeightHomogeneous("multivector has non-polynomial coefficients");
            Poly poly = c.as_polynomial();
            for (auto& [mono, q] : poly.terms()) {
                long w = mono_weight(mono) + section_weight(mask);
                if (!have) {
                    u = w;
                    have = true;
                } else if (w != u) {
                    throw NotWeightHomogeneous("multivector mixes weights");
                }
            }
        }
        return u;
    }

private:
    const LieAlgebroid& A_;
    AlgebroidWeights w_;
};

// ---------------------------------------------------------------------------
// stratified complexes
// ---------------------------------------------------------------------------

struct StratumComplex {
    long label = 0;
    bool cochain = true;
    int maxdeg = 0;
    std::vector<size_t> dims; // quotient/sub dimensions per degree 0..maxdeg
    // cochain: maps[k] : degree k -> k+1;  chain: maps[k] : degree k -> k-1
    std::vector<QMatrix> maps;

    // bookkeeping used by the duality checks
    std::vector<StratumBasis> ambient;                    // full stratum bases
    std::vector<std::vector<std::vector<Rat>>> subspace;  // cochain: quotiented kernel; chain: V basis
    std::vector<std::vector<size_t>> reps;                // cochain: representative coordinates
};

using ComplexFamily = std::vector<StratumComplex>;

struct BettiTable {
    // (stratum label, degree) -> exact homology dimension
    std::map<std::pair<long, int>, long> dims;

    long total(int degree) const {
        long t = 0;
        for (auto& [key, d] : dims)
            if (key.second == degree) t += d;
        return t;
    }
};

inline BettiTable betti(const ComplexFamily& family) {
    BettiTable table;
    for (const StratumComplex& c : family) {
        for (int k = 0; k <= c.maxdeg; ++k) {
            size_t dim = c.dims[size_t(k)];
            size_t rank_out = 0, rank_in = 0;
            if (c.cochain) {
                rank_out = c.maps[size_t(k)].rank(); // d_k
                if (k > 0) rank_in = c.maps[size_t(k - 1)].rank();
            } else {
                rank_out = c.maps[size_t(k)].rank(); // delta_k
                if (k < c.maxdeg) rank_in = c.maps[size_t(k + 1)].rank();
            }
            table.dims[{c.label, k}] = long(dim) - long(rank_out) - long(rank_in);
        }
    }
    return table;
}

namespace detail {

/// RREF rows of a list of vectors, as an echelonized span basis.
inline std::vector<std::vector<Rat>> echelon_span(const std::vector<std::vector<Rat>>& vectors,
                                                  size_t width) {
    QMatrix M(vectors.size(), width);
    for (size_t i = 0; i < vectors.size(); ++i)
        for (size_t j = 0; j < width; ++j) M.at(i, j) = vectors[i][j];
    std::vector<size_t> pivots = M.rref();
    std::vector<std::vector<Rat>> rows;
    for (size_t i = 0; i < pivots.size(); ++i) {
        std::vector<Rat> r(width);
        for (size_t j = 0; j < width; ++j) r[j] = M.at(i, j);
        rows.push_back(std::move(r));
    }
    return rows;
}

/// Reduce v modulo echelonized rows (pivot = first nonzero of each row,
/// normalized to 1 by rref).
inline std::vector<Rat> reduce_mod(const std::vector<std::vector<Rat>>& rows,
                                   std::vector<Rat> v) {
    for (const auto& r : rows) {
        size_t pivot = 0;
        while (pivot < r.size() && r[pivot] == 0) ++pivot;
        if (pivot == r.size() || v[pivot] == 0) continue;
        Rat f = v[pivot];
        for (size_t j = 0; j < v.size(); ++j) v[j] -= f * r[j];
    }
    return v;
}

inline bool is_zero_vec(const std::vector<Rat>& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

/// Coordinates of v in the span of echelonized rows; nullopt if outside.
inline std::optional<std::vector<Rat>> coords_in_span(
    const std::vector<std::vector<Rat>>& rows, const std::vector<Rat>& v) {
    std::vector<Rat> coords;
    std::vector<Rat> rem = v;
    for (const auto& r : rows) {
        size_t pivot = 0;
        while (pivot < r.size() && r[pivot] == 0) ++pivot;
        Rat f = (pivot < r.size()) ? rem[pivot] : Rat(0);
        coords.push_back(f);
        if (f != 0)
            for (size_t j = 0; j < v.size(); ++j) rem[j] -= f * r[j];
    }
    if (!is_zero_vec(rem)) return std::nullopt;
    return coords;
}

} // namespace detail

/// Certifies regularity syntactically: some component of Pi carries a
/// coefficient that is a nonzero constant (times a generator monomial), so
/// Pi cannot vanish anywhere on the chart.
inline bool regular_certificate(const MultiVector& pi) {
    for (auto& [mask, c] : pi.comps())
        for (auto& [gm, rf] : c.terms())
            if (rf.is_polynomial() && rf.num().is_constant()) return true;
    return false;
}

/// Nambu cochain quotient complex Omega_Pi^k = forms / ker Pi_k per stratum
/// w = 0..max_weight.  Under regularity ker Pi_k equals the annihilator
/// subcomplex Omega^k(A,Pi), so the quotient computes the Nambu cohomology;
/// degrees above n quotient to zero.
inline ComplexFamily build_nambu_cochain_complex(const NambuStructure& N, long max_weight) {
    const LieAlgebroid& A = N.algebroid();
    Strata st(A);
    if (!regular_certificate(N.pi()))
        throw NotRegular("no syntactic nonvanishing certificate for Pi on the chart");
    long wt_pi = st.mv_weight(N.pi());
    int n = N.order();

    ComplexFamily family;
    for (long w = 0; w <= max_weight; ++w) {
        StratumComplex c;
        c.label = w;
        c.cochain = true;
        c.maxdeg = n;
        c.ambient.resize(size_t(n) + 1);
        c.subspace.resize(size_t(n) + 1);
        c.reps.resize(size_t(n) + 1);
        c.dims.resize(size_t(n) + 1);

        // kernels of Pi_k per degree
        for (int k = 0; k <= n; ++k) {
            StratumBasis B = st.form_basis(k, w);
            c.ambient[size_t(k)] = B;
            StratumBasis target = st.mv_basis(n - k, w + wt_pi);
            QMatrix pik(target.size(), B.size());
            for (size_t j = 0; j < B.size(); ++j) {
                MultiVector img = N.pi_k(st.form_element(B[j]));
                std::vector<Rat> col = st.to_vector(img, target);
                for (size_t i = 0; i < target.size(); ++i) pik.at(i, j) = col[i];
            }
            c.subspace[size_t(k)] = detail::echelon_span(pik.kernel_basis(), B.size());
            // representatives: non-pivot coordinates of the kernel span
            std::vector<bool> is_pivot(B.size(), false);
            for (const auto& row : c.subspace[size_t(k)]) {
                size_t p = 0;
                while (p < row.size() && row[p] == 0) ++p;
                if (p < row.size()) is_pivot[p] = true;
            }
            for (size_t j = 0; j < B.size(); ++j)
                if (!is_pivot[j]) c.reps[size_t(k)].push_back(j);
            c.dims[size_t(k)] = c.reps[size_t(k)].size();
        }

        // induced differentials on quotient representatives
        c.maps.resize(size_t(n) + 1);
        for (int k = 0; k <= n; ++k) {
            size_t tgt = (k < n) ? c.dims[size_t(k + 1)] : 0;
            QMatrix d(tgt, c.dims[size_t(k)]);
            if (k < n) {
                const StratumBasis& Bk1 = c.ambient[size_t(k + 1)];
                // d_A must preserve the kernels, else the quotient is undefined
                for (const auto& kv : c.subspace[size_t(k)]) {
                    AForm alpha = st.from_vector<FormTag>(c.ambient[size_t(k)], kv);
                    std::vector<Rat> img = st.to_vector(A.d_A(alpha), Bk1);
                    if (!detail::is_zero_vec(detail::reduce_mod(c.subspace[size_t(k + 1)], img)))
                        throw SubcomplexViolation(
                            "d_A does not preserve ker Pi_k at stratum " + std::to_string(w));
                }
                for (size_t j = 0; j < c.dims[size_t(k)]; ++j) {
                    AForm alpha = st.form_element(c.ambient[size_t(k)][c.reps[size_t(k)][j]]);
                    std::vector<Rat> img =
                        detail::reduce_mod(c.subspace[size_t(k + 1)], st.to_vector(A.d_A(alpha), Bk1));
                    for (size_t i = 0; i < c.dims[size_t(k + 1)]; ++i)
                        d.at(i, j) = img[c.reps[size_t(k + 1)][i]];
                }
            }
            c.maps[size_t(k)] = d;
        }
        for (int k = 0; k + 1 <= n; ++k)
            if (!(c.maps[size_t(k + 1)] * c.maps[size_t(k)]).is_zero())
                throw SubcomplexViolation("induced differential fails d~ o d~ = 0 at stratum " +
                                          std::to_string(w));
        family.push_back(std::move(c));
    }
    return family;
}

/// V^k(A,Pi) subcomplex per chain stratum s in [s_min, s_max]:
/// V^0 = functions, V^k = image of Pi_{n-k} (k = 1..n), delta_nu restricted.
/// The image is cross-checked against the annihilation definition using
/// ker Pi_1 generators from low form strata.
inline ComplexFamily build_canonical_chain_complex(const NambuStructure& N,
                                                   const OrientationForm& nu, long s_min,
                                                   long s_max) {
    const LieAlgebroid& A = N.algebroid();
    Strata st(A);
    if (!regular_certificate(N.pi()))
        throw NotRegular("no syntactic nonvanishing certificate for Pi on the chart");
    if (!nu.is_weight_homogeneous())
        throw NotWeightHomogeneous("orientation coefficient must be constant to stratify");
    long wt_pi = st.mv_weight(N.pi());
    int n = N.order();

    // ker Pi_1 generators from low form strata, for the annihilation
    // cross-check.  Module multiples of low-weight generators contribute no
    // new linear constraints, so a small stratum range suffices for the
    // bundled fixtures; a genuinely higher-weight generator would surface as
    // a dimension mismatch below.
    std::vector<std::pair<AForm, long>> ann_gens;
    for (long w = 0; w <= 4; ++w) {
        StratumBasis B1 = st.form_basis(1, w);
        StratumBasis T1 = st.mv_basis(n - 1, w + wt_pi);
        QMatrix pi1(T1.size(), B1.size());
        for (size_t j = 0; j < B1.size(); ++j) {
            std::vector<Rat> col = st.to_vector(N.pi_k(st.form_element(B1[j])), T1);
            for (size_t i = 0; i < T1.size(); ++i) pi1.at(i, j) = col[i];
        }
        for (const auto& kv : pi1.kernel_basis())
            ann_gens.emplace_back(st.from_vector<FormTag>(B1, kv), w);
    }

    ComplexFamily family;
    for (long s = s_min; s <= s_max; ++s) {
        long u = -s;
        StratumComplex c;
        c.label = s;
        c.cochain = false;
        c.maxdeg = n;
        c.ambient.resize(size_t(n) + 1);
        c.subspace.resize(size_t(n) + 1);
        c.dims.resize(size_t(n) + 1);

        for (int k = 0; k <= n; ++k) {
            StratumBasis M = st.mv_basis(k, u);
            c.ambient[size_t(k)] = M;
            if (k == 0) {
                // V^0 = all functions in the stratum
                std::vector<std::vector<Rat>> id;
                for (size_t j = 0; j < M.size(); ++j) {
                    std::vector<Rat> v(M.size(), Rat(0));
                    v[j] = 1;
                    id.push_back(std::move(v));
                }
                c.subspace[0] = id;
            } else {
                StratumBasis F = st.form_basis(n - k, u - wt_pi);
                std::vector<std::vector<Rat>> images;
                for (const BasisElt& e : F)
                    images.push_back(st.to_vector(N.pi_k(st.form_element(e)), M));
                c.subspace[size_t(k)] = detail::echelon_span(images, M.size());

                // cross-check against the annihilation definition
                std::vector<std::vector<Rat>> constraints;
                for (const auto& [theta, wt_theta] : ann_gens) {
                    StratumBasis T = st.mv_basis(k - 1, u + wt_theta);
                    for (size_t i = 0; i < T.size(); ++i)
                        constraints.emplace_back(M.size(), Rat(0));
                    size_t base = constraints.size() - T.size();
                    for (size_t j = 0; j < M.size(); ++j) {
                        std::vector<Rat> col =
                            st.to_vector(contract_form(theta, st.mv_element(M[j])), T);
                        for (size_t i = 0; i < T.size(); ++i) constraints[base + i][j] = col[i];
                    }
                }
                QMatrix C(constraints.size(), M.size());
                for (size_t i = 0; i < constraints.size(); ++i)
                    for (size_t j = 0; j < M.size(); ++j) C.at(i, j) = constraints[i][j];
                auto ann = C.kernel_basis();
                auto ann_ech = detail::echelon_span(ann, M.size());
                if (ann_ech.size() != c.subspace[size_t(k)].size())
                    throw SubcomplexViolation(
                        "V^k image differs from the annihilator of D at stratum " +
                        std::to_string(s));
                for (const auto& v : c.subspace[size_t(k)])
                    if (!detail::is_zero_vec(detail::reduce_mod(ann_ech, v)))
                        throw SubcomplexViolation(
                            "V^k image not contained in the annihilator of D");
            }
            c.dims[size_t(k)] = c.subspace[size_t(k)].size();
        }

        // delta matrices, with closure verification
        c.maps.resize(size_t(n) + 1);
        for (int k = 0; k <= n; ++k) {
            size_t tgt = (k > 0) ? c.dims[size_t(k - 1)] : 0;
            QMatrix d(tgt, c.dims[size_t(k)]);
            if (k > 0) {
                for (size_t j = 0; j < c.dims[size_t(k)]; ++j) {
                    MultiVector P =
                        st.from_vector<VectorTag>(c.ambient[size_t(k)], c.subspace[size_t(k)][j]);
                    std::vector<Rat> img =
                        st.to_vector(delta_nu(P, A, nu), c.ambient[size_t(k - 1)]);
                    auto coords = detail::coords_in_span(c.subspace[size_t(k - 1)], img);
                    if (!coords)
                        throw SubcomplexViolation(
                            "delta_nu leaves V^" + std::to_string(k) + " at stratum " +
                            std::to_string(s));
                    for (size_t i = 0; i < tgt; ++i) d.at(i, j) = (*coords)[i];
                }
            }
            c.maps[size_t(k)] = d;
        }
        for (int k = 1; k < n; ++k)
            if (!(c.maps[size_t(k)] * c.maps[size_t(k + 1)]).is_zero())
                throw SubcomplexViolation("delta o delta != 0 at stratum " + std::to_string(s));
        family.push_back(std::move(c));
    }
    return family;
}

} // namespace alab

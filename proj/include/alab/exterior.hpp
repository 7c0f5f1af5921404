// exterior.hpp
// Graded exterior algebra over a free module of rank m with ScalarExpr
// coefficients.  Multivectors and forms are sparse maps from strictly
// increasing index subsets (bitmasks) to coefficients.
//
// Conventions, fixed once and pinned by the oracle tests:
//   * pairing is the determinant pairing, <e_I*, e_J> = delta_IJ;
//   * iota_X on forms inserts in the first slot;
//   * extended contractions satisfy
//       <iota_xi(phi), eta> = (-1)^[i/2] <phi, xi ^ eta>      (xi in Lambda^i)
//       <psi, iota_phi(xi)> = (-1)^[i/2] <phi ^ psi, xi>      (phi in Lambda^i)
//     which forces the composition order iota_{a1^...^ai} = iota_{a1} o ... o iota_{ai}.
// On basis elements both contractions reduce to
//     iota_{e_J}(e_S*) = (-1)^[|J|/2] shuffle(J, S\J) e_{S\J}*    (J subset of S)
// and the mirror formula for forms against multivectors.
#pragma once

#include "alab/errors.hpp"
#include "alab/scalar.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace alab {

using Mask = uint32_t; // bit i set = index i+1 participates

inline int mask_size(Mask m) { return std::popcount(m); }

inline Mask mask_of(const std::vector<int>& indices_1based) {
    Mask m = 0;
    for (int i : indices_1based) {
        if (i < 1 || i > 31) throw ValidationError("index out of range: " + std::to_string(i));
        m |= Mask(1) << (i - 1);
    }
    return m;
}

inline std::vector<int> indices_of(Mask m) {
    std::vector<int> v;
    for (int i = 0; i < 32; ++i)
        if (m & (Mask(1) << i)) v.push_back(i + 1);
    return v;
}

/// Sign of the permutation sorting the concatenation (I asc, J asc); I, J
/// disjoint.  Equals (-1)^#{(i,j) in I x J : i > j}.
inline int shuffle_sign(Mask I, Mask J) {
    int inversions = 0;
    for (int j = 0; j < 32; ++j) {
        if (!(J & (Mask(1) << j))) continue;
        inversions += std::popcount(I >> (j + 1));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

inline int half_floor_sign(int i) { return (i / 2) % 2 == 0 ? 1 : -1; }

/// Enumerate all masks over {1..m} with popcount k, ascending.
inline std::vector<Mask> subsets_of_size(int m, int k) {
    std::vector<Mask> out;
    if (k < 0 || k > m) return out;
    Mask limit = (m >= 32) ? ~Mask(0) : ((Mask(1) << m) - 1);
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    Mask s = (Mask(1) << k) - 1;
    while (s <= limit) {
        out.push_back(s);
        // Gosper's hack
        Mask c = s & (~s + 1);
        Mask r = s + c;
        Mask next = (((r ^ s) >> 2) / c) | r;
        if (next <= s) break;
        s = next;
    }
    return out;
}

struct VectorTag {};
struct FormTag {};

template <typename Tag>
class Graded {
public:
    Graded() : rank_(0), degree_(0) {}
    Graded(RingPtr ctx, int rank, int degree)
        : ctx_(std::move(ctx)), rank_(rank), degree_(degree) {
        if (degree_ < 0) throw DegreeMismatch("negative degree");
    }

    static Graded basis(const RingPtr& ctx, int rank, Mask mask) {
        Graded g(ctx, rank, mask_size(mask));
        g.set(mask, ScalarExpr::one(ctx));
        return g;
    }
    static Graded scalar(const RingPtr& ctx, int rank, const ScalarExpr& s) {
        Graded g(ctx, rank, 0);
        g.set(0, s);
        return g;
    }

    const RingPtr& ctx() const { return ctx_; }
    int rank() const { return rank_; }
    int degree() const { return degree_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<Mask, ScalarExpr>& comps() const { return comps_; }

    ScalarExpr coeff(Mask m) const {
        auto it = comps_.find(m);
        if (it != comps_.end()) return it->second;
        return ScalarExpr::zero(ctx_);
    }
    /// Degree-0 elements are a single scalar.
    ScalarExpr scalar_value() const {
        if (degree_ != 0) throw DegreeMismatch("not a degree-0 element");
        return coeff(0);
    }

    void set(Mask m, const ScalarExpr& s) {
        if (mask_size(m) != degree_) throw DegreeMismatch("component mask has wrong size");
        if ((m >> rank_) != 0) throw RankMismatch("component index exceeds rank");
        if (s.is_zero()) comps_.erase(m);
        else comps_[m] = s;
    }
    void add(Mask m, const ScalarExpr& s) {
        if (s.is_zero()) return;
        auto it = comps_.find(m);
        if (it == comps_.end()) {
            set(m, s);
        } else {
            it->second += s;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    Graded operator-() const {
        Graded r(ctx_, rank_, degree_);
        for (auto& [m, s] : comps_) r.comps_[m] = -s;
        return r;
    }
    Graded& operator+=(const Graded& o) {
        require_compatible(o);
        for (auto& [m, s] : o.comps_) add(m, s);
        return *this;
    }
    Graded& operator-=(const Graded& o) {
        require_compatible(o);
        for (auto& [m, s] : o.comps_) add(m, -s);
        return *this;
    }
    friend Graded operator+(Graded a, const Graded& b) { return a += b; }
    friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
    friend Graded operator*(const ScalarExpr& s, const Graded& g) {
        Graded r(g.ctx_, g.rank_, g.degree_);
        for (auto& [m, c] : g.comps_) r.add(m, s * c);
        return r;
    }
    friend Graded operator*(const Graded& g, const ScalarExpr& s) { return s * g; }
    friend Graded operator*(const Rat& q, const Graded& g) {
        Graded r(g.ctx_, g.rank_, g.degree_);
        for (auto& [m, c] : g.comps_) r.add(m, c * q);
        return r;
    }

    friend bool operator==(const Graded& a, const Graded& b) {
        return a.rank_ == b.rank_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const Graded& a, const Graded& b) { return !(a == b); }

    std::string to_string() const;

private:
    void require_compatible(const Graded& o) const {
        if (rank_ != o.rank_) throw RankMismatch("graded elements of different ranks");
        if (degree_ != o.degree_) throw DegreeMismatch("graded elements of different degrees");
    }

    RingPtr ctx_;
    int rank_;
    int degree_;
    std::map<Mask, ScalarExpr> comps_;
};

using MultiVector = Graded<VectorTag>;
using AForm = Graded<FormTag>;

template <>
inline std::string Graded<VectorTag>::to_string() const {
    if (comps_.empty()) return "0";
    std::string out;
    for (auto& [m, s] : comps_) {
        std::string idx;
        for (int i : indices_of(m)) idx += (idx.empty() ? "" : ",") + std::to_string(i);
        std::string term = "(" + s.to_string() + ")*e[" + idx + "]";
        if (degree_ == 0) term = s.to_string();
        out += (out.empty() ? "" : " + ") + term;
    }
    return out;
}

template <>
inline std::string Graded<FormTag>::to_string() const {
    if (comps_.empty()) return "0";
    std::string out;
    for (auto& [m, s] : comps_) {
        std::string idx;
        for (int i : indices_of(m)) idx += (idx.empty() ? "" : ",") + std::to_string(i);
        std::string term = "(" + s.to_string() + ")*e*[" + idx + "]";
        if (degree_ == 0) term = s.to_string();
        out += (out.empty() ? "" : " + ") + term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// wedge, pairing, contractions
// ---------------------------------------------------------------------------

template <typename Tag>
Graded<Tag> wedge(const Graded<Tag>& a, const Graded<Tag>& b) {
    if (a.rank() != b.rank()) throw RankMismatch("wedge of different ranks");
    Graded<Tag> r(a.ctx() ? a.ctx() : b.ctx(), a.rank(), a.degree() + b.degree());
    if (r.degree() > a.rank()) return r; // zero beyond top degree
    for (auto& [ma, ca] : a.comps())
        for (auto& [mb, cb] : b.comps()) {
            if (ma & mb) continue;
            int sign = shuffle_sign(ma, mb);
            r.add(ma | mb, sign > 0 ? ca * cb : -(ca * cb));
        }
    return r;
}

inline ScalarExpr pairing(const AForm& phi, const MultiVector& xi) {
    if (phi.rank() != xi.rank()) throw RankMismatch("pairing of different ranks");
    if (phi.degree() != xi.degree()) throw DegreeMismatch("pairing of different degrees");
    ScalarExpr total = ScalarExpr::zero(phi.ctx() ? phi.ctx() : xi.ctx());
    for (auto& [m, c] : phi.comps()) {
        ScalarExpr x = xi.coeff(m);
        if (!x.is_zero()) total += c * x;
    }
    return total;
}

namespace detail {

/// Shared kernel of both extended contractions on basis components:
/// contract the index set J out of S with the convention sign.
template <typename TOut, typename TBig, typename TSmall>
TOut contract_impl(const TSmall& small, const TBig& big) {
    int i = small.degree();
    if (i > big.degree()) throw DegreeMismatch("contraction degree exceeds argument degree");
    TOut r(big.ctx() ? big.ctx() : small.ctx(), big.rank(), big.degree() - i);
    int lead = half_floor_sign(i);
    for (auto& [mj, cj] : small.comps())
        for (auto& [ms, cs] : big.comps()) {
            if ((mj & ms) != mj) continue;
            Mask rest = ms & ~mj;
            int sign = lead * shuffle_sign(mj, rest);
            r.add(rest, sign > 0 ? cj * cs : -(cj * cs));
        }
    return r;
}

} // namespace detail

/// iota_xi phi with <iota_xi(phi), eta> = (-1)^[i/2] <phi, xi ^ eta>.
inline AForm contract_mv(const MultiVector& xi, const AForm& phi) {
    if (xi.rank() != phi.rank()) throw RankMismatch("contraction of different ranks");
    return detail::contract_impl<AForm>(xi, phi);
}

/// iota_phi xi with <psi, iota_phi(xi)> = (-1)^[i/2] <phi ^ psi, xi>.
inline MultiVector contract_form(const AForm& phi, const MultiVector& xi) {
    if (xi.rank() != phi.rank()) throw RankMismatch("contraction of different ranks");
    return detail::contract_impl<MultiVector>(phi, xi);
}

// ---------------------------------------------------------------------------
// Plucker decomposability at a point
// ---------------------------------------------------------------------------

/// Evaluates all coefficients at pt and tests the Plucker relations
/// iota_phi(xi) ^ xi = 0 over all basis (k-1)-forms phi.  Degrees <= 1 and
/// degree = rank are decomposable outright, as is the zero value.
inline bool plucker_decomposable_at(const MultiVector& xi, const std::vector<Rat>& pt) {
    const int k = xi.degree();
    const int m = xi.rank();
    MultiVector at(xi.ctx(), m, k);
    for (auto& [mask, c] : xi.comps()) {
        Rat v = c.eval(pt);
        if (v != 0) at.set(mask, ScalarExpr::constant(xi.ctx(), v));
    }
    if (at.is_zero() || k <= 1 || k == m) return true;
    for (Mask phi_mask : subsets_of_size(m, k - 1)) {
        AForm phi = AForm::basis(xi.ctx(), m, phi_mask);
        if (!wedge(contract_form(phi, at), at).is_zero()) return false;
    }
    return true;
}

} // namespace alab

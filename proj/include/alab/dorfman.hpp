// dorfman.hpp
// The standard Courant-Dorfman bracket on TM + T*M over a chart,
//
//     << X + xi, Y + eta >> = [X,Y] + L_X eta - iota_Y d xi,
//
// with the projection to the first factor as anchor.  A Leibniz algebroid
// but not a Lie algebroid; used to exercise the Leibniz axiom checks on a
// carrier that is not derived from a Nambu structure.
#pragma once

#include "alab/checks.hpp"

namespace alab {

struct DorfmanSection {
    MultiVector vec; // degree 1 over the tangent algebroid
    AForm form;      // degree 1

    DorfmanSection operator+(const DorfmanSection& o) const { return {vec + o.vec, form + o.form}; }
    DorfmanSection operator-(const DorfmanSection& o) const { return {vec - o.vec, form - o.form}; }
    friend DorfmanSection operator*(const ScalarExpr& f, const DorfmanSection& s) {
        return {f * s.vec, f * s.form};
    }
    bool is_zero() const { return vec.is_zero() && form.is_zero(); }
    std::string to_string() const { return vec.to_string() + " (+) " + form.to_string(); }
};

inline DorfmanSection dorfman_bracket(const LieAlgebroid& T, const DorfmanSection& a,
                                      const DorfmanSection& b) {
    return {T.bracket_sections(a.vec, b.vec),
            T.lie_derivative(a.vec, b.form) - contract_mv(b.vec, T.d_A(a.form))};
}

inline std::vector<CheckOutcome> check_dorfman_axioms(const RingPtr& ctx, SampleLevel level) {
    LieAlgebroid T = LieAlgebroid::tangent(ctx);
    int p = ctx->ncoords();

    std::vector<DorfmanSection> samples;
    for (const MultiVector& v : multivector_samples(ctx, p, 1, level))
        samples.push_back({v, AForm(ctx, p, 1)});
    for (const AForm& f : form_samples(ctx, p, 1, level))
        samples.push_back({MultiVector(ctx, p, 1), f});

    CheckOutcome leibniz{"dorfman_leibniz_identity"};
    for (const auto& a : samples)
        for (const auto& b : samples) {
            if (leibniz.witnesses.size() >= 3) break;
            for (const auto& c : samples) {
                leibniz.count();
                DorfmanSection lhs = dorfman_bracket(T, a, dorfman_bracket(T, b, c));
                DorfmanSection rhs = dorfman_bracket(T, dorfman_bracket(T, a, b), c) +
                                     dorfman_bracket(T, b, dorfman_bracket(T, a, c));
                if (!(lhs - rhs).is_zero()) {
                    leibniz.fail("a = " + a.to_string() + ", b = " + b.to_string() +
                                 ", c = " + c.to_string());
                    if (leibniz.witnesses.size() >= 3) break;
                }
            }
        }

    CheckOutcome module{"dorfman_module_rule"};
    for (const auto& a : samples)
        for (const auto& b : samples)
            for (int j = 0; j < p; ++j) {
                module.count();
                ScalarExpr f = ScalarExpr::coordinate(ctx, j);
                DorfmanSection lhs = dorfman_bracket(T, a, f * b);
                DorfmanSection rhs = (f * dorfman_bracket(T, a, b)) +
                                     (T.anchor_apply(a.vec, f) * b);
                if (!(lhs - rhs).is_zero())
                    module.fail("a = " + a.to_string() + ", b = " + b.to_string() +
                                ", f = " + f.to_string());
            }

    CheckOutcome anchor{"dorfman_anchor_property"};
    for (const auto& a : samples)
        for (const auto& b : samples) {
            anchor.count();
            MultiVector lhs = dorfman_bracket(T, a, b).vec;
            MultiVector rhs = T.bracket_sections(a.vec, b.vec);
            if (!(lhs == rhs))
                anchor.fail("a = " + a.to_string() + ", b = " + b.to_string());
        }

    return {leibniz, module, anchor};
}

} // namespace alab

// leibniz_cohomology.hpp
// Cohomology of a finite-dimensional (left) Leibniz algebra with coefficients
// in a representation.  Cochains are FULL multilinear maps L^{x q} -> E (no
// alternation), and the coboundary is
//
//   d phi(X_1..X_{q+1}) = sum_r (-1)^(r+1) rho_{X_r} phi(..X_r^..)
//                       + sum_{r<s} (-1)^r phi(X_1,..,X_r^,..,[X_r,X_s] at slot s,..)
//
// Everything is exact linear algebra over Q; the bracket table and the
// representation are validated first (witnessed NotLeibniz /
// NotRepresentation on failure).
#pragma once

#include "alab/complexes.hpp"

#include <string>
#include <vector>

namespace alab {

struct LeibnizAlgebraInput {
    size_t dim = 0;
    // bracket[i][j] = coordinates of << e_i, e_j >>
    std::vector<std::vector<std::vector<Rat>>> bracket;
    size_t edim = 1;
    std::vector<QMatrix> rep; // rep[i] : edim x edim, action of e_i

    static LeibnizAlgebraInput trivial_rep(size_t dim,
                                           std::vector<std::vector<std::vector<Rat>>> table) {
        LeibnizAlgebraInput in;
        in.dim = dim;
        in.bracket = std::move(table);
        in.edim = 1;
        in.rep.assign(dim, QMatrix(1, 1));
        return in;
    }
};

namespace detail {

inline std::vector<Rat> leibniz_apply(const LeibnizAlgebraInput& L, size_t i,
                                      const std::vector<Rat>& v) {
    std::vector<Rat> out(L.dim, Rat(0));
    for (size_t j = 0; j < L.dim; ++j) {
        if (v[j] == 0) continue;
        for (size_t k = 0; k < L.dim; ++k) out[k] += v[j] * L.bracket[i][j][k];
    }
    return out;
}

} // namespace detail

inline void validate_leibniz_input(const LeibnizAlgebraInput& L) {
    if (L.bracket.size() != L.dim) throw ValidationError("bracket table has wrong size");
    for (auto& row : L.bracket) {
        if (row.size() != L.dim) throw ValidationError("bracket table has wrong size");
        for (auto& v : row)
            if (v.size() != L.dim) throw ValidationError("bracket value has wrong size");
    }
    // left Leibniz identity on basis triples
    for (size_t a = 0; a < L.dim; ++a)
        for (size_t b = 0; b < L.dim; ++b)
            for (size_t c = 0; c < L.dim; ++c) {
                std::vector<Rat> lhs =
                    detail::leibniz_apply(L, a, L.bracket[b][c]);
                std::vector<Rat> r1(L.dim, Rat(0));
                for (size_t k = 0; k < L.dim; ++k) {
                    if (L.bracket[a][b][k] == 0) continue;
                    for (size_t t = 0; t < L.dim; ++t)
                        r1[t] += L.bracket[a][b][k] * L.bracket[k][c][t];
                }
                std::vector<Rat> r2 = detail::leibniz_apply(L, b, L.bracket[a][c]);
                for (size_t t = 0; t < L.dim; ++t)
                    if (lhs[t] != r1[t] + r2[t])
                        throw NotLeibniz("Leibniz identity fails on basis triple (e" +
                                         std::to_string(a + 1) + ",e" + std::to_string(b + 1) +
                                         ",e" + std::to_string(c + 1) + ")");
            }
    // representation property rho_a rho_b - rho_b rho_a = rho_{[a,b]}
    if (L.rep.size() != L.dim) throw NotRepresentation("one matrix per basis element required");
    for (size_t a = 0; a < L.dim; ++a)
        for (size_t b = 0; b < L.dim; ++b) {
            QMatrix comm = L.rep[a] * L.rep[b];
            QMatrix ba = L.rep[b] * L.rep[a];
            QMatrix expect(L.edim, L.edim);
            for (size_t k = 0; k < L.dim; ++k) {
                if (L.bracket[a][b][k] == 0) continue;
                for (size_t i = 0; i < L.edim; ++i)
                    for (size_t j = 0; j < L.edim; ++j)
                        expect.at(i, j) += L.bracket[a][b][k] * L.rep[k].at(i, j);
            }
            for (size_t i = 0; i < L.edim; ++i)
                for (size_t j = 0; j < L.edim; ++j)
                    if (comm.at(i, j) - ba.at(i, j) != expect.at(i, j))
                        throw NotRepresentation("rho fails on (e" + std::to_string(a + 1) +
                                                ",e" + std::to_string(b + 1) + ")");
        }
}

namespace detail {

inline size_t tuple_index(const std::vector<size_t>& t, size_t dim) {
    size_t idx = 0;
    for (size_t x : t) idx = idx * dim + x;
    return idx;
}

inline QMatrix leibniz_coboundary(const LeibnizAlgebraInput& L, int q) {
    size_t dim_q = 1;
    for (int i = 0; i < q; ++i) dim_q *= L.dim;
    size_t dim_q1 = dim_q * L.dim;
    QMatrix d(dim_q1 * L.edim, dim_q * L.edim);

    std::vector<size_t> t(size_t(q) + 1, 0);
    for (size_t flat = 0; flat < dim_q1; ++flat) {
        size_t rem = flat;
        for (int i = q; i >= 0; --i) {
            t[size_t(i)] = rem % L.dim;
            rem /= L.dim;
        }
        for (int r = 0; r <= q; ++r) {
            std::vector<size_t> without;
            for (int i = 0; i <= q; ++i)
                if (i != r) without.push_back(t[size_t(i)]);
            int sign_r = (r % 2 == 0) ? 1 : -1; // (-1)^(r+1), r 1-based
            // rho term
            size_t col_tuple = tuple_index(without, L.dim);
            for (size_t f = 0; f < L.edim; ++f)
                for (size_t f2 = 0; f2 < L.edim; ++f2) {
                    const Rat& c = L.rep[t[size_t(r)]].at(f, f2);
                    if (c == 0) continue;
                    d.at(flat * L.edim + f, col_tuple * L.edim + f2) +=
                        sign_r > 0 ? c : -c;
                }
            // bracket terms: [X_r, X_s] lands in slot s (after removing X_r)
            for (int s = r + 1; s <= q; ++s) {
                int sign = (((r + 1) % 2) == 0) ? 1 : -1; // (-1)^r, r 1-based
                const std::vector<Rat>& br = L.bracket[t[size_t(r)]][t[size_t(s)]];
                for (size_t u = 0; u < L.dim; ++u) {
                    if (br[u] == 0) continue;
                    std::vector<size_t> arg;
                    for (int i = 0; i <= q; ++i) {
                        if (i == r) continue;
                        arg.push_back(i == s ? u : t[size_t(i)]);
                    }
                    size_t col = tuple_index(arg, L.dim);
                    for (size_t f = 0; f < L.edim; ++f)
                        d.at(flat * L.edim + f, col * L.edim + f) +=
                            sign > 0 ? br[u] : -br[u];
                }
            }
        }
    }
    return d;
}

} // namespace detail

struct LeibnizCohomologyResult {
    BettiTable table;   // label 0, degrees 0..max_degree
    bool d_squared_zero = true;
};

inline LeibnizCohomologyResult leibniz_cohomology(const LeibnizAlgebraInput& L, int max_degree) {
    validate_leibniz_input(L);
    LeibnizCohomologyResult res;
    std::vector<QMatrix> ds;
    for (int q = 0; q <= max_degree; ++q) ds.push_back(detail::leibniz_coboundary(L, q));
    for (int q = 0; q + 1 <= max_degree; ++q)
        if (!(ds[size_t(q + 1)] * ds[size_t(q)]).is_zero()) res.d_squared_zero = false;
    for (int q = 0; q <= max_degree; ++q) {
        size_t dim_q = L.edim;
        for (int i = 0; i < q; ++i) dim_q *= L.dim;
        size_t rank_out = ds[size_t(q)].rank();
        size_t rank_in = (q > 0) ? ds[size_t(q - 1)].rank() : 0;
        res.table.dims[{0, q}] = long(dim_q) - long(rank_out) - long(rank_in);
    }
    return res;
}

} // namespace alab

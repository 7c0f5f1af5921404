// linalg.hpp
// Dense exact linear algebra over Q: RREF, rank, kernel and image bases,
// linear solves.  Matrices here are small (stratum bases, cochain spaces), so
// plain Gaussian elimination with rational pivots is the right tool.
#pragma once

#include "alab/rational.hpp"

#include <optional>
#include <vector>

namespace alab {

class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Rat& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    const Rat& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const {
        for (const Rat& x : a_)
            if (x != 0) return false;
        return true;
    }

    friend QMatrix operator*(const QMatrix& A, const QMatrix& B) {
        QMatrix C(A.rows_, B.cols_);
        for (size_t i = 0; i < A.rows_; ++i)
            for (size_t k = 0; k < A.cols_; ++k) {
                if (A.at(i, k) == 0) continue;
                for (size_t j = 0; j < B.cols_; ++j)
                    C.at(i, j) += A.at(i, k) * B.at(k, j);
            }
        return C;
    }

    friend bool operator==(const QMatrix& A, const QMatrix& B) {
        return A.rows_ == B.rows_ && A.cols_ == B.cols_ && A.a_ == B.a_;
    }

    /// Row-reduces in place; returns pivot column indices.
    std::vector<size_t> rref() {
        std::vector<size_t> pivots;
        size_t row = 0;
        for (size_t col = 0; col < cols_ && row < rows_; ++col) {
            size_t sel = row;
            while (sel < rows_ && at(sel, col) == 0) ++sel;
            if (sel == rows_) continue;
            if (sel != row)
                for (size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(row, j));
            Rat inv = Rat(1) / at(row, col);
            for (size_t j = 0; j < cols_; ++j) at(row, j) *= inv;
            for (size_t i = 0; i < rows_; ++i) {
                if (i == row || at(i, col) == 0) continue;
                Rat f = at(i, col);
                for (size_t j = 0; j < cols_; ++j) at(i, j) -= f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    size_t rank() const {
        QMatrix tmp = *this;
        return tmp.rref().size();
    }

    /// Basis of the null space (columns = coordinates), deterministic:
    /// one vector per free column, free coordinate set to 1.
    std::vector<std::vector<Rat>> kernel_basis() const {
        QMatrix R = *this;
        std::vector<size_t> pivots = R.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (size_t p : pivots) is_pivot[p] = true;
        std::vector<std::vector<Rat>> basis;
        for (size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<Rat> v(cols_, Rat(0));
            v[free] = 1;
            for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -R.at(i, free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// One solution of A x = b, if any (free variables set to 0).
    std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const {
        QMatrix aug(rows_, cols_ + 1);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        std::vector<size_t> pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt; // inconsistent
        std::vector<Rat> x(cols_, Rat(0));
        for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, cols_);
        return x;
    }

private:
    size_t rows_, cols_;
    std::vector<Rat> a_;
};

/// Row span membership: is v in the span of the rows of A?
inline bool in_row_span(const QMatrix& A, const std::vector<Rat>& v) {
    QMatrix with(A.rows() + 1, A.cols());
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j) with.at(i, j) = A.at(i, j);
    for (size_t j = 0; j < A.cols(); ++j) with.at(A.rows(), j) = v[j];
    return with.rank() == A.rank();
}

} // namespace alab

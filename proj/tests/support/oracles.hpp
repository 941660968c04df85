// Test-only oracles, deliberately independent of the SVD kernel: naive
// multiplication, Gaussian elimination with partial pivoting, and the
// row-reduction rank-factorization pseudoinverse.
#ifndef GRAMOPS_TESTS_ORACLES_HPP
#define GRAMOPS_TESTS_ORACLES_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gramops/dense.hpp"

namespace oracles {

using gramops::ComplexMatrix;
using gramops::cx;

inline ComplexMatrix naive_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("naive_mul: dimension mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cx sum(0.0, 0.0);
            for (std::size_t l = 0; l < a.cols(); ++l)
                sum += a(i, l) * b(l, j);
            c(i, j) = sum;
        }
    return c;
}

/// Solve A X = B by Gaussian elimination with partial pivoting; A square.
inline ComplexMatrix ge_solve(ComplexMatrix a, ComplexMatrix b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n)
        throw std::invalid_argument("ge_solve: dimension mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > best) {
                best = std::abs(a(r, col));
                pivot = r;
            }
        if (best < 1e-300)
            throw std::runtime_error("ge_solve: singular matrix");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a(col, c), a(pivot, c));
            for (std::size_t c = 0; c < b.cols(); ++c)
                std::swap(b(col, c), b(pivot, c));
        }
        const cx inv = cx(1.0, 0.0) / a(col, col);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col)
                continue;
            const cx factor = a(r, col) * inv;
            if (factor == cx(0.0, 0.0))
                continue;
            for (std::size_t c = col; c < n; ++c)
                a(r, c) -= factor * a(col, c);
            for (std::size_t c = 0; c < b.cols(); ++c)
                b(r, c) -= factor * b(col, c);
        }
    }
    ComplexMatrix x(n, b.cols());
    for (std::size_t r = 0; r < n; ++r) {
        const cx inv = cx(1.0, 0.0) / a(r, r);
        for (std::size_t c = 0; c < b.cols(); ++c)
            x(r, c) = b(r, c) * inv;
    }
    return x;
}

inline ComplexMatrix ge_inverse(const ComplexMatrix& a) {
    return ge_solve(a, ComplexMatrix::identity(a.rows()));
}

struct Rref {
    ComplexMatrix r;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form with partial pivoting and a relative pivot cutoff.
inline Rref rref(ComplexMatrix a, double rel_tol = 1e-10) {
    const double scale = gramops::max_abs(a);
    const double cutoff = rel_tol * (scale > 0.0 ? scale : 1.0);
    Rref out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t pivot = row;
        double best = std::abs(a(row, col));
        for (std::size_t r = row + 1; r < a.rows(); ++r)
            if (std::abs(a(r, col)) > best) {
                best = std::abs(a(r, col));
                pivot = r;
            }
        if (best <= cutoff)
            continue;
        if (pivot != row)
            for (std::size_t c = 0; c < a.cols(); ++c)
                std::swap(a(row, c), a(pivot, c));
        const cx inv = cx(1.0, 0.0) / a(row, col);
        for (std::size_t c = 0; c < a.cols(); ++c)
            a(row, c) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row)
                continue;
            const cx factor = a(r, col);
            if (factor == cx(0.0, 0.0))
                continue;
            for (std::size_t c = 0; c < a.cols(); ++c)
                a(r, c) -= factor * a(row, c);
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.r = std::move(a);
    return out;
}

/// Rank-factorization pseudoinverse: factor A = F G through row reduction
/// (F = pivot columns of A, G = nonzero rows of rref(A)), then
/// A^+ = G* (G G*)^{-1} (F* F)^{-1} F*.
inline ComplexMatrix rank_fact_pinv(const ComplexMatrix& a, double rel_tol = 1e-10) {
    const Rref red = rref(a, rel_tol);
    const std::size_t r = red.pivot_cols.size();
    if (r == 0)
        return ComplexMatrix(a.cols(), a.rows());
    ComplexMatrix f(a.rows(), r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            f(i, j) = a(i, red.pivot_cols[j]);
    ComplexMatrix g(r, a.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            g(i, j) = red.r(i, j);

    using gramops::adjoint;
    const ComplexMatrix gstar = adjoint(g);
    const ComplexMatrix fstar = adjoint(f);
    const ComplexMatrix ggs_inv = ge_inverse(naive_mul(g, gstar));
    const ComplexMatrix ffs_inv = ge_inverse(naive_mul(fstar, f));
    return naive_mul(naive_mul(gstar, ggs_inv), naive_mul(ffs_inv, fstar));
}

} // namespace oracles

#endif

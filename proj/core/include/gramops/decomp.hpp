#ifndef GRAMOPS_DECOMP_HPP
#define GRAMOPS_DECOMP_HPP

#include <cstddef>
#include <vector>

#include "gramops/dense.hpp"

namespace gramops {

/// Thin singular value decomposition M = U diag(singulars) V*.
///
/// U is m x r and V is k x r with r = min(m, k); both have orthonormal
/// columns (columns belonging to zero singular values are filled in by
/// orthonormal completion). Singular values are sorted descending.
struct SvdFactors {
    ComplexMatrix u;
    std::vector<double> singulars;
    ComplexMatrix v;
};

/// One-sided Jacobi SVD. Accuracy contract: with n = max(rows, cols),
///   ||U*U - I||_F  <= 1e-12 * n
///   ||V*V - I||_F  <= 1e-12 * n
///   ||M - U S V*||_F <= 1e-12 * n * ||M||_F
/// Throws NonConvergence when a sweep limit is hit, never degrades silently.
SvdFactors svd(const ComplexMatrix& m, std::size_t max_sweeps = 100);

/// Count of singular values above rel_tol * sigma_max. Zero input -> rank 0.
std::size_t rank_from_singulars(const std::vector<double>& singulars, double rel_tol);

/// Default relative rank tolerance for an m-by-k problem: 1e-10 * max(m, k).
double default_rank_tol(std::size_t rows, std::size_t cols);

/// Moore-Penrose pseudoinverse from precomputed factors, keeping `rank` values.
ComplexMatrix pinv_from_svd(const SvdFactors& f, std::size_t rank);

/// Moore-Penrose pseudoinverse via SVD with the relative rank cutoff rel_tol.
ComplexMatrix pinv_svd(const ComplexMatrix& m, double rel_tol);

/// Largest singular value (0 for an all-zero or degenerate matrix).
double spectral_norm(const ComplexMatrix& m);

/// Hermitian eigendecomposition m = W diag(eigenvalues) W*, eigenvalues ascending.
struct HermEig {
    std::vector<double> eigenvalues;
    ComplexMatrix vectors;
};

/// Cyclic complex Jacobi eigensolver. Requires ||m - m*||_F <= 1e-10 * ||m||_F
/// (NotHermitian otherwise); the input is symmetrized before iterating.
HermEig herm_eig(const ComplexMatrix& m, std::size_t max_sweeps = 100);

/// Spectral square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues below -1e-10 * ||m|| raise NotPositive; slightly negative ones clamp to 0.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Inverse spectral square root; zero eigenvalues invert to zero, so for a
/// singular PSD matrix this is the pseudoinverse square root.
ComplexMatrix psd_inv_sqrt(const ComplexMatrix& m);

/// Minimum-norm least-squares solution pinv(m) * rhs.
ComplexMatrix min_norm_lss(const ComplexMatrix& m, const ComplexMatrix& rhs, double rel_tol);

/// Orthonormal basis of the numerical null space (k x (k - rank)); columns are
/// right singular vectors of discarded singular values plus an orthonormal
/// completion when min(m, k) < k.
ComplexMatrix null_space_basis(const ComplexMatrix& m, double rel_tol);

/// Extend a matrix with orthonormal columns to an orthonormal basis of C^rows;
/// returns only the added columns (rows x (rows - cols)).
ComplexMatrix complete_orthonormal(const ComplexMatrix& q);

} // namespace gramops

#endif

#ifndef GRAMOPS_OPERATORS_HPP
#define GRAMOPS_OPERATORS_HPP

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gramops/decomp.hpp"
#include "gramops/module.hpp"

namespace gramops {

/// Adjointable A-linear operator A^k -> A^m, stored as an m x k array of
/// algebra elements: (Tx)_i = sum_j T_ij x_j.
///
/// Per summand the operator flattens to an ordinary complex matrix of size
/// (m n_i) x (k n_i); flattening is a bijection that turns composition into
/// matrix product and the module adjoint into the conjugate transpose, so all
/// spectral computations happen on the flattened summands and are reassembled.
class AMatrix {
public:
    AMatrix() = default;
    AMatrix(AlgebraShape shape, std::size_t out_len, std::size_t in_len); // zero operator

    static AMatrix identity(const AlgebraShape& shape, std::size_t len);

    const AlgebraShape& shape() const { return shape_; }
    std::size_t out_len() const { return out_len_; }
    std::size_t in_len() const { return in_len_; }

    const AlgElem& entry(std::size_t i, std::size_t j) const { return entries_[i * in_len_ + j]; }
    AlgElem& entry(std::size_t i, std::size_t j) { return entries_[i * in_len_ + j]; }

private:
    AlgebraShape shape_;
    std::size_t out_len_ = 0;
    std::size_t in_len_ = 0;
    std::vector<AlgElem> entries_;
};

/// Residual bundle for one Moore-Penrose computation: rank decisions, the four
/// defining-axiom residuals, and any identity residuals recorded by a caller.
struct PinvReport {
    double tol_used = 0.0;
    std::vector<std::size_t> per_summand_ranks;
    std::array<double, 4> penrose_residuals{}; // |tst-t|, |sts-s|, |(ts)*-ts|, |(st)*-st|
    std::map<std::string, double> identity_residuals;
    double runtime_ms = 0.0;
    bool rank_stable = true; // ranks unchanged when rel_tol moves by a factor of 10 either way
};

struct MpInverseResult {
    AMatrix pinv;
    PinvReport report;
};

struct TikhonovResult {
    AMatrix approx;
    double gap = 0.0;                 // distance to the direct pseudoinverse route
    std::vector<double> omegas;       // omega_n actually visited
    std::vector<double> step_diffs;   // ||S_n - S_{n-1}|| for n >= 1
    std::vector<AMatrix> iterates;    // S_n per omega, for convergence studies
};

/// Basis of the joint commutant {S : ST = TS and ST* = T*S}. The first element
/// is always the identity; the remaining elements are Frobenius-orthonormal.
struct CommutantBasis {
    AlgebraShape shape;
    std::size_t dim = 0;
    std::vector<AMatrix> elements;
};

struct BoundedTransform {
    AMatrix q; // (1 + T*T)^{-1/2}, square on the domain side
    AMatrix f; // T Q, a contraction
};

// --- structure and arithmetic -------------------------------------------------

/// Complex matrix of summand i: the (m n_i) x (k n_i) block matrix whose (I, J)
/// block is the i-th block of entry T_IJ. Round-trips exactly with
/// amatrix_set_summand.
ComplexMatrix flatten_summand(const AMatrix& t, std::size_t i);

/// Flatten a module vector against summand i: a (k n_i) x n_i column block.
ComplexMatrix flatten_summand(const ModuleVector& x, std::size_t i);

void amatrix_set_summand(AMatrix& t, std::size_t i, const ComplexMatrix& flat);

AMatrix amatrix_from_summands(const AlgebraShape& shape, std::size_t out_len, std::size_t in_len,
                              const std::vector<ComplexMatrix>& flats);

ModuleVector op_apply(const AMatrix& t, const ModuleVector& x);
AMatrix op_adjoint(const AMatrix& t);
AMatrix op_compose(const AMatrix& t, const AMatrix& s); // t after s
AMatrix op_add(const AMatrix& a, const AMatrix& b);
AMatrix op_sub(const AMatrix& a, const AMatrix& b);
AMatrix op_scale(const AMatrix& a, cx factor);

/// Operator norm: max over summands of the flattened spectral norm.
double op_norm(const AMatrix& t);

// --- Moore-Penrose routes ------------------------------------------------------

/// Direct route: per-summand SVD pseudoinverse, reassembled and verified.
/// Raises StructureLoss if the reassembled operator fails the A-linearity probe.
MpInverseResult mp_inverse(const AMatrix& t, double rel_tol);

/// Regularized route S_n = T* (omega_n + T T*)^{-1} with omega_n = omega0 * ratio^n,
/// iterated until successive iterates differ by less than stop_tol.
/// `ref_rel_tol` selects the rank cutoff of the reference pseudoinverse used for
/// the reported gap; 0 means the default size-scaled rule.
TikhonovResult mp_inverse_tikhonov(const AMatrix& t, double omega0 = 1.0, double ratio = 0.1,
                                   double stop_tol = 1e-10, std::size_t max_steps = 20,
                                   double ref_rel_tol = 0.0);

/// Gram routes: (T*T)^+ T* and T* (TT*)^+.
AMatrix pinv_gram_left(const AMatrix& t, double rel_tol);
AMatrix pinv_gram_right(const AMatrix& t, double rel_tol);

/// || (T*T)^+ - T^+ (T*)^+ ||, both sides computed independently.
double gram_pinv_product_check(const AMatrix& t, double rel_tol);

// --- projections and decompositions ---------------------------------------------

/// T T^+, the projection onto the range of T. rel_tol = 0 selects the default rule.
AMatrix range_projection(const AMatrix& t, double rel_tol = 0.0);

/// T^+ T, the projection onto the range of T*.
AMatrix source_projection(const AMatrix& t, double rel_tol = 0.0);

/// Residuals of Ker(T) (+) Ran(T*) = domain and Ker(T*) (+) Ran(T) = codomain:
/// (||P_ker + T^+T - I||, ||P_ker* + TT^+ - I||).
std::pair<double, double> decomposition_check(const AMatrix& t, double rel_tol);

/// || P_ran(T) - P_ran(TT*) ||; the two ranges agree for adjointable operators.
double gram_range_check(const AMatrix& t, double rel_tol);

// --- commutation and selfadjointness ---------------------------------------------

/// Joint commutant of {T, T*} solved per summand through the vectorized
/// commutator system. Flattened summand dimension is capped at 64.
CommutantBasis joint_commutant_basis(const AMatrix& t, double rel_tol);

/// || S T^+ - T^+ S || after verifying S commutes with T and T* within
/// rel_tol * ||S|| * ||T|| (NotInCommutant otherwise).
double commutation_check(const AMatrix& t, const AMatrix& s, double rel_tol);

/// (||T - (T^+T) T*||, ||T - T*||): the first residual vanishes exactly when
/// the operator is selfadjoint.
std::pair<double, double> selfadjoint_criterion(const AMatrix& t, double rel_tol);

/// Q = (1 + T*T)^{-1/2} and F = T Q.
BoundedTransform bounded_transform(const AMatrix& t);

} // namespace gramops

#endif

#ifndef GRAMOPS_ALGEBRA_HPP
#define GRAMOPS_ALGEBRA_HPP

#include <cstddef>
#include <vector>

#include "gramops/dense.hpp"

namespace gramops {

/// Block sizes (n_1, ..., n_s) of the coefficient algebra
/// A = M_{n_1}(C) (+) ... (+) M_{n_s}(C).
class AlgebraShape {
public:
    AlgebraShape() = default;
    explicit AlgebraShape(std::vector<std::size_t> blocks);

    std::size_t num_blocks() const { return blocks_.size(); }
    std::size_t block_dim(std::size_t i) const { return blocks_[i]; }
    const std::vector<std::size_t>& blocks() const { return blocks_; }
    std::size_t max_block_dim() const;

    bool operator==(const AlgebraShape& other) const { return blocks_ == other.blocks_; }
    bool operator!=(const AlgebraShape& other) const { return !(*this == other); }

private:
    std::vector<std::size_t> blocks_;
};

/// Element of the block algebra: one n_i x n_i complex matrix per summand.
class AlgElem {
public:
    AlgElem() = default;
    explicit AlgElem(const AlgebraShape& shape); // zero element
    AlgElem(AlgebraShape shape, std::vector<ComplexMatrix> blocks);

    static AlgElem identity(const AlgebraShape& shape);

    const AlgebraShape& shape() const { return shape_; }
    std::size_t num_blocks() const { return blocks_.size(); }
    const ComplexMatrix& block(std::size_t i) const { return blocks_[i]; }
    ComplexMatrix& block(std::size_t i) { return blocks_[i]; }

private:
    AlgebraShape shape_;
    std::vector<ComplexMatrix> blocks_;
};

AlgElem alg_add(const AlgElem& a, const AlgElem& b);
AlgElem alg_sub(const AlgElem& a, const AlgElem& b);
AlgElem alg_mul(const AlgElem& a, const AlgElem& b);
AlgElem alg_star(const AlgElem& a);
AlgElem alg_scale(const AlgElem& a, cx factor);

/// C*-norm of a direct sum: max over summands of the largest singular value.
double alg_norm(const AlgElem& a);

/// True iff every block is Hermitian within tol and its spectrum sits above
/// -tol * alg_norm(a). Non-Hermitian input simply reports false.
bool is_positive(const AlgElem& a, double tol = 1e-10);

} // namespace gramops

#endif

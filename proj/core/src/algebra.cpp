#include "gramops/algebra.hpp"

#include <algorithm>
#include <utility>

#include "gramops/decomp.hpp"

namespace gramops {

AlgebraShape::AlgebraShape(std::vector<std::size_t> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty())
        throw std::invalid_argument("AlgebraShape: at least one summand required");
    for (std::size_t n : blocks_)
        if (n == 0)
            throw std::invalid_argument("AlgebraShape: block dimensions must be >= 1");
}

std::size_t AlgebraShape::max_block_dim() const {
    return *std::max_element(blocks_.begin(), blocks_.end());
}

AlgElem::AlgElem(const AlgebraShape& shape) : shape_(shape) {
    blocks_.reserve(shape.num_blocks());
    for (std::size_t i = 0; i < shape.num_blocks(); ++i)
        blocks_.emplace_back(shape.block_dim(i), shape.block_dim(i));
}

AlgElem::AlgElem(AlgebraShape shape, std::vector<ComplexMatrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
    if (blocks_.size() != shape_.num_blocks())
        throw ShapeMismatch("AlgElem: block count does not match shape");
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        if (blocks_[i].rows() != shape_.block_dim(i) || blocks_[i].cols() != shape_.block_dim(i))
            throw ShapeMismatch("AlgElem: block size does not match shape");
}

AlgElem AlgElem::identity(const AlgebraShape& shape) {
    AlgElem e(shape);
    for (std::size_t i = 0; i < e.num_blocks(); ++i)
        e.block(i) = ComplexMatrix::identity(shape.block_dim(i));
    return e;
}

namespace {

void require_same_shape(const AlgElem& a, const AlgElem& b, const char* what) {
    if (a.shape() != b.shape())
        throw ShapeMismatch(std::string(what) + ": operands live over different algebras");
}

} // namespace

AlgElem alg_add(const AlgElem& a, const AlgElem& b) {
    require_same_shape(a, b, "alg_add");
    AlgElem c = a;
    for (std::size_t i = 0; i < c.num_blocks(); ++i)
        c.block(i) = mat_add(a.block(i), b.block(i));
    return c;
}

AlgElem alg_sub(const AlgElem& a, const AlgElem& b) {
    require_same_shape(a, b, "alg_sub");
    AlgElem c = a;
    for (std::size_t i = 0; i < c.num_blocks(); ++i)
        c.block(i) = mat_sub(a.block(i), b.block(i));
    return c;
}

AlgElem alg_mul(const AlgElem& a, const AlgElem& b) {
    require_same_shape(a, b, "alg_mul");
    AlgElem c = a;
    for (std::size_t i = 0; i < c.num_blocks(); ++i)
        c.block(i) = mat_mul(a.block(i), b.block(i));
    return c;
}

AlgElem alg_star(const AlgElem& a) {
    AlgElem c = a;
    for (std::size_t i = 0; i < c.num_blocks(); ++i)
        c.block(i) = adjoint(a.block(i));
    return c;
}

AlgElem alg_scale(const AlgElem& a, cx factor) {
    AlgElem c = a;
    for (std::size_t i = 0; i < c.num_blocks(); ++i)
        c.block(i) = mat_scale(a.block(i), factor);
    return c;
}

double alg_norm(const AlgElem& a) {
    double n = 0.0;
    for (std::size_t i = 0; i < a.num_blocks(); ++i)
        n = std::max(n, spectral_norm(a.block(i)));
    return n;
}

bool is_positive(const AlgElem& a, double tol) {
    const double scale = alg_norm(a);
    for (std::size_t i = 0; i < a.num_blocks(); ++i) {
        const ComplexMatrix& blk = a.block(i);
        if (fro_norm(mat_sub(blk, adjoint(blk))) > tol * (1.0 + fro_norm(blk)))
            return false;
        // Symmetrize so the eigensolver precondition is met exactly.
        ComplexMatrix sym = mat_scale(mat_add(blk, adjoint(blk)), cx(0.5, 0.0));
        HermEig e = herm_eig(sym);
        if (!e.eigenvalues.empty() && e.eigenvalues.front() < -tol * scale)
            return false;
    }
    return true;
}

} // namespace gramops

#ifndef GRAMOPS_MODULE_HPP
#define GRAMOPS_MODULE_HPP

#include <cstddef>
#include <vector>

#include "gramops/algebra.hpp"

namespace gramops {

/// Element of the free Hilbert module A^k over the block algebra A:
/// k coordinates, each an algebra element.
class ModuleVector {
public:
    ModuleVector() = default;
    ModuleVector(const AlgebraShape& shape, std::size_t length); // zero vector
    ModuleVector(AlgebraShape shape, std::vector<AlgElem> coords);

    /// e_j: identity in coordinate j, zero elsewhere.
    static ModuleVector basis_vector(const AlgebraShape& shape, std::size_t length, std::size_t j);

    const AlgebraShape& shape() const { return shape_; }
    std::size_t length() const { return coords_.size(); }
    const AlgElem& coord(std::size_t i) const { return coords_[i]; }
    AlgElem& coord(std::size_t i) { return coords_[i]; }

private:
    AlgebraShape shape_;
    std::vector<AlgElem> coords_;
};

/// A-valued inner product sum_i x_i* y_i, linear in the second argument.
AlgElem inner(const ModuleVector& x, const ModuleVector& y);

/// Module norm ||x|| = alg_norm(inner(x, x))^{1/2}.
double vec_norm(const ModuleVector& x);

/// Coordinate-wise right multiplication x . a.
ModuleVector right_action(const ModuleVector& x, const AlgElem& a);

ModuleVector vec_add(const ModuleVector& x, const ModuleVector& y);
ModuleVector vec_sub(const ModuleVector& x, const ModuleVector& y);

} // namespace gramops

#endif

#include "gramops/module.hpp"

#include <cmath>
#include <utility>

namespace gramops {

ModuleVector::ModuleVector(const AlgebraShape& shape, std::size_t length) : shape_(shape) {
    if (length == 0)
        throw std::invalid_argument("ModuleVector: length must be >= 1");
    coords_.assign(length, AlgElem(shape));
}

ModuleVector::ModuleVector(AlgebraShape shape, std::vector<AlgElem> coords)
    : shape_(std::move(shape)), coords_(std::move(coords)) {
    if (coords_.empty())
        throw std::invalid_argument("ModuleVector: length must be >= 1");
    for (const AlgElem& c : coords_)
        if (c.shape() != shape_)
            throw ShapeMismatch("ModuleVector: coordinate shape differs from module shape");
}

ModuleVector ModuleVector::basis_vector(const AlgebraShape& shape, std::size_t length,
                                        std::size_t j) {
    if (j >= length)
        throw IndexOutOfRange("basis_vector: coordinate index past length");
    ModuleVector x(shape, length);
    x.coord(j) = AlgElem::identity(shape);
    return x;
}

namespace {

void require_compatible(const ModuleVector& x, const ModuleVector& y, const char* what) {
    if (x.shape() != y.shape() || x.length() != y.length())
        throw ShapeMismatch(std::string(what) + ": vectors live in different modules");
}

} // namespace

AlgElem inner(const ModuleVector& x, const ModuleVector& y) {
    require_compatible(x, y, "inner");
    AlgElem acc(x.shape());
    for (std::size_t i = 0; i < x.length(); ++i)
        acc = alg_add(acc, alg_mul(alg_star(x.coord(i)), y.coord(i)));
    return acc;
}

double vec_norm(const ModuleVector& x) {
    return std::sqrt(alg_norm(inner(x, x)));
}

ModuleVector right_action(const ModuleVector& x, const AlgElem& a) {
    if (x.shape() != a.shape())
        throw ShapeMismatch("right_action: algebra element over a different shape");
    ModuleVector y = x;
    for (std::size_t i = 0; i < y.length(); ++i)
        y.coord(i) = alg_mul(x.coord(i), a);
    return y;
}

ModuleVector vec_add(const ModuleVector& x, const ModuleVector& y) {
    require_compatible(x, y, "vec_add");
    ModuleVector z = x;
    for (std::size_t i = 0; i < z.length(); ++i)
        z.coord(i) = alg_add(x.coord(i), y.coord(i));
    return z;
}

ModuleVector vec_sub(const ModuleVector& x, const ModuleVector& y) {
    require_compatible(x, y, "vec_sub");
    ModuleVector z = x;
    for (std::size_t i = 0; i < z.length(); ++i)
        z.coord(i) = alg_sub(x.coord(i), y.coord(i));
    return z;
}

} // namespace gramops

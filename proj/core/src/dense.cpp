#include "gramops/dense.hpp"

#include <cmath>
#include <utility>

namespace gramops {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw DimMismatch("entry count does not match rows*cols");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = cx(1.0, 0.0);
    return m;
}

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw DimMismatch("mat_mul: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    // i-l-j ordering keeps row-major access contiguous; for a fixed (i,j) the
    // partial sums accumulate in ascending l, the same order as a naive triple loop.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const cx ail = a(i, l);
            if (ail == cx(0.0, 0.0))
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += ail * b(l, j);
        }
    }
    return c;
}

ComplexMatrix mat_add(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_dims(b))
        throw DimMismatch("mat_add: dimensions differ");
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i)
        c.data()[i] += b.data()[i];
    return c;
}

ComplexMatrix mat_sub(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_dims(b))
        throw DimMismatch("mat_sub: dimensions differ");
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i)
        c.data()[i] -= b.data()[i];
    return c;
}

ComplexMatrix mat_scale(const ComplexMatrix& a, cx factor) {
    ComplexMatrix c = a;
    for (auto& z : c.data())
        z *= factor;
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(j, i) = std::conj(a(i, j));
    return c;
}

double fro_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.data())
        s += std::norm(z);
    return std::sqrt(s);
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.data())
        m = std::max(m, std::abs(z));
    return m;
}

bool is_finite(const ComplexMatrix& a) {
    for (const auto& z : a.data())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            return false;
    return true;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    if (!a.same_dims(b))
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a.data()[i] - b.data()[i]) > tol)
            return false;
    return true;
}

} // namespace gramops

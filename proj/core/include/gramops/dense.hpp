#ifndef GRAMOPS_DENSE_HPP
#define GRAMOPS_DENSE_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "gramops/errors.hpp"

namespace gramops {

using cx = std::complex<double>;

/// Dense complex matrix, row-major, double precision.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    /// rows x cols matrix of zeros. Dimensions of zero are allowed so that
    /// empty bases (e.g. the null space of an injective map) stay representable.
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cx(0.0, 0.0)) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cx> entries);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    cx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<cx>& data() const { return data_; }
    std::vector<cx>& data() { return data_; }

    bool same_dims(const ComplexMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cx> data_;
};

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mat_add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mat_sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mat_scale(const ComplexMatrix& a, cx factor);

/// Conjugate transpose. An exact involution: adjoint(adjoint(a)) == a bit for bit.
ComplexMatrix adjoint(const ComplexMatrix& a);

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_mul(a, b); }
inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_sub(a, b); }
inline ComplexMatrix operator*(cx s, const ComplexMatrix& a) { return mat_scale(a, s); }
inline ComplexMatrix operator*(double s, const ComplexMatrix& a) { return mat_scale(a, cx(s, 0.0)); }

double fro_norm(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);
bool is_finite(const ComplexMatrix& a);

/// True when every entry matches within an absolute elementwise tolerance.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

} // namespace gramops

#endif

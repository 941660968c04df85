#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gramops/dense.hpp"
#include "gramops/random.hpp"
#include "support/oracles.hpp"

using namespace gramops;

namespace {

ComplexMatrix diag2(double a, double b) {
    ComplexMatrix m(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

cx dot(const ComplexMatrix& x, const ComplexMatrix& y) {
    cx s(0.0, 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i)
        s += std::conj(x(i, 0)) * y(i, 0);
    return s;
}

} // namespace

TEST_CASE("mat_mul identity and diagonal cases") {
    Rng rng(1);
    const ComplexMatrix m = random_matrix(2, 3, rng);
    CHECK(approx_equal(mat_mul(ComplexMatrix::identity(2), m), m, 0.0));

    const ComplexMatrix p = mat_mul(diag2(2, 3), diag2(5, 7));
    CHECK(p(0, 0) == cx(10.0, 0.0));
    CHECK(p(1, 1) == cx(21.0, 0.0));
    CHECK(p(0, 1) == cx(0.0, 0.0));
}

TEST_CASE("mat_mul matches the naive triple loop") {
    Rng rng(2);
    const ComplexMatrix a = random_matrix(3, 4, rng);
    const ComplexMatrix b = random_matrix(4, 2, rng);
    CHECK(approx_equal(mat_mul(a, b), oracles::naive_mul(a, b), 1e-14));
}

TEST_CASE("mat_mul rejects mismatched dimensions") {
    const ComplexMatrix a(2, 3), b(2, 2);
    CHECK_THROWS_AS(mat_mul(a, b), DimMismatch);
}

TEST_CASE("adjoint conjugates and transposes") {
    ComplexMatrix m(1, 1);
    m(0, 0) = cx(0.0, 1.0);
    CHECK(adjoint(m)(0, 0) == cx(0.0, -1.0));

    ComplexMatrix sym(2, 2);
    sym(0, 0) = 1.0;
    sym(0, 1) = 2.0;
    sym(1, 0) = 2.0;
    sym(1, 1) = 3.0;
    CHECK(approx_equal(adjoint(sym), sym, 0.0));
}

TEST_CASE("adjoint is an exact involution") {
    Rng rng(3);
    const ComplexMatrix m = random_matrix(4, 3, rng);
    CHECK(approx_equal(adjoint(adjoint(m)), m, 0.0));
}

TEST_CASE("adjoint satisfies the inner product identity") {
    Rng rng(4);
    const ComplexMatrix m = random_matrix(4, 3, rng);
    const ComplexMatrix x = random_matrix(3, 1, rng);
    const ComplexMatrix y = random_matrix(4, 1, rng);
    const cx lhs = dot(mat_mul(m, x), y);
    const cx rhs = dot(x, mat_mul(adjoint(m), y));
    CHECK(std::abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("adjoint reverses products") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = random_matrix(3, 4, rng);
        const ComplexMatrix b = random_matrix(4, 2, rng);
        const ComplexMatrix lhs = adjoint(mat_mul(a, b));
        const ComplexMatrix rhs = mat_mul(adjoint(b), adjoint(a));
        CHECK(fro_norm(mat_sub(lhs, rhs)) <= 1e-13 * fro_norm(a) * fro_norm(b));
    }
}

TEST_CASE("entry count validation") {
    CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<cx>(3)), DimMismatch);
}

TEST_CASE("finite check flags NaN") {
    ComplexMatrix m(1, 2);
    CHECK(is_finite(m));
    m(0, 1) = cx(std::nan(""), 0.0);
    CHECK(!is_finite(m));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gramops/decomp.hpp"
#include "gramops/volterra.hpp"

using namespace gramops;

TEST_CASE("build_volterra constructs the cumulative quadrature matrix") {
    const ComplexMatrix v = build_volterra(2);
    CHECK(v(0, 0) == cx(0.5, 0.0));
    CHECK(v(0, 1) == cx(0.0, 0.0));
    CHECK(v(1, 0) == cx(0.5, 0.0));
    CHECK(v(1, 1) == cx(0.5, 0.0));
    CHECK_THROWS_AS(build_volterra(1), std::invalid_argument);
}

TEST_CASE("quadrature approximates cumulative integrals") {
    const std::size_t n = 64;
    const double h = 1.0 / static_cast<double>(n);
    const ComplexMatrix v = build_volterra(n);

    ComplexMatrix ones(n, 1);
    ComplexMatrix lin(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        ones(i, 0) = 1.0;
        lin(i, 0) = (static_cast<double>(i) + 0.5) * h;
    }

    const ComplexMatrix cum1 = mat_mul(v, ones);
    const ComplexMatrix cum2 = mat_mul(v, lin);
    double err1 = 0.0, err2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (static_cast<double>(i) + 0.5) * h;
        err1 = std::max(err1, std::abs(cum1(i, 0).real() - x));
        err2 = std::max(err2, std::abs(cum2(i, 0).real() - 0.5 * x * x));
    }
    CHECK(err1 <= h);
    CHECK(err2 <= 2.0 * h);
}

TEST_CASE("discrete adjoint equals the conjugate transpose exactly") {
    const std::size_t n = 16;
    const double h = 1.0 / static_cast<double>(n);
    // Quadrature of integration from x to 1: weight h on and above the diagonal.
    ComplexMatrix upper(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            upper(i, j) = cx(h, 0.0);
    CHECK(fro_norm(mat_sub(upper, adjoint(build_volterra(n)))) == 0.0);
}

TEST_CASE("finite-grid identities hold at every size") {
    for (std::size_t n : {8, 16, 32}) {
        const ComplexMatrix v = build_volterra(n);
        const ComplexMatrix p = pinv_svd(v, 1e-10);
        const double bound = 1e-9 * (1.0 + spectral_norm(v) + spectral_norm(p));
        const ComplexMatrix vp = mat_mul(v, p);
        const ComplexMatrix pv = mat_mul(p, v);
        CHECK(spectral_norm(mat_sub(mat_mul(vp, v), v)) <= bound);
        CHECK(spectral_norm(mat_sub(mat_mul(pv, p), p)) <= bound);
        CHECK(spectral_norm(mat_sub(adjoint(vp), vp)) <= bound);
        CHECK(spectral_norm(mat_sub(adjoint(pv), pv)) <= bound);
    }
}

TEST_CASE("solution norms diverge for the out-of-range right side") {
    const std::vector<std::size_t> grids{16, 32, 64, 128};
    const VolterraStudy study = no_solution_study(grids);
    REQUIRE(study.solution_norms.size() == 4);
    for (std::size_t i = 1; i < 4; ++i)
        CHECK(study.solution_norms[i] > study.solution_norms[i - 1]);
    for (double r : study.lss_residuals)
        CHECK(r <= 1e-8);
}

TEST_CASE("control right side stays bounded") {
    const std::vector<std::size_t> grids{16, 32, 64, 128};
    const VolterraStudy control = control_study(grids);
    double lo = control.solution_norms.front(), hi = lo;
    for (double v : control.solution_norms) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi <= 2.0 * lo);
    // The recovered sample converges to the L2 norm of g0(y) = 1 + y.
    CHECK(control.solution_norms.back() == doctest::Approx(std::sqrt(7.0 / 3.0)).epsilon(1e-3));
}

TEST_CASE("Gram conditioning grows at least quadratically") {
    const VolterraStudy study = no_solution_study({16, 32, 64});
    for (std::size_t i = 1; i < study.condition_numbers.size(); ++i)
        CHECK(study.condition_numbers[i] >= 3.0 * study.condition_numbers[i - 1]);
}

TEST_CASE("grid ladder validation") {
    CHECK_THROWS_AS(no_solution_study({8, 4}), std::invalid_argument);
    CHECK_THROWS_AS(no_solution_study({2}), std::invalid_argument);
    CHECK_THROWS_AS(no_solution_study({}), std::invalid_argument);
}

#include "gramops/volterra.hpp"

#include <cmath>
#include <functional>

#include "gramops/decomp.hpp"

namespace gramops {

namespace {

constexpr double kStudyRankTol = 1e-10;

double weighted_norm(const ComplexMatrix& column, double h) {
    double s = 0.0;
    for (const cx& z : column.data())
        s += std::norm(z);
    return std::sqrt(h * s);
}

void validate_grids(const std::vector<std::size_t>& grids) {
    if (grids.empty())
        throw std::invalid_argument("volterra study: at least one grid size required");
    for (std::size_t i = 0; i < grids.size(); ++i) {
        if (grids[i] < 4)
            throw std::invalid_argument("volterra study: grid sizes must be >= 4");
        if (i > 0 && grids[i] <= grids[i - 1])
            throw std::invalid_argument("volterra study: grid sizes must be ascending");
    }
}

// rhs_builder(gram, n, h) -> right side column for one grid.
VolterraStudy run_study(const std::vector<std::size_t>& grids,
                        const std::function<ComplexMatrix(const ComplexMatrix&, std::size_t,
                                                          double)>& rhs_builder) {
    validate_grids(grids);
    VolterraStudy study;
    study.grid_sizes = grids;
    for (std::size_t n : grids) {
        const double h = 1.0 / static_cast<double>(n);
        const ComplexMatrix v = build_volterra(n);
        const ComplexMatrix gram = mat_mul(v, adjoint(v));
        const ComplexMatrix f = rhs_builder(gram, n, h);

        const ComplexMatrix g = min_norm_lss(gram, f, kStudyRankTol);
        study.solution_norms.push_back(weighted_norm(g, h));
        study.lss_residuals.push_back(weighted_norm(mat_sub(mat_mul(gram, g), f), h));

        const SvdFactors sv = svd(gram);
        const double smax = sv.singulars.front();
        const double smin = sv.singulars.back();
        study.condition_numbers.push_back(smin > 0.0 ? smax / smin
                                                     : std::numeric_limits<double>::infinity());

        const ComplexMatrix direct = pinv_svd(v, kStudyRankTol);
        const ComplexMatrix via_gram = mat_mul(adjoint(v), pinv_svd(gram, kStudyRankTol));
        study.gram_identity_gaps.push_back(spectral_norm(mat_sub(direct, via_gram)));
    }
    return study;
}

} // namespace

ComplexMatrix build_volterra(std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("build_volterra: n must be >= 2");
    const double h = 1.0 / static_cast<double>(n);
    ComplexMatrix v(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            v(i, j) = cx(h, 0.0);
    return v;
}

VolterraStudy no_solution_study(const std::vector<std::size_t>& grid_sizes) {
    return run_study(grid_sizes, [](const ComplexMatrix&, std::size_t n, double h) {
        ComplexMatrix f(n, 1);
        for (std::size_t i = 0; i < n; ++i)
            f(i, 0) = cx((static_cast<double>(i) + 0.5) * h, 0.0);
        return f;
    });
}

VolterraStudy control_study(const std::vector<std::size_t>& grid_sizes) {
    return run_study(grid_sizes, [](const ComplexMatrix& gram, std::size_t n, double h) {
        ComplexMatrix g0(n, 1);
        for (std::size_t i = 0; i < n; ++i)
            g0(i, 0) = cx(1.0 + (static_cast<double>(i) + 0.5) * h, 0.0);
        return mat_mul(gram, g0);
    });
}

} // namespace gramops

#ifndef GRAMOPS_VOLTERRA_HPP
#define GRAMOPS_VOLTERRA_HPP

#include <cstddef>
#include <vector>

#include "gramops/dense.hpp"

namespace gramops {

/// Grid-by-grid record of one least-squares study against the Gram matrix
/// V V* of the discretized integration operator.
struct VolterraStudy {
    std::vector<std::size_t> grid_sizes;
    std::vector<double> solution_norms;      // h-weighted norms of the recovered g
    std::vector<double> lss_residuals;       // h-weighted ||VV* g - f||
    std::vector<double> condition_numbers;   // cond of VV*
    std::vector<double> gram_identity_gaps;  // ||pinv(V) - V* pinv(VV*)|| at rel_tol 1e-10
};

/// n x n lower-triangular quadrature matrix of cumulative integration on the
/// midpoint grid x_i = (i + 1/2)/n: entries 1/n on and below the diagonal.
/// Its conjugate transpose discretizes integration from x to 1, so the matrix
/// adjoint and the continuous adjoint coincide without a weight matrix.
ComplexMatrix build_volterra(std::size_t n);

/// Solve VV* g = f with f(x) = x across the grid ladder. The continuous
/// equation has no square-integrable solution, which surfaces as solution
/// norms that grow without bound as the grid refines.
VolterraStudy no_solution_study(const std::vector<std::size_t>& grid_sizes);

/// Control run with a right side manufactured inside the range,
/// f = VV* g0 for the smooth sample g0(y) = 1 + y; solution norms stay bounded.
VolterraStudy control_study(const std::vector<std::size_t>& grid_sizes);

} // namespace gramops

#endif

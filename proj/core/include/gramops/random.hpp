#ifndef GRAMOPS_RANDOM_HPP
#define GRAMOPS_RANDOM_HPP

#include <cstdint>
#include <random>

#include "gramops/operators.hpp"

namespace gramops {

/// Deterministic Gaussian source. The normal variates are produced by a
/// hand-rolled Box-Muller transform on top of mt19937_64 so that a seed fixes
/// the stream independent of any standard-library distribution details.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in (0, 1].
    double uniform() {
        return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
    }

    double gaussian();

    /// Standard complex Gaussian: E|z|^2 = 1.
    cx complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return cx(re * kInvSqrt2, im * kInvSqrt2);
    }

    std::uint64_t raw() { return eng_(); }

private:
    static constexpr double kInvSqrt2 = 0.70710678118654752440;
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Stream-splitting helper: a well-mixed per-item seed from (base, index).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);

AlgElem alg_random(const AlgebraShape& shape, Rng& rng);
AlgElem alg_random(const AlgebraShape& shape, std::uint64_t seed);

ModuleVector random_module_vector(const AlgebraShape& shape, std::size_t length, Rng& rng);

/// Dense Gaussian operator (full per-summand rank almost surely).
AMatrix random_amatrix(const AlgebraShape& shape, std::size_t out_len, std::size_t in_len,
                       Rng& rng);

/// Gaussian operator with prescribed per-summand flattened ranks, built as
/// G1 . D . G2 with D a diagonal rank-r cutoff. Draws are repeated until the
/// retained singular values of every summand satisfy
/// sigma_min/sigma_max >= min_gap (and the discarded ones are negligible), so
/// rank decisions stay stable across the derived Gram matrices.
AMatrix random_amatrix_ranked(const AlgebraShape& shape, std::size_t out_len, std::size_t in_len,
                              const std::vector<std::size_t>& ranks, Rng& rng,
                              double min_gap = 1e-3, std::size_t max_tries = 200);

/// Selfadjoint Gaussian operator G + G*.
AMatrix random_hermitian_amatrix(const AlgebraShape& shape, std::size_t len, Rng& rng);

} // namespace gramops

#endif

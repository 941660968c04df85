#include "gramops/random.hpp"

#include <cmath>
#include <string>

namespace gramops {

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 finalizer over the combined word.
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    for (auto& z : m.data())
        z = rng.complex_gaussian();
    return m;
}

AlgElem alg_random(const AlgebraShape& shape, Rng& rng) {
    AlgElem a(shape);
    for (std::size_t i = 0; i < shape.num_blocks(); ++i)
        a.block(i) = random_matrix(shape.block_dim(i), shape.block_dim(i), rng);
    return a;
}

AlgElem alg_random(const AlgebraShape& shape, std::uint64_t seed) {
    Rng rng(seed);
    return alg_random(shape, rng);
}

ModuleVector random_module_vector(const AlgebraShape& shape, std::size_t length, Rng& rng) {
    ModuleVector x(shape, length);
    for (std::size_t i = 0; i < length; ++i)
        x.coord(i) = alg_random(shape, rng);
    return x;
}

AMatrix random_amatrix(const AlgebraShape& shape, std::size_t out_len, std::size_t in_len,
                       Rng& rng) {
    AMatrix t(shape, out_len, in_len);
    for (std::size_t i = 0; i < out_len; ++i)
        for (std::size_t j = 0; j < in_len; ++j)
            t.entry(i, j) = alg_random(shape, rng);
    return t;
}

namespace {

// Diagonal cutoff operator whose summand i has flattened rank ranks[i]:
// ones are distributed along the block diagonals coordinate by coordinate.
AMatrix rank_cutoff_diagonal(const AlgebraShape& shape, std::size_t len,
                             const std::vector<std::size_t>& ranks) {
    AMatrix d(shape, len, len);
    for (std::size_t i = 0; i < shape.num_blocks(); ++i) {
        const std::size_t n = shape.block_dim(i);
        std::size_t remaining = ranks[i];
        for (std::size_t j = 0; j < len && remaining > 0; ++j) {
            const std::size_t take = std::min(remaining, n);
            ComplexMatrix blk(n, n);
            for (std::size_t l = 0; l < take; ++l)
                blk(l, l) = cx(1.0, 0.0);
            d.entry(j, j).block(i) = blk;
            remaining -= take;
        }
    }
    return d;
}

} // namespace

AMatrix random_amatrix_ranked(const AlgebraShape& shape, std::size_t out_len, std::size_t in_len,
                              const std::vector<std::size_t>& ranks, Rng& rng, double min_gap,
                              std::size_t max_tries) {
    if (ranks.size() != shape.num_blocks())
        throw InvalidRank("random_amatrix_ranked: one rank per summand required");
    const std::size_t min_len = std::min(out_len, in_len);
    bool all_full = true;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (ranks[i] > min_len * shape.block_dim(i))
            throw InvalidRank("random_amatrix_ranked: rank " + std::to_string(ranks[i]) +
                              " exceeds min(out,in) * n_" + std::to_string(i));
        if (ranks[i] != min_len * shape.block_dim(i))
            all_full = false;
    }

    for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
        AMatrix candidate;
        if (all_full) {
            candidate = random_amatrix(shape, out_len, in_len, rng);
        } else {
            AMatrix g1 = random_amatrix(shape, out_len, in_len, rng);
            AMatrix g2 = random_amatrix(shape, in_len, in_len, rng);
            AMatrix d = rank_cutoff_diagonal(shape, in_len, ranks);
            candidate = op_compose(g1, op_compose(d, g2));
        }
        bool ok = true;
        for (std::size_t i = 0; i < shape.num_blocks() && ok; ++i) {
            const SvdFactors f = svd(flatten_summand(candidate, i));
            const std::size_t r = ranks[i];
            if (r == 0) {
                ok = f.singulars.empty() || f.singulars.front() == 0.0;
                continue;
            }
            const double smax = f.singulars.front();
            if (smax == 0.0 || f.singulars[r - 1] < min_gap * smax) {
                ok = false;
                continue;
            }
            if (r < f.singulars.size() && f.singulars[r] > 1e-12 * smax)
                ok = false;
        }
        if (ok)
            return candidate;
    }
    throw Error("random_amatrix_ranked: could not reach the requested conditioning in " +
                std::to_string(max_tries) + " draws");
}

AMatrix random_hermitian_amatrix(const AlgebraShape& shape, std::size_t len, Rng& rng) {
    AMatrix g = random_amatrix(shape, len, len, rng);
    return op_add(g, op_adjoint(g));
}

} // namespace gramops

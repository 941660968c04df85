#include "gramops/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace gramops {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Convergence threshold for relative off-diagonal mass. Scales mildly with the
// problem size because inner products accumulate rounding over max(m,k) terms.
double jacobi_threshold(std::size_t m, std::size_t k) {
    return 32.0 * kEps * std::sqrt(static_cast<double>(std::max(m, k)));
}

struct Rotation {
    double c;
    double s;
    cx phase; // e^{-i arg(gamma)}
};

// Unitary 2x2 that diagonalizes [[app, gamma], [conj(gamma), aqq]].
Rotation make_rotation(double app, double aqq, cx gamma) {
    const double r = std::abs(gamma);
    Rotation rot;
    rot.phase = std::conj(gamma) / r;
    const double zeta = (aqq - app) / (2.0 * r);
    const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
    rot.c = 1.0 / std::sqrt(1.0 + t * t);
    rot.s = rot.c * t;
    return rot;
}

// Applies [cols p,q] <- [cols p,q] * J in place on a row-major matrix.
void rotate_columns(ComplexMatrix& a, std::size_t p, std::size_t q, const Rotation& rot) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const cx ap = a(i, p);
        const cx aq = rot.phase * a(i, q);
        a(i, p) = rot.c * ap - rot.s * aq;
        a(i, q) = rot.s * ap + rot.c * aq;
    }
}

SvdFactors svd_tall(const ComplexMatrix& m, std::size_t max_sweeps) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(cols);
    const double conv = jacobi_threshold(rows, cols);

    // Columns whose mass is pure rounding residue never orthogonalize in a
    // relative sense; below this floor a column is deflated from the pair
    // loop and its left singular vector is filled in by completion.
    double col_scale = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i)
            s += std::norm(a(i, j));
        col_scale = std::max(col_scale, s);
    }
    const double dead_limit =
        8.0 * kEps * static_cast<double>(std::max(rows, cols)) * std::sqrt(col_scale);
    const double dead_floor = dead_limit * dead_limit;

    bool converged = cols < 2;
    for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double app = 0.0, aqq = 0.0;
                cx apq(0.0, 0.0);
                for (std::size_t i = 0; i < rows; ++i) {
                    app += std::norm(a(i, p));
                    aqq += std::norm(a(i, q));
                    apq += std::conj(a(i, p)) * a(i, q);
                }
                if (app <= dead_floor || aqq <= dead_floor)
                    continue;
                if (std::abs(apq) <= conv * std::sqrt(app * aqq))
                    continue;
                const Rotation rot = make_rotation(app, aqq, apq);
                rotate_columns(a, p, q, rot);
                rotate_columns(v, p, q, rot);
                rotated = true;
            }
        }
        converged = !rotated;
    }
    if (!converged)
        throw NonConvergence("svd: column orthogonalization did not converge in " +
                             std::to_string(max_sweeps) + " sweeps");

    std::vector<double> sigma(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i)
            s += std::norm(a(i, j));
        sigma[j] = std::sqrt(s);
    }

    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdFactors f;
    f.singulars.resize(cols);
    f.u = ComplexMatrix(rows, cols);
    f.v = ComplexMatrix(cols, cols);
    std::size_t live = 0; // columns with a trustworthy direction form a prefix
    for (std::size_t j = 0; j < cols; ++j) {
        const std::size_t src = order[j];
        f.singulars[j] = sigma[src];
        for (std::size_t i = 0; i < cols; ++i)
            f.v(i, j) = v(i, src);
        if (sigma[src] > dead_limit) {
            const double inv = 1.0 / sigma[src];
            for (std::size_t i = 0; i < rows; ++i)
                f.u(i, j) = a(i, src) * inv;
            live = j + 1;
        }
    }
    if (live < cols) {
        ComplexMatrix partial(rows, live);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < live; ++j)
                partial(i, j) = f.u(i, j);
        ComplexMatrix fill = complete_orthonormal(partial);
        for (std::size_t j = live; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i)
                f.u(i, j) = fill(i, j - live);
    }
    return f;
}

double off_diag_mass(const ComplexMatrix& h) {
    double s = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (i != j)
                s += std::norm(h(i, j));
    return std::sqrt(s);
}

// Exact power-of-two rescale. Squared column norms and their products must
// stay inside the double range for the rotation formulas; scaling by 2^-e is
// bit-neutral for well-scaled inputs and repairs extreme ones.
ComplexMatrix scaled_by_exp(const ComplexMatrix& m, int e) {
    if (e == 0)
        return m;
    ComplexMatrix work = m;
    for (cx& z : work.data())
        z = cx(std::ldexp(z.real(), -e), std::ldexp(z.imag(), -e));
    return work;
}

int scaling_exponent(const ComplexMatrix& m) {
    const double scale = max_abs(m);
    return scale > 0.0 ? std::ilogb(scale) : 0;
}

} // namespace

SvdFactors svd(const ComplexMatrix& m, std::size_t max_sweeps) {
    if (m.rows() == 0 || m.cols() == 0)
        throw DimMismatch("svd: matrix must be nonempty");
    if (max_sweeps == 0)
        throw std::invalid_argument("svd: max_sweeps must be positive");
    if (!is_finite(m))
        throw std::invalid_argument("svd: matrix has non-finite entries");

    const int e = scaling_exponent(m);
    const ComplexMatrix work = scaled_by_exp(m, e);
    SvdFactors f;
    if (work.rows() >= work.cols()) {
        f = svd_tall(work, max_sweeps);
    } else {
        SvdFactors t = svd_tall(adjoint(work), max_sweeps);
        f = SvdFactors{std::move(t.v), std::move(t.singulars), std::move(t.u)};
    }
    if (e != 0)
        for (double& s : f.singulars)
            s = std::ldexp(s, e);
    return f;
}

std::size_t rank_from_singulars(const std::vector<double>& singulars, double rel_tol) {
    if (rel_tol <= 0.0)
        throw std::invalid_argument("rank_from_singulars: rel_tol must be positive");
    if (singulars.empty() || singulars.front() == 0.0)
        return 0;
    const double cutoff = rel_tol * singulars.front();
    std::size_t r = 0;
    while (r < singulars.size() && singulars[r] > cutoff)
        ++r;
    return r;
}

double default_rank_tol(std::size_t rows, std::size_t cols) {
    return 1e-10 * static_cast<double>(std::max(rows, cols));
}

ComplexMatrix pinv_from_svd(const SvdFactors& f, std::size_t rank) {
    const std::size_t m = f.u.rows();
    const std::size_t k = f.v.rows();
    ComplexMatrix p(k, m);
    for (std::size_t l = 0; l < rank; ++l) {
        const double inv = 1.0 / f.singulars[l];
        for (std::size_t j = 0; j < k; ++j) {
            const cx vj = f.v(j, l) * inv;
            for (std::size_t i = 0; i < m; ++i)
                p(j, i) += vj * std::conj(f.u(i, l));
        }
    }
    return p;
}

ComplexMatrix pinv_svd(const ComplexMatrix& m, double rel_tol) {
    SvdFactors f = svd(m);
    return pinv_from_svd(f, rank_from_singulars(f.singulars, rel_tol));
}

double spectral_norm(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0)
        return 0.0;
    if (m.rows() == 1 && m.cols() == 1)
        return std::abs(m(0, 0));
    if (max_abs(m) == 0.0)
        return 0.0;
    SvdFactors f = svd(m);
    return f.singulars.empty() ? 0.0 : f.singulars.front();
}

HermEig herm_eig(const ComplexMatrix& m, std::size_t max_sweeps) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimMismatch("herm_eig: matrix must be square and nonempty");
    if (max_sweeps == 0)
        throw std::invalid_argument("herm_eig: max_sweeps must be positive");
    if (!is_finite(m))
        throw std::invalid_argument("herm_eig: matrix has non-finite entries");

    const int exp2 = scaling_exponent(m);
    const ComplexMatrix scaled = scaled_by_exp(m, exp2);
    const double nm = fro_norm(scaled);
    if (fro_norm(mat_sub(scaled, adjoint(scaled))) > 1e-10 * nm)
        throw NotHermitian("herm_eig: matrix is not Hermitian within tolerance");

    const std::size_t n = m.rows();
    // Symmetrize to remove the tolerated skew part before iterating.
    ComplexMatrix h = mat_scale(mat_add(scaled, adjoint(scaled)), cx(0.5, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        h(i, i) = cx(h(i, i).real(), 0.0);
    ComplexMatrix w = ComplexMatrix::identity(n);

    const double rot_tol = jacobi_threshold(n, n) * std::max(nm, std::numeric_limits<double>::min());
    bool converged = n < 2 || off_diag_mass(h) == 0.0;
    for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cx hpq = h(p, q);
                if (std::abs(hpq) <= rot_tol)
                    continue;
                const Rotation rot = make_rotation(h(p, p).real(), h(q, q).real(), hpq);
                rotate_columns(h, p, q, rot);
                // Row update with J*: row p <- c*row_p - s*conj(phase)... mirrored phases.
                for (std::size_t i = 0; i < n; ++i) {
                    const cx rp = h(p, i);
                    const cx rq = std::conj(rot.phase) * h(q, i);
                    h(p, i) = rot.c * rp - rot.s * rq;
                    h(q, i) = rot.s * rp + rot.c * rq;
                }
                h(p, q) = cx(0.0, 0.0);
                h(q, p) = cx(0.0, 0.0);
                h(p, p) = cx(h(p, p).real(), 0.0);
                h(q, q) = cx(h(q, q).real(), 0.0);
                rotate_columns(w, p, q, rot);
                rotated = true;
            }
        }
        converged = !rotated;
    }
    if (!converged)
        throw NonConvergence("herm_eig: off-diagonal reduction did not converge in " +
                             std::to_string(max_sweeps) + " sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return h(x, x).real() < h(y, y).real();
    });

    HermEig e;
    e.eigenvalues.resize(n);
    e.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        e.eigenvalues[j] = std::ldexp(h(order[j], order[j]).real(), exp2);
        for (std::size_t i = 0; i < n; ++i)
            e.vectors(i, j) = w(i, order[j]);
    }
    return e;
}

namespace {

ComplexMatrix psd_spectral_map(const ComplexMatrix& m, bool invert) {
    HermEig e = herm_eig(m);
    double scale = 0.0;
    for (double lam : e.eigenvalues)
        scale = std::max(scale, std::abs(lam));
    const double floor = -1e-10 * scale;
    const std::size_t n = m.rows();
    ComplexMatrix r(n, n);
    for (std::size_t l = 0; l < n; ++l) {
        double lam = e.eigenvalues[l];
        if (lam < floor)
            throw NotPositive("psd spectral map: eigenvalue " + std::to_string(lam) +
                              " below the positivity floor");
        lam = std::max(lam, 0.0);
        double f;
        if (invert)
            f = lam > 0.0 ? 1.0 / std::sqrt(lam) : 0.0;
        else
            f = std::sqrt(lam);
        if (f == 0.0)
            continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cx wi = e.vectors(i, l) * f;
            for (std::size_t j = 0; j < n; ++j)
                r(i, j) += wi * std::conj(e.vectors(j, l));
        }
    }
    // Clean Hermitian drift from the accumulation.
    ComplexMatrix sym = mat_scale(mat_add(r, adjoint(r)), cx(0.5, 0.0));
    return sym;
}

} // namespace

ComplexMatrix psd_sqrt(const ComplexMatrix& m) { return psd_spectral_map(m, false); }

ComplexMatrix psd_inv_sqrt(const ComplexMatrix& m) { return psd_spectral_map(m, true); }

ComplexMatrix min_norm_lss(const ComplexMatrix& m, const ComplexMatrix& rhs, double rel_tol) {
    if (m.rows() != rhs.rows())
        throw DimMismatch("min_norm_lss: rhs row count differs from matrix rows");
    return mat_mul(pinv_svd(m, rel_tol), rhs);
}

ComplexMatrix null_space_basis(const ComplexMatrix& m, double rel_tol) {
    SvdFactors f = svd(m);
    const std::size_t rank = rank_from_singulars(f.singulars, rel_tol);
    const std::size_t k = m.cols();
    const std::size_t kept = f.v.cols();
    ComplexMatrix basis(k, k - rank);
    for (std::size_t l = rank; l < kept; ++l)
        for (std::size_t i = 0; i < k; ++i)
            basis(i, l - rank) = f.v(i, l);
    if (kept < k) {
        ComplexMatrix fill = complete_orthonormal(f.v);
        for (std::size_t l = 0; l < k - kept; ++l)
            for (std::size_t i = 0; i < k; ++i)
                basis(i, kept - rank + l) = fill(i, l);
    }
    return basis;
}

ComplexMatrix complete_orthonormal(const ComplexMatrix& q) {
    const std::size_t n = q.rows();
    const std::size_t r = q.cols();
    if (r > n)
        throw DimMismatch("complete_orthonormal: more columns than rows");
    ComplexMatrix out(n, n - r);
    std::vector<std::vector<cx>> cols;
    cols.reserve(n);
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<cx> c(n);
        for (std::size_t i = 0; i < n; ++i)
            c[i] = q(i, j);
        cols.push_back(std::move(c));
    }

    auto project_out = [&](std::vector<cx>& w) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& c : cols) {
                cx dot(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i)
                    dot += std::conj(c[i]) * w[i];
                for (std::size_t i = 0; i < n; ++i)
                    w[i] -= dot * c[i];
            }
        }
    };

    std::vector<bool> used(n, false);
    for (std::size_t added = 0; added < n - r; ++added) {
        double best_norm = -1.0;
        std::vector<cx> best;
        std::size_t best_idx = 0;
        for (std::size_t cand = 0; cand < n; ++cand) {
            if (used[cand])
                continue;
            std::vector<cx> w(n, cx(0.0, 0.0));
            w[cand] = cx(1.0, 0.0);
            project_out(w);
            double s = 0.0;
            for (const auto& z : w)
                s += std::norm(z);
            if (s > best_norm) {
                best_norm = s;
                best = std::move(w);
                best_idx = cand;
            }
        }
        used[best_idx] = true;
        const double inv = 1.0 / std::sqrt(best_norm);
        for (auto& z : best)
            z *= inv;
        for (std::size_t i = 0; i < n; ++i)
            out(i, added) = best[i];
        cols.push_back(std::move(best));
    }
    return out;
}

} // namespace gramops

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gramops/module.hpp"
#include "gramops/random.hpp"

using namespace gramops;

namespace {

double alg_dist(const AlgElem& a, const AlgElem& b) { return alg_norm(alg_sub(a, b)); }

} // namespace

TEST_CASE("shape validation") {
    CHECK_THROWS_AS(AlgebraShape(std::vector<std::size_t>{}), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraShape({2, 0}), std::invalid_argument);
    CHECK(AlgebraShape({2, 3}).max_block_dim() == 3);
}

TEST_CASE("star is an involution and mul has a unit") {
    const AlgebraShape shape({2, 3});
    Rng rng(21);
    const AlgElem a = alg_random(shape, rng);
    CHECK(alg_dist(alg_star(alg_star(a)), a) == 0.0);
    CHECK(alg_dist(alg_mul(AlgElem::identity(shape), a), a) == 0.0);
}

TEST_CASE("star reverses products blockwise") {
    const AlgebraShape shape({1, 2, 3});
    Rng rng(22);
    for (int trial = 0; trial < 10; ++trial) {
        const AlgElem a = alg_random(shape, rng);
        const AlgElem b = alg_random(shape, rng);
        const double res = alg_dist(alg_star(alg_mul(a, b)), alg_mul(alg_star(b), alg_star(a)));
        CHECK(res <= 1e-13 * alg_norm(a) * alg_norm(b));
    }
}

TEST_CASE("mismatched shapes are rejected") {
    const AlgElem a{AlgebraShape({2})};
    const AlgElem b{AlgebraShape({3})};
    CHECK_THROWS_AS(alg_add(a, b), ShapeMismatch);
    CHECK_THROWS_AS(alg_mul(a, b), ShapeMismatch);
}

TEST_CASE("norm of unit and zero") {
    const AlgebraShape shape({2, 3});
    CHECK(alg_norm(AlgElem::identity(shape)) == doctest::Approx(1.0));
    CHECK(alg_norm(AlgElem(shape)) == 0.0);
}

TEST_CASE("the C*-identity holds") {
    const AlgebraShape shape({2, 3});
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const AlgElem a = alg_random(shape, rng);
        const double n = alg_norm(a);
        CHECK(std::abs(alg_norm(alg_mul(alg_star(a), a)) - n * n) <= 1e-9 * n * n);
    }
}

TEST_CASE("norm is submultiplicative") {
    const AlgebraShape shape({1, 3});
    Rng rng(24);
    for (int trial = 0; trial < 10; ++trial) {
        const AlgElem a = alg_random(shape, rng);
        const AlgElem b = alg_random(shape, rng);
        CHECK(alg_norm(alg_mul(a, b)) <= alg_norm(a) * alg_norm(b) + 1e-12);
    }
}

TEST_CASE("positivity") {
    const AlgebraShape shape({2, 2});
    CHECK(is_positive(AlgElem::identity(shape)));

    AlgElem neg{AlgebraShape({1})};
    neg.block(0)(0, 0) = cx(-1.0, 0.0);
    CHECK(!is_positive(neg));

    Rng rng(25);
    for (int trial = 0; trial < 10; ++trial) {
        const AlgElem a = alg_random(shape, rng);
        CHECK(is_positive(alg_mul(alg_star(a), a)));
        CHECK(!is_positive(alg_sub(a, alg_star(a)))); // skew part is never positive
    }
}

TEST_CASE("alg_random is deterministic in the seed") {
    const AlgebraShape shape({2, 3});
    CHECK(alg_dist(alg_random(shape, 42), alg_random(shape, 42)) == 0.0);
    CHECK(alg_dist(alg_random(shape, 42), alg_random(shape, 43)) > 1e-3);
}

TEST_CASE("entries have unit second moment") {
    const AlgebraShape shape({2});
    Rng rng(26);
    double acc = 0.0;
    std::size_t n = 0;
    for (int draw = 0; draw < 2500; ++draw) {
        const AlgElem a = alg_random(shape, rng);
        for (const cx& z : a.block(0).data()) {
            acc += std::norm(z);
            ++n;
        }
    }
    const double mean = acc / static_cast<double>(n);
    CHECK(mean >= 0.9);
    CHECK(mean <= 1.1);
}

// --- module layer ---------------------------------------------------------------

TEST_CASE("inner product basics") {
    const AlgebraShape shape({2});
    const ModuleVector e = ModuleVector::basis_vector(shape, 1, 0);
    CHECK(alg_dist(inner(e, e), AlgElem::identity(shape)) == 0.0);

    const ModuleVector zero(shape, 3);
    Rng rng(27);
    const ModuleVector x = random_module_vector(shape, 3, rng);
    CHECK(alg_norm(inner(x, zero)) == 0.0);
}

TEST_CASE("inner product is module-linear in the second slot") {
    const AlgebraShape shape({2, 3});
    Rng rng(28);
    for (int trial = 0; trial < 10; ++trial) {
        const ModuleVector x = random_module_vector(shape, 2, rng);
        const ModuleVector y = random_module_vector(shape, 2, rng);
        const AlgElem a = alg_random(shape, rng);
        const double res = alg_dist(inner(x, right_action(y, a)), alg_mul(inner(x, y), a));
        CHECK(res <= 1e-12 * (1.0 + vec_norm(x) * vec_norm(y) * alg_norm(a)));
    }
}

TEST_CASE("inner product is Hermitian and positive") {
    const AlgebraShape shape({1, 2});
    Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const ModuleVector x = random_module_vector(shape, 3, rng);
        const ModuleVector y = random_module_vector(shape, 3, rng);
        CHECK(alg_dist(alg_star(inner(x, y)), inner(y, x)) <= 1e-12 * vec_norm(x) * vec_norm(y));
        CHECK(is_positive(inner(x, x)));
    }
    const ModuleVector zero(shape, 3);
    CHECK(vec_norm(zero) <= 1e-12); // definiteness threshold
}

TEST_CASE("Cauchy-Schwarz holds") {
    const AlgebraShape shape({2, 2});
    Rng rng(30);
    for (int trial = 0; trial < 10; ++trial) {
        const ModuleVector x = random_module_vector(shape, 2, rng);
        const ModuleVector y = random_module_vector(shape, 2, rng);
        CHECK(alg_norm(inner(x, y)) <= vec_norm(x) * vec_norm(y) + 1e-10);
    }
}

TEST_CASE("vector norm basics") {
    const AlgebraShape shape({2, 3});
    CHECK(vec_norm(ModuleVector::basis_vector(shape, 4, 0)) == doctest::Approx(1.0));
    CHECK(vec_norm(ModuleVector(shape, 2)) == 0.0);

    Rng rng(31);
    const ModuleVector x = random_module_vector(shape, 2, rng);
    const double c = 1.75;
    const ModuleVector scaled = right_action(x, alg_scale(AlgElem::identity(shape), cx(c, 0.0)));
    CHECK(std::abs(vec_norm(scaled) - c * vec_norm(x)) <= 1e-10 * vec_norm(x));
}

TEST_CASE("right action unit, zero, associativity") {
    const AlgebraShape shape({2});
    Rng rng(32);
    const ModuleVector x = random_module_vector(shape, 3, rng);
    CHECK(vec_norm(vec_sub(right_action(x, AlgElem::identity(shape)), x)) == 0.0);
    CHECK(vec_norm(right_action(x, AlgElem(shape))) == 0.0);

    const AlgElem a = alg_random(shape, rng);
    const AlgElem b = alg_random(shape, rng);
    const ModuleVector lhs = right_action(right_action(x, a), b);
    const ModuleVector rhs = right_action(x, alg_mul(a, b));
    CHECK(vec_norm(vec_sub(lhs, rhs)) <= 1e-12 * (1.0 + vec_norm(x) * alg_norm(a) * alg_norm(b)));
}

TEST_CASE("module shape mismatches are rejected") {
    const ModuleVector x{AlgebraShape({2}), 2};
    const ModuleVector y{AlgebraShape({3}), 2};
    CHECK_THROWS_AS(inner(x, y), ShapeMismatch);
    CHECK_THROWS_AS(right_action(x, AlgElem{AlgebraShape({3})}), ShapeMismatch);
}

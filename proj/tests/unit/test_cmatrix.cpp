#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "drmsim/cmatrix.hpp"

using namespace drmsim;

namespace {

CMatrix random_matrix(std::mt19937_64& gen, std::size_t r, std::size_t c) {
    std::normal_distribution<double> g;
    CMatrix m(r, c);
    for (auto& v : m.entries()) v = {g(gen), g(gen)};
    return m;
}

// Gram-Schmidt on a random complex matrix.
CMatrix random_unitary(std::mt19937_64& gen, std::size_t n) {
    CMatrix a = random_matrix(gen, n, n);
    for (std::size_t j = 0; j < n; ++j) {
        auto col = a.col(j);
        for (std::size_t k = 0; k < j; ++k) {
            const auto q = a.col(k);
            cplx dot{};
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(q[i]) * col[i];
            for (std::size_t i = 0; i < n; ++i) col[i] -= dot * q[i];
        }
        double norm = 0.0;
        for (auto& v : col) norm += std::norm(v);
        for (auto& v : col) v /= std::sqrt(norm);
        a.set_col(j, col);
    }
    return a;
}

}  // namespace

TEST(CMatrix, ConstructionChecksShapeAndFiniteness) {
    EXPECT_THROW(CMatrix(2, 2, std::vector<cplx>(3)), DimensionError);
    EXPECT_THROW(CMatrix(1, 1, {cplx{std::numeric_limits<double>::quiet_NaN(), 0}}), std::invalid_argument);
    EXPECT_THROW((CMatrix{{1, 2}, {3}}), DimensionError);
    const CMatrix m{{1, 2}, {3, 4}};
    EXPECT_EQ(m.rows(), 2u);
    EXPECT_EQ(m(1, 0), cplx(3));
}

TEST(CMatrix, IdentityTimesAIsA) {
    std::mt19937_64 gen(1);
    const CMatrix a = random_matrix(gen, 2, 3);
    EXPECT_EQ(matmul(CMatrix::identity(2), a), a);
}

TEST(CMatrix, PermutationShiftsDiagonal) {
    const cplx s1{0.3, -1.1}, s2{2.0, 0.5};
    const CMatrix p{{0, 1}, {1, 0}};
    const std::vector<cplx> d{s1, s2};
    const CMatrix expect{{0, s2}, {s1, 0}};
    EXPECT_EQ(matmul(p, CMatrix::diagonal(d)), expect);
}

TEST(CMatrix, MatmulMatchesNaiveOracle) {
    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 50; ++trial) {
        const CMatrix a = random_matrix(gen, 3, 3), b = random_matrix(gen, 3, 3);
        const CMatrix c = matmul(a, b);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                double re = 0, im = 0;
                for (std::size_t k = 0; k < 3; ++k) {
                    re += a(i, k).real() * b(k, j).real() - a(i, k).imag() * b(k, j).imag();
                    im += a(i, k).real() * b(k, j).imag() + a(i, k).imag() * b(k, j).real();
                }
                EXPECT_NEAR(c(i, j).real(), re, 1e-12);
                EXPECT_NEAR(c(i, j).imag(), im, 1e-12);
            }
    }
}

TEST(CMatrix, MatmulShapeMismatchThrows) {
    EXPECT_THROW(matmul(CMatrix(2, 3), CMatrix(2, 3)), DimensionError);
    EXPECT_EQ(matmul(CMatrix(2, 3), CMatrix(3, 4)).cols(), 4u);
}

TEST(CMatrix, MatmulIsAssociative) {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        const CMatrix a = random_matrix(gen, 3, 4), b = random_matrix(gen, 4, 2), c = random_matrix(gen, 2, 3);
        EXPECT_TRUE(approx_eq(matmul(matmul(a, b), c), matmul(a, matmul(b, c)), 1e-10));
    }
}

TEST(CMatrix, AdjointExamples) {
    const cplx j{0, 1};
    EXPECT_EQ(adjoint(CMatrix{{j, 0}, {0, -j}}), (CMatrix{{-j, 0}, {0, j}}));

    const CMatrix p{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
    EXPECT_EQ(adjoint(p), transpose(p));
    EXPECT_EQ(matmul(p, adjoint(p)), CMatrix::identity(3));

    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix a = random_matrix(gen, 3, 5);
        EXPECT_EQ(adjoint(adjoint(a)), a);
    }
}

TEST(CMatrix, TraceRe) {
    EXPECT_DOUBLE_EQ(trace_re(CMatrix::identity(4)), 4.0);
    const cplx j{0, 1};
    EXPECT_DOUBLE_EQ(trace_re(CMatrix{{j, 0}, {0, -j}}), 0.0);
    EXPECT_THROW(trace_re(CMatrix(2, 3)), DimensionError);
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix a = random_matrix(gen, 4, 4);
        EXPECT_NEAR(trace_re(a), trace_re(adjoint(a)), 1e-12);
    }
}

TEST(CMatrix, ReTraceProductMatchesProduct) {
    std::mt19937_64 gen(6);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix a = random_matrix(gen, 3, 5), b = random_matrix(gen, 5, 3);
        EXPECT_NEAR(re_trace_product(a, b), trace_re(matmul(a, b)), 1e-10);
    }
    EXPECT_THROW(re_trace_product(CMatrix(2, 3), CMatrix(2, 3)), DimensionError);
}

TEST(CMatrix, FrobNormSq) {
    EXPECT_DOUBLE_EQ(frob_norm_sq(CMatrix::identity(3)), 3.0);
    EXPECT_DOUBLE_EQ(frob_norm_sq(CMatrix{{1, -1}, {1, 1}}), 4.0);
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix a = random_matrix(gen, 3, 4);
        EXPECT_NEAR(frob_norm_sq(a), trace_re(matmul(adjoint(a), a)), 1e-10);
    }
}

TEST(CMatrix, PermutationRoundTripLeavesAUnchanged) {
    std::mt19937_64 gen(8);
    std::vector<std::size_t> perm{0, 1, 2, 3};
    do {
        CMatrix p(4, 4);
        for (std::size_t r = 0; r < 4; ++r) p(r, perm[r]) = 1.0;
        EXPECT_TRUE(is_permutation(p));
        const CMatrix a = random_matrix(gen, 4, 2);
        EXPECT_TRUE(approx_eq(matmul(p, matmul(adjoint(p), a)), a, 1e-12));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(CMatrix, UnitaryPredicateBothDirections) {
    std::mt19937_64 gen(9);
    for (std::size_t n : {2u, 3u, 4u, 8u}) {
        for (int trial = 0; trial < 10; ++trial) {
            const CMatrix u = random_unitary(gen, n);
            const double residual = frob_norm_sq(matmul(u, adjoint(u)) - CMatrix::identity(n));
            EXPECT_TRUE(residual < 1e-10 * n);
            EXPECT_TRUE(is_unitary(u, 1e-10));

            const CMatrix scaled = u * 1.01;
            EXPECT_FALSE(is_unitary(scaled, 1e-10));
            EXPECT_FALSE(frob_norm_sq(matmul(scaled, adjoint(scaled)) - CMatrix::identity(n)) < 1e-10 * n);

            CMatrix bumped = u;
            bumped(0, 0) += 0.01;
            EXPECT_FALSE(is_unitary(bumped, 1e-10));
        }
    }
    EXPECT_FALSE(is_unitary(CMatrix(2, 3)));
}

TEST(CMatrix, StructurePredicates) {
    const cplx j{0, 1};
    EXPECT_TRUE(is_diagonal(CMatrix{{j, 0}, {0, 2}}));
    EXPECT_FALSE(is_diagonal(CMatrix{{1, 1e-3}, {0, 1}}));
    EXPECT_TRUE(is_permutation(CMatrix{{0, 1}, {1, 0}}));
    EXPECT_FALSE(is_permutation(CMatrix{{0, -1}, {1, 0}}));
    EXPECT_FALSE(is_permutation(CMatrix{{1, 1}, {0, 0}}));
    EXPECT_TRUE(is_monomial_unit(CMatrix{{0, -1}, {j, 0}}));
    EXPECT_FALSE(is_monomial_unit(CMatrix{{0, 0.5}, {1, 0}}));
    EXPECT_FALSE(is_monomial_unit(CMatrix{{1, 1}, {0, 1}}));
}

TEST(CMatrix, RootOfUnityExactOnAxes) {
    EXPECT_EQ(root_of_unity(0, 8), cplx(1, 0));
    EXPECT_EQ(root_of_unity(2, 8), cplx(0, 1));
    EXPECT_EQ(root_of_unity(4, 8), cplx(-1, 0));
    EXPECT_EQ(root_of_unity(-2, 8), cplx(0, -1));
    EXPECT_EQ(root_of_unity(1, 2), cplx(-1, 0));
    const cplx w = root_of_unity(1, 8);
    EXPECT_NEAR(w.real(), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(w.imag(), std::sqrt(0.5), 1e-15);
    EXPECT_THROW(root_of_unity(1, 0), std::invalid_argument);
}

TEST(CMatrix, BlockAssembly) {
    const std::vector<CMatrix> blocks{CMatrix{{1, 2}}, CMatrix{{3}, {4}}};
    const CMatrix bd = block_diagonal(blocks);
    EXPECT_EQ(bd, (CMatrix{{1, 2, 0}, {0, 0, 3}, {0, 0, 4}}));
    const std::vector<CMatrix> cols{CMatrix{{1}, {2}}, CMatrix{{3, 4}, {5, 6}}};
    EXPECT_EQ(hstack(cols), (CMatrix{{1, 3, 4}, {2, 5, 6}}));
    const std::vector<CMatrix> bad{CMatrix(1, 1), CMatrix(2, 1)};
    EXPECT_THROW(hstack(bad), DimensionError);
}

TEST(CMatrix, ApproxEqTolerance) {
    const CMatrix a{{1, 2}};
    EXPECT_TRUE(approx_eq(a, CMatrix{{1 + 1e-10, 2}}));
    EXPECT_FALSE(approx_eq(a, CMatrix{{1 + 1e-6, 2}}));
    EXPECT_FALSE(approx_eq(a, CMatrix{{1}, {2}}));
}

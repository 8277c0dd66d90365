#include <gtest/gtest.h>

#include "support.hpp"

using namespace wickpick;
using namespace testsupport;

namespace
{

const TruncationContext kDesk{3, 4};

RingElement z(std::uint32_t var)
{
    return RingElement::variable(kDesk, var);
}

RingMatrix diag(std::vector<RingElement> d)
{
    return RingMatrix::diagonal(d);
}

} // namespace

TEST(RingMatrix, MatMulExamples)
{
    Rng rng(21);
    const auto b = random_matrix(rng, kDesk, 3, 2, 1.0);
    EXPECT_TRUE(approx_equal(mat_mul(RingMatrix::identity(kDesk, 3), b), b));
    EXPECT_TRUE(approx_equal(diag({z(1), z(2)}) * diag({z(2), z(1)}),
                             diag({z(1) * z(2), z(1) * z(2)})));
    EXPECT_THROW(mat_mul(b, b), Error);
    for (int t = 0; t < 50; ++t)
    {
        const auto x = random_matrix(rng, kDesk, 2, 3, 1.0);
        const auto y = random_matrix(rng, kDesk, 3, 4, 1.0);
        const ComplexMatrix expect = eval_origin(x) * eval_origin(y);
        EXPECT_LE((eval_origin(x * y) - expect).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(RingMatrix, Adjoint)
{
    const auto id = RingMatrix::identity(kDesk, 3);
    EXPECT_TRUE(approx_equal(adjoint(id), id));
    const Complex i{0.0, 1.0};
    EXPECT_TRUE(approx_equal(adjoint(RingMatrix::scalar(i * z(1))),
                             RingMatrix::scalar(-i * z(1))));
    Rng rng(22);
    for (int t = 0; t < 50; ++t)
    {
        const auto a = random_matrix(rng, kDesk, 2, 3, 1.0);
        const auto b = random_matrix(rng, kDesk, 3, 2, 1.0);
        EXPECT_LE(max_dual_norm_diff(adjoint(a * b), adjoint(b) * adjoint(a), 1), 1e-12);
        EXPECT_LE((eval_origin(adjoint(a)) - eval_origin(a).adjoint()).cwiseAbs().maxCoeff(),
                  0.0);
    }
}

TEST(RingMatrix, Invert)
{
    const TruncationContext d2{1, 2};
    const auto z1 = RingElement::variable(d2, 1);
    const RingElement one(d2, 1.0);
    const auto a = RingMatrix::diagonal(std::vector{RingElement(d2, 2.0), one + z1});
    const auto inv = mat_invert(a);
    EXPECT_TRUE(approx_equal(
        inv, RingMatrix::diagonal(std::vector{RingElement(d2, 0.5), one - z1 + z1 * z1})));
    EXPECT_TRUE(approx_equal(a * inv, RingMatrix::identity(d2, 2)));
    EXPECT_TRUE(approx_equal(mat_invert(RingMatrix::identity(kDesk, 3)),
                             RingMatrix::identity(kDesk, 3)));
    EXPECT_THROW(mat_invert(diag({z(1), RingElement(kDesk, 1.0)})), Error);

    Rng rng(23);
    for (int t = 0; t < 50; ++t)
    {
        const auto m = RingMatrix::identity(kDesk, 3) + random_matrix(rng, kDesk, 3, 3, 0.3);
        const auto mi = mat_invert(m);
        EXPECT_LE(max_dual_norm_diff(m * mi, RingMatrix::identity(kDesk, 3), 4), 1e-9);
        EXPECT_LE(max_dual_norm_diff(mi * m, RingMatrix::identity(kDesk, 3), 4), 1e-9);
    }
}

TEST(RingMatrix, DeterminantAndAdjugate)
{
    const RingElement r1 = 2.0 + z(1);
    const RingElement r2 = 3.0 * z(2) - 1.0;
    EXPECT_TRUE(approx_equal(mat_det(diag({r1, r2})), r1 * r2));
    const auto id = RingMatrix::identity(kDesk, 3);
    EXPECT_TRUE(approx_equal(mat_det(id), RingElement(kDesk, 1.0)));
    EXPECT_TRUE(approx_equal(mat_adjugate(id), id));

    Rng rng(24);
    for (std::size_t n : {1u, 2u, 3u})
    {
        for (int t = 0; t < 30; ++t)
        {
            const auto a = random_matrix(rng, kDesk, n, n, 1.0);
            const auto det = mat_det(a);
            const auto adj = mat_adjugate(a);
            EXPECT_LE(max_abs_diff(det, cofactor_det(a)), 1e-11);
            EXPECT_LE(max_dual_norm_diff(adj, cofactor_adjugate(a), 1), 1e-11);
            EXPECT_LE(max_dual_norm_diff(a * adj, det * RingMatrix::identity(kDesk, n), 1),
                      1e-11);
            EXPECT_LE(std::abs(det.constant_term() - eval_origin(a).determinant()), 1e-12);
        }
    }
}

TEST(RingMatrix, ApplyEntire)
{
    const auto zero = RingMatrix(kDesk, 2, 2);
    const auto c = taylor_exp(5);
    EXPECT_TRUE(approx_equal(mat_apply_entire(c, zero), RingMatrix::identity(kDesk, 2)));
    EXPECT_THROW(mat_apply_entire(c, RingMatrix::identity(kDesk, 2)), Error);

    Rng rng(25);
    for (int t = 0; t < 50; ++t)
    {
        RingMatrix e(kDesk, 3, 3);
        for (std::size_t i = 0; i < 3; ++i)
        {
            for (std::size_t j = 0; j < 3; ++j)
            {
                e(i, j) = random_element(rng, kDesk, 0.3, false);
            }
        }
        const auto minus_e = Complex(-1.0) * e;
        const auto id = RingMatrix::identity(kDesk, 3);
        EXPECT_LE(max_dual_norm_diff(mat_apply_entire(c, e) * mat_apply_entire(c, minus_e), id, 1),
                  1e-12);
        const auto s = mat_apply_entire(taylor_sqrt1p(5), e);
        EXPECT_LE(max_dual_norm_diff(s * s, id + e, 1), 1e-12);
    }
}

TEST(RingMatrix, StrictPositiveFactorExamples)
{
    const auto id = RingMatrix::identity(kDesk, 2);
    EXPECT_TRUE(approx_equal(strict_positive_factor(id), id));

    const auto a = RingMatrix::scalar(2.0 + z(1));
    const auto g = strict_positive_factor(a);
    EXPECT_LE(max_dual_norm_diff(g * adjoint(g), a, 1), 1e-9);

    try
    {
        strict_positive_factor(RingMatrix::scalar(z(1)));
        FAIL() << "expected rejection";
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), ErrorCode::not_positive_definite);
    }
    const Complex i{0.0, 1.0};
    EXPECT_THROW(strict_positive_factor(RingMatrix::scalar(2.0 + i * z(1))), Error);
}

TEST(RingMatrix, StrictPositiveFactorDichotomy)
{
    Rng rng(26);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int accepted = 0;
    int rejected = 0;
    for (int t = 0; t < 100; ++t)
    {
        std::vector<double> spectrum{0.2 + u(rng), 0.2 + u(rng), 0.2 + u(rng)};
        const bool positive = t % 2 == 0;
        if (!positive)
        {
            spectrum[t % 3] = (t % 4 == 1) ? -0.3 * u(rng) : 0.0;
        }
        const auto a = random_hermitian(rng, kDesk, spectrum, 0.3);
        const double min_eig = min_eigenvalue_hermitian(eval_origin(a));
        try
        {
            const auto g = strict_positive_factor(a);
            EXPECT_GT(min_eig, kDefaultEpsPd);
            EXPECT_LE(max_dual_norm_diff(g * adjoint(g), a, 1), 1e-9);
            const ComplexMatrix g0 = eval_origin(g);
            EXPECT_GT(std::abs(g0.determinant()), 0.0);
            EXPECT_LE((g0 * g0.adjoint() - eval_origin(a)).cwiseAbs().maxCoeff(), 1e-10);
            ++accepted;
        }
        catch (const Error& e)
        {
            EXPECT_EQ(e.code(), ErrorCode::not_positive_definite);
            EXPECT_LE(min_eig, kDefaultEpsPd);
            ++rejected;
        }
    }
    EXPECT_EQ(accepted, 50);
    EXPECT_EQ(rejected, 50);
}

#include <gtest/gtest.h>

#include <wickpick/serialize.hpp>

#include "support.hpp"

using namespace wickpick;
using namespace testsupport;

namespace
{

const TruncationContext kDesk{3, 4};

RingElement c(Complex v, TruncationContext ctx = kDesk)
{
    return RingElement(ctx, v);
}

InterpolationProblem trivial_problem(TruncationContext ctx = kDesk)
{
    return {ctx, {c(0.0, ctx)}, {c(0.0, ctx)}};
}

std::vector<Complex> projected(const std::vector<RingElement>& v)
{
    std::vector<Complex> out;
    for (const auto& r : v)
    {
        out.push_back(r.constant_term());
    }
    return out;
}

} // namespace

TEST(Problem, Validation)
{
    EXPECT_NO_THROW(trivial_problem().validate());
    InterpolationProblem bad{kDesk, {c(0.2), c(0.2)}, {c(0.0), c(0.1)}};
    EXPECT_THROW(bad.validate(), Error);
    InterpolationProblem outside{kDesk, {c(1.0)}, {c(0.0)}};
    EXPECT_THROW(outside.validate(), Error);
    InterpolationProblem mismatch{kDesk, {c(0.1)}, {}};
    EXPECT_THROW(mismatch.validate(), Error);
}

TEST(Pick, Examples)
{
    EXPECT_TRUE(approx_equal(build_pick(trivial_problem()), RingMatrix::scalar(c(1.0))));
    const Complex beta{0.3, 0.4};
    const InterpolationProblem p{kDesk, {c(0.0)}, {c(beta)}};
    EXPECT_TRUE(approx_equal(build_pick(p), RingMatrix::scalar(c(1.0 - std::norm(beta)))));

    Rng rng(41);
    for (int t = 0; t < 50; ++t)
    {
        const auto prob = random_solvable_problem(rng, kDesk, 1 + t % 3);
        const auto pick = build_pick(prob);
        EXPECT_LE(max_dual_norm_diff(pick, adjoint(pick), 1), 1e-14);
        const ComplexMatrix expect = classical_pick(projected(prob.points), projected(prob.targets));
        EXPECT_LE((eval_origin(pick) - expect).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Data, Examples)
{
    const InterpolationProblem p{kDesk, {c(0.5), c(Complex{0.1, 0.2})}, {c(0.0), c(0.3)}};
    const auto data = build_data(p);
    EXPECT_TRUE(approx_equal(data.a(0, 0), c(0.5)));
    EXPECT_TRUE(approx_equal(data.a(1, 1), c(Complex{0.1, -0.2})));
    EXPECT_TRUE(approx_equal(data.c(0, 0), c(1.0)));
    EXPECT_TRUE(approx_equal(data.c(0, 1), c(1.0)));
    EXPECT_TRUE(approx_equal(data.j * data.j, RingMatrix::identity(kDesk, 2)));
}

TEST(Theta, TrivialProblem)
{
    const auto theta = build_theta(trivial_problem());
    for (const Complex l : {Complex{0.3, 0.1}, Complex{-0.7, 0.0}, Complex{0.0, 0.9}})
    {
        const ComplexMatrix t = eval_projected(theta.rational(), l);
        EXPECT_LE(std::abs(t(0, 0) - l), 1e-12);
        EXPECT_LE(std::abs(t(1, 1) - 1.0), 1e-12);
        EXPECT_LE(std::abs(t(0, 1)) + std::abs(t(1, 0)), 1e-12);
    }
    EXPECT_EQ(check_theta_identity(trivial_problem(), theta), 0.0);
}

TEST(Theta, MatchesClassicalFormula)
{
    Rng rng(42);
    for (int t = 0; t < 50; ++t)
    {
        const auto prob = random_solvable_problem(rng, kDesk, 1 + t % 3);
        const auto theta = build_theta(prob);
        const auto a = projected(prob.points);
        const auto b = projected(prob.targets);
        for (int s = 0; s < 5; ++s)
        {
            const Complex l = random_in_disk(rng, 0.9);
            const ComplexMatrix got = eval_origin(eval_rational_complex(theta.rational(), l));
            EXPECT_LE((got - classical_theta(a, b, l)).cwiseAbs().maxCoeff(), 1e-9);
        }
        // Theta(1) = I.
        const ComplexMatrix one = eval_projected(theta.rational(), 1.0);
        EXPECT_LE((one - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LE(check_theta_identity(prob, theta), 1e-8);
    }
}

TEST(Theta, ConstantPointProblems)
{
    Rng rng(43);
    for (int t = 0; t < 30; ++t)
    {
        const auto prob = random_solvable_problem(rng, kDesk, 1 + t % 3, 0.0);
        EXPECT_LE(check_theta_identity(prob, build_theta(prob)), 1e-9);
    }
}

TEST(Theta, JContractive)
{
    Rng rng(44);
    ComplexMatrix j = ComplexMatrix::Zero(2, 2);
    j(0, 0) = 1.0;
    j(1, 1) = -1.0;
    for (int t = 0; t < 30; ++t)
    {
        const auto prob = random_solvable_problem(rng, kDesk, 1 + t % 3);
        const auto cl = classical_solve(prob, {});
        for (int s = 0; s < 10; ++s)
        {
            const Complex l = random_in_disk(rng, 0.9);
            const ComplexMatrix th = eval_projected(cl.theta.rational(), l);
            EXPECT_GE(min_eigenvalue_hermitian(j - th * j * th.adjoint()), -1e-10);
        }
    }
}

TEST(Theta, SolvabilityGate)
{
    // |b| near 1 at two nearby nodes makes P(0) indefinite.
    const InterpolationProblem p{kDesk, {c(0.0), c(0.5)}, {c(0.9), c(-0.9)}};
    try
    {
        build_theta(p);
        FAIL() << "expected rejection";
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), ErrorCode::not_positive_definite);
    }
}

TEST(Lft, Examples)
{
    const auto theta = build_theta(trivial_problem());
    const Complex k{0.3, -0.4};
    const auto res = lft_apply(theta, SchurParameter::constant(c(k)));
    for (const Complex l : {Complex{0.2, 0.1}, Complex{-0.5, 0.5}})
    {
        EXPECT_LE(std::abs(eval_projected(res.f, l)(0, 0) - k * l), 1e-12);
    }
    const auto central = lft_apply(theta, SchurParameter::zero(kDesk));
    EXPECT_LE(std::abs(eval_projected(central.f, 0.4)(0, 0)), 1e-15);
    const auto rep = verify_solution(trivial_problem(), central);
    EXPECT_EQ(rep.max_residual, 0.0);
    EXPECT_TRUE(rep.pass());

    // Central solution is b d^{-1}.
    Rng rng(45);
    const auto prob = random_solvable_problem(rng, kDesk, 2);
    const auto th = build_theta(prob);
    const auto f0 = lft_apply(th, SchurParameter::zero(kDesk)).f;
    const Complex l{0.1, 0.3};
    const ComplexMatrix tm = eval_projected(th.rational(), l);
    EXPECT_LE(std::abs(eval_projected(f0, l)(0, 0) - tm(0, 1) / tm(1, 1)), 1e-12);

    EXPECT_THROW(SchurParameter::constant(c(1.0)), Error);
    EXPECT_THROW(SchurParameter(RingPoly::scalar({c(0.5), c(0.6)})), Error);
}

TEST(Lft, EndToEndAndProjection)
{
    Rng rng(46);
    for (int t = 0; t < 30; ++t)
    {
        const auto prob = random_solvable_problem(rng, kDesk, 1 + t % 3);
        const auto theta = build_theta(prob);
        const std::vector<RingPoly> params{
            RingPoly(kDesk, 1, 1),
            RingPoly::scalar({random_perturbation_of(rng, kDesk, random_in_disk(rng, 0.6), 0.2)}),
            RingPoly::scalar({random_perturbation_of(rng, kDesk, random_in_disk(rng, 0.4), 0.2),
                              random_perturbation_of(rng, kDesk, random_in_disk(rng, 0.4), 0.2)})};
        for (const auto& gp : params)
        {
            const SchurParameter g(gp);
            const auto lft = lft_apply(theta, g);
            const auto rep = verify_solution(prob, lft);
            EXPECT_TRUE(rep.pass()) << "trial " << t;
            EXPECT_LE(rep.max_residual, 1e-8);
            EXPECT_LE(rep.max_homogeneous_residual, 1e-8);

            const auto cl = classical_solve(prob, project_parameter(g));
            for (int s = 0; s < 8; ++s)
            {
                const Complex l = random_in_disk(rng, 0.9);
                EXPECT_LE(std::abs(eval_projected(lft.f, l)(0, 0) -
                                   eval_projected(cl.lft.f, l)(0, 0)),
                          1e-9);
            }
        }
    }
}

TEST(Lft, PerturbedSolutionFails)
{
    Rng rng(47);
    for (int t = 0; t < 20; ++t)
    {
        const auto prob = random_solvable_problem(rng, kDesk, 1 + t % 3);
        const auto theta = build_theta(prob);
        const auto lft = lft_apply(theta, SchurParameter::zero(kDesk));
        // f = b/d + 0.1, written over the common denominator.
        const RingPoly num = lft.f.num() + poly_scale(Complex(0.1), lft.f.den());
        const RingRational bad(num, lft.f.den());
        const auto rep = verify_solution(prob, bad);
        EXPECT_GT(rep.max_residual, 1e-3);
        EXPECT_FALSE(rep.pass());
        EXPECT_TRUE(verify_solution(prob, lft.f).pass());
    }
}

TEST(Lft, DistinctParametersGiveDistinctSolutions)
{
    Rng rng(48);
    for (int t = 0; t < 30; ++t)
    {
        const auto prob = random_solvable_problem(rng, kDesk, 1 + t % 3);
        const auto theta = build_theta(prob);
        const Complex g1 = random_in_disk(rng, 0.5);
        const Complex g2 = g1 + std::polar(0.1, 0.3 * t);
        const auto f1 = lft_apply(theta, SchurParameter::constant(c(g1))).f;
        const auto f2 = lft_apply(theta, SchurParameter::constant(c(g2))).f;
        double diff = 0.0;
        for (int s = 0; s < 16; ++s)
        {
            const Complex l = std::polar(0.8, 0.4 * s);
            diff = std::max(diff, std::abs(eval_projected(f1, l)(0, 0) -
                                           eval_projected(f2, l)(0, 0)));
        }
        EXPECT_GT(diff, 1e-6);
    }
}

TEST(Serialize, RoundTripAndStrictKeys)
{
    Rng rng(49);
    io::ProblemFile pf;
    pf.problem = random_solvable_problem(rng, kDesk, 2);
    const auto back = io::problem_from_json(io::to_json(pf));
    ASSERT_EQ(back.problem.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i)
    {
        EXPECT_TRUE(approx_equal(back.problem.points[i], pf.problem.points[i], 0.0, 0.0));
        EXPECT_TRUE(approx_equal(back.problem.targets[i], pf.problem.targets[i], 0.0, 0.0));
    }

    const auto r = random_rational(rng, kDesk, 1, 1, 2, 1).f;
    const auto rb = io::rational_from_json(io::to_json(r));
    EXPECT_TRUE(approx_equal(rb.num().coeff(1), r.num().coeff(1), 0.0, 0.0));

    auto j = io::to_json(pf);
    j["extra"] = 1;
    EXPECT_THROW(io::problem_from_json(j), Error);
    auto e = io::to_json(c(1.0));
    e["terms"][0]["bogus"] = 0;
    EXPECT_THROW(io::element_from_json(e), Error);
    const auto bad_index = io::Json::parse(R"({"m": 1, "d": 2, "terms": [{"index": [[2, 1]], "re": 1, "im": 0}]})");
    EXPECT_THROW(io::element_from_json(bad_index), Error);
    const auto too_high = io::Json::parse(R"({"m": 1, "d": 2, "terms": [{"index": [[1, 3]], "re": 1, "im": 0}]})");
    EXPECT_THROW(io::element_from_json(too_high), Error);
}

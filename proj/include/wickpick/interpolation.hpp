#ifndef WICKPICK_INTERPOLATION_HPP
#define WICKPICK_INTERPOLATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <wickpick/error.hpp>
#include <wickpick/rational.hpp>

namespace wickpick
{

///
/// Nevanlinna-Pick data over the ring: find Schur functions f with
/// f(a_i) = b_i. Every point and target projects into the open unit disk and
/// the projected points are pairwise distinct.
///
struct InterpolationProblem
{
    TruncationContext ctx;
    std::vector<RingElement> points;
    std::vector<RingElement> targets;

    std::size_t size() const noexcept
    {
        return points.size();
    }

    void validate(double distinct_tol = 1e-10) const
    {
        if (points.empty() || points.size() != targets.size())
        {
            throw Error(ErrorCode::invalid_problem,
                        "need n >= 1 points and as many targets");
        }
        for (std::size_t i = 0; i < points.size(); ++i)
        {
            detail::require_same_context(ctx, points[i].context());
            detail::require_same_context(ctx, targets[i].context());
            if (!(std::abs(points[i].constant_term()) < 1.0))
            {
                throw Error(ErrorCode::invalid_problem,
                            "point " + std::to_string(i) +
                                " does not project into the open unit disk");
            }
            if (!(std::abs(targets[i].constant_term()) < 1.0))
            {
                throw Error(ErrorCode::invalid_problem,
                            "target " + std::to_string(i) +
                                " does not project into the open unit disk");
            }
            for (std::size_t j = 0; j < i; ++j)
            {
                if (std::abs(points[i].constant_term() -
                             points[j].constant_term()) <= distinct_tol)
                {
                    throw Error(ErrorCode::invalid_problem,
                                "points " + std::to_string(j) + " and " +
                                    std::to_string(i) +
                                    " coincide at the origin (degenerate)");
                }
            }
        }
    }
};

/// Replaces every element by its constant term in the context (m=0, d=0),
/// where the ring is just the complex field.
inline RingElement project_to_field(const RingElement& r)
{
    return RingElement(TruncationContext{0, 0}, r.constant_term());
}

inline InterpolationProblem project_problem(const InterpolationProblem& prob)
{
    InterpolationProblem out{TruncationContext{0, 0}, {}, {}};
    for (std::size_t i = 0; i < prob.size(); ++i)
    {
        out.points.push_back(project_to_field(prob.points[i]));
        out.targets.push_back(project_to_field(prob.targets[i]));
    }
    return out;
}

/// P_ij = (1 - b_i b_j*) (1 - a_i a_j*)^{-1}
inline RingMatrix build_pick(const InterpolationProblem& prob)
{
    prob.validate();
    const auto n = prob.size();
    RingMatrix p(prob.ctx, n, n);
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            const RingElement num =
                Complex(1.0) - prob.targets[i] * conjugate(prob.targets[j]);
            const RingElement den =
                Complex(1.0) - prob.points[i] * conjugate(prob.points[j]);
            p(i, j) = num * invert(den);
        }
    }
    return p;
}

struct InterpolationData
{
    RingMatrix a; // diag(a_i*)
    RingMatrix c; // rows (1 ... 1) and (b_1* ... b_n*)
    RingMatrix j; // diag(1, -1)
};

inline InterpolationData build_data(const InterpolationProblem& prob)
{
    prob.validate();
    const auto n = prob.size();
    const auto& ctx = prob.ctx;
    std::vector<RingElement> diag;
    diag.reserve(n);
    RingMatrix c(ctx, 2, n);
    for (std::size_t i = 0; i < n; ++i)
    {
        diag.push_back(conjugate(prob.points[i]));
        c(0, i) = RingElement(ctx, 1.0);
        c(1, i) = conjugate(prob.targets[i]);
    }
    RingMatrix j(ctx, 2, 2);
    j(0, 0) = RingElement(ctx, 1.0);
    j(1, 1) = RingElement(ctx, -1.0);
    return {RingMatrix::diagonal(diag), std::move(c), std::move(j)};
}

///
/// The 2x2 rational matrix Theta = [[a, b], [c, d]] over a scalar
/// denominator.
///
class ThetaMatrix
{
public:
    ThetaMatrix() = default;

    explicit ThetaMatrix(RingRational theta) : theta_(std::move(theta))
    {
        if (theta_.rows() != 2 || theta_.cols() != 2)
        {
            throw Error(ErrorCode::shape_mismatch, "Theta must be 2x2");
        }
    }

    const RingRational& rational() const noexcept
    {
        return theta_;
    }

    RingRational a() const
    {
        return theta_.entry(0, 0);
    }
    RingRational b() const
    {
        return theta_.entry(0, 1);
    }
    RingRational c() const
    {
        return theta_.entry(1, 0);
    }
    RingRational d() const
    {
        return theta_.entry(1, 1);
    }

private:
    RingRational theta_;
};

///
/// Theta(lambda) = I - (1 - lambda) C (I - lambda A)^{-1} P^{-1} (I - A)^{-*} C* J,
/// written over det(I - lambda A):
///   num = det(I - lambda A) I - (1 - lambda) C adj(I - lambda A) K,
///   K   = P^{-1} (I - A)^{-*} C* J.
/// Fails unless the Pick matrix is strictly positive.
///
inline ThetaMatrix build_theta(const InterpolationProblem& prob,
                               double eps_pd = kDefaultEpsPd)
{
    const RingMatrix p = build_pick(prob);
    try
    {
        (void)strict_positive_factor(p, eps_pd);
    }
    catch (const Error& e)
    {
        if (e.code() == ErrorCode::not_positive_definite)
        {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "Pick matrix is not strictly positive: P(0) has "
                          "minimum eigenvalue %g, a ring factorization "
                          "P = G G* needs it above %g",
                          min_eigenvalue_hermitian(eval_origin(p)), eps_pd);
            throw Error(ErrorCode::not_positive_definite, msg);
        }
        throw;
    }
    const auto& ctx = prob.ctx;
    const auto n = prob.size();
    const auto data = build_data(prob);
    const RingMatrix id_n = RingMatrix::identity(ctx, n);
    const RingMatrix k =
        mat_invert(p) * adjoint(mat_invert(id_n - data.a)) * adjoint(data.c) *
        data.j;
    const auto res = resolvent(data.a);
    const RingPoly one_minus_lambda =
        RingPoly::scalar({RingElement(ctx, 1.0), RingElement(ctx, -1.0)});
    const RingPoly correction = one_minus_lambda *
                                (RingPoly::constant(data.c) * res.adj *
                                 RingPoly::constant(k));
    RingPoly num =
        res.det * RingPoly::constant(RingMatrix::identity(ctx, 2)) - correction;
    return ThetaMatrix(RingRational(std::move(num), res.det));
}

///
/// max over i of the dual norms of (1, -b_i) Theta(a_i). Zero in exact
/// arithmetic.
///
inline double check_theta_identity(const InterpolationProblem& prob,
                                   const ThetaMatrix& theta, int k_report = 4)
{
    prob.validate();
    double worst = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i)
    {
        const RingMatrix value = eval_rational_ring(theta.rational(),
                                                    prob.points[i]);
        RingMatrix row(prob.ctx, 1, 2);
        row(0, 0) = RingElement(prob.ctx, 1.0);
        row(0, 1) = -prob.targets[i];
        worst = std::max(worst, max_dual_norm(row * value, k_report));
    }
    return worst;
}

struct SchurOptions
{
    std::size_t grid = 200;
    double radius = 0.95;
    double eps_schur = 1e-3;
};

/// Sample points on |lambda| = radius. For functions analytic on the closed
/// disk of that radius, the maximum modulus there is attained on the circle.
inline std::vector<Complex> disk_grid(const SchurOptions& opts)
{
    std::vector<Complex> pts;
    pts.reserve(opts.grid);
    for (std::size_t k = 0; k < opts.grid; ++k)
    {
        pts.push_back(std::polar(
            opts.radius, 2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(opts.grid)));
    }
    return pts;
}

///
/// Free parameter of the linear fractional description: a scalar ring
/// polynomial in lambda whose projection is strictly contractive on the
/// sample grid.
///
class SchurParameter
{
public:
    explicit SchurParameter(RingPoly g, const SchurOptions& opts = {})
        : g_(std::move(g))
    {
        if (!g_.is_scalar())
        {
            throw Error(ErrorCode::shape_mismatch,
                        "Schur parameter must be scalar");
        }
        const double m = max_projected_modulus(opts);
        if (!(m <= 1.0 - opts.eps_schur))
        {
            throw Error(ErrorCode::invalid_argument,
                        "parameter is not strictly contractive: max |E(g)| = " +
                            std::to_string(m));
        }
    }

    static SchurParameter zero(TruncationContext ctx)
    {
        return SchurParameter(RingPoly(ctx, 1, 1));
    }

    static SchurParameter constant(const RingElement& c,
                                   const SchurOptions& opts = {})
    {
        return SchurParameter(RingPoly::scalar({c}), opts);
    }

    const RingPoly& poly() const noexcept
    {
        return g_;
    }

    double max_projected_modulus(const SchurOptions& opts) const
    {
        const auto proj = project_scalar(g_);
        double m = 0.0;
        for (const Complex& z : disk_grid(opts))
        {
            m = std::max(m, std::abs(eval_classical(proj, z)));
        }
        return m;
    }

private:
    RingPoly g_;
};

struct LftResult
{
    RingRational u; // a g + b over det(I - lambda A)
    RingRational v; // c g + d over det(I - lambda A)
    RingRational f; // (a g + b)(c g + d)^{-1}
};

///
/// T_Theta(g) = (a g + b)(c g + d)^{-1}. g = 0 gives the central solution
/// b d^{-1}.
///
inline LftResult lft_apply(const ThetaMatrix& theta, const SchurParameter& g)
{
    const auto& t = theta.rational();
    detail::require_same_context(t.context(), g.poly().context());
    const RingPoly& num = t.num();
    const RingPoly upper = num.entry(0, 0) * g.poly() + num.entry(0, 1);
    const RingPoly lower = num.entry(1, 0) * g.poly() + num.entry(1, 1);
    RingRational f;
    try
    {
        f = RingRational(upper, lower);
    }
    catch (const Error& e)
    {
        throw Error(ErrorCode::domain_violation,
                    "c g + d projects to the zero polynomial");
    }
    return {RingRational(upper, t.den()), RingRational(lower, t.den()),
            std::move(f)};
}

struct VerifyOptions
{
    int k_report = 4;
    double residual_tol = 1e-8;
    double eps_pd = kDefaultEpsPd;
    SchurOptions schur;
};

struct SolutionReport
{
    std::vector<double> residuals;             // ||f(a_i) - b_i||'_k
    std::vector<double> homogeneous_residuals; // ||u(a_i) - b_i v(a_i)||'_k
    double max_residual = 0.0;
    double max_homogeneous_residual = 0.0;
    std::vector<double> pick_spectrum;         // eigenvalues of P(0), ascending
    double schur_max_modulus = 0.0;            // max |E(f)| on the grid
    double min_pole_modulus = 0.0;             // smallest |pole| of E(f), inf if none
    int k_report = 4;
    double residual_tol = 0.0;
    bool residuals_ok = false;
    bool poles_ok = false;
    bool schur_ok = false;

    bool pass() const noexcept
    {
        return residuals_ok && poles_ok && schur_ok;
    }
};

namespace detail
{

inline void fill_classical_checks(SolutionReport& report,
                                  const InterpolationProblem& prob,
                                  const RingRational& f,
                                  const VerifyOptions& opts)
{
    const ComplexMatrix p0 = eval_origin(build_pick(prob));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        0.5 * (p0 + p0.adjoint()), Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    {
        report.pick_spectrum.push_back(es.eigenvalues()(i));
    }

    report.min_pole_modulus = std::numeric_limits<double>::infinity();
    for (const Complex& z : complex_poly_roots(project_scalar(f.den())))
    {
        report.min_pole_modulus = std::min(report.min_pole_modulus, std::abs(z));
    }
    report.poles_ok = report.min_pole_modulus >= 1.0 - 1e-9;

    double m = 0.0;
    if (report.poles_ok)
    {
        for (const Complex& z : disk_grid(opts.schur))
        {
            m = std::max(m, std::abs(eval_projected(f, z)(0, 0)));
        }
    }
    else
    {
        m = std::numeric_limits<double>::infinity();
    }
    report.schur_max_modulus = m;
    report.schur_ok = m <= 1.0 - 0.5 * opts.schur.eps_schur;
}

inline SolutionReport verify_pair(const InterpolationProblem& prob,
                                  const RingRational& f,
                                  const RingRational& u,
                                  const RingRational& v,
                                  const VerifyOptions& opts)
{
    prob.validate();
    SolutionReport report;
    report.k_report = opts.k_report;
    report.residual_tol = opts.residual_tol;
    for (std::size_t i = 0; i < prob.size(); ++i)
    {
        const RingElement& a = prob.points[i];
        const RingElement& b = prob.targets[i];
        const RingElement fa = eval_rational_ring(f, a)(0, 0);
        const RingElement ua = eval_rational_ring(u, a)(0, 0);
        const RingElement va = eval_rational_ring(v, a)(0, 0);
        report.residuals.push_back(norm_dual(fa - b, opts.k_report));
        report.homogeneous_residuals.push_back(
            norm_dual(ua - b * va, opts.k_report));
    }
    report.max_residual =
        *std::max_element(report.residuals.begin(), report.residuals.end());
    report.max_homogeneous_residual =
        *std::max_element(report.homogeneous_residuals.begin(),
                          report.homogeneous_residuals.end());
    report.residuals_ok = report.max_residual <= opts.residual_tol &&
                          report.max_homogeneous_residual <= opts.residual_tol;
    fill_classical_checks(report, prob, f, opts);
    return report;
}

} // namespace detail

///
/// Checks a candidate solution f = p/q. The homogeneous residual uses the
/// numerator and denominator directly: ||p(a_i) - b_i q(a_i)||.
///
inline SolutionReport verify_solution(const InterpolationProblem& prob,
                                      const RingRational& f,
                                      const VerifyOptions& opts = {})
{
    if (!f.num().is_scalar())
    {
        throw Error(ErrorCode::shape_mismatch, "solution must be scalar");
    }
    const auto one = RingPoly::scalar({RingElement(f.context(), 1.0)});
    return detail::verify_pair(prob, f, RingRational(f.num(), one),
                               RingRational(f.den(), one), opts);
}

/// Checks the output of lft_apply, with u and v as produced there.
inline SolutionReport verify_solution(const InterpolationProblem& prob,
                                      const LftResult& lft,
                                      const VerifyOptions& opts = {})
{
    return detail::verify_pair(prob, lft.f, lft.u, lft.v, opts);
}

struct ClassicalSolution
{
    InterpolationProblem problem; // projected data, context (0, 0)
    ThetaMatrix theta;
    LftResult lft;
};

///
/// The same pipeline run on the projected data in the context (0, 0), where
/// the ring collapses to the complex numbers. sigma holds the polynomial
/// coefficients of the classical Schur parameter.
///
inline ClassicalSolution classical_solve(const InterpolationProblem& prob,
                                         const std::vector<Complex>& sigma,
                                         double eps_pd = kDefaultEpsPd,
                                         const SchurOptions& opts = {})
{
    ClassicalSolution out;
    out.problem = project_problem(prob);
    out.theta = build_theta(out.problem, eps_pd);
    std::vector<RingElement> coeffs;
    for (const Complex& s : sigma)
    {
        coeffs.emplace_back(out.problem.ctx, s);
    }
    if (coeffs.empty())
    {
        coeffs.emplace_back(out.problem.ctx);
    }
    out.lft = lft_apply(out.theta, SchurParameter(RingPoly::scalar(coeffs), opts));
    return out;
}

/// Projection of a scalar-valued parameter polynomial.
inline std::vector<Complex> project_parameter(const SchurParameter& g)
{
    return project_scalar(g.poly());
}

} // namespace wickpick

#endif /* WICKPICK_INTERPOLATION_HPP */

#ifndef WICKPICK_RANDOM_HPP
#define WICKPICK_RANDOM_HPP

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <wickpick/interpolation.hpp>

namespace wickpick
{

using Rng = std::mt19937_64;

inline Complex random_complex(Rng& rng, double scale)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng)};
}

/// Uniform point in the disk |z| <= radius.
inline Complex random_in_disk(Rng& rng, double radius)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(radius * std::sqrt(u(rng)),
                      2.0 * std::numbers::pi * u(rng));
}

///
/// Dense random element: every admitted index gets a coefficient with real
/// and imaginary parts uniform in [-scale, scale]. With `with_constant`
/// false the constant term is left at zero.
///
inline RingElement random_element(Rng& rng, TruncationContext ctx, double scale,
                                  bool with_constant = true)
{
    RingElement::Terms terms;
    for (const auto& alpha : ctx.enumerate())
    {
        if (alpha.empty() && !with_constant)
        {
            continue;
        }
        terms.emplace(alpha, random_complex(rng, scale));
    }
    return RingElement::from_terms(ctx, std::move(terms));
}

/// c + (random element with zero constant term and coefficients <= scale).
inline RingElement random_perturbation_of(Rng& rng, TruncationContext ctx,
                                          Complex c, double scale)
{
    return random_element(rng, ctx, scale, false) + c;
}

inline RingMatrix random_matrix(Rng& rng, TruncationContext ctx,
                                std::size_t rows, std::size_t cols,
                                double scale)
{
    RingMatrix m(ctx, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
    {
        for (std::size_t j = 0; j < cols; ++j)
        {
            m(i, j) = random_element(rng, ctx, scale);
        }
    }
    return m;
}

///
/// A solvable problem: projected points are separated by at least
/// `separation` inside |z| <= 0.7, projected targets are values of
/// rho * (disk automorphism) with rho <= 0.7 (so the classical Pick matrix
/// dominates (1 - rho^2) times a Szego kernel matrix), and both are then
/// perturbed by zero-constant elements with coefficients bounded by
/// `perturbation`.
///
inline InterpolationProblem random_solvable_problem(Rng& rng,
                                                    TruncationContext ctx,
                                                    std::size_t n,
                                                    double perturbation = 0.2,
                                                    double separation = 0.3)
{
    std::vector<Complex> base;
    while (base.size() < n)
    {
        const Complex z = random_in_disk(rng, 0.7);
        bool ok = true;
        for (const auto& w : base)
        {
            ok = ok && std::abs(z - w) >= separation;
        }
        if (ok)
        {
            base.push_back(z);
        }
    }
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double rho = 0.3 + 0.4 * u(rng);
    const Complex w = random_in_disk(rng, 0.5);
    const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * u(rng));
    auto schur = [&](Complex z) {
        return rho * phase * (z - w) / (1.0 - std::conj(w) * z);
    };

    InterpolationProblem prob{ctx, {}, {}};
    for (const auto& z : base)
    {
        prob.points.push_back(random_perturbation_of(rng, ctx, z, perturbation));
        prob.targets.push_back(
            random_perturbation_of(rng, ctx, schur(z), perturbation));
    }
    return prob;
}

} // namespace wickpick

#endif /* WICKPICK_RANDOM_HPP */

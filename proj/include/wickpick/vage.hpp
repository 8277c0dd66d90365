#ifndef WICKPICK_VAGE_HPP
#define WICKPICK_VAGE_HPP

#include <cmath>
#include <limits>
#include <string>

#include <wickpick/error.hpp>

namespace wickpick
{

struct VageConstant
{
    double value;
    /// Bound on |value - exact| from the truncated tail expansions.
    double error_bound;
};

namespace detail
{

///
/// sum_{j > J} j^{-s} for s > 1 by Euler-Maclaurin at J with three
/// Bernoulli corrections. The remainder is bounded by the first omitted
/// correction, returned through `remainder`.
///
inline double hurwitz_tail(double s, double big_j, double& remainder)
{
    const double js = std::pow(big_j, -s);
    const double integral = big_j * js / (s - 1.0);
    const double c1 = s / 12.0 * js / big_j;
    const double c3 =
        s * (s + 1.0) * (s + 2.0) / 720.0 * js / (big_j * big_j * big_j);
    const double c5 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) /
                      30240.0 * js / std::pow(big_j, 5.0);
    remainder = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) *
                (s + 5.0) * (s + 6.0) / 1209600.0 * js / std::pow(big_j, 7.0);
    // sum_{j >= J} minus the j = J term.
    return integral + 0.5 * js + c1 - c3 + c5 - js;
}

} // namespace detail

///
/// A(q) = (sum over all multi-indices a of (2N)^{-q a})^{1/2}
///      = (prod_{j>=1} (1 - (2j)^{-q})^{-1})^{1/2},   q > 1.
///
/// The product is formed explicitly for j <= J. For the tail,
///   sum_{j>J} -log(1 - x_j) = sum_{k>=1} (1/k) 2^{-qk} sum_{j>J} j^{-qk},
/// with each inner sum from Euler-Maclaurin. The k-series is cut once its
/// terms drop below 1e-20 and bounded geometrically from there.
///
inline VageConstant vage_constant_bounds(double q)
{
    if (!(q > 1.0) || !std::isfinite(q))
    {
        throw Error(ErrorCode::divergent,
                    "sum of (2N)^{-q a} diverges unless q > 1 (got q = " +
                        std::to_string(q) + ")");
    }
    constexpr int kExplicitFactors = 1000;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    // Neumaier-compensated sum of -log(1 - (2j)^{-q}); every term is positive.
    double log_sq = 0.0;
    double carry = 0.0;
    auto add = [&](double x) {
        const double t = log_sq + x;
        carry += std::abs(log_sq) >= std::abs(x) ? (log_sq - t) + x : (x - t) + log_sq;
        log_sq = t;
    };
    for (int j = 1; j <= kExplicitFactors; ++j)
    {
        add(-std::log1p(-std::pow(2.0 * j, -q)));
    }

    const double big_j = static_cast<double>(kExplicitFactors);
    double error = 0.0;
    double tail = 0.0;
    for (int k = 1;; ++k)
    {
        const double s = q * k;
        double rem = 0.0;
        const double inner = detail::hurwitz_tail(s, big_j, rem);
        const double scale = std::pow(2.0, -s) / k;
        const double term = scale * inner;
        tail += term;
        error += scale * rem;
        if (term < 1e-20 || k > 200)
        {
            // Later terms shrink at least by (2J)^{-q} each.
            const double ratio = std::pow(2.0 * big_j, -q);
            error += term * ratio / (1.0 - ratio);
            break;
        }
    }
    add(tail);
    log_sq += carry;
    // Each term carries a few ulps from pow/log1p, the compensated sum about
    // one more, and the tail series a few ulps of itself.
    error += 4.0 * eps * std::abs(log_sq);

    const double value = std::exp(0.5 * log_sq);
    // |d A / d log_sq| = A / 2, plus rounding in exp.
    return {value, 0.5 * value * error + eps * value};
}

inline double vage_constant(double q)
{
    return vage_constant_bounds(q).value;
}

} // namespace wickpick

#endif /* WICKPICK_VAGE_HPP */

#ifndef WICKPICK_RATIONAL_HPP
#define WICKPICK_RATIONAL_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <wickpick/error.hpp>
#include <wickpick/ring_poly.hpp>

namespace wickpick
{

///
/// p(lambda) q(lambda)^{-1}: matrix-valued ring polynomial over a scalar ring
/// polynomial whose projection at the origin is not identically zero. The
/// pair is kept as given; nothing is cancelled.
///
class RingRational
{
public:
    RingRational() = default;

    RingRational(RingPoly num, RingPoly den, double eps = kDefaultEpsInv)
        : num_(std::move(num)), den_(std::move(den))
    {
        detail::require_same_context(num_.context(), den_.context());
        if (!den_.is_scalar())
        {
            throw Error(ErrorCode::shape_mismatch,
                        "denominator must be a scalar polynomial");
        }
        const auto projected = project_scalar(den_);
        if (std::none_of(projected.begin(), projected.end(),
                         [eps](Complex c) { return std::abs(c) > eps; }))
        {
            throw Error(ErrorCode::invalid_argument,
                        "denominator projects to the zero polynomial");
        }
    }

    /// p / 1
    static RingRational polynomial(RingPoly num)
    {
        const auto ctx = num.context();
        RingPoly one = RingPoly::scalar({RingElement(ctx, 1.0)});
        return RingRational(std::move(num), std::move(one));
    }

    const RingPoly& num() const noexcept
    {
        return num_;
    }

    const RingPoly& den() const noexcept
    {
        return den_;
    }

    const TruncationContext& context() const noexcept
    {
        return num_.context();
    }

    std::size_t rows() const noexcept
    {
        return num_.rows();
    }

    std::size_t cols() const noexcept
    {
        return num_.cols();
    }

    /// Entry (i, j) over the shared denominator.
    RingRational entry(std::size_t i, std::size_t j) const
    {
        return RingRational(num_.entry(i, j), den_);
    }

private:
    RingPoly num_;
    RingPoly den_;
};

///
/// State-space data of the transfer function D + lambda C (I - lambda A)^{-1} B.
///
struct Realization
{
    RingMatrix a;
    RingMatrix b;
    RingMatrix c;
    RingMatrix d;

    void validate() const
    {
        detail::require_same_context(a.context(), b.context());
        detail::require_same_context(a.context(), c.context());
        detail::require_same_context(a.context(), d.context());
        if (!a.is_square() || b.rows() != a.rows() || c.cols() != a.rows() ||
            d.rows() != c.rows() || d.cols() != b.cols())
        {
            throw Error(ErrorCode::shape_mismatch,
                        "realization blocks have inconsistent shapes");
        }
    }
};

///
/// det(I - lambda A) and adj(I - lambda A) as polynomials in lambda, from the
/// Faddeev-LeVerrier data of A:
///   det(I - lambda A) = sum_k c_k lambda^k,
///   adj(I - lambda A) = sum_{k>=1} M_k lambda^{k-1}.
///
struct Resolvent
{
    RingPoly det;
    RingPoly adj;
};

inline Resolvent resolvent(const RingMatrix& a)
{
    const auto fl = faddeev_leverrier(a);
    return {RingPoly::scalar(fl.coeffs), RingPoly(fl.adj_terms)};
}

/// [D, CB, CAB, C A^2 B, ...] up to index n.
inline std::vector<RingMatrix> realization_taylor(const Realization& r,
                                                  std::size_t n)
{
    r.validate();
    std::vector<RingMatrix> out;
    out.reserve(n + 1);
    out.push_back(r.d);
    RingMatrix ca = r.c; // C A^{k-1}
    for (std::size_t k = 1; k <= n; ++k)
    {
        out.push_back(mat_mul(ca, r.b));
        if (k < n)
        {
            ca = mat_mul(ca, r.a);
        }
    }
    return out;
}

///
/// Common-denominator form of D + lambda C (I - lambda A)^{-1} B:
/// num = det(I - lambda A) D + lambda C adj(I - lambda A) B,
/// den = det(I - lambda A).
///
inline RingRational realization_to_rational(const Realization& r)
{
    r.validate();
    const auto res = resolvent(r.a);
    const auto ctx = r.a.context();
    const RingPoly d = RingPoly::constant(r.d);
    const RingPoly c = RingPoly::constant(r.c);
    const RingPoly b = RingPoly::constant(r.b);
    RingPoly num = res.det * d + RingPoly::lambda(ctx) * (c * res.adj * b);
    return RingRational(std::move(num), res.det);
}

/// E(den)(lambda) for a rational function.
inline Complex projected_den(const RingRational& f, Complex lambda)
{
    return eval_classical(project_scalar(f.den()), lambda);
}

///
/// The projected (classical) rational function E(F) evaluated at lambda.
///
inline ComplexMatrix eval_projected(const RingRational& f, Complex lambda,
                                    double eps = kDefaultEpsInv)
{
    const Complex q = projected_den(f, lambda);
    if (std::abs(q) <= eps)
    {
        throw Error(ErrorCode::domain_violation,
                    "projected denominator vanishes at lambda");
    }
    return eval_classical(project(f.num()), lambda) / q;
}

/// F(lambda) for complex lambda: num(lambda) times den(lambda)^{-1}.
inline RingMatrix eval_rational_complex(const RingRational& f, Complex lambda,
                                        double eps = kDefaultEpsInv)
{
    const RingElement q = eval_complex(f.den(), lambda)(0, 0);
    if (std::abs(q.constant_term()) <= eps)
    {
        throw Error(ErrorCode::domain_violation,
                    "denominator is not invertible at lambda = (" +
                        std::to_string(lambda.real()) + ", " +
                        std::to_string(lambda.imag()) + ")");
    }
    return invert(q, eps) * eval_complex(f.num(), lambda);
}

///
/// F(r) for a ring point r: substitute r for lambda in numerator and
/// denominator. r - E(r) is nilpotent, so this equals the Taylor series of F
/// around E(r) evaluated at r.
///
inline RingMatrix eval_rational_ring(const RingRational& f, const RingElement& r,
                                     double eps = kDefaultEpsInv)
{
    detail::require_same_context(f.context(), r.context());
    if (std::abs(projected_den(f, r.constant_term())) <= eps)
    {
        throw Error(ErrorCode::domain_violation,
                    "ring point lies on a pole of the projected function");
    }
    const RingElement q = eval_ring(f.den(), r)(0, 0);
    return invert(q, eps) * eval_ring(f.num(), r);
}

///
/// Trapezoidal rule for (1/2 pi i) \oint F(zeta) (zeta - r)^{-1} d zeta on the
/// circle |zeta - E(r)| = radius. The projected poles must all lie outside
/// the circle.
///
inline RingMatrix eval_via_contour(const RingRational& f, const RingElement& r,
                                   double radius, std::size_t nodes = 512)
{
    detail::require_same_context(f.context(), r.context());
    if (nodes < 64)
    {
        throw Error(ErrorCode::invalid_argument, "contour needs >= 64 nodes");
    }
    if (!(radius > 0.0))
    {
        throw Error(ErrorCode::invalid_argument, "contour radius must be > 0");
    }
    const Complex center = r.constant_term();
    for (const Complex& pole : complex_poly_roots(project_scalar(f.den())))
    {
        if (std::abs(pole - center) <= radius)
        {
            throw Error(ErrorCode::domain_violation,
                        "contour encloses or touches a pole");
        }
    }
    const auto& ctx = f.context();
    RingMatrix acc(ctx, f.rows(), f.cols());
    for (std::size_t j = 0; j < nodes; ++j)
    {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(j) / nodes;
        const Complex w = std::polar(radius, theta);
        const Complex zeta = center + w;
        const RingElement kernel = invert(zeta - r);
        // d zeta / (2 pi i) = w d theta / (2 pi)
        const RingElement weight = (w / static_cast<double>(nodes)) * kernel;
        acc = acc + weight * eval_rational_complex(f, zeta);
    }
    return acc;
}

enum class BlaschkeVariant
{
    disk,     // (lambda - r)(1 - lambda r*)^{-1}
    halfline, // (lambda - r)(lambda - r*)^{-1}
};

inline RingRational blaschke_factor(const RingElement& r,
                                    BlaschkeVariant variant)
{
    const auto& ctx = r.context();
    const RingElement one(ctx, 1.0);
    const RingElement rc = conjugate(r);
    RingPoly num = RingPoly::scalar({-r, one});
    RingPoly den = variant == BlaschkeVariant::disk
                       ? RingPoly::scalar({one, -rc})
                       : RingPoly::scalar({-rc, one});
    return RingRational(std::move(num), std::move(den));
}

/// Causal Wick convolution y_n = sum_{k<=n} h_{n-k} u_k over the full
/// support (length |h| + |u| - 1).
inline std::vector<RingElement> wick_convolve(const std::vector<RingElement>& h,
                                              const std::vector<RingElement>& u)
{
    if (h.empty() || u.empty())
    {
        return {};
    }
    const auto ctx = h.front().context();
    std::vector<RingElement> y(h.size() + u.size() - 1, RingElement(ctx));
    for (std::size_t i = 0; i < h.size(); ++i)
    {
        for (std::size_t k = 0; k < u.size(); ++k)
        {
            y[i + k] = y[i + k] + wick_mul(h[i], u[k]);
        }
    }
    return y;
}

} // namespace wickpick

#endif /* WICKPICK_RATIONAL_HPP */

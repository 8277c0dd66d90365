#ifndef WICKPICK_RING_POLY_HPP
#define WICKPICK_RING_POLY_HPP

#include <algorithm>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include <wickpick/error.hpp>
#include <wickpick/ring_matrix.hpp>

namespace wickpick
{

///
/// Polynomial in the complex variable lambda whose coefficients are ring
/// matrices of a common shape. Scalar polynomials are the 1x1 case.
/// Trailing all-zero coefficients are trimmed; the zero polynomial keeps a
/// single zero coefficient so degree() >= 0.
///
class RingPoly
{
public:
    RingPoly() = default;

    RingPoly(TruncationContext ctx, std::size_t rows, std::size_t cols)
        : ctx_(ctx), rows_(rows), cols_(cols),
          coeffs_{RingMatrix(ctx, rows, cols)}
    {
    }

    explicit RingPoly(std::vector<RingMatrix> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty())
        {
            throw Error(ErrorCode::invalid_argument,
                        "polynomial needs at least one coefficient");
        }
        ctx_ = coeffs_.front().context();
        rows_ = coeffs_.front().rows();
        cols_ = coeffs_.front().cols();
        for (const auto& c : coeffs_)
        {
            detail::require_same_shape(coeffs_.front(), c);
        }
        trim();
    }

    static RingPoly scalar(const std::vector<RingElement>& coeffs)
    {
        std::vector<RingMatrix> m;
        m.reserve(coeffs.size());
        for (const auto& c : coeffs)
        {
            m.push_back(RingMatrix::scalar(c));
        }
        return RingPoly(std::move(m));
    }

    static RingPoly constant(const RingMatrix& c)
    {
        return RingPoly(std::vector<RingMatrix>{c});
    }

    /// The scalar polynomial lambda.
    static RingPoly lambda(TruncationContext ctx)
    {
        return scalar({RingElement(ctx), RingElement(ctx, 1.0)});
    }

    const TruncationContext& context() const noexcept
    {
        return ctx_;
    }

    std::size_t rows() const noexcept
    {
        return rows_;
    }

    std::size_t cols() const noexcept
    {
        return cols_;
    }

    bool is_scalar() const noexcept
    {
        return rows_ == 1 && cols_ == 1;
    }

    std::size_t degree() const noexcept
    {
        return coeffs_.size() - 1;
    }

    const RingMatrix& coeff(std::size_t k) const
    {
        return coeffs_.at(k);
    }

    const std::vector<RingMatrix>& coeffs() const noexcept
    {
        return coeffs_;
    }

    /// Scalar coefficient k of a 1x1 polynomial (zero past the degree).
    RingElement scalar_coeff(std::size_t k) const
    {
        if (k >= coeffs_.size())
        {
            return RingElement(ctx_);
        }
        return coeffs_[k](0, 0);
    }

    /// Entry (i, j) as a scalar polynomial.
    RingPoly entry(std::size_t i, std::size_t j) const
    {
        std::vector<RingElement> c;
        c.reserve(coeffs_.size());
        for (const auto& m : coeffs_)
        {
            c.push_back(m(i, j));
        }
        return scalar(c);
    }

private:
    void trim()
    {
        auto all_zero = [](const RingMatrix& m) {
            return std::all_of(m.entries().begin(), m.entries().end(),
                               [](const RingElement& e) { return e.is_zero(); });
        };
        while (coeffs_.size() > 1 && all_zero(coeffs_.back()))
        {
            coeffs_.pop_back();
        }
    }

    TruncationContext ctx_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<RingMatrix> coeffs_;
};

inline RingPoly poly_lincomb(Complex a, const RingPoly& p, Complex b,
                             const RingPoly& q)
{
    if (p.rows() != q.rows() || p.cols() != q.cols())
    {
        throw Error(ErrorCode::shape_mismatch, "polynomial shapes differ");
    }
    detail::require_same_context(p.context(), q.context());
    const std::size_t n = std::max(p.degree(), q.degree()) + 1;
    const RingMatrix zero(p.context(), p.rows(), p.cols());
    std::vector<RingMatrix> c;
    c.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        const RingMatrix& pk = k <= p.degree() ? p.coeff(k) : zero;
        const RingMatrix& qk = k <= q.degree() ? q.coeff(k) : zero;
        c.push_back(mat_lincomb(a, pk, b, qk));
    }
    return RingPoly(std::move(c));
}

inline RingPoly operator+(const RingPoly& p, const RingPoly& q)
{
    return poly_lincomb(1.0, p, 1.0, q);
}

inline RingPoly operator-(const RingPoly& p, const RingPoly& q)
{
    return poly_lincomb(1.0, p, -1.0, q);
}

///
/// Cauchy product in lambda. A 1x1 factor on either side acts as a scalar;
/// otherwise the coefficient matrices are multiplied.
///
inline RingPoly poly_mul(const RingPoly& p, const RingPoly& q)
{
    detail::require_same_context(p.context(), q.context());
    const bool p_scalar = p.is_scalar();
    const bool q_scalar = !p_scalar && q.is_scalar();
    std::size_t rows = p.rows();
    std::size_t cols = q.cols();
    if (p_scalar)
    {
        rows = q.rows();
    }
    else if (q_scalar)
    {
        cols = p.cols();
    }
    else if (p.cols() != q.rows())
    {
        throw Error(ErrorCode::shape_mismatch, "polynomial inner dimensions");
    }
    std::vector<RingMatrix> c(p.degree() + q.degree() + 1,
                              RingMatrix(p.context(), rows, cols));
    for (std::size_t i = 0; i <= p.degree(); ++i)
    {
        for (std::size_t j = 0; j <= q.degree(); ++j)
        {
            RingMatrix term = p_scalar   ? p.coeff(i)(0, 0) * q.coeff(j)
                              : q_scalar ? q.coeff(j)(0, 0) * p.coeff(i)
                                         : mat_mul(p.coeff(i), q.coeff(j));
            c[i + j] = c[i + j] + term;
        }
    }
    return RingPoly(std::move(c));
}

inline RingPoly operator*(const RingPoly& p, const RingPoly& q)
{
    return poly_mul(p, q);
}

inline RingPoly poly_scale(Complex s, const RingPoly& p)
{
    std::vector<RingMatrix> c;
    c.reserve(p.degree() + 1);
    for (const auto& m : p.coeffs())
    {
        c.push_back(s * m);
    }
    return RingPoly(std::move(c));
}

inline RingPoly poly_scale(const RingElement& s, const RingPoly& p)
{
    std::vector<RingMatrix> c;
    c.reserve(p.degree() + 1);
    for (const auto& m : p.coeffs())
    {
        c.push_back(s * m);
    }
    return RingPoly(std::move(c));
}

/// Substitutes a complex number for lambda (Horner).
inline RingMatrix eval_complex(const RingPoly& p, Complex lambda)
{
    RingMatrix acc = p.coeff(p.degree());
    for (std::size_t k = p.degree(); k-- > 0;)
    {
        acc = lambda * acc + p.coeff(k);
    }
    return acc;
}

/// Substitutes a ring element for lambda, powers taken with the Wick product.
inline RingMatrix eval_ring(const RingPoly& p, const RingElement& r)
{
    detail::require_same_context(p.context(), r.context());
    RingMatrix acc = p.coeff(p.degree());
    for (std::size_t k = p.degree(); k-- > 0;)
    {
        acc = r * acc + p.coeff(k);
    }
    return acc;
}

/// Coefficientwise evaluation at the origin: a complex matrix polynomial.
inline std::vector<ComplexMatrix> project(const RingPoly& p)
{
    std::vector<ComplexMatrix> out;
    out.reserve(p.degree() + 1);
    for (const auto& m : p.coeffs())
    {
        out.push_back(eval_origin(m));
    }
    return out;
}

inline ComplexMatrix eval_classical(const std::vector<ComplexMatrix>& p,
                                    Complex lambda)
{
    ComplexMatrix acc = p.back();
    for (std::size_t k = p.size() - 1; k-- > 0;)
    {
        acc = (lambda * acc + p[k]).eval();
    }
    return acc;
}

inline Complex eval_classical(const std::vector<Complex>& p, Complex lambda)
{
    Complex acc = p.back();
    for (std::size_t k = p.size() - 1; k-- > 0;)
    {
        acc = lambda * acc + p[k];
    }
    return acc;
}

/// Constant terms of a scalar polynomial's coefficients.
inline std::vector<Complex> project_scalar(const RingPoly& p)
{
    std::vector<Complex> out;
    out.reserve(p.degree() + 1);
    for (std::size_t k = 0; k <= p.degree(); ++k)
    {
        out.push_back(p.scalar_coeff(k).constant_term());
    }
    return out;
}

///
/// Roots of a complex polynomial (coefficients in increasing degree) from
/// the eigenvalues of its companion matrix. Leading coefficients below
/// `tiny` relative to the largest are dropped first.
///
inline std::vector<Complex> complex_poly_roots(std::vector<Complex> c,
                                               double tiny = 1e-14)
{
    double scale = 0.0;
    for (const auto& x : c)
    {
        scale = std::max(scale, std::abs(x));
    }
    while (!c.empty() && std::abs(c.back()) <= tiny * scale)
    {
        c.pop_back();
    }
    if (c.size() <= 1)
    {
        return {};
    }
    const auto n = static_cast<Eigen::Index>(c.size() - 1);
    ComplexMatrix companion = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i)
    {
        companion(i, i - 1) = 1.0;
    }
    for (Eigen::Index i = 0; i < n; ++i)
    {
        companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    }
    Eigen::ComplexEigenSolver<ComplexMatrix> es(companion, false);
    std::vector<Complex> roots(es.eigenvalues().begin(), es.eigenvalues().end());
    return roots;
}

} // namespace wickpick

#endif /* WICKPICK_RING_POLY_HPP */

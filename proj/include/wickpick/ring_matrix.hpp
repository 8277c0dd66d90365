#ifndef WICKPICK_RING_MATRIX_HPP
#define WICKPICK_RING_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <wickpick/error.hpp>
#include <wickpick/ring_element.hpp>

namespace wickpick
{

using ComplexMatrix = Eigen::MatrixXcd;

/// Minimum eigenvalue of A(0) for A to count as strictly positive.
inline constexpr double kDefaultEpsPd = 1e-10;

///
/// Dense row-major matrix over the truncated ring. All entries share one
/// context.
///
class RingMatrix
{
public:
    RingMatrix() = default;

    RingMatrix(TruncationContext ctx, std::size_t rows, std::size_t cols)
        : ctx_(ctx), rows_(rows), cols_(cols),
          entries_(rows * cols, RingElement(ctx))
    {
    }

    RingMatrix(std::size_t rows, std::size_t cols,
               std::vector<RingElement> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries))
    {
        if (entries_.size() != rows * cols || entries_.empty())
        {
            throw Error(ErrorCode::shape_mismatch,
                        "expected " + std::to_string(rows * cols) +
                            " entries, got " +
                            std::to_string(entries_.size()));
        }
        ctx_ = entries_.front().context();
        for (const auto& e : entries_)
        {
            detail::require_same_context(ctx_, e.context());
        }
    }

    static RingMatrix identity(TruncationContext ctx, std::size_t n)
    {
        RingMatrix m(ctx, n, n);
        for (std::size_t i = 0; i < n; ++i)
        {
            m(i, i) = RingElement(ctx, 1.0);
        }
        return m;
    }

    static RingMatrix diagonal(std::span<const RingElement> diag)
    {
        if (diag.empty())
        {
            throw Error(ErrorCode::shape_mismatch, "empty diagonal");
        }
        const auto ctx = diag.front().context();
        RingMatrix m(ctx, diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i)
        {
            detail::require_same_context(ctx, diag[i].context());
            m(i, i) = diag[i];
        }
        return m;
    }

    /// Embeds a complex matrix as constants.
    static RingMatrix constant(TruncationContext ctx, const ComplexMatrix& c)
    {
        RingMatrix m(ctx, static_cast<std::size_t>(c.rows()),
                     static_cast<std::size_t>(c.cols()));
        for (std::size_t i = 0; i < m.rows_; ++i)
        {
            for (std::size_t j = 0; j < m.cols_; ++j)
            {
                m(i, j) = RingElement(ctx, c(i, j));
            }
        }
        return m;
    }

    static RingMatrix scalar(const RingElement& r)
    {
        return RingMatrix(1, 1, {r});
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

    bool is_square() const noexcept
    {
        return rows_ == cols_;
    }

    RingElement& operator()(std::size_t i, std::size_t j)
    {
        return entries_[i * cols_ + j];
    }

    const RingElement& operator()(std::size_t i, std::size_t j) const
    {
        return entries_[i * cols_ + j];
    }

    std::span<const RingElement> entries() const noexcept
    {
        return entries_;
    }

private:
    TruncationContext ctx_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<RingElement> entries_;
};

namespace detail
{

inline void require_same_shape(const RingMatrix& a, const RingMatrix& b)
{
    require_same_context(a.context(), b.context());
    if (a.rows() != b.rows() || a.cols() != b.cols())
    {
        throw Error(ErrorCode::shape_mismatch,
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
    }
}

inline void require_square(const RingMatrix& a, const char* what)
{
    if (!a.is_square())
    {
        throw Error(ErrorCode::shape_mismatch,
                    std::string(what) + " needs a square matrix");
    }
}

} // namespace detail

inline RingMatrix mat_lincomb(Complex a, const RingMatrix& x, Complex b,
                              const RingMatrix& y)
{
    detail::require_same_shape(x, y);
    RingMatrix out(x.context(), x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
    {
        for (std::size_t j = 0; j < x.cols(); ++j)
        {
            out(i, j) = linear_combine(a, x(i, j), b, y(i, j));
        }
    }
    return out;
}

inline RingMatrix operator+(const RingMatrix& x, const RingMatrix& y)
{
    return mat_lincomb(1.0, x, 1.0, y);
}

inline RingMatrix operator-(const RingMatrix& x, const RingMatrix& y)
{
    return mat_lincomb(1.0, x, -1.0, y);
}

inline RingMatrix operator*(const RingElement& s, const RingMatrix& x)
{
    detail::require_same_context(s.context(), x.context());
    RingMatrix out(x.context(), x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
    {
        for (std::size_t j = 0; j < x.cols(); ++j)
        {
            out(i, j) = wick_mul(s, x(i, j));
        }
    }
    return out;
}

inline RingMatrix operator*(Complex s, const RingMatrix& x)
{
    RingMatrix out(x.context(), x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
    {
        for (std::size_t j = 0; j < x.cols(); ++j)
        {
            out(i, j) = s * x(i, j);
        }
    }
    return out;
}

/// Matrix product with the Wick product on entries.
inline RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b)
{
    detail::require_same_context(a.context(), b.context());
    if (a.cols() != b.rows())
    {
        throw Error(ErrorCode::shape_mismatch,
                    "inner dimensions " + std::to_string(a.cols()) + " and " +
                        std::to_string(b.rows()));
    }
    RingMatrix out(a.context(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < b.cols(); ++j)
        {
            RingElement acc(a.context());
            for (std::size_t k = 0; k < a.cols(); ++k)
            {
                acc = acc + wick_mul(a(i, k), b(k, j));
            }
            out(i, j) = std::move(acc);
        }
    }
    return out;
}

inline RingMatrix operator*(const RingMatrix& a, const RingMatrix& b)
{
    return mat_mul(a, b);
}

/// Transpose with entrywise coefficient conjugation.
inline RingMatrix adjoint(const RingMatrix& a)
{
    RingMatrix out(a.context(), a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
        {
            out(j, i) = conjugate(a(i, j));
        }
    }
    return out;
}

/// Entrywise evaluation at the origin, A(0).
inline ComplexMatrix eval_origin(const RingMatrix& a)
{
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
        {
            out(i, j) = a(i, j).constant_term();
        }
    }
    return out;
}

/// Largest entrywise dual norm ||A_ij - B_ij||'_k.
inline double max_dual_norm_diff(const RingMatrix& a, const RingMatrix& b,
                                 int k)
{
    detail::require_same_shape(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
        {
            m = std::max(m, norm_dual(a(i, j) - b(i, j), k));
        }
    }
    return m;
}

inline double max_dual_norm(const RingMatrix& a, int k)
{
    double m = 0.0;
    for (const auto& e : a.entries())
    {
        m = std::max(m, norm_dual(e, k));
    }
    return m;
}

inline bool approx_equal(const RingMatrix& a, const RingMatrix& b,
                         double atol = 1e-10, double rtol = 1e-10)
{
    detail::require_same_shape(a, b);
    for (std::size_t i = 0; i < a.entries().size(); ++i)
    {
        if (!approx_equal(a.entries()[i], b.entries()[i], atol, rtol))
        {
            return false;
        }
    }
    return true;
}

///
/// sum_{p<=d} c_p E^p for a square E with E(0) = 0 (nilpotent in the
/// truncation).
///
inline RingMatrix mat_apply_entire(std::span<const Complex> taylor,
                                   const RingMatrix& e,
                                   double eps_inv = kDefaultEpsInv)
{
    detail::require_square(e, "mat_apply_entire");
    const auto& ctx = e.context();
    if (eval_origin(e).cwiseAbs().maxCoeff() > eps_inv)
    {
        throw Error(ErrorCode::nonzero_constant_term,
                    "matrix functional calculus needs E(0) = 0");
    }
    const std::size_t terms = static_cast<std::size_t>(ctx.degree_cap) + 1;
    if (taylor.size() < terms)
    {
        throw Error(ErrorCode::invalid_argument,
                    "need " + std::to_string(terms) + " Taylor coefficients");
    }
    const auto n = e.rows();
    RingMatrix nil = e;
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            nil(i, j) = nil(i, j) - nil(i, j).constant_term();
        }
    }
    const RingMatrix id = RingMatrix::identity(ctx, n);
    RingMatrix sum = taylor[terms - 1] * id;
    for (std::size_t p = terms - 1; p-- > 0;)
    {
        sum = mat_mul(nil, sum) + taylor[p] * id;
    }
    return sum;
}

///
/// Inverse of a square ring matrix with invertible constant part:
/// A = A(0)(I + E) with E(0) = 0, so A^{-1} = (sum_{n<=d} (-E)^n) A(0)^{-1}.
///
inline RingMatrix mat_invert(const RingMatrix& a, double eps_inv = kDefaultEpsInv)
{
    detail::require_square(a, "mat_invert");
    const auto& ctx = a.context();
    const ComplexMatrix a0 = eval_origin(a);
    Eigen::PartialPivLU<ComplexMatrix> lu(a0);
    if (std::abs(lu.determinant()) <= eps_inv)
    {
        throw Error(ErrorCode::not_invertible,
                    "det A(0) = " + std::to_string(std::abs(lu.determinant())));
    }
    const ComplexMatrix a0_inv = lu.inverse();
    const RingMatrix a0_inv_ring = RingMatrix::constant(ctx, a0_inv);
    RingMatrix e = mat_mul(a0_inv_ring, a) - RingMatrix::identity(ctx, a.rows());
    std::vector<Complex> neumann(ctx.degree_cap + 1);
    for (std::size_t p = 0; p < neumann.size(); ++p)
    {
        neumann[p] = (p % 2 == 0) ? 1.0 : -1.0;
    }
    // The constant part of E is rounding noise around zero.
    return mat_mul(mat_apply_entire(neumann, e, 1e-8), a0_inv_ring);
}

///
/// Faddeev-LeVerrier recursion over the ring. With
///   det(sI - A) = sum_{k=0}^n c_k s^{n-k},   adj(sI - A) = sum_{k=1}^n M_k s^{n-k},
/// M_1 = I, c_0 = 1, c_k = -tr(A M_k)/k, M_{k+1} = A M_k + c_k I.
/// Only ring operations and division by integers are used.
///
struct CharacteristicData
{
    std::vector<RingElement> coeffs;  // c_0 .. c_n
    std::vector<RingMatrix> adj_terms; // M_1 .. M_n
};

inline CharacteristicData faddeev_leverrier(const RingMatrix& a)
{
    detail::require_square(a, "faddeev_leverrier");
    const auto& ctx = a.context();
    const std::size_t n = a.rows();
    CharacteristicData out;
    out.coeffs.reserve(n + 1);
    out.adj_terms.reserve(n);
    out.coeffs.emplace_back(ctx, 1.0);
    RingMatrix m = RingMatrix::identity(ctx, n);
    for (std::size_t k = 1; k <= n; ++k)
    {
        out.adj_terms.push_back(m);
        const RingMatrix am = mat_mul(a, m);
        RingElement trace(ctx);
        for (std::size_t i = 0; i < n; ++i)
        {
            trace = trace + am(i, i);
        }
        RingElement ck = Complex(-1.0 / static_cast<double>(k)) * trace;
        if (k < n)
        {
            m = am + ck * RingMatrix::identity(ctx, n);
        }
        out.coeffs.push_back(std::move(ck));
    }
    return out;
}

inline RingElement mat_det(const RingMatrix& a)
{
    const auto fl = faddeev_leverrier(a);
    const double sign = (a.rows() % 2 == 0) ? 1.0 : -1.0;
    return Complex(sign) * fl.coeffs.back();
}

inline RingMatrix mat_adjugate(const RingMatrix& a)
{
    const auto fl = faddeev_leverrier(a);
    const double sign = (a.rows() % 2 == 1) ? 1.0 : -1.0;
    return Complex(sign) * fl.adj_terms.back();
}

/// max |A_ij - conj(A_ji)| over all coefficients.
inline double hermitian_defect(const RingMatrix& a)
{
    detail::require_square(a, "hermitian_defect");
    const RingMatrix ah = adjoint(a);
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
    {
        m = std::max(m, max_abs_diff(a.entries()[i], ah.entries()[i]));
    }
    return m;
}

inline double min_eigenvalue_hermitian(const ComplexMatrix& h)
{
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

///
/// Factor a strictly positive ring matrix as A = G G* with G invertible.
/// Such a factorization exists exactly when A(0) is positive definite.
///
/// With S0 = A(0)^{1/2} and E = S0^{-1} (A - A(0)) S0^{-1} (Hermitian,
/// E(0) = 0), G = S0 (I + E)^{1/2}; the square root has real Taylor
/// coefficients so it commutes with the adjoint and G G* = S0 (I + E) S0 = A.
///
inline RingMatrix strict_positive_factor(const RingMatrix& a,
                                         double eps_pd = kDefaultEpsPd,
                                         double herm_tol = 1e-10)
{
    detail::require_square(a, "strict_positive_factor");
    const auto& ctx = a.context();
    if (const double defect = hermitian_defect(a); defect > herm_tol)
    {
        throw Error(ErrorCode::not_hermitian,
                    "A* differs from A by " + std::to_string(defect));
    }
    ComplexMatrix a0 = eval_origin(a);
    a0 = 0.5 * (a0 + a0.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a0);
    const double min_eig = es.eigenvalues().minCoeff();
    if (!(min_eig > eps_pd))
    {
        throw Error(ErrorCode::not_positive_definite,
                    "A(0) has minimum eigenvalue " + std::to_string(min_eig) +
                        "; strictly positive ring matrices are exactly those "
                        "with positive definite constant part");
    }
    const ComplexMatrix s0 = es.operatorSqrt();
    const ComplexMatrix s0_inv = es.operatorInverseSqrt();
    const RingMatrix s0_ring = RingMatrix::constant(ctx, s0);
    const RingMatrix s0_inv_ring = RingMatrix::constant(ctx, s0_inv);
    const RingMatrix e = mat_mul(
        mat_mul(s0_inv_ring, a - RingMatrix::constant(ctx, eval_origin(a))),
        s0_inv_ring);
    const auto sqrt_coeffs = taylor_sqrt1p(ctx.degree_cap + 1);
    return mat_mul(s0_ring, mat_apply_entire(sqrt_coeffs, e, 1e-8));
}

} // namespace wickpick

#endif /* WICKPICK_RING_MATRIX_HPP */

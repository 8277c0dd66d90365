#ifndef WICKPICK_RING_ELEMENT_HPP
#define WICKPICK_RING_ELEMENT_HPP

#include <cmath>
#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <wickpick/error.hpp>
#include <wickpick/multi_index.hpp>

namespace wickpick
{

using Complex = std::complex<double>;

/// Threshold below which a constant term counts as zero (invertibility,
/// nilpotency checks).
inline constexpr double kDefaultEpsInv = 1e-12;

///
/// An element of the truncated power-series ring: a sparse map from admitted
/// multi-indices to complex coefficients. Exact zeros are never stored and
/// iteration follows the graded lexicographic order of MultiIndex.
///
class RingElement
{
public:
    using Terms = std::map<MultiIndex, Complex>;

    RingElement() = default;

    explicit RingElement(TruncationContext ctx) : ctx_(ctx) {}

    RingElement(TruncationContext ctx, Complex constant) : ctx_(ctx)
    {
        if (constant != Complex(0.0))
        {
            terms_.emplace(MultiIndex{}, constant);
        }
    }

    static RingElement monomial(TruncationContext ctx, const MultiIndex& alpha,
                                Complex coeff = 1.0)
    {
        RingElement r(ctx);
        r.check_admitted(alpha);
        if (coeff != Complex(0.0))
        {
            r.terms_.emplace(alpha, coeff);
        }
        return r;
    }

    /// c * z_var
    static RingElement variable(TruncationContext ctx, std::uint32_t var,
                                Complex coeff = 1.0)
    {
        return monomial(ctx, MultiIndex::variable(var), coeff);
    }

    static RingElement from_terms(TruncationContext ctx, Terms terms)
    {
        RingElement r(ctx);
        for (auto& [alpha, c] : terms)
        {
            r.check_admitted(alpha);
        }
        std::erase_if(terms, [](const auto& kv) {
            return kv.second == Complex(0.0);
        });
        r.terms_ = std::move(terms);
        return r;
    }

    const TruncationContext& context() const noexcept
    {
        return ctx_;
    }

    const Terms& terms() const noexcept
    {
        return terms_;
    }

    std::size_t size() const noexcept
    {
        return terms_.size();
    }

    bool is_zero() const noexcept
    {
        return terms_.empty();
    }

    Complex coeff(const MultiIndex& alpha) const
    {
        auto it = terms_.find(alpha);
        return it == terms_.end() ? Complex(0.0) : it->second;
    }

    Complex constant_term() const
    {
        auto it = terms_.begin();
        return (it != terms_.end() && it->first.empty()) ? it->second
                                                         : Complex(0.0);
    }

    std::string to_string() const
    {
        if (terms_.empty())
        {
            return "0";
        }
        std::string s;
        for (const auto& [alpha, c] : terms_)
        {
            if (!s.empty())
            {
                s += " + ";
            }
            s += "(" + std::to_string(c.real()) + "," +
                 std::to_string(c.imag()) + ")";
            if (!alpha.empty())
            {
                s += "*" + alpha.to_string();
            }
        }
        return s;
    }

private:
    friend RingElement linear_combine(Complex, const RingElement&, Complex,
                                      const RingElement&);
    friend RingElement wick_mul(const RingElement&, const RingElement&);
    friend RingElement conjugate(const RingElement&);
    friend RingElement operator*(Complex, const RingElement&);

    void check_admitted(const MultiIndex& alpha) const
    {
        if (!ctx_.admits(alpha))
        {
            throw Error(ErrorCode::invalid_argument,
                        "index " + alpha.to_string() +
                            " not admitted by context " + ctx_.to_string());
        }
    }

    TruncationContext ctx_;
    Terms terms_;
};

namespace detail
{

inline void require_same_context(const TruncationContext& a,
                                 const TruncationContext& b)
{
    if (!(a == b))
    {
        throw Error(ErrorCode::context_mismatch,
                    a.to_string() + " vs " + b.to_string());
    }
}

} // namespace detail

/// a F + b G, coefficientwise.
inline RingElement linear_combine(Complex a, const RingElement& f, Complex b,
                                  const RingElement& g)
{
    detail::require_same_context(f.ctx_, g.ctx_);
    RingElement out(f.ctx_);
    for (const auto& [alpha, c] : f.terms_)
    {
        out.terms_[alpha] += a * c;
    }
    for (const auto& [alpha, c] : g.terms_)
    {
        out.terms_[alpha] += b * c;
    }
    std::erase_if(out.terms_,
                  [](const auto& kv) { return kv.second == Complex(0.0); });
    return out;
}

///
/// Wick product: (F G)_c = sum_{a+b=c} f_a g_b, keeping only indices of
/// total degree <= d.
///
inline RingElement wick_mul(const RingElement& f, const RingElement& g)
{
    detail::require_same_context(f.ctx_, g.ctx_);
    const auto cap = f.ctx_.degree_cap;
    RingElement out(f.ctx_);
    for (const auto& [alpha, fa] : f.terms_)
    {
        for (const auto& [beta, gb] : g.terms_)
        {
            // g's terms are graded, so everything after this one is too big.
            if (alpha.degree() + beta.degree() > cap)
            {
                break;
            }
            out.terms_[alpha + beta] += fa * gb;
        }
    }
    std::erase_if(out.terms_,
                  [](const auto& kv) { return kv.second == Complex(0.0); });
    return out;
}

inline RingElement conjugate(const RingElement& f)
{
    RingElement out = f;
    for (auto& [alpha, c] : out.terms_)
    {
        c = std::conj(c);
    }
    return out;
}

/// Evaluation at the origin: the constant coefficient.
inline Complex eval_origin(const RingElement& f)
{
    return f.constant_term();
}

inline RingElement operator*(Complex s, const RingElement& f)
{
    if (s == Complex(0.0))
    {
        return RingElement(f.ctx_);
    }
    RingElement out = f;
    for (auto& [alpha, c] : out.terms_)
    {
        c *= s;
    }
    std::erase_if(out.terms_,
                  [](const auto& kv) { return kv.second == Complex(0.0); });
    return out;
}

inline RingElement operator*(const RingElement& f, Complex s)
{
    return s * f;
}

inline RingElement operator*(const RingElement& f, const RingElement& g)
{
    return wick_mul(f, g);
}

inline RingElement operator+(const RingElement& f, const RingElement& g)
{
    return linear_combine(1.0, f, 1.0, g);
}

inline RingElement operator-(const RingElement& f, const RingElement& g)
{
    return linear_combine(1.0, f, -1.0, g);
}

inline RingElement operator-(const RingElement& f)
{
    return Complex(-1.0) * f;
}

inline RingElement operator+(const RingElement& f, Complex c)
{
    return f + RingElement(f.context(), c);
}

inline RingElement operator+(Complex c, const RingElement& f)
{
    return RingElement(f.context(), c) + f;
}

inline RingElement operator-(const RingElement& f, Complex c)
{
    return f - RingElement(f.context(), c);
}

inline RingElement operator-(Complex c, const RingElement& f)
{
    return RingElement(f.context(), c) - f;
}

/// ||F||'_k = (sum |f_a|^2 (2N)^{-k a})^{1/2}
inline double norm_dual(const RingElement& f, int k)
{
    double s = 0.0;
    for (const auto& [alpha, c] : f.terms())
    {
        s += std::norm(c) * mi_weight(alpha, -static_cast<double>(k));
    }
    return std::sqrt(s);
}

/// ||F||_k = (sum (a!)^2 |f_a|^2 (2N)^{k a})^{1/2}
inline double norm_test(const RingElement& f, int k)
{
    double s = 0.0;
    for (const auto& [alpha, c] : f.terms())
    {
        const double fact = alpha.factorial();
        s += fact * fact * std::norm(c) *
             mi_weight(alpha, static_cast<double>(k));
    }
    return std::sqrt(s);
}

/// F^{n}, n-fold Wick power; F^0 = 1.
inline RingElement wick_pow(const RingElement& f, unsigned n)
{
    RingElement result(f.context(), 1.0);
    RingElement base = f;
    while (n > 0)
    {
        if (n & 1u)
        {
            result = wick_mul(result, base);
        }
        n >>= 1u;
        if (n > 0)
        {
            base = wick_mul(base, base);
        }
    }
    return result;
}

///
/// Inverse of an element with nonzero constant term c0. Writing
/// F = c0 (1 + e) with e nilpotent of order <= d + 1, the Neumann series
/// c0^{-1} sum_{n<=d} (-e)^n is exact in the truncation.
///
inline RingElement invert(const RingElement& f, double eps_inv = kDefaultEpsInv)
{
    const Complex c0 = f.constant_term();
    if (std::abs(c0) <= eps_inv)
    {
        throw Error(ErrorCode::not_invertible,
                    "constant term " + std::to_string(std::abs(c0)) +
                        " is not bounded away from zero");
    }
    const auto& ctx = f.context();
    RingElement minus_e =
        linear_combine(-1.0 / c0, f, 1.0, RingElement(ctx, 1.0));
    minus_e = minus_e - minus_e.constant_term();
    // Horner: 1 + m(1 + m(1 + ...))
    RingElement sum(ctx, 1.0);
    for (std::uint32_t n = 0; n < ctx.degree_cap; ++n)
    {
        sum = wick_mul(minus_e, sum) + Complex(1.0);
    }
    return (1.0 / c0) * sum;
}

///
/// sum_{p<=d} c_p F^p for F with zero constant term. F is nilpotent in the
/// truncation so this is the full series. Requires taylor.size() >= d + 1.
///
inline RingElement apply_entire(std::span<const Complex> taylor,
                                const RingElement& f,
                                double eps_inv = kDefaultEpsInv)
{
    const auto& ctx = f.context();
    if (std::abs(f.constant_term()) > eps_inv)
    {
        throw Error(ErrorCode::nonzero_constant_term,
                    "entire-function calculus needs a zero constant term");
    }
    const std::size_t terms = static_cast<std::size_t>(ctx.degree_cap) + 1;
    if (taylor.size() < terms)
    {
        throw Error(ErrorCode::invalid_argument,
                    "need " + std::to_string(terms) + " Taylor coefficients");
    }
    // Drop the (tiny) constant term so nilpotency is exact.
    const RingElement e = f - f.constant_term();
    RingElement sum(ctx, taylor[terms - 1]);
    for (std::size_t p = terms - 1; p-- > 0;)
    {
        sum = wick_mul(e, sum) + taylor[p];
    }
    return sum;
}

///
/// Taylor coefficients at the origin for a few entire/analytic functions used
/// with apply_entire.
///
inline std::vector<Complex> taylor_exp(std::size_t count)
{
    std::vector<Complex> c(count);
    double term = 1.0;
    for (std::size_t p = 0; p < count; ++p)
    {
        c[p] = term;
        term /= static_cast<double>(p + 1);
    }
    return c;
}

/// (1 + z)^s, binomial series.
inline std::vector<Complex> taylor_binomial(double s, std::size_t count)
{
    std::vector<Complex> c(count);
    double term = 1.0;
    for (std::size_t p = 0; p < count; ++p)
    {
        c[p] = term;
        term *= (s - static_cast<double>(p)) / static_cast<double>(p + 1);
    }
    return c;
}

inline std::vector<Complex> taylor_sqrt1p(std::size_t count)
{
    return taylor_binomial(0.5, count);
}

/// Cauchy product of two Taylor coefficient sequences, truncated to count.
inline std::vector<Complex> taylor_product(std::span<const Complex> f,
                                           std::span<const Complex> g,
                                           std::size_t count)
{
    std::vector<Complex> c(count, Complex(0.0));
    for (std::size_t i = 0; i < count && i < f.size(); ++i)
    {
        for (std::size_t j = 0; i + j < count && j < g.size(); ++j)
        {
            c[i + j] += f[i] * g[j];
        }
    }
    return c;
}

/// Largest coefficientwise |f_a - g_a|.
inline double max_abs_diff(const RingElement& f, const RingElement& g)
{
    double m = 0.0;
    const RingElement diff = f - g;
    for (const auto& [alpha, c] : diff.terms())
    {
        m = std::max(m, std::abs(c));
    }
    return m;
}

///
/// Coefficientwise comparison |f_a - g_a| <= atol + rtol * max(|f_a|, |g_a|).
///
inline bool approx_equal(const RingElement& f, const RingElement& g,
                         double atol = 1e-10, double rtol = 1e-10)
{
    detail::require_same_context(f.context(), g.context());
    auto check = [&](const MultiIndex& alpha) {
        const Complex a = f.coeff(alpha);
        const Complex b = g.coeff(alpha);
        return std::abs(a - b) <=
               atol + rtol * std::max(std::abs(a), std::abs(b));
    };
    for (const auto& kv : f.terms())
    {
        if (!check(kv.first))
        {
            return false;
        }
    }
    for (const auto& kv : g.terms())
    {
        if (!check(kv.first))
        {
            return false;
        }
    }
    return true;
}

} // namespace wickpick

#endif /* WICKPICK_RING_ELEMENT_HPP */

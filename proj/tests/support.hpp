#ifndef WICKPICK_TESTS_SUPPORT_HPP
#define WICKPICK_TESTS_SUPPORT_HPP

// Independent oracles and generators shared by the unit and acceptance tests.
// Nothing here calls the library routine it is used to check.

#include <cmath>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include <wickpick/random.hpp>
#include <wickpick/wickpick.hpp>

namespace testsupport
{

using namespace wickpick;

/// Coefficients keyed by a dense exponent vector of length m.
using Dense = std::map<std::vector<unsigned>, Complex>;

inline Dense to_dense(const RingElement& f)
{
    Dense out;
    const auto m = f.context().num_vars;
    for (const auto& [alpha, c] : f.terms())
    {
        std::vector<unsigned> e(m, 0);
        for (const auto& entry : alpha.entries())
        {
            e[entry.var - 1] = entry.exp;
        }
        out[e] += c;
    }
    return out;
}

inline RingElement from_dense(TruncationContext ctx, const Dense& d)
{
    RingElement::Terms terms;
    for (const auto& [e, c] : d)
    {
        std::vector<MultiIndex::Entry> entries;
        for (std::size_t j = 0; j < e.size(); ++j)
        {
            if (e[j] != 0)
            {
                entries.push_back({static_cast<std::uint32_t>(j + 1), e[j]});
            }
        }
        if (c != Complex{})
        {
            terms.emplace(MultiIndex(entries), c);
        }
    }
    return RingElement::from_terms(ctx, std::move(terms));
}

/// Full product of exponent vectors, then the degree filter.
inline RingElement dense_mul(const RingElement& f, const RingElement& g)
{
    const Dense a = to_dense(f);
    const Dense b = to_dense(g);
    Dense out;
    for (const auto& [ea, ca] : a)
    {
        for (const auto& [eb, cb] : b)
        {
            std::vector<unsigned> e(ea.size());
            unsigned deg = 0;
            for (std::size_t j = 0; j < e.size(); ++j)
            {
                e[j] = ea[j] + eb[j];
                deg += e[j];
            }
            if (deg <= f.context().degree_cap)
            {
                out[e] += ca * cb;
            }
        }
    }
    return from_dense(f.context(), out);
}

/// Element whose coefficients are the moduli of those of f.
inline RingElement abs_element(const RingElement& f)
{
    RingElement::Terms terms;
    for (const auto& [alpha, c] : f.terms())
    {
        terms.emplace(alpha, std::abs(c));
    }
    return RingElement::from_terms(f.context(), std::move(terms));
}

///
/// max over indices of |x - y| / bound, where bound is the matching
/// coefficient of a majorant (for products, the product of the moduli).
///
inline double coeff_rel_err(const RingElement& x, const RingElement& y,
                            const RingElement& majorant)
{
    double worst = 0.0;
    const RingElement diff = x - y;
    for (const auto& [alpha, c] : diff.terms())
    {
        const double b = std::abs(majorant.coeff(alpha));
        worst = std::max(worst, b > 0.0 ? std::abs(c) / b : std::abs(c) * 1e300);
    }
    return worst;
}

/// Laplace expansion along the first row.
inline RingElement cofactor_det(const RingMatrix& a)
{
    const auto n = a.rows();
    if (n == 1)
    {
        return a(0, 0);
    }
    RingElement det(a.context());
    for (std::size_t j = 0; j < n; ++j)
    {
        RingMatrix minor(a.context(), n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
        {
            for (std::size_t c = 0, cc = 0; c < n; ++c)
            {
                if (c != j)
                {
                    minor(r - 1, cc++) = a(r, c);
                }
            }
        }
        const RingElement term = wick_mul(a(0, j), cofactor_det(minor));
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

inline RingMatrix cofactor_adjugate(const RingMatrix& a)
{
    const auto n = a.rows();
    RingMatrix adj(a.context(), n, n);
    if (n == 1)
    {
        adj(0, 0) = RingElement(a.context(), 1.0);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            RingMatrix minor(a.context(), n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r)
            {
                if (r == i)
                {
                    continue;
                }
                for (std::size_t c = 0, cc = 0; c < n; ++c)
                {
                    if (c != j)
                    {
                        minor(rr, cc++) = a(r, c);
                    }
                }
                ++rr;
            }
            const RingElement m = cofactor_det(minor);
            adj(j, i) = ((i + j) % 2 == 0) ? m : -m;
        }
    }
    return adj;
}

/// Classical Pick matrix (1 - b_i conj(b_j)) / (1 - a_i conj(a_j)).
inline ComplexMatrix classical_pick(const std::vector<Complex>& a,
                                    const std::vector<Complex>& b)
{
    const auto n = static_cast<Eigen::Index>(a.size());
    ComplexMatrix p(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        for (Eigen::Index j = 0; j < n; ++j)
        {
            p(i, j) = (1.0 - b[i] * std::conj(b[j])) / (1.0 - a[i] * std::conj(a[j]));
        }
    }
    return p;
}

/// Theta(l) = I - (1 - l) C (I - l A)^{-1} P^{-1} (I - A)^{-*} C^* J, dense.
inline ComplexMatrix classical_theta(const std::vector<Complex>& a,
                                     const std::vector<Complex>& b, Complex l)
{
    const auto n = static_cast<Eigen::Index>(a.size());
    ComplexMatrix amat = ComplexMatrix::Zero(n, n);
    ComplexMatrix c(2, n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        amat(i, i) = std::conj(a[i]);
        c(0, i) = 1.0;
        c(1, i) = std::conj(b[i]);
    }
    ComplexMatrix j = ComplexMatrix::Zero(2, 2);
    j(0, 0) = 1.0;
    j(1, 1) = -1.0;
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix p = classical_pick(a, b);
    const ComplexMatrix inner = (id - l * amat).inverse() * p.inverse() *
                                (id - amat).adjoint().inverse();
    return ComplexMatrix::Identity(2, 2) - (1.0 - l) * c * inner * c.adjoint() * j;
}

/// Taylor coefficients of num/den at 0 by recursive division.
inline std::vector<RingMatrix> series_divide(const RingPoly& num,
                                             const RingPoly& den, std::size_t n)
{
    const RingElement inv0 = invert(den.scalar_coeff(0));
    std::vector<RingMatrix> h;
    for (std::size_t k = 0; k <= n; ++k)
    {
        RingMatrix acc = k <= static_cast<std::size_t>(num.degree())
                             ? num.coeff(k)
                             : RingMatrix(num.context(), num.rows(), num.cols());
        for (std::size_t j = 1; j <= k; ++j)
        {
            if (j <= static_cast<std::size_t>(den.degree()))
            {
                acc = acc - den.scalar_coeff(j) * h[k - j];
            }
        }
        h.push_back(inv0 * acc);
    }
    return h;
}

///
/// p(r) for a scalar polynomial via the Taylor expansion around a = E(r):
/// sum_n (r - a)^n sum_k binom(k, n) p_k a^{k - n}.
///
inline RingElement taylor_shift_eval(const std::vector<RingElement>& p,
                                     const RingElement& r)
{
    const Complex a = r.constant_term();
    const RingElement e = r - a;
    RingElement out(r.context());
    RingElement e_pow(r.context(), 1.0);
    for (std::size_t n = 0; n < p.size(); ++n)
    {
        RingElement shifted(r.context());
        for (std::size_t k = n; k < p.size(); ++k)
        {
            const double binom = std::tgamma(k + 1.0) /
                                 (std::tgamma(n + 1.0) * std::tgamma(k - n + 1.0));
            shifted = shifted + (binom * std::pow(a, static_cast<double>(k - n))) * p[k];
        }
        out = out + dense_mul(shifted, e_pow);
        e_pow = dense_mul(e_pow, e);
    }
    return out;
}

/// Random Hermitian n x n ring matrix whose constant part has the given
/// eigenvalues; the non-constant part is Hermitian with coefficients <= scale.
inline RingMatrix random_hermitian(Rng& rng, TruncationContext ctx,
                                   const std::vector<double>& spectrum,
                                   double scale)
{
    const auto n = static_cast<Eigen::Index>(spectrum.size());
    ComplexMatrix x(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        for (Eigen::Index j = 0; j < n; ++j)
        {
            x(i, j) = random_complex(rng, 1.0);
        }
    }
    const ComplexMatrix q = Eigen::HouseholderQR<ComplexMatrix>(x).householderQ();
    Eigen::VectorXcd lam(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        lam(i) = spectrum[static_cast<std::size_t>(i)];
    }
    ComplexMatrix a0 = q * lam.asDiagonal() * q.adjoint();
    a0 = 0.5 * (a0 + a0.adjoint()).eval();

    RingMatrix a = RingMatrix::constant(ctx, a0);
    for (std::size_t i = 0; i < spectrum.size(); ++i)
    {
        for (std::size_t j = i; j < spectrum.size(); ++j)
        {
            RingElement e = random_element(rng, ctx, scale, false);
            if (i == j)
            {
                e = 0.5 * (e + conjugate(e));
            }
            a(i, j) = a(i, j) + e;
            if (i != j)
            {
                a(j, i) = a(j, i) + conjugate(e);
            }
        }
    }
    return a;
}

/// Scalar ring polynomial with random coefficients of degree deg.
inline RingPoly random_scalar_poly(Rng& rng, TruncationContext ctx,
                                   std::size_t deg, double scale)
{
    std::vector<RingElement> c;
    for (std::size_t k = 0; k <= deg; ++k)
    {
        c.push_back(random_element(rng, ctx, scale));
    }
    return RingPoly::scalar(c);
}

///
/// Random matrix-valued rational function whose projected denominator
/// has its roots in 1.2 <= |z| <= 2, together with those roots.
///
struct RandomRational
{
    RingRational f;
    std::vector<Complex> poles;
};

inline RandomRational random_rational(Rng& rng, TruncationContext ctx,
                                      std::size_t rows, std::size_t cols,
                                      std::size_t num_deg, std::size_t den_deg)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<RingMatrix> num;
    for (std::size_t k = 0; k <= num_deg; ++k)
    {
        num.push_back(random_matrix(rng, ctx, rows, cols, 0.5));
    }
    RandomRational out;
    RingPoly den = RingPoly::scalar({RingElement(ctx, 1.0)});
    for (std::size_t k = 0; k < den_deg; ++k)
    {
        const Complex p = std::polar(1.2 + 0.8 * u(rng), 2.0 * std::numbers::pi * u(rng));
        out.poles.push_back(p);
        // (1 - lambda / p) with a nilpotent perturbation of the root.
        const RingElement root = random_perturbation_of(rng, ctx, 1.0 / p, 0.1);
        den = den * RingPoly::scalar({RingElement(ctx, 1.0), -root});
    }
    out.f = RingRational(RingPoly(num), den);
    return out;
}

} // namespace testsupport

#endif /* WICKPICK_TESTS_SUPPORT_HPP */

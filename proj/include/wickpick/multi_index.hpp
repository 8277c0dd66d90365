#ifndef WICKPICK_MULTI_INDEX_HPP
#define WICKPICK_MULTI_INDEX_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <wickpick/error.hpp>

namespace wickpick
{

///
/// Finitely supported exponent sequence, the index of the monomial
/// z_1^{a_1} z_2^{a_2} ...
///
/// Stored sparsely as (variable, exponent) pairs with strictly increasing
/// variable indices (1-based) and no zero exponents.
///
class MultiIndex
{
public:
    struct Entry
    {
        std::uint32_t var;
        std::uint32_t exp;

        friend bool operator==(const Entry&, const Entry&) = default;
    };

    MultiIndex() = default;

    MultiIndex(std::initializer_list<Entry> entries)
        : MultiIndex(std::vector<Entry>(entries))
    {
    }

    /// Canonicalizes the list: sorts by variable and drops zero exponents.
    /// A variable index of 0 or a repeated variable is rejected.
    explicit MultiIndex(std::vector<Entry> entries)
    {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.var < b.var; });
        for (std::size_t i = 0; i < entries.size(); ++i)
        {
            if (entries[i].var == 0)
            {
                throw Error(ErrorCode::invalid_argument,
                            "multi-index variables are numbered from 1");
            }
            if (i > 0 && entries[i].var == entries[i - 1].var)
            {
                throw Error(ErrorCode::invalid_argument,
                            "repeated variable " +
                                std::to_string(entries[i].var) +
                                " in multi-index");
            }
        }
        std::erase_if(entries, [](const Entry& e) { return e.exp == 0; });
        entries_ = std::move(entries);
        for (const auto& e : entries_)
        {
            degree_ += e.exp;
        }
    }

    static MultiIndex variable(std::uint32_t var, std::uint32_t exp = 1)
    {
        return MultiIndex({Entry{var, exp}});
    }

    std::span<const Entry> entries() const noexcept
    {
        return entries_;
    }

    bool empty() const noexcept
    {
        return entries_.empty();
    }

    /// Total degree |a|.
    std::uint32_t degree() const noexcept
    {
        return degree_;
    }

    /// Largest variable index in the support, 0 for the empty index.
    std::uint32_t max_var() const noexcept
    {
        return entries_.empty() ? 0 : entries_.back().var;
    }

    std::uint32_t exponent(std::uint32_t var) const noexcept
    {
        for (const auto& e : entries_)
        {
            if (e.var == var)
            {
                return e.exp;
            }
        }
        return 0;
    }

    /// a! = prod_j a_j!
    double factorial() const
    {
        double f = 1.0;
        for (const auto& e : entries_)
        {
            f *= std::tgamma(static_cast<double>(e.exp) + 1.0);
        }
        return f;
    }

    /// Index addition, the Wick product on basis elements.
    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b)
    {
        MultiIndex out;
        out.entries_.reserve(a.entries_.size() + b.entries_.size());
        auto ia = a.entries_.begin();
        auto ib = b.entries_.begin();
        while (ia != a.entries_.end() || ib != b.entries_.end())
        {
            if (ib == b.entries_.end() ||
                (ia != a.entries_.end() && ia->var < ib->var))
            {
                out.entries_.push_back(*ia++);
            }
            else if (ia == a.entries_.end() || ib->var < ia->var)
            {
                out.entries_.push_back(*ib++);
            }
            else
            {
                out.entries_.push_back(Entry{ia->var, ia->exp + ib->exp});
                ++ia;
                ++ib;
            }
        }
        out.degree_ = a.degree_ + b.degree_;
        return out;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b)
    {
        return a.entries_ == b.entries_;
    }

    ///
    /// Graded lexicographic order: lower total degree first; within a degree,
    /// the larger exponent on the lowest differing variable comes first
    /// (z1^2 < z1 z2 < z2^2).
    ///
    friend std::strong_ordering operator<=>(const MultiIndex& a,
                                            const MultiIndex& b)
    {
        if (auto c = a.degree_ <=> b.degree_; c != 0)
        {
            return c;
        }
        auto ia = a.entries_.begin();
        auto ib = b.entries_.begin();
        while (ia != a.entries_.end() && ib != b.entries_.end())
        {
            if (ia->var != ib->var)
            {
                // The index with the lower variable has the larger exponent
                // there (the other has zero).
                return ia->var < ib->var ? std::strong_ordering::less
                                         : std::strong_ordering::greater;
            }
            if (ia->exp != ib->exp)
            {
                return ia->exp > ib->exp ? std::strong_ordering::less
                                         : std::strong_ordering::greater;
            }
            ++ia;
            ++ib;
        }
        // Equal degree and one list is a prefix of the other means both ended.
        return std::strong_ordering::equal;
    }

    std::string to_string() const
    {
        if (entries_.empty())
        {
            return "1";
        }
        std::string s;
        for (const auto& e : entries_)
        {
            if (!s.empty())
            {
                s += '*';
            }
            s += "z" + std::to_string(e.var);
            if (e.exp != 1)
            {
                s += "^" + std::to_string(e.exp);
            }
        }
        return s;
    }

private:
    std::vector<Entry> entries_;
    std::uint32_t degree_ = 0;
};

///
/// (2N)^{q a} = prod_j (2j)^{q a_j}. Large |a| q may overflow to +inf.
///
inline double mi_weight(const MultiIndex& alpha, double q)
{
    double w = 1.0;
    for (const auto& e : alpha.entries())
    {
        w *= std::pow(2.0 * static_cast<double>(e.var),
                      q * static_cast<double>(e.exp));
    }
    return w;
}

///
/// The finite quotient in which all arithmetic happens: monomials in
/// z_1..z_m of total degree at most d. Products of higher degree are dropped.
///
struct TruncationContext
{
    std::uint32_t num_vars = 0;
    std::uint32_t degree_cap = 0;

    friend bool operator==(const TruncationContext&,
                           const TruncationContext&) = default;

    bool admits(const MultiIndex& alpha) const noexcept
    {
        return alpha.max_var() <= num_vars && alpha.degree() <= degree_cap;
    }

    /// Number of admitted indices, C(m + d, d).
    std::uint64_t size() const noexcept
    {
        std::uint64_t c = 1;
        for (std::uint32_t i = 1; i <= degree_cap; ++i)
        {
            c = c * (num_vars + i) / i;
        }
        return c;
    }

    /// All admitted indices in graded lexicographic order.
    std::vector<MultiIndex> enumerate() const
    {
        std::vector<MultiIndex> out;
        out.reserve(size());
        std::vector<MultiIndex::Entry> current;
        enumerate_from(1, degree_cap, current, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string to_string() const
    {
        return "(m=" + std::to_string(num_vars) +
               ", d=" + std::to_string(degree_cap) + ")";
    }

private:
    void enumerate_from(std::uint32_t var, std::uint32_t budget,
                        std::vector<MultiIndex::Entry>& current,
                        std::vector<MultiIndex>& out) const
    {
        if (var > num_vars)
        {
            out.emplace_back(current);
            return;
        }
        for (std::uint32_t e = 0; e <= budget; ++e)
        {
            if (e > 0)
            {
                current.push_back({var, e});
            }
            enumerate_from(var + 1, budget - e, current, out);
            if (e > 0)
            {
                current.pop_back();
            }
        }
    }
};

} // namespace wickpick

#endif /* WICKPICK_MULTI_INDEX_HPP */

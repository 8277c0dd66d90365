#ifndef WICKPICK_SERIALIZE_HPP
#define WICKPICK_SERIALIZE_HPP

#include <cmath>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <wickpick/interpolation.hpp>

namespace wickpick::io
{

using Json = nlohmann::ordered_json;

namespace detail
{

[[noreturn]] inline void fail(const std::string& what)
{
    throw Error(ErrorCode::parse_error, what);
}

inline void only_keys(const Json& j, std::initializer_list<const char*> allowed,
                      const char* what)
{
    if (!j.is_object())
    {
        fail(std::string(what) + " must be an object");
    }
    for (const auto& item : j.items())
    {
        bool ok = false;
        for (const char* a : allowed)
        {
            ok = ok || item.key() == a;
        }
        if (!ok)
        {
            fail("unknown field '" + item.key() + "' in " + what);
        }
    }
}

inline const Json& require(const Json& j, const char* key, const char* what)
{
    if (!j.contains(key))
    {
        fail(std::string(what) + " is missing '" + key + "'");
    }
    return j.at(key);
}

inline std::uint32_t as_uint(const Json& j, const char* what)
{
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    {
        fail(std::string(what) + " must be a non-negative integer");
    }
    return j.get<std::uint32_t>();
}

inline double as_double(const Json& j, const char* what)
{
    if (!j.is_number())
    {
        fail(std::string(what) + " must be a number");
    }
    return j.get<double>();
}

/// Reads {m, d} from an object if present, checking against `expected`.
inline TruncationContext context_of(const Json& j,
                                    const std::optional<TruncationContext>& expected,
                                    const char* what)
{
    const bool has_m = j.contains("m");
    const bool has_d = j.contains("d");
    if (has_m != has_d)
    {
        fail(std::string(what) + " must give both m and d");
    }
    if (!has_m)
    {
        if (!expected)
        {
            fail(std::string(what) + " needs a context {m, d}");
        }
        return *expected;
    }
    TruncationContext ctx{as_uint(j.at("m"), "m"), as_uint(j.at("d"), "d")};
    if (expected && !(*expected == ctx))
    {
        fail(std::string(what) + " context " + ctx.to_string() +
             " differs from " + expected->to_string());
    }
    return ctx;
}

} // namespace detail

inline Json complex_to_json(Complex c)
{
    return Json::array({c.real(), c.imag()});
}

inline Complex complex_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 2)
    {
        detail::fail("complex numbers are written [re, im]");
    }
    return {detail::as_double(j[0], "re"), detail::as_double(j[1], "im")};
}

inline Json to_json(const MultiIndex& alpha)
{
    Json out = Json::array();
    for (const auto& e : alpha.entries())
    {
        out.push_back(Json::array({e.var, e.exp}));
    }
    return out;
}

inline MultiIndex multi_index_from_json(const Json& j)
{
    if (!j.is_array())
    {
        detail::fail("multi-index must be a list of [var, exp] pairs");
    }
    std::vector<MultiIndex::Entry> entries;
    for (const auto& pair : j)
    {
        if (!pair.is_array() || pair.size() != 2)
        {
            detail::fail("multi-index entries are [var, exp] pairs");
        }
        entries.push_back({detail::as_uint(pair[0], "var"),
                           detail::as_uint(pair[1], "exp")});
    }
    try
    {
        return MultiIndex(std::move(entries));
    }
    catch (const Error& e)
    {
        detail::fail(e.what());
    }
}

inline Json terms_to_json(const RingElement& r)
{
    Json terms = Json::array();
    for (const auto& [alpha, c] : r.terms())
    {
        terms.push_back(
            Json{{"index", to_json(alpha)}, {"re", c.real()}, {"im", c.imag()}});
    }
    return terms;
}

inline Json to_json(const RingElement& r)
{
    return Json{{"m", r.context().num_vars},
                {"d", r.context().degree_cap},
                {"terms", terms_to_json(r)}};
}

inline RingElement element_from_json(
    const Json& j, const std::optional<TruncationContext>& expected = std::nullopt)
{
    detail::only_keys(j, {"m", "d", "terms"}, "element");
    const auto ctx = detail::context_of(j, expected, "element");
    const Json& terms = detail::require(j, "terms", "element");
    if (!terms.is_array())
    {
        detail::fail("element terms must be a list");
    }
    RingElement::Terms map;
    for (const auto& t : terms)
    {
        detail::only_keys(t, {"index", "re", "im"}, "term");
        MultiIndex alpha =
            multi_index_from_json(detail::require(t, "index", "term"));
        const Complex c{detail::as_double(detail::require(t, "re", "term"), "re"),
                        detail::as_double(detail::require(t, "im", "term"), "im")};
        if (map.contains(alpha))
        {
            detail::fail("repeated index " + alpha.to_string());
        }
        map.emplace(std::move(alpha), c);
    }
    try
    {
        return RingElement::from_terms(ctx, std::move(map));
    }
    catch (const Error& e)
    {
        detail::fail(e.what());
    }
}

inline Json to_json(const RingMatrix& m)
{
    Json entries = Json::array();
    for (const auto& e : m.entries())
    {
        entries.push_back(to_json(e));
    }
    return Json{{"m", m.context().num_vars},
                {"d", m.context().degree_cap},
                {"rows", m.rows()},
                {"cols", m.cols()},
                {"entries", std::move(entries)}};
}

inline RingMatrix matrix_from_json(
    const Json& j, const std::optional<TruncationContext>& expected = std::nullopt)
{
    detail::only_keys(j, {"m", "d", "rows", "cols", "entries"}, "matrix");
    const auto ctx = detail::context_of(j, expected, "matrix");
    const auto rows = detail::as_uint(detail::require(j, "rows", "matrix"), "rows");
    const auto cols = detail::as_uint(detail::require(j, "cols", "matrix"), "cols");
    const Json& entries = detail::require(j, "entries", "matrix");
    if (!entries.is_array() || entries.size() != std::size_t(rows) * cols ||
        rows == 0 || cols == 0)
    {
        detail::fail("matrix needs rows*cols > 0 entries");
    }
    std::vector<RingElement> elems;
    for (const auto& e : entries)
    {
        elems.push_back(element_from_json(e, ctx));
    }
    return RingMatrix(rows, cols, std::move(elems));
}

inline Json to_json(const RingPoly& p)
{
    Json out = Json::array();
    for (const auto& c : p.coeffs())
    {
        out.push_back(to_json(c));
    }
    return out;
}

inline Json to_json(const RingRational& f)
{
    Json den = Json::array();
    for (std::size_t k = 0; k <= f.den().degree(); ++k)
    {
        den.push_back(to_json(f.den().scalar_coeff(k)));
    }
    return Json{{"num", to_json(f.num())}, {"den", std::move(den)}};
}

inline RingRational rational_from_json(const Json& j)
{
    detail::only_keys(j, {"num", "den"}, "rational");
    const Json& num = detail::require(j, "num", "rational");
    const Json& den = detail::require(j, "den", "rational");
    if (!num.is_array() || num.empty() || !den.is_array() || den.empty())
    {
        detail::fail("rational needs non-empty num and den coefficient lists");
    }
    std::vector<RingMatrix> num_coeffs;
    std::optional<TruncationContext> ctx;
    for (const auto& c : num)
    {
        num_coeffs.push_back(matrix_from_json(c, ctx));
        ctx = num_coeffs.back().context();
    }
    std::vector<RingElement> den_coeffs;
    for (const auto& c : den)
    {
        den_coeffs.push_back(element_from_json(c, ctx));
    }
    try
    {
        return RingRational(RingPoly(std::move(num_coeffs)),
                            RingPoly::scalar(den_coeffs));
    }
    catch (const Error& e)
    {
        detail::fail(e.what());
    }
}

inline Json to_json(const Realization& r)
{
    return Json{{"A", to_json(r.a)},
                {"B", to_json(r.b)},
                {"C", to_json(r.c)},
                {"D", to_json(r.d)}};
}

inline Realization realization_from_json(const Json& j)
{
    detail::only_keys(j, {"A", "B", "C", "D"}, "realization");
    Realization r{matrix_from_json(detail::require(j, "A", "realization")),
                  {},
                  {},
                  {}};
    const auto ctx = r.a.context();
    r.b = matrix_from_json(detail::require(j, "B", "realization"), ctx);
    r.c = matrix_from_json(detail::require(j, "C", "realization"), ctx);
    r.d = matrix_from_json(detail::require(j, "D", "realization"), ctx);
    try
    {
        r.validate();
    }
    catch (const Error& e)
    {
        detail::fail(e.what());
    }
    return r;
}

/// Options a problem file may carry. Unset fields fall back to defaults.
struct ProblemOptions
{
    std::optional<int> k_report;
    std::optional<double> tol;
    std::optional<std::size_t> grid;
    std::optional<double> radius;
    std::optional<double> eps_schur;
    std::optional<double> eps_pd;
};

struct ProblemFile
{
    InterpolationProblem problem;
    std::optional<std::vector<RingElement>> parameter;
    ProblemOptions options;
};

inline ProblemFile problem_from_json(const Json& j)
{
    detail::only_keys(j, {"context", "points", "targets", "parameter", "options"},
                      "problem");
    const Json& cj = detail::require(j, "context", "problem");
    detail::only_keys(cj, {"m", "d"}, "context");
    const auto ctx = detail::context_of(cj, std::nullopt, "context");

    ProblemFile out;
    out.problem.ctx = ctx;
    const Json& points = detail::require(j, "points", "problem");
    const Json& targets = detail::require(j, "targets", "problem");
    if (!points.is_array() || !targets.is_array())
    {
        detail::fail("points and targets must be lists of elements");
    }
    for (const auto& p : points)
    {
        out.problem.points.push_back(element_from_json(p, ctx));
    }
    for (const auto& t : targets)
    {
        out.problem.targets.push_back(element_from_json(t, ctx));
    }
    if (j.contains("parameter"))
    {
        const Json& g = j.at("parameter");
        if (!g.is_array() || g.empty())
        {
            detail::fail("parameter must be a non-empty list of coefficients");
        }
        std::vector<RingElement> coeffs;
        for (const auto& c : g)
        {
            coeffs.push_back(element_from_json(c, ctx));
        }
        out.parameter = std::move(coeffs);
    }
    if (j.contains("options"))
    {
        const Json& o = j.at("options");
        detail::only_keys(o, {"k_report", "tol", "grid", "radius", "eps_schur",
                              "eps_pd"},
                          "options");
        auto& opt = out.options;
        if (o.contains("k_report"))
        {
            opt.k_report = static_cast<int>(detail::as_uint(o["k_report"], "k_report"));
        }
        if (o.contains("tol"))
        {
            opt.tol = detail::as_double(o["tol"], "tol");
        }
        if (o.contains("grid"))
        {
            opt.grid = detail::as_uint(o["grid"], "grid");
        }
        if (o.contains("radius"))
        {
            opt.radius = detail::as_double(o["radius"], "radius");
        }
        if (o.contains("eps_schur"))
        {
            opt.eps_schur = detail::as_double(o["eps_schur"], "eps_schur");
        }
        if (o.contains("eps_pd"))
        {
            opt.eps_pd = detail::as_double(o["eps_pd"], "eps_pd");
        }
    }
    return out;
}

inline Json to_json(const ProblemFile& pf)
{
    Json points = Json::array();
    Json targets = Json::array();
    for (std::size_t i = 0; i < pf.problem.size(); ++i)
    {
        points.push_back(Json{{"terms", terms_to_json(pf.problem.points[i])}});
        targets.push_back(Json{{"terms", terms_to_json(pf.problem.targets[i])}});
    }
    Json out{{"context",
              {{"m", pf.problem.ctx.num_vars}, {"d", pf.problem.ctx.degree_cap}}},
             {"points", std::move(points)},
             {"targets", std::move(targets)}};
    if (pf.parameter)
    {
        Json g = Json::array();
        for (const auto& c : *pf.parameter)
        {
            g.push_back(Json{{"terms", terms_to_json(c)}});
        }
        out["parameter"] = std::move(g);
    }
    return out;
}

/// Flat record of named numbers and flags.
inline Json to_json(const SolutionReport& r)
{
    Json out;
    out["n"] = r.residuals.size();
    out["k_report"] = r.k_report;
    out["residual_tol"] = r.residual_tol;
    for (std::size_t i = 0; i < r.residuals.size(); ++i)
    {
        out["residual_" + std::to_string(i)] = r.residuals[i];
    }
    for (std::size_t i = 0; i < r.homogeneous_residuals.size(); ++i)
    {
        out["homogeneous_residual_" + std::to_string(i)] =
            r.homogeneous_residuals[i];
    }
    out["max_residual"] = r.max_residual;
    out["max_homogeneous_residual"] = r.max_homogeneous_residual;
    for (std::size_t i = 0; i < r.pick_spectrum.size(); ++i)
    {
        out["pick_eigenvalue_" + std::to_string(i)] = r.pick_spectrum[i];
    }
    out["has_projected_poles"] = std::isfinite(r.min_pole_modulus);
    if (std::isfinite(r.min_pole_modulus))
    {
        out["min_pole_modulus"] = r.min_pole_modulus;
    }
    if (std::isfinite(r.schur_max_modulus))
    {
        out["schur_max_modulus"] = r.schur_max_modulus;
    }
    out["residuals_ok"] = r.residuals_ok;
    out["poles_ok"] = r.poles_ok;
    out["schur_ok"] = r.schur_ok;
    out["pass"] = r.pass();
    return out;
}

} // namespace wickpick::io

#endif /* WICKPICK_SERIALIZE_HPP */

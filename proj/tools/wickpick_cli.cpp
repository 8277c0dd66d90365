// Command-line front end: solve / verify interpolation problems, evaluate
// rational functions at ring points, and print norms and constants.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <wickpick/random.hpp>
#include <wickpick/serialize.hpp>
#include <wickpick/vage.hpp>

namespace
{

using namespace wickpick;
using io::Json;

constexpr const char* kToolName = "wickpick";
constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int
{
    kOk = 0,
    kVerificationFailed = 1,
    kInputError = 2,
    kUnsolvable = 3,
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw Error(ErrorCode::parse_error, "cannot read " + path);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Json parse_json(const std::string& text, const std::string& path)
{
    try
    {
        return Json::parse(text);
    }
    catch (const Json::exception& e)
    {
        throw Error(ErrorCode::parse_error, path + ": " + e.what());
    }
}

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i)
    {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

/// Writes regular files via a temporary file and rename; "-" means stdout.
void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        std::cout.flush();
        return;
    }
    namespace fs = std::filesystem;
    std::error_code ec;
    const auto status = fs::status(path, ec);
    if (fs::exists(status) && !fs::is_regular_file(status))
    {
        // Devices and pipes cannot be replaced by rename.
        std::ofstream out(path, std::ios::binary);
        if (!out)
        {
            throw Error(ErrorCode::invalid_argument, "cannot write " + path);
        }
        out << text;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
        {
            throw Error(ErrorCode::invalid_argument, "cannot write " + path);
        }
        out << text;
    }
    std::filesystem::rename(tmp, path);
}

struct VerifyFlags
{
    std::optional<int> k_report;
    std::optional<double> tol;
    std::optional<std::size_t> grid;
    std::optional<double> radius;
    std::optional<double> eps_schur;
    std::optional<double> eps_pd;
};

void add_verify_flags(CLI::App* cmd, VerifyFlags& f)
{
    cmd->add_option("--k-report", f.k_report, "dual-norm level for residuals (default 4)");
    cmd->add_option("--tol", f.tol, "residual tolerance (default 1e-8)");
    cmd->add_option("--grid", f.grid, "Schur-check grid size (default 200)");
    cmd->add_option("--radius", f.radius, "Schur-check grid radius (default 0.95)");
    cmd->add_option("--eps-schur", f.eps_schur, "strict contractivity margin (default 1e-3)");
    cmd->add_option("--eps-pd", f.eps_pd, "positive-definiteness floor (default 1e-10)");
}

/// Command-line flags override the problem file, which overrides defaults.
VerifyOptions resolve_options(const io::ProblemOptions& file, const VerifyFlags& flags)
{
    VerifyOptions o;
    o.k_report = flags.k_report.value_or(file.k_report.value_or(o.k_report));
    o.residual_tol = flags.tol.value_or(file.tol.value_or(o.residual_tol));
    o.schur.grid = flags.grid.value_or(file.grid.value_or(o.schur.grid));
    o.schur.radius = flags.radius.value_or(file.radius.value_or(o.schur.radius));
    o.schur.eps_schur =
        flags.eps_schur.value_or(file.eps_schur.value_or(o.schur.eps_schur));
    o.eps_pd = flags.eps_pd.value_or(file.eps_pd.value_or(o.eps_pd));
    if (o.k_report < 1 || o.schur.grid < 1 || !(o.residual_tol >= 0.0))
    {
        throw Error(ErrorCode::invalid_argument, "invalid verification options");
    }
    return o;
}

Json options_to_json(const VerifyOptions& o)
{
    return Json{{"k_report", o.k_report},
                {"tol", o.residual_tol},
                {"grid", o.schur.grid},
                {"radius", o.schur.radius},
                {"eps_schur", o.schur.eps_schur},
                {"eps_pd", o.eps_pd}};
}

std::string report_text(const std::string& digest, const VerifyOptions& opts,
                        const SolutionReport& report, const Json& extra)
{
    Json out{{"tool", kToolName},
             {"version", kToolVersion},
             {"input_digest", "sha256:" + digest},
             {"options", options_to_json(opts)}};
    for (const auto& item : extra.items())
    {
        out[item.key()] = item.value();
    }
    out["report"] = io::to_json(report);
    return out.dump(2) + "\n";
}

int exit_for(const Error& e)
{
    switch (e.code())
    {
        case ErrorCode::not_positive_definite:
            return kUnsolvable;
        case ErrorCode::domain_violation:
            return kVerificationFailed;
        default:
            return kInputError;
    }
}

int cmd_solve(const std::string& problem_path, const std::string& param_path,
              const std::string& out_path, const std::string& solution_path,
              const VerifyFlags& flags)
{
    const std::string text = read_file(problem_path);
    std::string digest_input = text;
    io::ProblemFile pf = io::problem_from_json(parse_json(text, problem_path));
    const VerifyOptions opts = resolve_options(pf.options, flags);
    pf.problem.validate();

    std::vector<RingElement> coeffs;
    if (!param_path.empty())
    {
        const std::string ptext = read_file(param_path);
        digest_input += ptext;
        const Json pj = parse_json(ptext, param_path);
        if (!pj.is_array() || pj.empty())
        {
            throw Error(ErrorCode::parse_error,
                        "parameter file must be a list of coefficients");
        }
        for (const auto& c : pj)
        {
            coeffs.push_back(io::element_from_json(c, pf.problem.ctx));
        }
    }
    else if (pf.parameter)
    {
        coeffs = *pf.parameter;
    }
    else
    {
        coeffs.emplace_back(pf.problem.ctx);
    }

    SchurParameter g = [&] {
        try
        {
            return SchurParameter(RingPoly::scalar(coeffs), opts.schur);
        }
        catch (const Error& e)
        {
            throw Error(ErrorCode::invalid_argument, e.what());
        }
    }();

    const ThetaMatrix theta = build_theta(pf.problem, opts.eps_pd);
    const LftResult lft = lft_apply(theta, g);
    const SolutionReport report = verify_solution(pf.problem, lft, opts);
    const double identity = check_theta_identity(pf.problem, theta, opts.k_report);

    Json extra{{"command", "solve"}, {"theta_identity_residual", identity}};
    Json param = Json::array();
    for (const Complex& c : project_parameter(g))
    {
        param.push_back(io::complex_to_json(c));
    }
    extra["parameter_projection"] = std::move(param);

    if (!solution_path.empty())
    {
        write_output(solution_path, io::to_json(lft.f).dump(2) + "\n");
    }
    write_output(out_path, report_text(sha256_hex(digest_input), opts, report, extra));
    const bool ok = report.pass() && identity <= opts.residual_tol;
    return ok ? kOk : kVerificationFailed;
}

int cmd_verify(const std::string& problem_path, const std::string& candidate_path,
               const std::string& out_path, const VerifyFlags& flags)
{
    const std::string text = read_file(problem_path);
    const std::string ctext = read_file(candidate_path);
    io::ProblemFile pf = io::problem_from_json(parse_json(text, problem_path));
    const VerifyOptions opts = resolve_options(pf.options, flags);
    pf.problem.validate();
    const RingRational f = io::rational_from_json(parse_json(ctext, candidate_path));
    if (!(f.context() == pf.problem.ctx) || !f.num().is_scalar())
    {
        throw Error(ErrorCode::parse_error,
                    "candidate must be scalar and share the problem's context");
    }
    const SolutionReport report = verify_solution(pf.problem, f, opts);
    write_output(out_path, report_text(sha256_hex(text + ctext), opts, report,
                                       Json{{"command", "verify"}}));
    return report.pass() ? kOk : kVerificationFailed;
}

int cmd_const(double q)
{
    std::printf("%.12g\n", vage_constant(q));
    return kOk;
}

int cmd_norm(const std::string& path, int k)
{
    if (k < 1)
    {
        throw Error(ErrorCode::invalid_argument, "norm level k must be >= 1");
    }
    const RingElement r = io::element_from_json(parse_json(read_file(path), path));
    std::printf("norm_dual[%d] = %.12g\n", k, norm_dual(r, k));
    std::printf("norm_test[%d] = %.12g\n", k, norm_test(r, k));
    return kOk;
}

int cmd_eval(const std::string& rational_path, const std::string& element_path,
             std::optional<std::size_t> nodes, std::optional<double> radius,
             const std::string& out_path)
{
    const RingRational f = io::rational_from_json(
        parse_json(read_file(rational_path), rational_path));
    const RingElement r = io::element_from_json(
        parse_json(read_file(element_path), element_path), f.context());
    const RingMatrix value = eval_rational_ring(f, r);
    Json out{{"value", io::to_json(value)}};
    if (nodes)
    {
        double rad = 0.0;
        if (radius)
        {
            rad = *radius;
        }
        else
        {
            // Half the distance to the nearest projected pole, capped at 1.
            rad = 2.0;
            for (const Complex& z : complex_poly_roots(project_scalar(f.den())))
            {
                rad = std::min(rad, std::abs(z - r.constant_term()));
            }
            rad = 0.5 * std::min(rad, 2.0);
        }
        const RingMatrix contour = eval_via_contour(f, r, rad, *nodes);
        out["contour"] = Json{{"nodes", *nodes},
                              {"radius", rad},
                              {"max_abs_diff", [&] {
                                   double m = 0.0;
                                   for (std::size_t i = 0; i < value.entries().size(); ++i)
                                   {
                                       m = std::max(m, max_abs_diff(value.entries()[i],
                                                                    contour.entries()[i]));
                                   }
                                   return m;
                               }()}};
    }
    write_output(out_path, out.dump(2) + "\n");
    return kOk;
}

Json project_matrix(const ComplexMatrix& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
        {
            row.push_back(io::complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Recognizes the object by its fields and prints its constant-term image.
int cmd_project(const std::string& path, const std::string& out_path)
{
    const Json j = parse_json(read_file(path), path);
    Json out;
    if (j.is_object() && j.contains("terms"))
    {
        out = io::complex_to_json(io::element_from_json(j).constant_term());
    }
    else if (j.is_object() && j.contains("entries"))
    {
        out = project_matrix(eval_origin(io::matrix_from_json(j)));
    }
    else if (j.is_object() && j.contains("num"))
    {
        const RingRational f = io::rational_from_json(j);
        Json num = Json::array();
        for (const auto& c : project(f.num()))
        {
            num.push_back(project_matrix(c));
        }
        Json den = Json::array();
        for (const Complex& c : project_scalar(f.den()))
        {
            den.push_back(io::complex_to_json(c));
        }
        out = Json{{"num", std::move(num)}, {"den", std::move(den)}};
    }
    else if (j.is_object() && j.contains("A"))
    {
        const Realization r = io::realization_from_json(j);
        out = Json{{"A", project_matrix(eval_origin(r.a))},
                   {"B", project_matrix(eval_origin(r.b))},
                   {"C", project_matrix(eval_origin(r.c))},
                   {"D", project_matrix(eval_origin(r.d))}};
    }
    else if (j.is_object() && j.contains("context"))
    {
        const io::ProblemFile pf = io::problem_from_json(j);
        Json points = Json::array();
        Json targets = Json::array();
        for (std::size_t i = 0; i < pf.problem.size(); ++i)
        {
            points.push_back(io::complex_to_json(pf.problem.points[i].constant_term()));
            targets.push_back(io::complex_to_json(pf.problem.targets[i].constant_term()));
        }
        out = Json{{"points", std::move(points)}, {"targets", std::move(targets)}};
    }
    else
    {
        throw Error(ErrorCode::parse_error, "unrecognized object in " + path);
    }
    write_output(out_path, out.dump(2) + "\n");
    return kOk;
}

int cmd_gen(std::uint64_t seed, std::size_t n, std::uint32_t m, std::uint32_t d,
            double perturbation, const std::string& out_path)
{
    if (n == 0)
    {
        throw Error(ErrorCode::invalid_argument, "need n >= 1");
    }
    Rng rng(seed);
    io::ProblemFile pf;
    pf.problem = random_solvable_problem(rng, TruncationContext{m, d}, n, perturbation);
    write_output(out_path, io::to_json(pf).dump(2) + "\n");
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Nevanlinna-Pick interpolation over a truncated Wick-product ring"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    VerifyFlags flags;
    std::string problem_path, param_path, out_path, solution_path, candidate_path;

    auto* solve = app.add_subcommand("solve", "solve a problem file and report residuals");
    solve->add_option("problem", problem_path, "problem file")->required();
    solve->add_option("--param", param_path, "Schur parameter file (list of coefficients)");
    solve->add_option("-o,--output", out_path, "report file (default stdout)");
    solve->add_option("--solution-out", solution_path, "write the solution f as a rational file");
    add_verify_flags(solve, flags);

    auto* verify = app.add_subcommand("verify", "verify a candidate solution");
    verify->add_option("problem", problem_path, "problem file")->required();
    verify->add_option("candidate", candidate_path, "rational file")->required();
    verify->add_option("-o,--output", out_path, "report file (default stdout)");
    add_verify_flags(verify, flags);

    double q = 0.0;
    auto* constant = app.add_subcommand("const", "print the Wick submultiplicativity constant A(q)");
    constant->add_option("q", q, "level gap q > 1")->required();

    std::string element_path;
    int k = 4;
    auto* norm = app.add_subcommand("norm", "print dual and test norms of an element");
    norm->add_option("element", element_path, "element file")->required();
    norm->add_option("-k,--k", k, "norm level (default 4)");

    std::string rational_path;
    std::optional<std::size_t> nodes;
    std::optional<double> radius;
    auto* eval = app.add_subcommand("eval", "evaluate a rational file at a ring point");
    eval->add_option("rational", rational_path, "rational file")->required();
    eval->add_option("element", element_path, "element file")->required();
    eval->add_option("--nodes", nodes, "also run the contour-integral oracle with this many nodes");
    eval->add_option("--radius", radius, "contour radius (default: half the distance to the nearest pole)");
    eval->add_option("-o,--output", out_path, "output file (default stdout)");

    std::string object_path;
    auto* proj = app.add_subcommand("project", "print the evaluation at the origin of any serialized object");
    proj->add_option("file", object_path, "input file")->required();
    proj->add_option("-o,--output", out_path, "output file (default stdout)");

    std::uint64_t seed = 0;
    std::size_t n = 2;
    std::uint32_t m = 3, d = 4;
    double perturbation = 0.2;
    auto* gen = app.add_subcommand("gen", "write a random solvable problem file");
    gen->add_option("--seed", seed, "random seed")->required();
    gen->add_option("-n", n, "number of interpolation nodes (default 2)");
    gen->add_option("-m", m, "number of variables (default 3)");
    gen->add_option("-d", d, "degree cap (default 4)");
    gen->add_option("--perturbation", perturbation, "coefficient bound for non-constant terms (default 0.2)");
    gen->add_option("-o,--output", out_path, "output file (default stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try
    {
        if (*solve)
        {
            return cmd_solve(problem_path, param_path, out_path, solution_path, flags);
        }
        if (*verify)
        {
            return cmd_verify(problem_path, candidate_path, out_path, flags);
        }
        if (*constant)
        {
            return cmd_const(q);
        }
        if (*norm)
        {
            return cmd_norm(element_path, k);
        }
        if (*eval)
        {
            return cmd_eval(rational_path, element_path, nodes, radius, out_path);
        }
        if (*proj)
        {
            return cmd_project(object_path, out_path);
        }
        if (*gen)
        {
            return cmd_gen(seed, n, m, d, perturbation, out_path);
        }
    }
    catch (const Error& e)
    {
        std::cerr << kToolName << ": " << e.what() << "\n";
        return exit_for(e);
    }
    catch (const std::exception& e)
    {
        std::cerr << kToolName << ": " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

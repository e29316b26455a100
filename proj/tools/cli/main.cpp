#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "normaj/gauss_lucas.hpp"
#include "normaj/inverse_spectral.hpp"
#include "normaj/majorization.hpp"
#include "normaj/mason_shapiro.hpp"
#include "problem.hpp"
#include "report.hpp"
#include "svg.hpp"

namespace {

using namespace normaj;
using namespace normaj::cli;
using nlohmann::json;

struct CommonArgs {
    std::string input;
    std::string output;
    std::string svg;
    double tol = -1.0;       // < 0 means "not set on the command line"
    std::int64_t seed = -1;  // < 0 means "not set"
    std::vector<std::size_t> k_levels;
    bool no_timestamp = false;
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

// Effective options: command line overrides the problem file.
double effective_tol(const CommonArgs& args, const ProblemFile& p, double fallback) {
    if (args.tol >= 0.0) return args.tol;
    if (p.tol) return *p.tol;
    return fallback;
}

std::uint64_t effective_seed(const CommonArgs& args, const ProblemFile& p) {
    if (args.seed >= 0) return std::uint64_t(args.seed);
    if (p.seed) return *p.seed;
    return 0;
}

std::vector<std::size_t> effective_levels(const CommonArgs& args, const ProblemFile& p,
                                          std::size_t n) {
    std::vector<std::size_t> ks = !args.k_levels.empty() ? args.k_levels : p.k_levels;
    if (ks.empty())
        for (std::size_t k = 1; k + 1 <= n && binomial(n, k) <= 70; ++k) ks.push_back(k);
    return ks;
}

void finish_report(json& report, const CommonArgs& args, const Timer& timer,
                   const std::string& input_bytes) {
    report["input_digest"] = fnv1a_digest(input_bytes);
    if (!args.no_timestamp) {
        report["timestamp"] = utc_timestamp();
        report["elapsed_ms"] = timer.elapsed_ms();
    }
    write_atomically(args.output, dump_report(report));
}

int cmd_solve_inverse(const CommonArgs& args) {
    Timer timer;
    std::string bytes = read_file(args.input);
    ProblemFile p = parse_problem(bytes);
    if (!p.lambda || !p.mu) throw ParseError("solve-inverse needs lambda and mu");
    double tol = effective_tol(args, p, 1e-9);

    SpectralPair pair(*p.lambda, *p.mu);
    std::vector<Complex> res = residues(pair);
    std::size_t offending = 0;
    for (std::size_t k = 0; k < res.size(); ++k)
        if (res[k].real() < -tol || std::abs(res[k].imag()) > tol) {
            offending = k + 1;
            break;
        }

    json report;
    report["command"] = "solve-inverse";
    report["options"] = json{{"tol", tol}, {"seed", effective_seed(args, p)}};
    report["results"]["residues"] = complex_list_to_json(res);

    if (offending != 0) {
        report["results"]["solvable"] = false;
        report["results"]["offending_residue"] = offending;
        report["verdicts"]["solvable"] = verdict(false, tol);
        finish_report(report, args, timer, bytes);
        return 2;
    }

    NormalModel model = solve_inverse(pair, tol);
    double residual = verify_against(model, pair);
    report["results"]["solvable"] = true;
    report["results"]["matrix"] = cmatrix_to_json(model.realized());
    report["results"]["weights"] =
        complex_list_to_json(model.unitary().matrix().row(pair.dim() - 1));
    report["results"]["verification_residual"] = residual;
    report["verdicts"]["solvable"] = verdict(true, tol);
    report["verdicts"]["verification"] = verdict(residual <= 1e-7, 1e-7, residual);
    finish_report(report, args, timer, bytes);
    return 0;
}

int cmd_majorize(const CommonArgs& args) {
    Timer timer;
    std::string bytes = read_file(args.input);
    ProblemFile p = parse_problem(bytes);
    if (!p.x || !p.y) throw ParseError("majorize needs the families x and y");

    MajorizationReport prec = prec_check(*p.x, *p.y);
    MajorizationReport ds = prec_ds_check(*p.x, *p.y);

    json report;
    report["command"] = "majorize";
    report["options"] = json{{"seed", effective_seed(args, p)}};
    json jp;
    jp["verdict"] = *prec.prec;
    jp["levels"] = prec.prec_levels;
    if (prec.failure) {
        jp["failure"] = json{{"level", prec.failure->level},
                             {"subset", prec.failure->subset},
                             {"direction", prec.failure->direction}};
    }
    report["results"]["prec"] = std::move(jp);

    json jd;
    jd["verdict"] = *ds.prec_ds;
    if (ds.witness) {
        jd["witness"] = real_matrix_to_json(ds.witness->s);
        jd["row_tol"] = ds.witness->row_tol;
        jd["col_tol"] = ds.witness->col_tol;
    } else {
        jd["phase1_objective"] = *ds.ds_phase1_objective;
    }
    report["results"]["prec_ds"] = std::move(jd);
    report["verdicts"]["prec"] = verdict(*prec.prec, 1e-9);
    report["verdicts"]["prec_ds"] = verdict(*ds.prec_ds, 1e-7);
    finish_report(report, args, timer, bytes);
    return 0;
}

int cmd_gauss_lucas(const CommonArgs& args) {
    Timer timer;
    std::string bytes = read_file(args.input);
    ProblemFile p = parse_problem(bytes);
    if (!p.coefficients) throw ParseError("gauss-lucas needs polynomial coefficients");
    std::uint64_t seed = effective_seed(args, p);

    ComplexPoly poly(*p.coefficients);
    std::size_t n = poly.degree();
    if (n < 2) throw ParseError("gauss-lucas needs degree >= 2");

    GaussLucasWitness w = gl_witness(poly, seed);
    std::vector<Complex> mu = roots(poly.derivative(), seed);

    std::vector<Complex> alphas = p.alpha;
    if (alphas.empty()) {
        alphas.push_back(Complex{0, 0});
        std::mt19937_64 rng(seed ^ 0xa1fa);
        std::uniform_real_distribution<double> box(-2.0, 2.0);
        for (int i = 0; i < 2; ++i) alphas.emplace_back(box(rng), box(rng));
    }

    json report;
    report["command"] = "gauss-lucas";
    json opts;
    opts["seed"] = seed;
    opts["k"] = effective_levels(args, p, n);
    report["options"] = std::move(opts);

    report["results"]["lambda"] = complex_list_to_json(w.lambda);
    report["results"]["mu"] = complex_list_to_json(w.mu);
    report["results"]["mu_mean"] = complex_to_json(w.mu_mean);
    report["results"]["s1"] = real_matrix_to_json(w.s1.s);

    double last_row_gap = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        last_row_gap = std::max(last_row_gap, std::abs(w.s1.s[n - 1][j] - 1.0 / double(n)));
    report["verdicts"]["s1_doubly_stochastic"] =
        verdict(std::max(w.s1.row_tol, w.s1.col_tol) <= 1e-8, 1e-8,
                std::max(w.s1.row_tol, w.s1.col_tol));
    report["verdicts"]["s1_last_row_uniform"] = verdict(last_row_gap <= 1e-9, 1e-9, last_row_gap);

    json levels = json::array();
    double worst_eq = 0.0;
    for (std::size_t k : effective_levels(args, p, n)) {
        LevelKWitness lk = sk_witness(w, k, seed);
        BlockRowSumProbe probe = block_row_sum_probe(w, k);
        json jk;
        jk["k"] = k;
        jk["sk"] = real_matrix_to_json(lk.sk);
        jk["eq_residual"] = lk.eq_residual;
        jk["block_row_sum"] = probe.measured;
        jk["block_row_sum_spread"] = probe.spread;
        jk["gap_k_over_n"] = probe.gap_k_over_n;
        jk["gap_complement"] = probe.gap_complement;
        levels.push_back(std::move(jk));
        worst_eq = std::max(worst_eq, lk.eq_residual);
    }
    report["results"]["levels"] = std::move(levels);
    report["verdicts"]["compound_identity"] = verdict(worst_eq <= 1e-6, 1e-6, worst_eq);

    json prodeq = json::array();
    double worst_prodeq = 0.0;
    for (const Complex& alpha : alphas)
        for (std::size_t k : effective_levels(args, p, n)) {
            ProdeqResult pr = prodeq_check(w.lambda, mu, alpha, k);
            json jp;
            jp["alpha"] = complex_to_json(alpha);
            jp["k"] = k;
            jp["left"] = complex_to_json(pr.left);
            jp["right"] = complex_to_json(pr.right);
            jp["deviation"] = pr.deviation;
            jp["scale"] = pr.scale;
            prodeq.push_back(std::move(jp));
            worst_prodeq = std::max(worst_prodeq, pr.deviation / pr.scale);
        }
    report["results"]["prodeq"] = std::move(prodeq);
    report["verdicts"]["prodeq"] = verdict(worst_prodeq <= 1e-8, 1e-8, worst_prodeq);

    double prodmod = 1.0;
    for (const Complex& z : w.lambda) prodmod *= (1.0 + std::abs(z));
    std::vector<ConvexDescriptor> battery{
        ConvexDescriptor::abs_power(Complex{0, 0}, 1.0),
        ConvexDescriptor::abs_power(Complex{0, 0}, 2.0),
        ConvexDescriptor::abs_power(w.mu_mean, 2.0),
        ConvexDescriptor::hinge_re(Complex{0.5, 0.25}, 0.5),
        ConvexDescriptor::exp_re(Complex{1.0 / prodmod, 0.5 / prodmod}),
    };
    json debruijn = json::array();
    double worst_slack = 0.0;
    for (const Complex& alpha : alphas)
        for (std::size_t k : effective_levels(args, p, n))
            for (const DebruijnEntry& e : debruijn_check(poly, k, alpha, battery, seed)) {
                json je;
                je["alpha"] = complex_to_json(alpha);
                je["k"] = k;
                je["left"] = e.left;
                je["right"] = e.right;
                je["slack"] = e.slack;
                je["normalized_slack"] = e.normalized_slack;
                debruijn.push_back(std::move(je));
                worst_slack = std::min(worst_slack, e.normalized_slack);
            }
    report["results"]["debruijn"] = std::move(debruijn);
    report["verdicts"]["debruijn_slack"] = verdict(worst_slack >= -1e-9, 1e-9, worst_slack);

    // Schoenberg runs on the centered configuration.
    Complex mean = w.mu_mean;
    std::vector<Complex> centered = w.lambda;
    for (Complex& z : centered) z -= mean;
    SchoenbergReport sch = schoenberg_check(centered, seed);
    json js;
    js["centered_shift"] = complex_to_json(mean);
    js["lhs"] = sch.lhs;
    js["rhs"] = sch.rhs;
    js["slack"] = sch.slack;
    js["collinear"] = sch.collinear;
    js["equality"] = sch.equality;
    report["results"]["schoenberg"] = std::move(js);
    report["verdicts"]["schoenberg_slack"] = verdict(sch.slack >= -1e-9, 1e-9, sch.slack);
    report["verdicts"]["schoenberg_equality_iff_collinear"] =
        verdict(sch.collinear == sch.equality, 1e-7);

    if (!args.svg.empty()) {
        std::vector<Complex> marks = w.mu;
        marks.push_back(w.mu_mean);
        write_atomically(args.svg, root_scatter_svg(w.lambda, marks));
    }
    finish_report(report, args, timer, bytes);
    return 0;
}

int cmd_mason_shapiro(const CommonArgs& args) {
    Timer timer;
    std::string bytes = read_file(args.input);
    ProblemFile p = parse_problem(bytes);
    if (!p.coefficients) throw ParseError("mason-shapiro needs the coefficients of Q");
    if (!p.m) throw ParseError("mason-shapiro needs the target degree m");
    std::uint64_t seed = effective_seed(args, p);

    ComplexPoly q(*p.coefficients);
    MsZeroReport rep = ms_zero_report(q, *p.m, seed);

    json report;
    report["command"] = "mason-shapiro";
    report["options"] = json{{"seed", seed}, {"m", *p.m}};
    report["results"]["pm"] = complex_list_to_json(rep.pm.coeffs());
    report["results"]["eigenvalue"] = tq_eigenvalue(*p.m, q.degree());
    report["results"]["eigen_residual"] = rep.eigen_residual;
    report["results"]["w"] = complex_list_to_json(rep.w);
    report["results"]["z"] = complex_list_to_json(rep.z);
    report["results"]["multiple_roots_in_q"] = rep.multiple_roots_in_q;
    report["results"]["multiple_roots_in_pm"] = rep.multiple_roots_in_pm;
    report["results"]["hull_per_point"] = rep.hull_per_point;
    json battery = json::array();
    double worst_slack = 0.0;
    for (const MsBatteryEntry& e : rep.battery) {
        json je;
        je["left"] = e.left;
        je["right"] = e.right;
        je["slack"] = e.slack;
        je["normalized_slack"] = e.normalized_slack;
        battery.push_back(std::move(je));
        worst_slack = std::min(worst_slack, e.normalized_slack);
    }
    report["results"]["battery"] = std::move(battery);
    report["results"]["stochastic_feasible"] = rep.stochastic_feasible;
    report["results"]["lp_phase1_objective"] = rep.lp_phase1_objective;

    report["verdicts"]["eigen_residual"] = verdict(rep.eigen_residual <= 1e-9, 1e-9,
                                                   rep.eigen_residual);
    report["verdicts"]["hull"] = verdict(rep.hull_ok, 1e-8);
    report["verdicts"]["battery_slack"] = verdict(worst_slack >= -1e-9, 1e-9, worst_slack);
    report["verdicts"]["stochastic_witness"] = verdict(rep.stochastic_feasible, 1e-7,
                                                       rep.lp_phase1_objective);
    finish_report(report, args, timer, bytes);
    return 0;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("input", args.input, "problem file (JSON)")->required();
    cmd->add_option("output", args.output, "report file (JSON)")->required();
    cmd->add_option("--tol", args.tol, "tolerance override")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", args.seed, "seed override")->check(CLI::NonNegativeNumber);
    cmd->add_option("--k", args.k_levels, "compound levels to check");
    cmd->add_flag("--no-timestamp", args.no_timestamp, "omit timestamp and timing");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"normal-matrix inverse spectral problems, majorization orders, and root-geometry witnesses"};
    app.require_subcommand(1);

    CommonArgs a_solve, a_maj, a_gl, a_ms;
    CLI::App* c_solve = app.add_subcommand("solve-inverse", "construct a normal matrix from two spectra");
    add_common(c_solve, a_solve);
    CLI::App* c_maj = app.add_subcommand("majorize", "decide the hull and doubly stochastic orders");
    add_common(c_maj, a_maj);
    CLI::App* c_gl = app.add_subcommand("gauss-lucas", "build and verify root-geometry witnesses");
    add_common(c_gl, a_gl);
    c_gl->add_option("--svg", a_gl.svg, "write a root scatter SVG");
    CLI::App* c_ms = app.add_subcommand("mason-shapiro", "eigenpolynomials of f -> (Qf)^(k)");
    add_common(c_ms, a_ms);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_solve->parsed()) return cmd_solve_inverse(a_solve);
        if (c_maj->parsed()) return cmd_majorize(a_maj);
        if (c_gl->parsed()) return cmd_gauss_lucas(a_gl);
        if (c_ms->parsed()) return cmd_mason_shapiro(a_ms);
    } catch (const normaj::NotSolvable& e) {
        std::cerr << "not solvable: " << e.what() << " (residue " << e.residue_ordinal << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "circlaw/convergence.hpp"
#include "circlaw/ensemble.hpp"
#include "circlaw/io.hpp"
#include "circlaw/limit_law.hpp"
#include "circlaw/potential.hpp"
#include "circlaw/spectra.hpp"
#include "circlaw/sv_tail.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace circlaw;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    int workers = 0;
    bool json_stdout = false;
};

struct DistOptions {
    std::string name = "gaussian";
    double tp_atom = 1.0;
    double tp_weight = 0.5;
    double p_n = 1.0;

    Distribution build() const { return Distribution::parse(name, tp_atom, tp_weight); }
};

void add_global_options(CLI::App* cmd, GlobalOptions* opts) {
    cmd->add_option("--seed", opts->seed, "Base RNG seed");
    cmd->add_option("--out", opts->out_dir, "Output directory");
    cmd->add_option("--workers", opts->workers, "Worker threads (0 = hardware)");
    cmd->add_flag("--json", opts->json_stdout, "Print the JSON summary to stdout");
}

void add_dist_options(CLI::App* cmd, DistOptions* opts) {
    cmd->add_option("--dist", opts->name, "Entry distribution")
        ->check(CLI::IsMember({"gaussian", "rademacher", "uniform", "twopoint"}));
    cmd->add_option("--tp-a", opts->tp_atom, "twopoint: first atom");
    cmd->add_option("--tp-p", opts->tp_weight, "twopoint: weight of the first atom");
    cmd->add_option("--p", opts->p_n, "Bernoulli retention probability (1 = dense)");
}

fs::path prepare_out_dir(const GlobalOptions& opts) {
    fs::path dir(opts.out_dir);
    fs::create_directories(dir);
    return dir;
}

json dist_config(const DistOptions& d) {
    json cfg{{"dist", d.name}, {"p", d.p_n}};
    if (d.name == "twopoint") {
        cfg["tp_a"] = d.tp_atom;
        cfg["tp_p"] = d.tp_weight;
    }
    return cfg;
}

json global_config(const GlobalOptions& g) {
    return json{{"seed", g.seed}, {"out", g.out_dir}, {"workers", g.workers}};
}

void emit_summary(const GlobalOptions& g, const fs::path& dir, const std::string& name,
                  const json& summary) {
    const fs::path path = dir / (name + "_summary.json");
    std::ofstream out(path, std::ios::binary);
    out << summary.dump(2) << "\n";
    if (g.json_stdout) {
        std::cout << summary.dump(2) << "\n";
    } else {
        std::cout << name << ": wrote " << path.string() << "\n";
    }
}

// ---------------------------------------------------------------------------
// simulate: draw one matrix, export its spectrum
// ---------------------------------------------------------------------------

struct SimulateOptions {
    GlobalOptions global;
    DistOptions dist;
    int n = 256;
    std::uint64_t trial = 0;
    bool svs = false;
    std::string z_text = "0";
};

int run_simulate(const SimulateOptions& opts) {
    const fs::path dir = prepare_out_dir(opts.global);
    const EnsembleSpec spec(opts.n, opts.dist.build(), opts.dist.p_n, opts.global.seed);
    const MatrixReal x = sample_matrix(spec, opts.trial);
    const ComplexSpectrum ev = eigenvalues(x);

    CsvWriter csv({"re", "im"});
    for (const Complex& lambda : ev.values)
        csv.add_row({format_double(lambda.real()), format_double(lambda.imag())});
    const fs::path csv_path = dir / "spectrum.csv";
    csv.write(csv_path);

    json summary;
    summary["subcommand"] = "simulate";
    summary["config"] = global_config(opts.global);
    summary["config"].update(dist_config(opts.dist));
    summary["config"]["n"] = opts.n;
    summary["config"]["trial"] = opts.trial;
    summary["outputs"] = {csv_path.string()};
    if (opts.svs) {
        // squared singular values of X - zI as a sorted-point CDF export
        const Complex z = parse_complex(opts.z_text);
        const EmpiricalCDF f = squared_sv_measure(x, z, 0.0, opts.global.seed, opts.trial);
        CsvWriter sv_csv({"point"});
        for (double p : f.points()) sv_csv.add_row({format_double(p)});
        const fs::path sv_path = dir / "sv_squared.csv";
        sv_csv.write(sv_path);
        summary["config"]["z"] = format_complex(z);
        summary["outputs"].push_back(sv_path.string());
    }
    if (opts.n >= 8) {
        const CircularLawDistance d = circular_law_distance(ev);
        summary["radial_ks"] = d.radial_ks;
        summary["angular_ks"] = d.angular_ks;
    }
    emit_summary(opts.global, dir, "simulate", summary);
    return 0;
}

// ---------------------------------------------------------------------------
// limit: solve the self-consistent density at one z
// ---------------------------------------------------------------------------

struct LimitOptions {
    GlobalOptions global;
    std::string z_text = "0";
    int grid = 2001;
    bool plot_data = false;
};

int run_limit(const LimitOptions& opts) {
    const fs::path dir = prepare_out_dir(opts.global);
    const Complex z = parse_complex(opts.z_text);
    const LimitSolution sol = solve_density(z, default_grid(z, opts.grid));

    CsvWriter csv({"x", "density", "cdf"});
    for (std::size_t i = 0; i < sol.x.size(); ++i)
        csv.add_row({format_double(sol.x[i]), format_double(sol.density[i]),
                     format_double(sol.cdf[i])});
    const fs::path csv_path = dir / "limit.csv";
    csv.write(csv_path);

    json summary;
    summary["subcommand"] = "limit";
    summary["config"] = global_config(opts.global);
    summary["config"]["z"] = format_complex(z);
    summary["config"]["grid"] = opts.grid;
    summary["x1"] = sol.x1;
    summary["x2"] = sol.x2;
    summary["mass"] = sol.cdf.back();
    summary["potential"] = limit_potential(sol);
    summary["outputs"] = {csv_path.string()};

    if (opts.plot_data) {
        CsvWriter plot({"x", "y"});
        for (std::size_t i = 0; i < sol.x.size(); ++i)
            plot.add_row({format_double(sol.x[i]), format_double(sol.density[i])});
        const fs::path plot_path = dir / "plot.csv";
        plot.write(plot_path);
        summary["outputs"].push_back(plot_path.string());
    }
    emit_summary(opts.global, dir, "limit", summary);
    return 0;
}

// ---------------------------------------------------------------------------
// potential: empirical / limit / closed-form disc potentials over a z list
// ---------------------------------------------------------------------------

struct PotentialOptions {
    GlobalOptions global;
    DistOptions dist;
    std::string z_text = "0,0.5,1.5";
    std::string kinds = "empirical,limit,disc";
    int n = 256;
    double r = -1.0;  // negative: use the n^(-1/8) schedule
    int trials = 20;
    bool no_truncate = false;
    bool plot_data = false;
};

int run_potential(const PotentialOptions& opts) {
    const fs::path dir = prepare_out_dir(opts.global);
    const std::vector<Complex> zs = parse_complex_list(opts.z_text);
    const double r = opts.r < 0.0 ? smoothing_radius(opts.n) : opts.r;

    bool want_empirical = false;
    bool want_limit = false;
    bool want_disc = false;
    {
        std::stringstream ss(opts.kinds);
        std::string kind;
        while (std::getline(ss, kind, ',')) {
            if (kind == "empirical")
                want_empirical = true;
            else if (kind == "limit")
                want_limit = true;
            else if (kind == "disc")
                want_disc = true;
            else
                throw ValidationError("unknown potential kind '" + kind + "'");
        }
    }

    std::vector<PotentialGrid> grids;
    if (want_empirical) {
        const EnsembleSpec spec(opts.n, opts.dist.build(), opts.dist.p_n, opts.global.seed);
        grids.push_back(potential_grid(PotentialKind::Empirical, zs, &spec, r, opts.trials,
                                       !opts.no_truncate, opts.global.workers));
    }
    if (want_limit)
        grids.push_back(potential_grid(PotentialKind::Limit, zs, nullptr, 0.0, 0, false, 1));
    if (want_disc)
        grids.push_back(
            potential_grid(PotentialKind::DiscClosedForm, zs, nullptr, 0.0, 0, false, 1));

    CsvWriter csv({"re", "im", "value", "kind"});
    json diagnostics = json::array();
    for (std::size_t zi = 0; zi < zs.size(); ++zi) {
        for (const PotentialGrid& grid : grids) {
            csv.add_row({format_double(grid.points[zi].real()),
                         format_double(grid.points[zi].imag()), format_double(grid.values[zi]),
                         potential_kind_name(grid.kind)});
            if (grid.kind == PotentialKind::Empirical)
                diagnostics.push_back(json{{"z", format_complex(grid.points[zi])},
                                           {"trials", opts.trials},
                                           {"excluded", grid.excluded[zi]},
                                           {"min_smin", grid.min_smins[zi]}});
        }
    }
    const fs::path csv_path = dir / "potential.csv";
    csv.write(csv_path);

    json summary;
    summary["subcommand"] = "potential";
    summary["config"] = global_config(opts.global);
    summary["config"].update(dist_config(opts.dist));
    summary["config"]["z"] = opts.z_text;
    summary["config"]["kinds"] = opts.kinds;
    summary["config"]["n"] = opts.n;
    summary["config"]["r"] = r;
    summary["config"]["trials"] = opts.trials;
    summary["config"]["truncate"] = !opts.no_truncate;
    summary["diagnostics"] = diagnostics;
    summary["outputs"] = {csv_path.string()};

    if (opts.plot_data) {
        const fs::path plot_path = dir / "plot.csv";
        std::ofstream plot(plot_path, std::ios::binary);
        plot << csv.str();
        summary["outputs"].push_back(plot_path.string());
    }
    emit_summary(opts.global, dir, "potential", summary);
    return 0;
}

// ---------------------------------------------------------------------------
// svtail: smallest-singular-value tail counts
// ---------------------------------------------------------------------------

struct SvTailOptions {
    GlobalOptions global;
    DistOptions dist;
    int n = 64;
    std::string z_text = "0.5";
    std::string thresholds = "1e-8,1e-4,1e-2,0.1";
    int trials = 500;
};

int run_svtail(const SvTailOptions& opts) {
    const fs::path dir = prepare_out_dir(opts.global);
    const Complex z = parse_complex(opts.z_text);
    const EnsembleSpec spec(opts.n, opts.dist.build(), opts.dist.p_n, opts.global.seed);
    const TailReport report = smin_tail_estimate(spec, z, parse_double_list(opts.thresholds),
                                                 opts.trials, opts.global.workers);

    CsvWriter csv({"threshold", "count", "probability", "cp95_upper"});
    for (std::size_t i = 0; i < report.thresholds.size(); ++i)
        csv.add_row({format_double(report.thresholds[i]), std::to_string(report.counts[i]),
                     format_double(static_cast<double>(report.counts[i]) / report.trials),
                     format_double(report.cp95_upper[i])});
    const fs::path csv_path = dir / "svtail.csv";
    csv.write(csv_path);

    json summary;
    summary["subcommand"] = "svtail";
    summary["config"] = global_config(opts.global);
    summary["config"].update(dist_config(opts.dist));
    summary["config"]["n"] = opts.n;
    summary["config"]["z"] = format_complex(z);
    summary["config"]["thresholds"] = opts.thresholds;
    summary["config"]["trials"] = opts.trials;
    summary["min_smin"] = report.min_smin;
    summary["outputs"] = {csv_path.string()};
    emit_summary(opts.global, dir, "svtail", summary);
    return 0;
}

// ---------------------------------------------------------------------------
// converge: rate tables across n and p
// ---------------------------------------------------------------------------

struct ConvergeOptions {
    GlobalOptions global;
    DistOptions dist;
    std::string n_text = "64,128";
    std::string p_text = "1";
    std::string z_text = "0.5";
    std::string kind = "sv-vs-limit";
    int trials = 10;
};

int run_converge(const ConvergeOptions& opts) {
    const fs::path dir = prepare_out_dir(opts.global);
    SweepConfig config;
    config.n_list = parse_int_list(opts.n_text);
    config.p_list = parse_double_list(opts.p_text);
    config.z_list = parse_complex_list(opts.z_text);
    config.trials = opts.trials;
    config.kind = parse_distance_kind(opts.kind);
    config.seed = opts.global.seed;
    config.workers = opts.global.workers;
    config.dist = opts.dist.build();

    const RateTable table = rate_sweep(config);

    CsvWriter csv({"n", "p_n", "re_z", "im_z", "kind", "trials", "mean_distance",
                   "slope_group_id"});
    for (const RateRow& row : table.rows)
        csv.add_row({std::to_string(row.n), format_double(row.p_n),
                     format_double(row.z.real()), format_double(row.z.imag()),
                     distance_kind_name(row.kind), std::to_string(row.trials),
                     format_double(row.mean_distance), std::to_string(row.group_id)});
    const fs::path csv_path = dir / "rates.csv";
    csv.write(csv_path);

    json slopes = json::array();
    for (const SlopeFit& fit : table.slopes) {
        json entry{{"group_id", fit.group_id}, {"p_n", fit.p_n}, {"z", format_complex(fit.z)},
                   {"kind", distance_kind_name(fit.kind)}, {"kappa3", fit.kappa3}};
        if (fit.valid)
            entry["slope"] = fit.slope;
        else
            entry["slope_omitted"] = true;
        slopes.push_back(entry);
    }

    json summary;
    summary["subcommand"] = "converge";
    summary["config"] = global_config(opts.global);
    summary["config"].update(dist_config(opts.dist));
    summary["config"]["n"] = opts.n_text;
    summary["config"]["p_list"] = opts.p_text;
    summary["config"]["z"] = opts.z_text;
    summary["config"]["kind"] = opts.kind;
    summary["config"]["trials"] = opts.trials;
    summary["slopes"] = slopes;
    summary["outputs"] = {csv_path.string()};
    emit_summary(opts.global, dir, "converge", summary);
    return 0;
}

// ---------------------------------------------------------------------------
// char: characteristic-function factorization of disc smoothing
// ---------------------------------------------------------------------------

struct CharOptions {
    GlobalOptions global;
    DistOptions dist;
    int n = 64;
    double r = 0.3;
    double t = 1.0;
    double v = 1.0;
    int draws = 200;
};

int run_char(const CharOptions& opts) {
    const fs::path dir = prepare_out_dir(opts.global);
    const EnsembleSpec spec(opts.n, opts.dist.build(), opts.dist.p_n, opts.global.seed);
    const ComplexSpectrum ev = eigenvalues(sample_matrix(spec));

    const Complex base = empirical_char(ev, opts.t, opts.v);
    const double h = disc_char(opts.t, opts.v, opts.r);
    Complex smoothed{0.0, 0.0};
    for (int d = 0; d < opts.draws; ++d) {
        const Complex xi = draw_disc_point(opts.global.seed, static_cast<std::uint64_t>(d));
        ComplexSpectrum shifted = ev;
        for (Complex& lambda : shifted.values) lambda += opts.r * xi;
        smoothed += empirical_char(shifted, opts.t, opts.v);
    }
    smoothed /= static_cast<double>(opts.draws);
    const double error = std::abs(smoothed - base * h);

    CsvWriter csv({"t", "v", "r", "draws", "f_re", "f_im", "h", "smoothed_re", "smoothed_im",
                   "factorization_error"});
    csv.add_row({format_double(opts.t), format_double(opts.v), format_double(opts.r),
                 std::to_string(opts.draws), format_double(base.real()),
                 format_double(base.imag()), format_double(h), format_double(smoothed.real()),
                 format_double(smoothed.imag()), format_double(error)});
    const fs::path csv_path = dir / "char.csv";
    csv.write(csv_path);

    json summary;
    summary["subcommand"] = "char";
    summary["config"] = global_config(opts.global);
    summary["config"].update(dist_config(opts.dist));
    summary["config"]["n"] = opts.n;
    summary["config"]["r"] = opts.r;
    summary["config"]["t"] = opts.t;
    summary["config"]["v"] = opts.v;
    summary["config"]["draws"] = opts.draws;
    summary["factorization_error"] = error;
    summary["outputs"] = {csv_path.string()};
    emit_summary(opts.global, dir, "char", summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circlaw: a numerical laboratory for the circular law"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI/TOML config file");

    SimulateOptions simulate_opts;
    CLI::App* simulate = app.add_subcommand("simulate", "Sample a matrix and export its spectrum");
    add_global_options(simulate, &simulate_opts.global);
    add_dist_options(simulate, &simulate_opts.dist);
    simulate->add_option("--n", simulate_opts.n, "Matrix dimension");
    simulate->add_option("--trial", simulate_opts.trial, "Trial index within the seed");
    simulate->add_flag("--svs", simulate_opts.svs,
                       "Also export the squared singular values of X - zI");
    simulate->add_option("--z", simulate_opts.z_text, "Shift used by --svs");

    LimitOptions limit_opts;
    CLI::App* limit = app.add_subcommand("limit", "Solve the limiting density at a fixed z");
    add_global_options(limit, &limit_opts.global);
    limit->add_option("--z", limit_opts.z_text, "Shift z (complex, e.g. 0.5+0.2i)");
    limit->add_option("--grid", limit_opts.grid, "Grid point count (odd)");
    limit->add_flag("--plot-data", limit_opts.plot_data, "Also write (x, density) pairs");

    PotentialOptions potential_opts;
    CLI::App* potential = app.add_subcommand("potential", "Logarithmic potentials over a z list");
    add_global_options(potential, &potential_opts.global);
    add_dist_options(potential, &potential_opts.dist);
    potential->add_option("--z", potential_opts.z_text, "Comma-separated z values");
    potential->add_option("--kinds", potential_opts.kinds, "Any of empirical,limit,disc");
    potential->add_option("--n", potential_opts.n, "Matrix dimension");
    potential->add_option("--r", potential_opts.r, "Smoothing radius (default n^(-1/8))");
    potential->add_option("--trials", potential_opts.trials, "Monte Carlo trials per z");
    potential->add_flag("--no-truncate", potential_opts.no_truncate,
                        "Keep trials outside the s_n/s_1 gates");
    potential->add_flag("--plot-data", potential_opts.plot_data, "Duplicate the grid as plot.csv");

    SvTailOptions svtail_opts;
    CLI::App* svtail = app.add_subcommand("svtail", "Smallest-singular-value tail estimates");
    add_global_options(svtail, &svtail_opts.global);
    add_dist_options(svtail, &svtail_opts.dist);
    svtail->add_option("--n", svtail_opts.n, "Matrix dimension");
    svtail->add_option("--z", svtail_opts.z_text, "Shift z");
    svtail->add_option("--thresholds", svtail_opts.thresholds, "Ascending thresholds");
    svtail->add_option("--trials", svtail_opts.trials, "Monte Carlo trials");

    ConvergeOptions converge_opts;
    CLI::App* converge = app.add_subcommand("converge", "Distance rate tables across n and p");
    add_global_options(converge, &converge_opts.global);
    add_dist_options(converge, &converge_opts.dist);
    converge->add_option("--n", converge_opts.n_text, "Comma-separated dimensions (ascending)");
    converge->add_option("--p-list", converge_opts.p_text, "Comma-separated p_n values");
    converge->add_option("--z", converge_opts.z_text, "Comma-separated z values");
    converge->add_option("--kind", converge_opts.kind, "Distance kind")
        ->check(CLI::IsMember({"sv-vs-limit", "sv-vs-mp", "circular-radial"}));
    converge->add_option("--trials", converge_opts.trials, "Trials per cell");

    CharOptions char_opts;
    CLI::App* chr = app.add_subcommand("char", "Characteristic-function factorization check");
    add_global_options(chr, &char_opts.global);
    add_dist_options(chr, &char_opts.dist);
    chr->add_option("--n", char_opts.n, "Matrix dimension");
    chr->add_option("--r", char_opts.r, "Smoothing radius");
    chr->add_option("--t", char_opts.t, "Frequency along Re");
    chr->add_option("--v", char_opts.v, "Frequency along Im");
    chr->add_option("--draws", char_opts.draws, "Smoothing draws");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << R"({"error":"usage","message":")" << e.what() << R"(","exit":2})" << "\n";
        return 2;
    }

    try {
        if (simulate->parsed()) return run_simulate(simulate_opts);
        if (limit->parsed()) return run_limit(limit_opts);
        if (potential->parsed()) return run_potential(potential_opts);
        if (svtail->parsed()) return run_svtail(svtail_opts);
        if (converge->parsed()) return run_converge(converge_opts);
        if (chr->parsed()) return run_char(char_opts);
    } catch (const ValidationError& e) {
        std::cerr << R"({"error":"validation","message":")" << e.what() << R"(","exit":3})"
                  << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << R"({"error":"solver","message":")" << e.what() << R"(","exit":4})" << "\n";
        return 4;
    }
    return 0;
}

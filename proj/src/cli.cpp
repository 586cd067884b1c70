#include "xxring/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "xxring/eigensolver.hpp"
#include "xxring/entanglement.hpp"

namespace xxring::cli {

namespace {

constexpr const char* kSurfaceRecipe =
    "Concurrence surface over (T, B) for the four-site ring:\n"
    "  xxring sweep --n 4 --j 1 --t-min 0.05 --t-max 3 --t-steps 60 --b-min 0 --b-max 4 --b-steps 80 -o surface.csv";

struct ModelOptions {
    int n = 4;
    double j = 1.0;
    double b = 0.0;

    ModelParams params() const { return {n, j, b}; }
};

void add_model_options(CLI::App* cmd, ModelOptions& m, bool with_field = true) {
    cmd->add_option("--n", m.n, "Ring size")->capture_default_str()->check(CLI::Range(1, kMaxSites));
    cmd->add_option("--j", m.j, "Exchange constant J")->capture_default_str();
    if (with_field) cmd->add_option("--b", m.b, "Magnetic field B")->capture_default_str();
}

struct GridOptions {
    double min = 0.0;
    double max = 0.0;
    int steps = 1;
    GridScale scale = GridScale::linear;
};

void add_grid_options(CLI::App* cmd, const std::string& axis, GridOptions& g, const std::string& what) {
    const std::map<std::string, GridScale> scales{{"linear", GridScale::linear}, {"log", GridScale::log}};
    cmd->add_option("--" + axis + "-min", g.min, what + " grid minimum")->capture_default_str();
    cmd->add_option("--" + axis + "-max", g.max, what + " grid maximum")->capture_default_str();
    cmd->add_option("--" + axis + "-steps", g.steps, what + " grid points")->capture_default_str()->check(
        CLI::PositiveNumber);
    cmd->add_option("--" + axis + "-scale", g.scale, what + " grid spacing (linear|log)")
        ->transform(CLI::CheckedTransformer(scales, CLI::ignore_case))
        ->capture_default_str();
}

constexpr double kLevelTolerance = 1e-9;

std::string fmt12(double v) { return fmt::format("{:.12g}", v); }

int cmd_spectrum(const ModelOptions& m, std::ostream& out) {
    const Spectrum spectrum = full_spectrum(m.params());
    const std::vector<double> values = spectrum.eigenvalues();
    const std::vector<Level> levels = cluster_levels(values, kLevelTolerance);
    fmt::print(out, "# N={} J={} B={}: {} eigenvalues, {} distinct levels\n", m.n, fmt12(m.j), fmt12(m.b),
               values.size(), levels.size());
    fmt::print(out, "# energy multiplicity\n");
    for (const Level& level : levels) {
        const double energy = std::abs(level.energy) <= kLevelTolerance ? 0.0 : level.energy;
        fmt::print(out, "{:.12g} {}\n", energy, level.multiplicity);
    }
    return kExitOk;
}

int cmd_thermal(const ModelOptions& m, double t, std::ostream& out) {
    const ModelParams params = m.params();
    const ThermalEnsemble ensemble(full_spectrum(params));
    const ThermalObservables obs = ensemble.observables(t);
    const Concurrence c = concurrence_xstate(pair_density_from_populations(obs));
    fmt::print(out, "T {}\n", fmt12(obs.t));
    fmt::print(out, "Z_shifted {}\n", fmt12(std::exp(obs.log_z_shifted)));
    fmt::print(out, "E0_shift {}\n", fmt12(obs.energy_shift));
    fmt::print(out, "lnZ {}\n", fmt12(obs.log_z()));
    fmt::print(out, "U {}\n", fmt12(obs.u));
    fmt::print(out, "M {}\n", fmt12(obs.m));
    fmt::print(out, "Gxx {}\n", fmt12(obs.g_xx));
    fmt::print(out, "Gzz {}\n", fmt12(obs.g_zz));
    fmt::print(out, "C {}\n", fmt12(c.value));
    return kExitOk;
}

int cmd_ground(const ModelOptions& m, std::ostream& out) {
    const ModelParams params = m.params();
    const Spectrum spectrum = full_spectrum(params);
    const GroundSpace gs = ground_space(spectrum);
    fmt::print(out, "E0 {}\n", fmt12(gs.energy));
    fmt::print(out, "degeneracy {}\n", gs.degeneracy);
    fmt::print(out, "sectors_r {}\n", fmt::join(gs.sectors, ","));

    if (gs.sectors.size() > 1) {
        fmt::print(out, "C degenerate ground space across sectors (level crossing)\n");
    } else if (params.n >= 2) {
        fmt::print(out, "C {}\n", fmt12(ground_state_concurrence(params).value));
    }

    if (params.n % 2 == 0) {
        if (gs.degeneracy == 1) {
            const auto& sector = spectrum.sectors[static_cast<std::size_t>(gs.sectors.front())];
            const PureState psi = embed_sector_state(sector.basis, sector.eigen.vectors.col(0));
            fmt::print(out, "tau {}\n", fmt12(n_tangle(psi)));
        } else {
            fmt::print(out, "tau undefined (degenerate ground space)\n");
        }
    }
    return kExitOk;
}

int cmd_sweep(const ModelOptions& m, const GridOptions& tg, const GridOptions& bg, const std::string& output,
              const SweepOptions& options, std::ostream& out) {
    const std::vector<SweepRow> rows = sweep(m.params(), make_grid(tg.min, tg.max, tg.steps, tg.scale),
                                             make_grid(bg.min, bg.max, bg.steps, bg.scale), options);
    if (output.empty() || output == "-") {
        write_sweep_csv(out, rows);
        return kExitOk;
    }
    std::ofstream file(output);
    if (!file) throw std::runtime_error("cannot open " + output + " for writing");
    write_sweep_csv(file, rows);
    fmt::print(out, "wrote {} rows to {}\n", rows.size(), output);
    return kExitOk;
}

int cmd_threshold(const ModelOptions& m, double tol, std::ostream& out) {
    const std::optional<double> tc = threshold_temperature(m.params(), tol);
    if (tc) {
        fmt::print(out, "{:.4f}\n", *tc);
    } else {
        fmt::print(out, "none\n");
    }
    return kExitOk;
}

int cmd_crossings(const ModelOptions& m, double b_max, int resolution, std::ostream& out) {
    const std::vector<double> fields = level_crossings(m.n, m.j, b_max, resolution);
    if (fields.empty()) fmt::print(out, "none\n");
    for (double b : fields) fmt::print(out, "{:.9f}\n", b);
    return kExitOk;
}

int cmd_verify(const std::vector<int>& n_list, std::size_t samples, std::uint64_t seed, std::ostream& out) {
    const std::vector<PropositionReport> reports = verify_propositions(n_list, samples, seed);
    bool ok = true;
    for (const PropositionReport& r : reports) {
        const std::string name = r.branch.empty() ? fmt::format("{}", r.proposition)
                                                  : fmt::format("{} ({})", r.proposition, r.branch);
        const char* verdict = r.pass ? "PASS" : "FAIL";
        fmt::print(out, "proposition {:<9} n={:<2} samples={} max_discrepancy={:.3e} {}{}\n", name, r.n, r.samples,
                   r.max_discrepancy, verdict, r.in_claim ? "" : " (negative control, outside claim)");
        if (r.in_claim && !r.pass) ok = false;
    }
    return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "T,B,J,N,U,M,Gxx,Gzz,concurrence\n";
    for (const SweepRow& r : rows) {
        fmt::print(out, "{:.12g},{:.12g},{:.12g},{},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", r.t, r.b, r.j, r.n,
                   r.u, r.m, r.g_xx, r.g_zz, r.concurrence);
    }
}

std::vector<Level> cluster_levels(std::span<const double> sorted_values, double tol) {
    std::vector<Level> levels;
    std::size_t start = 0;
    while (start < sorted_values.size()) {
        std::size_t end = start + 1;
        double sum = sorted_values[start];
        while (end < sorted_values.size() && sorted_values[end] - sorted_values[start] <= tol) {
            sum += sorted_values[end];
            ++end;
        }
        levels.push_back({sum / static_cast<double>(end - start), end - start});
        start = end;
    }
    return levels;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact diagonalization of Heisenberg XX qubit rings in a magnetic field", "xxring"};
    app.require_subcommand(1);
    app.footer(kSurfaceRecipe);

    ModelOptions model;
    double t = 1.0;
    double tol = 1e-6;
    double b_max = 3.0;
    int resolution = 2000;
    GridOptions t_grid{0.05, 3.0, 60, GridScale::linear};
    GridOptions b_grid{0.0, 4.0, 80, GridScale::linear};
    std::string output = "-";
    SweepOptions sweep_options;
    std::vector<int> n_list{2, 3, 4, 5, 6};
    std::size_t samples = 200;
    std::uint64_t seed = kDefaultSeed;

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues with degeneracies");
    add_model_options(spectrum_cmd, model);

    auto* thermal_cmd = app.add_subcommand("thermal", "Gibbs-state observables and concurrence at one (T, B)");
    add_model_options(thermal_cmd, model);
    thermal_cmd->add_option("--t", t, "Temperature")->required()->check(CLI::PositiveNumber);

    auto* ground_cmd = app.add_subcommand("ground", "Ground energy, concurrence and N-tangle");
    add_model_options(ground_cmd, model);

    auto* sweep_cmd = app.add_subcommand("sweep", "CSV of observables over a (T, B) grid");
    sweep_cmd->footer(kSurfaceRecipe);
    add_model_options(sweep_cmd, model, false);
    add_grid_options(sweep_cmd, "t", t_grid, "Temperature");
    add_grid_options(sweep_cmd, "b", b_grid, "Field");
    sweep_cmd->add_option("-o,--output", output, "CSV path ('-' for stdout)")->capture_default_str();
    sweep_cmd->add_option("--threads", sweep_options.threads, "Worker threads (0: all cores)")->capture_default_str();
    sweep_cmd->add_option("--row-cap", sweep_options.row_cap, "Maximum number of grid points")->capture_default_str();

    auto* threshold_cmd = app.add_subcommand("threshold", "Largest temperature with nonzero concurrence");
    add_model_options(threshold_cmd, model);
    threshold_cmd->add_option("--tol", tol, "Bisection tolerance")->capture_default_str()->check(CLI::PositiveNumber);

    auto* crossings_cmd = app.add_subcommand("crossings", "Fields where the ground level changes sector");
    add_model_options(crossings_cmd, model, false);
    crossings_cmd->add_option("--b-max", b_max, "Upper end of the field scan")->capture_default_str()->check(
        CLI::PositiveNumber);
    crossings_cmd->add_option("--resolution", resolution, "Scan points")->capture_default_str()->check(
        CLI::PositiveNumber);

    auto* verify_cmd = app.add_subcommand("verify", "Randomized checks of the sign symmetries and zero-field formula");
    verify_cmd->add_option("--n", n_list, "Ring sizes")->delimiter(',')->capture_default_str()->check(
        CLI::Range(2, kMaxSites));
    verify_cmd->add_option("--samples", samples, "Samples per check")->capture_default_str()->check(
        CLI::PositiveNumber);
    verify_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*spectrum_cmd) return cmd_spectrum(model, out);
        if (*thermal_cmd) return cmd_thermal(model, t, out);
        if (*ground_cmd) return cmd_ground(model, out);
        if (*sweep_cmd) return cmd_sweep(model, t_grid, b_grid, output, sweep_options, out);
        if (*threshold_cmd) return cmd_threshold(model, tol, out);
        if (*crossings_cmd) return cmd_crossings(model, b_max, resolution, out);
        if (*verify_cmd) return cmd_verify(n_list, samples, seed, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
    return kExitUsage;
}

}  // namespace xxring::cli

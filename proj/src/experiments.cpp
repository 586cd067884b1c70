#include "xxring/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "xxring/eigensolver.hpp"

namespace xxring {

double thermal_concurrence(const ThermalEnsemble& ensemble, double t) {
    return concurrence_xstate(pair_density_from_populations(ensemble.observables(t))).value;
}

double thermal_concurrence(const ModelParams& params, double t) {
    return thermal_concurrence(ThermalEnsemble(full_spectrum(params)), t);
}

std::vector<double> make_grid(double min, double max, int steps, GridScale scale) {
    if (steps < 1) throw std::invalid_argument("grid needs at least one step");
    if (!(max >= min)) throw std::invalid_argument("grid max is below grid min");
    if (scale == GridScale::log && !(min > 0.0)) throw std::invalid_argument("log grid needs a positive minimum");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    if (steps == 1) {
        grid[0] = min;
        return grid;
    }
    for (int k = 0; k < steps; ++k) {
        const double f = static_cast<double>(k) / (steps - 1);
        grid[static_cast<std::size_t>(k)] =
            scale == GridScale::linear ? min + (max - min) * f : min * std::pow(max / min, f);
    }
    grid.back() = max;
    return grid;
}

std::vector<SweepRow> sweep(const ModelParams& model, std::vector<double> t_grid, std::vector<double> b_grid,
                            const SweepOptions& options) {
    model.validate();
    if (t_grid.empty() || b_grid.empty()) throw std::invalid_argument("sweep grids must be nonempty");
    for (double t : t_grid) {
        if (!(t > 0.0)) throw std::invalid_argument("sweep temperatures must be positive");
    }
    if (t_grid.size() * b_grid.size() > options.row_cap) {
        throw std::length_error("sweep grid exceeds the row cap of " + std::to_string(options.row_cap));
    }
    std::sort(t_grid.begin(), t_grid.end());
    std::sort(b_grid.begin(), b_grid.end());

    const std::size_t nt = t_grid.size();
    std::vector<SweepRow> rows(nt * b_grid.size());

    auto fill_field = [&](std::size_t ib) {
        ModelParams params = model;
        params.b = b_grid[ib];
        const ThermalEnsemble ensemble(full_spectrum(params));
        for (std::size_t it = 0; it < nt; ++it) {
            const ThermalObservables obs = ensemble.observables(t_grid[it]);
            SweepRow& row = rows[ib * nt + it];
            row.t = obs.t;
            row.b = params.b;
            row.j = params.j;
            row.n = params.n;
            row.log_z_shifted = obs.log_z_shifted;
            row.u = obs.u;
            row.m = obs.m;
            row.g_xx = obs.g_xx;
            row.g_zz = obs.g_zz;
            row.concurrence = concurrence_xstate(pair_density_from_populations(obs)).value;
        }
    };

    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(b_grid.size()));
    if (threads <= 1) {
        for (std::size_t ib = 0; ib < b_grid.size(); ++ib) fill_field(ib);
        return rows;
    }

    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t ib = w; ib < b_grid.size(); ib += threads) fill_field(ib);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

std::optional<double> threshold_temperature(const ModelParams& params, double tol, const ThresholdScan& scan) {
    if (!(tol > 0.0)) throw std::invalid_argument("threshold tolerance must be positive");
    if (!(scan.t_start > 0.0) || !(scan.t_stop > scan.t_start) || !(scan.factor > 1.0)) {
        throw std::invalid_argument("invalid threshold scan range");
    }
    const ThermalEnsemble ensemble(full_spectrum(params));
    auto entangled = [&](double t) { return thermal_concurrence(ensemble, t) > kEntangledFloor; };

    std::vector<double> grid;
    for (double t = scan.t_start; t < scan.t_stop; t *= scan.factor) grid.push_back(t);
    grid.push_back(scan.t_stop);

    std::optional<std::size_t> last;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (entangled(grid[k])) last = k;
    }
    if (!last) return std::nullopt;
    if (*last + 1 == grid.size()) return scan.t_stop;

    double lo = grid[*last];
    double hi = grid[*last + 1];
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (entangled(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> level_crossings(int n, double j, double b_max, int resolution) {
    if (!(b_max > 0.0)) throw std::invalid_argument("b_max must be positive");
    if (resolution < 1) throw std::invalid_argument("resolution must be at least 1");
    const Spectrum spectrum = full_spectrum({n, j, 0.0});

    struct Branch {
        int r;
        double e0;   // sector minimum at B = 0
        double slope;  // n - 2r
    };
    std::vector<Branch> branches;
    for (const auto& s : spectrum.sectors) {
        branches.push_back({s.basis.reversed(), s.eigen.values(0), static_cast<double>(s.sigma_z())});
    }
    auto energy = [](const Branch& br, double b) { return br.e0 + b * br.slope; };

    // Lowest branch at b; ties go to the branch that is lower just above b.
    auto ground_branch = [&](double b) {
        double emin = std::numeric_limits<double>::infinity();
        for (const auto& br : branches) emin = std::min(emin, energy(br, b));
        const double tol = ground_degeneracy_tolerance(emin);
        const Branch* best = nullptr;
        for (const auto& br : branches) {
            if (energy(br, b) - emin > tol) continue;
            if (best == nullptr || br.slope < best->slope) best = &br;
        }
        return *best;
    };

    std::vector<double> crossings;
    Branch current = ground_branch(0.0);
    for (int k = 1; k <= resolution; ++k) {
        const double b_lo = b_max * (k - 1) / resolution;
        const double b_hi = b_max * k / resolution;
        const Branch next = ground_branch(b_hi);
        if (next.r == current.r) continue;

        double lo = b_lo, hi = b_hi;
        auto gap = [&](double b) { return energy(current, b) - energy(next, b); };  // <= 0 before the crossing
        for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
            const double mid = 0.5 * (lo + hi);
            (gap(mid) <= 0.0 ? lo : hi) = mid;
        }
        const double b_star = 0.5 * (lo + hi);

        double emin = std::numeric_limits<double>::infinity();
        for (const auto& br : branches) emin = std::min(emin, energy(br, b_star));
        if (energy(current, b_star) - emin > 1e-9 * std::max(1.0, std::abs(emin))) {
            throw std::runtime_error("level_crossings: resolution too coarse to separate crossings near B = " +
                                     std::to_string(b_star));
        }
        crossings.push_back(b_star);
        current = next;
    }
    return crossings;
}

double zero_field_concurrence(double u_bar, double j, double g_zz) {
    if (j == 0.0) throw std::domain_error("zero-field concurrence formula requires J != 0");
    const double energy_term = j > 0.0 ? -u_bar / j : u_bar / j;
    return 0.5 * std::max(0.0, energy_term - g_zz - 1.0);
}

Concurrence ground_state_concurrence(const ModelParams& params) {
    const Spectrum spectrum = full_spectrum(params);
    const GroundSpace gs = ground_space(spectrum);
    if (gs.sectors.size() > 1) {
        throw std::domain_error("ground space spans " + std::to_string(gs.sectors.size()) +
                                " magnetization sectors; B sits on a level crossing");
    }
    const GroundCorrelators g = ground_correlators(spectrum);
    const Concurrence from_density = concurrence_xstate(ground_state_reduced(spectrum));

    if (params.b == 0.0 && params.j != 0.0) {
        const double from_energy = zero_field_concurrence(gs.energy / params.n, params.j, g.g_zz);
        if (std::abs(from_energy - from_density.value) > 1e-9) {
            throw std::logic_error("ground-state concurrence routes disagree: " + std::to_string(from_energy) +
                                   " vs " + std::to_string(from_density.value));
        }
    }
    return from_density;
}

namespace {

// Uniform doubles from the raw 64-bit engine output so that sample streams do
// not depend on the standard library's distribution implementations.
class ParameterSampler {
public:
    explicit ParameterSampler(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    double exchange() {
        for (;;) {
            const double j = uniform(-2.0, 2.0);
            if (std::abs(j) >= 0.05) return j;
        }
    }
    double field() { return uniform(-3.0, 3.0); }
    double temperature() { return std::exp(uniform(std::log(0.05), std::log(50.0))); }

private:
    std::mt19937_64 engine_;
};

PropositionReport finish(PropositionReport report) {
    report.pass = report.max_discrepancy < kPropositionTolerance;
    return report;
}

}  // namespace

std::vector<PropositionReport> verify_propositions(std::span<const int> n_list, std::size_t samples,
                                                   std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("verify_propositions needs at least one sample");
    ParameterSampler sampler(seed);
    std::vector<PropositionReport> reports;

    for (int n : n_list) {
        if (n < 2) throw std::invalid_argument("propositions concern rings with n >= 2");

        PropositionReport p1{1, "", n, samples};
        for (std::size_t s = 0; s < samples; ++s) {
            const double j = sampler.exchange(), b = sampler.field(), t = sampler.temperature();
            const double c = thermal_concurrence({n, j, b}, t);
            const double flipped = thermal_concurrence({n, j, -b}, t);
            p1.max_discrepancy = std::max(p1.max_discrepancy, std::abs(c - flipped));
        }
        reports.push_back(finish(p1));

        PropositionReport p2{2, "", n, samples};
        p2.in_claim = n % 2 == 0;
        for (std::size_t s = 0; s < samples; ++s) {
            const double j = sampler.exchange(), b = sampler.field(), t = sampler.temperature();
            const double c = thermal_concurrence({n, j, b}, t);
            const double flipped = thermal_concurrence({n, -j, b}, t);
            p2.max_discrepancy = std::max(p2.max_discrepancy, std::abs(c - flipped));
        }
        reports.push_back(finish(p2));

        for (const char* branch : {"AFM", "FM"}) {
            const double sign = std::string(branch) == "AFM" ? 1.0 : -1.0;
            PropositionReport p3{3, branch, n, samples};
            for (std::size_t s = 0; s < samples; ++s) {
                const double j = sign * std::abs(sampler.exchange()), t = sampler.temperature();
                const ModelParams params{n, j, 0.0};
                const ThermalEnsemble ensemble(full_spectrum(params));
                const ThermalObservables obs = ensemble.observables(t);
                const double pipeline = concurrence_from_correlators(obs.g_xx, obs.g_zz, obs.m / n).value;
                const double formula = zero_field_concurrence(obs.u / n, j, obs.g_zz);
                p3.max_discrepancy = std::max(p3.max_discrepancy, std::abs(pipeline - formula));
            }
            reports.push_back(finish(p3));
        }
    }
    return reports;
}

}  // namespace xxring

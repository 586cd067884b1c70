#ifndef XXRING_EXPERIMENTS_HPP
#define XXRING_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xxring/entanglement.hpp"
#include "xxring/hamiltonian.hpp"
#include "xxring/thermal.hpp"

namespace xxring {

// Concurrence counts as nonzero above this floor.
inline constexpr double kEntangledFloor = 1e-12;

// Nearest-neighbour thermal concurrence. Equivalent to the correlator formula,
// but the |00>/|11> populations enter directly instead of through
// (1 + Gzz)^2 - 4 m_bar^2, which cancels to roundoff in polarized states.
double thermal_concurrence(const ThermalEnsemble& ensemble, double t);
double thermal_concurrence(const ModelParams& params, double t);

enum class GridScale { linear, log };

// steps points from min to max inclusive (a single point when steps == 1).
std::vector<double> make_grid(double min, double max, int steps, GridScale scale);

struct SweepRow {
    double t = 0.0;
    double b = 0.0;
    double j = 0.0;
    int n = 0;
    double log_z_shifted = 0.0;
    double u = 0.0;
    double m = 0.0;
    double g_xx = 0.0;
    double g_zz = 0.0;
    double concurrence = 0.0;
};

struct SweepOptions {
    std::size_t row_cap = 2'000'000;
    unsigned threads = 0;  // 0: hardware concurrency
};

// One row per (t, b); rows ordered by b ascending, then t ascending. One
// spectrum per field value is shared across the temperature axis.
std::vector<SweepRow> sweep(const ModelParams& model, std::vector<double> t_grid, std::vector<double> b_grid,
                            const SweepOptions& options = {});

struct ThresholdScan {
    double t_start = 0.05;
    double t_stop = 1e3;
    double factor = 2.0;
};

// Largest temperature with nonzero concurrence: a geometric upward scan
// followed by bisection down to tol. nullopt when nothing scanned is
// entangled; t_stop when the ring is still entangled there.
std::optional<double> threshold_temperature(const ModelParams& params, double tol, const ThresholdScan& scan = {});

// Fields in (0, b_max] where the ground level switches sector. Sector
// Hamiltonians differ from their B = 0 form by B * (n - 2r) on the diagonal,
// so each branch is a straight line in B. Throws std::runtime_error when the
// grid is too coarse to separate neighbouring crossings.
std::vector<double> level_crossings(int n, double j, double b_max, int resolution = 2000);

// Zero-field ground/thermal concurrence from the per-site energy:
// 1/2 max(0, -u_bar/J - Gzz - 1) for J > 0 and 1/2 max(0, u_bar/J - Gzz - 1) for J < 0.
double zero_field_concurrence(double u_bar, double j, double g_zz);

// Nearest-neighbour concurrence of the ground state. At B = 0 the energy
// formula above is evaluated too and must agree with the reduced-density
// route. Throws std::domain_error if the ground space spans several sectors
// (the field sits on a level crossing).
Concurrence ground_state_concurrence(const ModelParams& params);

struct PropositionReport {
    int proposition = 0;
    std::string branch;  // "AFM" / "FM" for proposition 3
    int n = 0;
    std::size_t samples = 0;
    double max_discrepancy = 0.0;
    bool in_claim = true;  // false for the odd-ring negative control of proposition 2
    bool pass = false;     // max_discrepancy < kPropositionTolerance
};

inline constexpr double kPropositionTolerance = 1e-9;
inline constexpr std::uint64_t kDefaultSeed = 20020901;

// Randomized checks of the sign symmetries (1: B -> -B, 2: J -> -J) and of the
// zero-field energy formula (3) against the correlator pipeline.
std::vector<PropositionReport> verify_propositions(std::span<const int> n_list, std::size_t samples,
                                                   std::uint64_t seed = kDefaultSeed);

}  // namespace xxring

#endif  // XXRING_EXPERIMENTS_HPP

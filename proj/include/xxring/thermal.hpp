#ifndef XXRING_THERMAL_HPP
#define XXRING_THERMAL_HPP

#include <vector>

#include <Eigen/Dense>

#include "xxring/eigensolver.hpp"

namespace xxring {

// A pair of sites of the ring (0-based, site 0 is the first qubit).
struct Bond {
    int first = 0;
    int second = 1;
};

bool is_ring_bond(const Bond& bond, int n);

// Gibbs-state observables at temperature t (k_B = 1). The partition function
// is kept as ln sum_k exp(-(E_k - E0)/t) with E0 = energy_shift.
struct ThermalObservables {
    double t = 0.0;
    double log_z_shifted = 0.0;
    double energy_shift = 0.0;
    double u = 0.0;     // internal energy <H>
    double m = 0.0;     // magnetization <sum_i sz_i>
    double g_xx = 0.0;  // <sx sx> on the bond
    double g_zz = 0.0;  // <sz sz> on the bond
    // Bond populations of |00>, |11> and the antiparallel pair. Summed from
    // squared amplitudes, so they keep full relative accuracy when tiny.
    double pop_up_up = 0.0;
    double pop_down_down = 0.0;
    double pop_antiparallel = 0.0;
    // ln(U - E0) evaluated without cancellation, so that the approach to the
    // ground energy stays resolvable at low t; -inf for a flat spectrum.
    double log_excess_energy = 0.0;

    double log_z() const { return log_z_shifted - energy_shift / t; }
};

// Parameters of the X-form reduced state of an adjacent pair in the basis
// {|00>, |01>, |10>, |11>}:
//   [u+ 0 0 0; 0 w z 0; 0 z w 0; 0 0 0 u-]
struct PairDensity {
    double u_plus = 0.0;
    double u_minus = 0.0;
    double w = 0.0;
    double z = 0.0;

    Eigen::Matrix4d matrix() const;
    // Throws std::domain_error if trace or positivity fail beyond 1e-10.
    void validate() const;
};

// u+ = (1 + 2 m_bar + gzz)/4, u- = (1 - 2 m_bar + gzz)/4, w = (1 - gzz)/4, z = gxx/2.
PairDensity pair_density_from_correlators(double g_xx, double g_zz, double m_bar);

// Pair state assembled from the bond populations and G_xx.
PairDensity pair_density_from_populations(const ThermalObservables& obs);

// Thermal averages over a fixed spectrum. Per-eigenstate expectation values
// are computed once, so repeated temperature evaluations cost O(2^n).
class ThermalEnsemble {
public:
    explicit ThermalEnsemble(const Spectrum& spectrum, Bond bond = {});

    const ModelParams& params() const { return params_; }
    double ground_energy() const { return e0_; }

    ThermalObservables observables(double t) const;
    double log_partition(double t) const;

private:
    struct Level {
        double energy;
        double excess;
        double sigma_z;
        double xx;
        double zz;
        double up_up;
        double down_down;
        double antiparallel;
    };

    ModelParams params_;
    double e0_;
    double gap_;  // smallest excitation above the ground space
    std::vector<Level> levels_;
};

ThermalObservables observables(const Spectrum& spectrum, double t);

// ln Z, unshifted.
double log_partition(const Spectrum& spectrum, double t);

// Expectation of sigma_a^alpha sigma_b^beta in eigenstate k of a sector.
double eigenstate_pair_expectation(const SectorSpectrum& sector, Eigen::Index k, int site_a, Pauli alpha,
                                   int site_b, Pauli beta);

// Thermal expectation <sigma_a^alpha sigma_b^beta> from the eigenvectors.
double thermal_pair_correlator(const Spectrum& spectrum, double t, int site_a, Pauli alpha, int site_b,
                               Pauli beta);

// G_xx on a ring bond evaluated from the eigenvectors.
double correlator_xx_direct(const Spectrum& spectrum, double t, Bond bond = {});

// G_xx = (U/n - B M/n) / (2J). Throws std::domain_error for J == 0.
double gxx_from_energy(const ThermalObservables& obs, const ModelParams& params);

// X-form reduced density of an adjacent pair. t == 0 selects the ground-space
// path; t < 0 and non-adjacent pairs throw std::invalid_argument.
PairDensity reduced_pair_density(const Spectrum& spectrum, double t, Bond bond = {});

// Energies within this tolerance of E0 belong to the ground space.
double ground_degeneracy_tolerance(double e0);

struct GroundSpace {
    double energy = 0.0;
    std::size_t degeneracy = 0;
    std::vector<int> sectors;  // reversed-spin counts hosting ground states
};

GroundSpace ground_space(const Spectrum& spectrum);

// Reduced pair state of the uniform mixture over the ground space (the
// T -> 0+ limit of the Gibbs state).
PairDensity ground_state_reduced(const Spectrum& spectrum, Bond bond = {});

// Ground-space averages of magnetization per site, bond correlators and
// bond populations.
struct GroundCorrelators {
    double m_bar = 0.0;
    double g_xx = 0.0;
    double g_zz = 0.0;
    double pop_up_up = 0.0;
    double pop_down_down = 0.0;
    double pop_antiparallel = 0.0;
};

GroundCorrelators ground_correlators(const Spectrum& spectrum, Bond bond = {});

}  // namespace xxring

#endif  // XXRING_THERMAL_HPP

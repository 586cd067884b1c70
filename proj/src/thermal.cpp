#include "xxring/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace xxring {

namespace {

void require_positive_temperature(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("temperature must be positive and finite (use the ground-state path for T = 0)");
    }
}

void require_bond(const Bond& bond, int n) {
    if (!is_ring_bond(bond, n)) {
        throw std::invalid_argument("sites " + std::to_string(bond.first) + "," + std::to_string(bond.second) +
                                    " are not nearest neighbours on the ring");
    }
}

// sum_k exp(-(E_k - E0)/t), accumulated over all sectors.
template <typename Fn>
void for_each_weight(const Spectrum& spectrum, double t, double e0, Fn&& fn) {
    for (const auto& sector : spectrum.sectors) {
        for (Eigen::Index k = 0; k < sector.eigen.values.size(); ++k) {
            fn(sector, k, std::exp(-(sector.eigen.values(k) - e0) / t));
        }
    }
}

struct BondPopulations {
    double up_up = 0.0;
    double down_down = 0.0;
    double antiparallel = 0.0;
};

BondPopulations bond_populations(const SectorSpectrum& sector, Eigen::Index k, const Bond& bond) {
    const auto v = sector.eigen.vectors.col(k);
    BondPopulations pop;
    for (std::size_t idx = 0; idx < sector.basis.size(); ++idx) {
        const double p = v(static_cast<Eigen::Index>(idx)) * v(static_cast<Eigen::Index>(idx));
        const BasisLabel label = sector.basis[idx];
        const bool a = site_state(label, bond.first), b = site_state(label, bond.second);
        if (!a && !b) {
            pop.up_up += p;
        } else if (a && b) {
            pop.down_down += p;
        } else {
            pop.antiparallel += p;
        }
    }
    return pop;
}

}  // namespace

bool is_ring_bond(const Bond& bond, int n) {
    if (n < 2 || bond.first < 0 || bond.second < 0 || bond.first >= n || bond.second >= n) return false;
    if (bond.first == bond.second) return false;
    return bond.second == (bond.first + 1) % n || bond.first == (bond.second + 1) % n;
}

Eigen::Matrix4d PairDensity::matrix() const {
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    rho(0, 0) = u_plus;
    rho(1, 1) = w;
    rho(2, 2) = w;
    rho(3, 3) = u_minus;
    rho(1, 2) = z;
    rho(2, 1) = z;
    return rho;
}

void PairDensity::validate() const {
    constexpr double tol = 1e-10;
    if (std::abs(u_plus + u_minus + 2.0 * w - 1.0) > tol) {
        throw std::domain_error("pair density does not have unit trace");
    }
    if (u_plus < -tol || u_minus < -tol || w < -tol || std::abs(z) > w + tol) {
        throw std::domain_error("pair density is not positive semidefinite");
    }
}

PairDensity pair_density_from_correlators(double g_xx, double g_zz, double m_bar) {
    return {(1.0 + 2.0 * m_bar + g_zz) / 4.0, (1.0 - 2.0 * m_bar + g_zz) / 4.0, (1.0 - g_zz) / 4.0, g_xx / 2.0};
}

PairDensity pair_density_from_populations(const ThermalObservables& obs) {
    return {obs.pop_up_up, obs.pop_down_down, obs.pop_antiparallel / 2.0, obs.g_xx / 2.0};
}

double eigenstate_pair_expectation(const SectorSpectrum& sector, Eigen::Index k, int site_a, Pauli alpha,
                                   int site_b, Pauli beta) {
    const auto& basis = sector.basis;
    const auto v = sector.eigen.vectors.col(k);
    std::complex<double> sum{};
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
        const double amp = v(static_cast<Eigen::Index>(idx));
        if (amp == 0.0) continue;
        const PauliAction first = apply_pauli(basis[idx], site_b, beta);
        const PauliAction second = apply_pauli(first.image, site_a, alpha);
        if (!basis.contains(second.image)) continue;
        const double bra = v(static_cast<Eigen::Index>(basis.index_of(second.image)));
        sum += bra * first.phase * second.phase * amp;
    }
    return sum.real();
}

ThermalEnsemble::ThermalEnsemble(const Spectrum& spectrum, Bond bond)
    : params_(spectrum.params), e0_(spectrum.ground_energy()), gap_(std::numeric_limits<double>::infinity()) {
    require_bond(bond, params_.n);
    levels_.reserve(spectrum.dimension());
    for (const auto& sector : spectrum.sectors) {
        for (Eigen::Index k = 0; k < sector.eigen.values.size(); ++k) {
            const BondPopulations pop = bond_populations(sector, k, bond);
            levels_.push_back({sector.eigen.values(k), 0.0, static_cast<double>(sector.sigma_z()),
                               eigenstate_pair_expectation(sector, k, bond.first, Pauli::x, bond.second, Pauli::x),
                               eigenstate_pair_expectation(sector, k, bond.first, Pauli::z, bond.second, Pauli::z),
                               pop.up_up, pop.down_down, pop.antiparallel});
        }
    }
    // Levels inside the degeneracy window count as ground states exactly.
    const double tol = ground_degeneracy_tolerance(e0_);
    for (auto& level : levels_) {
        if (level.energy - e0_ <= tol) {
            level.excess = 0.0;
        } else {
            level.excess = level.energy - e0_;
            gap_ = std::min(gap_, level.excess);
        }
    }
}

ThermalObservables ThermalEnsemble::observables(double t) const {
    require_positive_temperature(t);
    double z = 0.0, u = 0.0, m = 0.0, xx = 0.0, zz = 0.0, excess = 0.0;
    double up_up = 0.0, down_down = 0.0, antiparallel = 0.0;
    for (const auto& level : levels_) {
        const double weight = std::exp(-(level.energy - e0_) / t);
        if (level.excess > 0.0) excess += level.excess * std::exp(-(level.excess - gap_) / t);
        z += weight;
        u += weight * (level.energy - e0_);
        m += weight * level.sigma_z;
        xx += weight * level.xx;
        zz += weight * level.zz;
        up_up += weight * level.up_up;
        down_down += weight * level.down_down;
        antiparallel += weight * level.antiparallel;
    }
    ThermalObservables obs;
    obs.t = t;
    obs.log_z_shifted = std::log(z);
    obs.energy_shift = e0_;
    // E0 plus the mean excitation: the ratio of sums then carries no E0-sized
    // rounding, and U rises monotonically with t down to the last ulp.
    obs.u = e0_ + u / z;
    obs.m = m / z;
    obs.g_xx = xx / z;
    obs.g_zz = zz / z;
    obs.pop_up_up = up_up / z;
    obs.pop_down_down = down_down / z;
    obs.pop_antiparallel = antiparallel / z;
    obs.log_excess_energy = std::isfinite(gap_) ? std::log(excess) - gap_ / t - obs.log_z_shifted
                                                : -std::numeric_limits<double>::infinity();
    if (!std::isfinite(obs.log_z_shifted) || !std::isfinite(obs.u) || !std::isfinite(obs.m) ||
        !std::isfinite(obs.g_xx) || !std::isfinite(obs.g_zz)) {
        throw std::runtime_error("non-finite thermal average");
    }
    return obs;
}

double ThermalEnsemble::log_partition(double t) const {
    require_positive_temperature(t);
    double z = 0.0;
    for (const auto& level : levels_) z += std::exp(-(level.energy - e0_) / t);
    return std::log(z) - e0_ / t;
}

ThermalObservables observables(const Spectrum& spectrum, double t) {
    return ThermalEnsemble(spectrum).observables(t);
}

double log_partition(const Spectrum& spectrum, double t) {
    require_positive_temperature(t);
    const double e0 = spectrum.ground_energy();
    double z = 0.0;
    for_each_weight(spectrum, t, e0, [&](const SectorSpectrum&, Eigen::Index, double w) { z += w; });
    return std::log(z) - e0 / t;
}

double thermal_pair_correlator(const Spectrum& spectrum, double t, int site_a, Pauli alpha, int site_b,
                               Pauli beta) {
    require_positive_temperature(t);
    const int n = spectrum.params.n;
    if (site_a < 0 || site_b < 0 || site_a >= n || site_b >= n) {
        throw std::invalid_argument("site index outside the ring");
    }
    double z = 0.0, sum = 0.0;
    for_each_weight(spectrum, t, spectrum.ground_energy(), [&](const SectorSpectrum& sector, Eigen::Index k, double w) {
        z += w;
        sum += w * eigenstate_pair_expectation(sector, k, site_a, alpha, site_b, beta);
    });
    return sum / z;
}

double correlator_xx_direct(const Spectrum& spectrum, double t, Bond bond) {
    require_bond(bond, spectrum.params.n);
    return thermal_pair_correlator(spectrum, t, bond.first, Pauli::x, bond.second, Pauli::x);
}

double gxx_from_energy(const ThermalObservables& obs, const ModelParams& params) {
    if (params.j == 0.0) {
        throw std::domain_error("G_xx from the internal energy requires J != 0");
    }
    const double n = params.n;
    return (obs.u / n - params.b * obs.m / n) / (2.0 * params.j);
}

PairDensity reduced_pair_density(const Spectrum& spectrum, double t, Bond bond) {
    require_bond(bond, spectrum.params.n);
    if (t == 0.0) return ground_state_reduced(spectrum, bond);
    return pair_density_from_populations(ThermalEnsemble(spectrum, bond).observables(t));
}

double ground_degeneracy_tolerance(double e0) { return 1e-9 * std::max(1.0, std::abs(e0)); }

GroundSpace ground_space(const Spectrum& spectrum) {
    GroundSpace gs;
    gs.energy = spectrum.ground_energy();
    const double tol = ground_degeneracy_tolerance(gs.energy);
    for (std::size_t r = 0; r < spectrum.sectors.size(); ++r) {
        const auto& values = spectrum.sectors[r].eigen.values;
        std::size_t count = 0;
        for (Eigen::Index k = 0; k < values.size(); ++k) {
            if (values(k) - gs.energy <= tol) ++count;
        }
        if (count > 0) {
            gs.degeneracy += count;
            gs.sectors.push_back(static_cast<int>(r));
        }
    }
    return gs;
}

GroundCorrelators ground_correlators(const Spectrum& spectrum, Bond bond) {
    require_bond(bond, spectrum.params.n);
    const double e0 = spectrum.ground_energy();
    const double tol = ground_degeneracy_tolerance(e0);
    GroundCorrelators acc;
    std::size_t count = 0;
    for (const auto& sector : spectrum.sectors) {
        for (Eigen::Index k = 0; k < sector.eigen.values.size(); ++k) {
            if (sector.eigen.values(k) - e0 > tol) continue;
            ++count;
            acc.m_bar += static_cast<double>(sector.sigma_z()) / spectrum.params.n;
            acc.g_xx += eigenstate_pair_expectation(sector, k, bond.first, Pauli::x, bond.second, Pauli::x);
            acc.g_zz += eigenstate_pair_expectation(sector, k, bond.first, Pauli::z, bond.second, Pauli::z);
            const BondPopulations pop = bond_populations(sector, k, bond);
            acc.pop_up_up += pop.up_up;
            acc.pop_down_down += pop.down_down;
            acc.pop_antiparallel += pop.antiparallel;
        }
    }
    acc.m_bar /= static_cast<double>(count);
    acc.g_xx /= static_cast<double>(count);
    acc.g_zz /= static_cast<double>(count);
    acc.pop_up_up /= static_cast<double>(count);
    acc.pop_down_down /= static_cast<double>(count);
    acc.pop_antiparallel /= static_cast<double>(count);
    return acc;
}

PairDensity ground_state_reduced(const Spectrum& spectrum, Bond bond) {
    const GroundCorrelators g = ground_correlators(spectrum, bond);
    return {g.pop_up_up, g.pop_down_down, g.pop_antiparallel / 2.0, g.g_xx / 2.0};
}

}  // namespace xxring

#ifndef XXRING_ENTANGLEMENT_HPP
#define XXRING_ENTANGLEMENT_HPP

#include <Eigen/Dense>

#include "xxring/spin_basis.hpp"
#include "xxring/thermal.hpp"

namespace xxring {

struct Concurrence {
    double value = 0.0;
};

// Values within 1e-9 outside [0, 1] are clamped; anything further out is a
// bug upstream and raises std::domain_error.
double clamp_unit_interval(double value, const char* what);

// C = max(0, |Gxx| - sqrt((1 + Gzz)^2 - 4 m_bar^2) / 2).
Concurrence concurrence_from_correlators(double g_xx, double g_zz, double m_bar);

// C = 2 max(0, |z| - sqrt(u+ u-)).
Concurrence concurrence_xstate(const PairDensity& rho);

// General two-qubit concurrence max(0, l1 - l2 - l3 - l4), l_i the descending
// square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho), rho~ the spin
// flip of rho. Only the real symmetric eigensolver is used.
Concurrence concurrence_wootters(const Eigen::Matrix4cd& rho);

// Pure state of n qubits; amplitudes indexed by BasisLabel.
class PureState {
public:
    PureState(int n, Eigen::VectorXcd amplitudes);

    int sites() const { return n_; }
    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
    std::complex<double> operator[](BasisLabel x) const { return amplitudes_(static_cast<Eigen::Index>(x)); }

private:
    int n_;
    Eigen::VectorXcd amplitudes_;
};

// Lift a sector eigenvector into the full 2^n space.
PureState embed_sector_state(const SectorBasis& basis, const Eigen::VectorXd& vector);

// sigma_y on every site.
PureState apply_sigma_y_string(const PureState& psi);

// |<psi| sy x ... x sy |psi*>|^2, even n only.
double n_tangle(const PureState& psi);

// Reduced state of sites (a, b), basis index 2 * bit_a + bit_b.
Eigen::Matrix4cd reduced_pair(const PureState& psi, int site_a, int site_b);

}  // namespace xxring

#endif  // XXRING_ENTANGLEMENT_HPP

#ifndef XXRING_HAMILTONIAN_HPP
#define XXRING_HAMILTONIAN_HPP

#include <Eigen/Dense>

#include "xxring/spin_basis.hpp"

namespace xxring {

// XX ring in a uniform field:
//   H = J sum_i (sx_i sx_{i+1} + sy_i sy_{i+1}) + B sum_i sz_i,  site n == site 0.
// The bond sum runs over i = 0..n-1 literally, so a two-site ring visits its
// single bond twice (effective coupling 2J). A single site has no bonds.
struct ModelParams {
    int n = 4;
    double j = 1.0;
    double b = 0.0;

    void validate() const;
};

struct SectorMatrix {
    SectorBasis basis;
    Eigen::MatrixXd entries;
};

SectorMatrix build_sector_hamiltonian(const ModelParams& params, int r);

// Dense 2^n matrix built term by term from the Pauli matrices; bypasses the
// sector blocking entirely. Only intended for small rings (n <= 12).
inline constexpr int kMaxFullSites = 12;
Eigen::MatrixXd full_hamiltonian(const ModelParams& params);

}  // namespace xxring

#endif  // XXRING_HAMILTONIAN_HPP

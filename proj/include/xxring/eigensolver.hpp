#ifndef XXRING_EIGENSOLVER_HPP
#define XXRING_EIGENSOLVER_HPP

#include <vector>

#include <Eigen/Dense>

#include "xxring/hamiltonian.hpp"
#include "xxring/spin_basis.hpp"

namespace xxring {

// values ascending; vectors.col(k) belongs to values(k). No particular basis
// is promised inside a degenerate eigenspace.
struct EigenDecomposition {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

struct JacobiOptions {
    double tolerance = 1e-12;  // off-diagonal Frobenius norm relative to ||A||_F
    int max_sweeps = 100;
};

// Cyclic Jacobi diagonalization of a real symmetric matrix.
// Throws std::invalid_argument for non-square / asymmetric input and
// std::runtime_error if the sweep cap is hit.
EigenDecomposition eigh_symmetric(const Eigen::MatrixXd& matrix, const JacobiOptions& options = {});

struct SectorSpectrum {
    SectorBasis basis;
    EigenDecomposition eigen;

    int sigma_z() const { return basis.sigma_z(); }
};

struct Spectrum {
    ModelParams params;
    std::vector<SectorSpectrum> sectors;  // indexed by reversed-spin count r

    std::size_t dimension() const;
    double ground_energy() const;
    // Every eigenvalue of the ring, sorted ascending.
    std::vector<double> eigenvalues() const;
};

Spectrum full_spectrum(const ModelParams& params);

}  // namespace xxring

#endif  // XXRING_EIGENSOLVER_HPP

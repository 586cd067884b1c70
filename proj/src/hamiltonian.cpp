#include "xxring/hamiltonian.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace xxring {

void ModelParams::validate() const {
    if (n < 1 || n > kMaxSites) {
        throw std::invalid_argument("ring size " + std::to_string(n) + " outside [1, " +
                                    std::to_string(kMaxSites) + "]");
    }
    if (!std::isfinite(j) || !std::isfinite(b)) {
        throw std::invalid_argument("exchange and field must be finite");
    }
}

SectorMatrix build_sector_hamiltonian(const ModelParams& params, int r) {
    params.validate();
    SectorBasis basis(params.n, r);
    const int n = params.n;
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

    const double diagonal = params.b * basis.sigma_z();
    for (Eigen::Index k = 0; k < dim; ++k) h(k, k) = diagonal;

    if (n < 2) return {std::move(basis), std::move(h)};

    // sx sx + sy sy = 2 (s+ s- + s- s+): flips an antiparallel pair with amplitude 2J.
    const double hop = 2.0 * params.j;
    for (Eigen::Index col = 0; col < dim; ++col) {
        const BasisLabel x = basis[static_cast<std::size_t>(col)];
        for (int i = 0; i < n; ++i) {
            const int next = (i + 1) % n;
            if (site_state(x, i) == site_state(x, next)) continue;
            const BasisLabel y = x ^ ((BasisLabel{1} << i) | (BasisLabel{1} << next));
            h(static_cast<Eigen::Index>(basis.index_of(y)), col) += hop;
        }
    }
    return {std::move(basis), std::move(h)};
}

namespace {

using cplx = std::complex<double>;

// Pauli matrices as <out|P|in>.
using PauliMatrix = std::array<std::array<cplx, 2>, 2>;
constexpr cplx I{0.0, 1.0};
const PauliMatrix kSx{{{0.0, 1.0}, {1.0, 0.0}}};
const PauliMatrix kSy{{{0.0, -I}, {I, 0.0}}};
const PauliMatrix kSz{{{1.0, 0.0}, {0.0, -1.0}}};

}  // namespace

Eigen::MatrixXd full_hamiltonian(const ModelParams& params) {
    params.validate();
    const int n = params.n;
    if (n > kMaxFullSites) {
        throw std::invalid_argument("full_hamiltonian limited to n <= " + std::to_string(kMaxFullSites));
    }
    const BasisLabel dim = BasisLabel{1} << n;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

    for (BasisLabel in = 0; in < dim; ++in) {
        for (int i = 0; i < n; ++i) {
            const int in_i = site_state(in, i);
            h(in, in) += params.b * kSz[in_i][in_i];

            if (n < 2) continue;
            const int next = (i + 1) % n;
            const int in_n = site_state(in, next);
            for (const PauliMatrix* p : {&kSx, &kSy}) {
                for (int out_i = 0; out_i < 2; ++out_i) {
                    for (int out_n = 0; out_n < 2; ++out_n) {
                        const cplx amp = (*p)[out_i][in_i] * (*p)[out_n][in_n];
                        if (amp == cplx{}) continue;
                        BasisLabel out = in;
                        out = (out & ~(BasisLabel{1} << i)) | (BasisLabel(out_i) << i);
                        out = (out & ~(BasisLabel{1} << next)) | (BasisLabel(out_n) << next);
                        h(out, in) += params.j * amp;
                    }
                }
            }
        }
    }
    if (h.imag().cwiseAbs().maxCoeff() > 0.0) {
        throw std::logic_error("XX ring Hamiltonian acquired an imaginary part");
    }
    return h.real();
}

}  // namespace xxring

#include "xxring/entanglement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <array>
#include <stdexcept>
#include <string>

#include "xxring/eigensolver.hpp"

namespace xxring {

namespace {

constexpr double kClampSlack = 1e-9;

// Hermitian H = A + iB  ->  real symmetric [[A, -B], [B, A]]. Every
// eigenvalue of H appears twice.
Eigen::Matrix<double, 8, 8> realify(const Eigen::Matrix4cd& h) {
    Eigen::Matrix<double, 8, 8> r;
    r.topLeftCorner<4, 4>() = h.real();
    r.topRightCorner<4, 4>() = -h.imag();
    r.bottomLeftCorner<4, 4>() = h.imag();
    r.bottomRightCorner<4, 4>() = h.real();
    return r;
}

Eigen::Matrix4cd complexify(const Eigen::Matrix<double, 8, 8>& r) {
    Eigen::Matrix4cd h;
    h.real() = r.topLeftCorner<4, 4>();
    h.imag() = r.bottomLeftCorner<4, 4>();
    return h;
}

Eigen::Matrix4cd hermitian_part(const Eigen::Matrix4cd& m) { return 0.5 * (m + m.adjoint()); }

// The four distinct eigenvalues of a Hermitian 4x4 (descending) plus sqrt(H).
struct HermitianSpectrum {
    std::array<double, 4> values;
    Eigen::Matrix4cd sqrt;
};

HermitianSpectrum hermitian_spectrum(const Eigen::Matrix4cd& h) {
    const EigenDecomposition eig = eigh_symmetric(realify(hermitian_part(h)));
    HermitianSpectrum out;
    for (int k = 0; k < 4; ++k) out.values[static_cast<std::size_t>(k)] = eig.values(7 - 2 * k);

    // Only negative roundoff is clamped: populations of 1e-15 and below still
    // shift the concurrence by their square roots.
    Eigen::VectorXd roots(8);
    for (Eigen::Index k = 0; k < 8; ++k) roots(k) = std::sqrt(std::max(0.0, eig.values(k)));
    const Eigen::MatrixXd s = eig.vectors * roots.asDiagonal() * eig.vectors.transpose();
    out.sqrt = complexify(s);
    return out;
}

}  // namespace

double clamp_unit_interval(double value, const char* what) {
    if (!(value >= -kClampSlack && value <= 1.0 + kClampSlack)) {
        throw std::domain_error(std::string(what) + " outside [0, 1]: " + std::to_string(value));
    }
    return std::clamp(value, 0.0, 1.0);
}

Concurrence concurrence_from_correlators(double g_xx, double g_zz, double m_bar) {
    double radicand = (1.0 + g_zz - 2.0 * m_bar) * (1.0 + g_zz + 2.0 * m_bar);
    if (radicand < -1e-12) {
        throw std::domain_error("unphysical correlators: (1 + Gzz)^2 < 4 m_bar^2");
    }
    radicand = std::max(radicand, 0.0);
    const double c = std::max(0.0, std::abs(g_xx) - 0.5 * std::sqrt(radicand));
    return {clamp_unit_interval(c, "concurrence")};
}

Concurrence concurrence_xstate(const PairDensity& rho) {
    rho.validate();
    const double populations = std::max(0.0, rho.u_plus) * std::max(0.0, rho.u_minus);
    const double c = 2.0 * std::max(0.0, std::abs(rho.z) - std::sqrt(populations));
    return {clamp_unit_interval(c, "concurrence")};
}

Concurrence concurrence_wootters(const Eigen::Matrix4cd& rho) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::domain_error("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > 1e-9) {
        throw std::domain_error("density matrix does not have unit trace");
    }
    const HermitianSpectrum rho_eig = hermitian_spectrum(rho);
    if (rho_eig.values[3] < -1e-9) {
        throw std::domain_error("density matrix is not positive semidefinite");
    }

    Eigen::Matrix4d flip = Eigen::Matrix4d::Zero();  // sy x sy
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    // The lambdas are the singular values of sqrt(rho) * sqrt(rho~), with
    // sqrt(rho~) = flip * conj(sqrt(rho)) * flip. Reading them off the
    // Hermitian dilation [[0, M], [M^H, 0]] (eigenvalues +-sigma) avoids a
    // second square root, which would turn roundoff in a vanishing lambda^2
    // into ~1e-8 errors.
    const Eigen::Matrix4cd m = rho_eig.sqrt * (flip * rho_eig.sqrt.conjugate() * flip);
    Eigen::Matrix<std::complex<double>, 8, 8> dilation = Eigen::Matrix<std::complex<double>, 8, 8>::Zero();
    dilation.topRightCorner<4, 4>() = m;
    dilation.bottomLeftCorner<4, 4>() = m.adjoint();
    Eigen::MatrixXd real_dilation(16, 16);
    real_dilation << dilation.real(), -dilation.imag(), dilation.imag(), dilation.real();
    const EigenDecomposition sigma = eigh_symmetric(real_dilation);

    // ascending, each singular value appears twice among the top eight
    const double c = std::max(0.0, sigma.values(15) - sigma.values(13) - sigma.values(11) - sigma.values(9));
    return {clamp_unit_interval(c, "concurrence")};
}

PureState::PureState(int n, Eigen::VectorXcd amplitudes) : n_(n), amplitudes_(std::move(amplitudes)) {
    if (n < 1 || n > kMaxSites) throw std::invalid_argument("qubit count outside supported range");
    if (amplitudes_.size() != (Eigen::Index{1} << n)) {
        throw std::invalid_argument("amplitude vector length is not 2^n");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("pure state is not normalized");
    }
}

PureState embed_sector_state(const SectorBasis& basis, const Eigen::VectorXd& vector) {
    if (static_cast<std::size_t>(vector.size()) != basis.size()) {
        throw std::invalid_argument("vector length does not match the sector dimension");
    }
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(Eigen::Index{1} << basis.sites());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        full(static_cast<Eigen::Index>(basis[k])) = vector(static_cast<Eigen::Index>(k));
    }
    return PureState(basis.sites(), std::move(full));
}

PureState apply_sigma_y_string(const PureState& psi) {
    const int n = psi.sites();
    const auto dim = static_cast<BasisLabel>(psi.amplitudes().size());
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (BasisLabel x = 0; x < dim; ++x) {
        std::complex<double> phase = 1.0;
        BasisLabel image = x;
        for (int site = 0; site < n; ++site) {
            const PauliAction a = apply_pauli(image, site, Pauli::y);
            phase *= a.phase;
            image = a.image;
        }
        out(static_cast<Eigen::Index>(image)) += phase * psi[x];
    }
    return PureState(n, std::move(out));
}

double n_tangle(const PureState& psi) {
    const int n = psi.sites();
    if (n % 2 != 0) throw std::invalid_argument("the N-tangle is defined for an even number of qubits");
    // sy^{(x)n}|x> = i^n (-1)^{|x|} |~x>, so the overlap collapses to a signed sum.
    const auto dim = static_cast<BasisLabel>(psi.amplitudes().size());
    const BasisLabel mask = full_mask(n);
    std::complex<double> sum{};
    for (BasisLabel x = 0; x < dim; ++x) {
        const double sign = std::popcount(x) % 2 == 0 ? 1.0 : -1.0;
        sum += sign * psi[x] * psi[~x & mask];
    }
    return clamp_unit_interval(std::norm(sum), "N-tangle");
}

Eigen::Matrix4cd reduced_pair(const PureState& psi, int site_a, int site_b) {
    const int n = psi.sites();
    if (site_a == site_b || site_a < 0 || site_b < 0 || site_a >= n || site_b >= n) {
        throw std::invalid_argument("reduced_pair needs two distinct sites of the ring");
    }
    const BasisLabel pair_bits = (BasisLabel{1} << site_a) | (BasisLabel{1} << site_b);
    const auto dim = static_cast<BasisLabel>(psi.amplitudes().size());
    auto local = [&](BasisLabel x) { return 2 * site_state(x, site_a) + site_state(x, site_b); };

    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (BasisLabel x = 0; x < dim; ++x) {
        if (psi[x] == std::complex<double>{}) continue;
        const BasisLabel rest = x & ~pair_bits;
        for (int ab = 0; ab < 4; ++ab) {
            BasisLabel y = rest;
            if (ab & 2) y |= BasisLabel{1} << site_a;
            if (ab & 1) y |= BasisLabel{1} << site_b;
            rho(local(x), ab) += psi[x] * std::conj(psi[y]);
        }
    }
    return rho;
}

}  // namespace xxring

#include "xxring/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace xxring {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
    double sum = 0.0;
    for (Eigen::Index q = 1; q < a.cols(); ++q) {
        for (Eigen::Index p = 0; p < q; ++p) sum += a(p, q) * a(p, q);
    }
    return std::sqrt(2.0 * sum);
}

}  // namespace

EigenDecomposition eigh_symmetric(const Eigen::MatrixXd& matrix, const JacobiOptions& options) {
    if (matrix.rows() != matrix.cols()) {
        throw std::invalid_argument("eigh_symmetric: matrix is not square");
    }
    const Eigen::Index dim = matrix.rows();
    if (dim == 0) return {};

    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("eigh_symmetric: matrix is not symmetric");
    }

    Eigen::MatrixXd a = 0.5 * (matrix + matrix.transpose());
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(dim, dim);
    const double target = options.tolerance * a.norm();

    bool converged = false;
    for (int sweep = 0; sweep <= options.max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= target) {
            converged = true;
            break;
        }
        if (sweep == options.max_sweeps) break;

        for (Eigen::Index p = 0; p < dim - 1; ++p) {
            for (Eigen::Index q = p + 1; q < dim; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;

                // Rotation angle phi with cot(2 phi) = theta zeroes a(p, q).
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const Eigen::VectorXd col_p = a.col(p);
                a.col(p) = c * col_p - s * a.col(q);
                a.col(q) = s * col_p + c * a.col(q);
                const Eigen::RowVectorXd row_p = a.row(p);
                a.row(p) = c * row_p - s * a.row(q);
                a.row(q) = s * row_p + c * a.row(q);
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                const Eigen::VectorXd vec_p = v.col(p);
                v.col(p) = c * vec_p - s * v.col(q);
                v.col(q) = s * vec_p + c * v.col(q);
            }
        }
    }
    if (!converged) {
        throw std::runtime_error("eigh_symmetric: Jacobi iteration did not converge");
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

    EigenDecomposition result;
    result.values.resize(dim);
    result.vectors.resize(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        result.values(k) = a(src, src);
        result.vectors.col(k) = v.col(src);
    }
    return result;
}

std::size_t Spectrum::dimension() const {
    std::size_t total = 0;
    for (const auto& s : sectors) total += s.basis.size();
    return total;
}

double Spectrum::ground_energy() const {
    double e0 = std::numeric_limits<double>::infinity();
    for (const auto& s : sectors) {
        if (s.eigen.values.size() > 0) e0 = std::min(e0, s.eigen.values(0));
    }
    return e0;
}

std::vector<double> Spectrum::eigenvalues() const {
    std::vector<double> all;
    all.reserve(dimension());
    for (const auto& s : sectors) {
        all.insert(all.end(), s.eigen.values.data(), s.eigen.values.data() + s.eigen.values.size());
    }
    std::sort(all.begin(), all.end());
    return all;
}

Spectrum full_spectrum(const ModelParams& params) {
    params.validate();
    Spectrum spectrum{params, {}};
    spectrum.sectors.reserve(static_cast<std::size_t>(params.n) + 1);
    for (int r = 0; r <= params.n; ++r) {
        SectorMatrix h = build_sector_hamiltonian(params, r);
        EigenDecomposition eig = eigh_symmetric(h.entries);
        spectrum.sectors.push_back({std::move(h.basis), std::move(eig)});
    }
    return spectrum;
}

}  // namespace xxring

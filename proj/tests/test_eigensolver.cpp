#include <doctest.h>

#include "oracles.hpp"
#include "xxring/eigensolver.hpp"

using namespace xxring;

namespace {

void check_decomposition(const Eigen::MatrixXd& a, const EigenDecomposition& eig) {
    const Eigen::Index dim = a.rows();
    REQUIRE(eig.values.size() == dim);
    for (Eigen::Index k = 1; k < dim; ++k) CHECK(eig.values(k - 1) <= eig.values(k));
    const Eigen::MatrixXd gram = eig.vectors.transpose() * eig.vectors;
    CHECK((gram - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    for (Eigen::Index k = 0; k < dim; ++k) {
        CHECK((a * eig.vectors.col(k) - eig.values(k) * eig.vectors.col(k)).norm() < 1e-9 * scale);
    }
    CHECK(std::abs(eig.values.sum() - a.trace()) < 1e-9);
}

}  // namespace

TEST_CASE("small fixtures") {
    const EigenDecomposition id = eigh_symmetric(Eigen::MatrixXd::Identity(2, 2));
    CHECK(id.values(0) == doctest::Approx(1.0));
    CHECK(id.values(1) == doctest::Approx(1.0));

    Eigen::MatrixXd sx(2, 2);
    sx << 0, 1, 1, 0;
    const EigenDecomposition e = eigh_symmetric(sx);
    CHECK(e.values(0) == doctest::Approx(-1.0));
    CHECK(e.values(1) == doctest::Approx(1.0));
    check_decomposition(sx, e);

    const EigenDecomposition zero = eigh_symmetric(Eigen::MatrixXd::Zero(3, 3));
    CHECK(zero.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("four-site half filling at zero field") {
    const SectorMatrix h = build_sector_hamiltonian({4, 1.0, 0.0}, 2);
    const EigenDecomposition e = eigh_symmetric(h.entries);
    const double r2 = std::sqrt(2.0);
    CHECK(oracle::max_sorted_deviation({e.values.data(), e.values.data() + 6}, {-4 * r2, 0, 0, 0, 0, 4 * r2}) < 1e-12);
    check_decomposition(h.entries, e);
}

TEST_CASE("random symmetric matrices agree with Eigen") {
    oracle::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = rng.integer(1, 40);
        Eigen::MatrixXd a(dim, dim);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = rng.uniform(-10, 10);
        }
        const EigenDecomposition e = eigh_symmetric(a);
        check_decomposition(a, e);
        const Eigen::VectorXd ref = oracle::diagonalize(a).eigenvalues();
        CHECK((e.values - ref).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("degenerate sector matrices") {
    for (int n = 2; n <= 8; ++n) {
        for (int r = 0; r <= n; ++r) {
            const SectorMatrix h = build_sector_hamiltonian({n, 1.0, 0.4}, r);
            check_decomposition(h.entries, eigh_symmetric(h.entries));
        }
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(eigh_symmetric(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
    Eigen::MatrixXd asym(2, 2);
    asym << 0, 1, 0.5, 0;
    CHECK_THROWS_AS(eigh_symmetric(asym), std::invalid_argument);

    Eigen::MatrixXd a(3, 3);
    a << 1, 2, 3, 2, 4, 5, 3, 5, 6;
    CHECK_THROWS_AS(eigh_symmetric(a, {1e-12, 0}), std::runtime_error);
}

TEST_CASE("full spectrum") {
    SUBCASE("four sites at B = 0.3 reproduce the level list") {
        const Spectrum s = full_spectrum({4, 1.0, 0.3});
        CHECK(s.dimension() == 16);
        CHECK(oracle::max_sorted_deviation(s.eigenvalues(), oracle::n4_levels(1.0, 0.3)) < 1e-10);
        for (const auto& sector : s.sectors) CHECK(sector.sigma_z() == 4 - 2 * sector.basis.reversed());
    }
    SUBCASE("single spin") {
        const Spectrum s = full_spectrum({1, 5.0, 0.7});
        CHECK(oracle::max_sorted_deviation(s.eigenvalues(), {-0.7, 0.7}) < 1e-15);
    }
    SUBCASE("six-site ground energy") {
        // -8 from Eigen on the 64x64 Kronecker Hamiltonian
        const Spectrum s = full_spectrum({6, 1.0, 0.0});
        CHECK(s.ground_energy() == doctest::Approx(-8.0).epsilon(1e-12));
        CHECK(oracle::diagonalize(oracle::kron_hamiltonian({6, 1.0, 0.0})).eigenvalues()(0) ==
              doctest::Approx(-8.0).epsilon(1e-12));
    }
    SUBCASE("blocked spectrum equals brute force") {
        oracle::Rng rng(5);
        for (int n = 1; n <= 8; ++n) {
            const ModelParams p{n, rng.uniform(-2, 2), rng.uniform(-3, 3)};
            const Eigen::VectorXd ref = oracle::diagonalize(oracle::kron_hamiltonian(p)).eigenvalues();
            CHECK(oracle::max_sorted_deviation(full_spectrum(p).eigenvalues(), {ref.data(), ref.data() + ref.size()}) <
                  1e-9);
        }
    }
    SUBCASE("field reversal negates the spectrum on even rings") {
        oracle::Rng rng(6);
        for (int n : {2, 4, 6}) {
            const double j = rng.uniform(-2, 2), b = rng.uniform(-3, 3);
            auto flipped = full_spectrum({n, j, -b}).eigenvalues();
            for (double& e : flipped) e = -e;
            CHECK(oracle::max_sorted_deviation(full_spectrum({n, j, b}).eigenvalues(), flipped) < 1e-9);
        }
    }
    SUBCASE("four-site level list for random couplings") {
        oracle::Rng rng(8);
        for (int trial = 0; trial < 50; ++trial) {
            const double j = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
            CHECK(oracle::max_sorted_deviation(full_spectrum({4, j, b}).eigenvalues(), oracle::n4_levels(j, b)) <
                  1e-10);
        }
    }
}

#include <doctest.h>

#include "oracles.hpp"
#include "xxring/analytic_n4.hpp"
#include "xxring/thermal.hpp"

using namespace xxring;

namespace {

const double kRoot2 = std::sqrt(2.0);

// A (x) identity on sites (a, b), with A in the local basis 2 * bit_a + bit_b.
Eigen::MatrixXcd embed_pair_operator(const Eigen::Matrix4cd& a, int n, int site_a, int site_b) {
    const unsigned dim = 1u << n, pair = (1u << site_a) | (1u << site_b);
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
    for (unsigned x = 0; x < dim; ++x) {
        for (unsigned y = 0; y < dim; ++y) {
            if ((x & ~pair) != (y & ~pair)) continue;
            op(x, y) = a(2 * ((x >> site_a) & 1) + ((x >> site_b) & 1), 2 * ((y >> site_a) & 1) + ((y >> site_b) & 1));
        }
    }
    return op;
}

void check_pair_density(const PairDensity& got, const PairDensity& want, double tol) {
    CHECK(std::abs(got.u_plus - want.u_plus) <= tol);
    CHECK(std::abs(got.u_minus - want.u_minus) <= tol);
    CHECK(std::abs(got.w - want.w) <= tol);
    CHECK(std::abs(got.z - want.z) <= tol);
}

PairDensity pair_density_of(const Eigen::Matrix4d& rho) {
    return {rho(0, 0), rho(3, 3), rho(1, 1), rho(1, 2)};
}

}  // namespace

TEST_CASE("high-temperature limit") {
    const Spectrum s = full_spectrum({4, 1.0, 0.0});
    const ThermalObservables obs = observables(s, 1e6);
    CHECK(std::abs(obs.u) < 1e-4);
    CHECK(std::abs(obs.m) < 1e-4);
    CHECK(std::abs(obs.g_xx) < 1e-4);
    CHECK(std::abs(obs.g_zz) < 1e-4);
    CHECK(obs.log_z() == doctest::Approx(std::log(16.0)).epsilon(1e-6));

    const PairDensity rho = reduced_pair_density(s, 1e6);
    check_pair_density(rho, {0.25, 0.25, 0.25, 0.0}, 1e-5);
}

TEST_CASE("low-temperature limit approaches the ground level") {
    const Spectrum s = full_spectrum({4, 1.0, 0.0});
    const ThermalObservables obs = observables(s, 1e-3);
    CHECK(obs.u == doctest::Approx(-4 * kRoot2).epsilon(1e-12));
    CHECK(std::isfinite(obs.log_z()));
    CHECK(obs.log_z() == doctest::Approx(4 * kRoot2 / 1e-3).epsilon(1e-12));

    const PairDensity rho = reduced_pair_density(s, 1e-3);
    CHECK(rho.z == doctest::Approx(-kRoot2 / 4).epsilon(1e-10));
    CHECK(obs.g_zz == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(obs.g_xx == doctest::Approx(-kRoot2 / 2).epsilon(1e-10));
}

TEST_CASE("four-site observables against the closed forms") {
    const Spectrum s = full_spectrum({4, 1.0, 1.0});
    const ThermalObservables obs = observables(s, 1.0);
    const auto cf = analytic_n4::closed_forms(1.0, 1.0, 1.0);
    CHECK(obs.u / 4 == doctest::Approx(cf.u_bar).epsilon(1e-10));
    CHECK(obs.m / 4 == doctest::Approx(cf.m_bar).epsilon(1e-10));
    CHECK(obs.g_zz == doctest::Approx(cf.g_zz).epsilon(1e-10));
    CHECK(obs.g_xx == doctest::Approx(cf.g_xx).epsilon(1e-10));
    CHECK(obs.log_z() == doctest::Approx(cf.log_z).epsilon(1e-12));
}

TEST_CASE("direct transverse correlator") {
    SUBCASE("no exchange") {
        for (double b : {0.0, 0.7, -2.0}) {
            const Spectrum s = full_spectrum({4, 0.0, b});
            for (double t : {0.1, 1.0, 10.0}) CHECK(std::abs(correlator_xx_direct(s, t)) < 1e-15);
        }
    }
    SUBCASE("closed form at B = 0") {
        const Spectrum s = full_spectrum({4, 1.0, 0.0});
        CHECK(correlator_xx_direct(s, 1.0) == doctest::Approx(analytic_n4::closed_forms(1.0, 0.0, 1.0).g_xx).epsilon(1e-10));
    }
    SUBCASE("translation invariance and xx = yy") {
        const Spectrum s = full_spectrum({4, 0.9, -0.4});
        const double g01 = correlator_xx_direct(s, 0.7, {0, 1});
        CHECK(std::abs(g01 - correlator_xx_direct(s, 0.7, {2, 3})) < 1e-10);
        CHECK(std::abs(g01 - correlator_xx_direct(s, 0.7, {3, 0})) < 1e-10);
        CHECK(std::abs(g01 - thermal_pair_correlator(s, 0.7, 0, Pauli::y, 1, Pauli::y)) < 1e-10);
    }
    SUBCASE("non-adjacent pairs are rejected") {
        const Spectrum s = full_spectrum({5, 1.0, 0.0});
        CHECK_THROWS_AS(correlator_xx_direct(s, 1.0, {0, 2}), std::invalid_argument);
        CHECK_THROWS_AS(correlator_xx_direct(s, 1.0, {1, 1}), std::invalid_argument);
        CHECK_NOTHROW(correlator_xx_direct(s, 1.0, {4, 0}));
    }
}

TEST_CASE("transverse correlator from the internal energy") {
    ThermalObservables obs;
    obs.u = -3.0;
    CHECK(gxx_from_energy(obs, {4, 1.5, 0.0}) == doctest::Approx(-3.0 / 4 / 3.0));
    obs.u = 0.0;
    obs.m = 0.0;
    CHECK(gxx_from_energy(obs, {4, 1.5, 0.7}) == 0.0);
    CHECK_THROWS_AS(gxx_from_energy(obs, {4, 0.0, 0.7}), std::domain_error);

    const Spectrum s = full_spectrum({4, 1.0, 0.5});
    CHECK(std::abs(gxx_from_energy(observables(s, 0.8), s.params) - correlator_xx_direct(s, 0.8)) < 1e-9);

    oracle::Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const ModelParams p{rng.integer(2, 8), rng.nonzero(-2, 2, 0.05), rng.uniform(-3, 3)};
        const double t = rng.log_uniform(0.05, 50);
        const Spectrum sp = full_spectrum(p);
        CHECK(std::abs(gxx_from_energy(observables(sp, t), p) - correlator_xx_direct(sp, t)) < 1e-9);
    }
}

TEST_CASE("reduced pair density against a brute-force partial trace") {
    oracle::Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const ModelParams p{rng.integer(2, 8), rng.uniform(-2, 2), rng.uniform(-3, 3)};
        const double t = rng.log_uniform(0.05, 50);
        const Spectrum s = full_spectrum(p);
        const Eigen::MatrixXd gibbs = oracle::gibbs_matrix(oracle::kron_hamiltonian(p), t);
        const Eigen::Matrix4d direct = oracle::partial_trace_pair(gibbs, p.n, 0, 1);

        const PairDensity rho = reduced_pair_density(s, t);
        CHECK_NOTHROW(rho.validate());
        CHECK((rho.matrix() - direct).cwiseAbs().maxCoeff() < 1e-10);

        // all entries outside the X pattern vanish
        Eigen::Matrix4d off = direct - pair_density_of(direct).matrix();
        off(3, 3) = off(1, 1) = off(2, 2) = 0.0;
        CHECK(off.cwiseAbs().maxCoeff() < 1e-10);

        // every bond carries the same reduced state
        for (int i = 1; i < p.n; ++i) {
            const PairDensity other = reduced_pair_density(s, t, {i, (i + 1) % p.n});
            check_pair_density(other, rho, 1e-10);
        }
    }
}

TEST_CASE("bond populations match the correlator identities") {
    oracle::Rng rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        const ModelParams p{rng.integer(2, 8), rng.uniform(-2, 2), rng.uniform(-3, 3)};
        const ThermalObservables obs = ThermalEnsemble(full_spectrum(p)).observables(rng.log_uniform(0.05, 50));
        check_pair_density(pair_density_from_populations(obs),
                           pair_density_from_correlators(obs.g_xx, obs.g_zz, obs.m / p.n), 1e-12);
    }

    // deep in the polarized phase u+ is far below roundoff of the
    // correlators, yet stays resolved and swaps exactly with u- under B -> -B
    const ThermalObservables up = observables(full_spectrum({3, 1.819, 2.68}), 0.097);
    const ThermalObservables down = observables(full_spectrum({3, 1.819, -2.68}), 0.097);
    CHECK(up.pop_up_up > 0.0);
    CHECK(up.pop_up_up < 1e-20);
    CHECK(std::abs(up.pop_up_up - down.pop_down_down) <= 1e-12 * up.pop_up_up);
}

TEST_CASE("pair expectation values equal full-space traces") {
    oracle::Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const ModelParams p{rng.integer(2, 8), rng.uniform(-2, 2), rng.uniform(-3, 3)};
        const double t = rng.log_uniform(0.05, 50);
        const Eigen::MatrixXd gibbs = oracle::gibbs_matrix(oracle::kron_hamiltonian(p), t);
        const Eigen::Matrix4cd rho12 = reduced_pair_density(full_spectrum(p), t).matrix().cast<std::complex<double>>();

        Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) a(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        }
        a = (a + a.adjoint()).eval();
        const double reduced = (a * rho12).trace().real();
        const double full = oracle::expectation(gibbs, embed_pair_operator(a, p.n, 0, 1));
        CHECK(std::abs(reduced - full) < 1e-9);
    }
}

TEST_CASE("ground-state reduced densities of the four-site ring") {
    const double r2 = kRoot2;
    SUBCASE("zero field: the half-filled ground state") {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
        for (unsigned x : {0b0011u, 0b0110u, 0b1100u, 0b1001u}) psi(x) = 1.0 / (2 * r2);
        for (unsigned x : {0b0101u, 0b1010u}) psi(x) = -r2 / (2 * r2);
        const Eigen::MatrixXcd rho = psi * psi.adjoint();
        const Eigen::Matrix4d want = oracle::partial_trace_pair(rho, 4, 0, 1).real();
        const PairDensity got = ground_state_reduced(full_spectrum({4, 1.0, 0.0}));
        check_pair_density(got, pair_density_of(want), 1e-10);
        check_pair_density(reduced_pair_density(full_spectrum({4, 1.0, 0.0}), 0.0), got, 0.0);
    }
    SUBCASE("intermediate field: the flipped W state") {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
        for (int site = 0; site < 4; ++site) {
            const unsigned one_down = 1u << site;
            psi(~one_down & 0xF) = 0.5 * std::exp(std::complex<double>(0, -M_PI * (site + 1)));  // k = 2
        }
        const Eigen::MatrixXcd rho = psi * psi.adjoint();
        const Eigen::Matrix4d want = oracle::partial_trace_pair(rho, 4, 0, 1).real();
        check_pair_density(ground_state_reduced(full_spectrum({4, 1.0, 1.0})), pair_density_of(want), 1e-10);
    }
    SUBCASE("strong field: all spins down") {
        check_pair_density(ground_state_reduced(full_spectrum({4, 1.0, 3.0})), {0.0, 1.0, 0.0, 0.0}, 1e-12);
    }
    SUBCASE("degenerate ground spaces are mixed uniformly") {
        for (const ModelParams& p : {ModelParams{3, 1.0, 0.0}, ModelParams{5, -1.0, 0.0}, ModelParams{4, 1.0, 2.0}}) {
            const Eigen::Matrix4d want = oracle::partial_trace_pair(oracle::ground_mixture(oracle::kron_hamiltonian(p)), p.n, 0, 1);
            check_pair_density(ground_state_reduced(full_spectrum(p)), pair_density_of(want), 1e-9);
        }
    }
}

TEST_CASE("partition-function derivatives") {
    oracle::Rng rng(23);
    const double h = 1e-5;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.integer(2, 6);
        const double j = rng.nonzero(-2, 2, 0.05), b = rng.nonzero(-3, 3, 0.1);
        const double t = rng.log_uniform(0.05, 50), beta = 1.0 / t;
        const Spectrum s = full_spectrum({n, j, b});
        const ThermalObservables obs = observables(s, t);

        const double du = -(log_partition(s, 1.0 / (beta + h)) - log_partition(s, 1.0 / (beta - h))) / (2 * h);
        // relative, with magnitudes below 1e-4 compared on the 1e-4 scale (finite-difference roundoff)
        CHECK(std::abs(du - obs.u) <= 1e-5 * std::max(std::abs(obs.u), 1e-4));

        const double dm = -(log_partition(full_spectrum({n, j, b + h}), t) - log_partition(full_spectrum({n, j, b - h}), t)) /
                          (2 * h * beta);
        CHECK(std::abs(dm - obs.m) <= 1e-5 * std::max(std::abs(obs.m), 1e-4));
    }
}

TEST_CASE("internal energy is negative and increases with temperature") {
    oracle::Rng rng(29);
    for (int trial = 0; trial < 12; ++trial) {
        const ModelParams p{rng.integer(2, 7), rng.uniform(-2, 2), rng.uniform(-3, 3)};
        const ThermalEnsemble ensemble(full_spectrum(p));
        double prev_u = -INFINITY, prev_excess = -INFINITY;
        for (int k = 0; k < 40; ++k) {
            const double t = 1e-2 * std::pow(1e4, k / 39.0);
            const ThermalObservables obs = ensemble.observables(t);
            CHECK(obs.u < 0.0);
            CHECK(obs.u >= prev_u);
            CHECK(obs.log_excess_energy > prev_excess);
            CHECK(std::abs(std::exp(obs.log_excess_energy) - (obs.u - ensemble.ground_energy())) <=
                  1e-9 * std::max(1.0, std::abs(obs.u)));
            CHECK(std::abs(obs.g_xx) <= 1.0);
            CHECK(std::abs(obs.g_zz) <= 1.0);
            CHECK(std::abs(obs.m) <= p.n);
            prev_u = obs.u;
            prev_excess = obs.log_excess_energy;
        }
    }
}

TEST_CASE("temperature and pair-density validation") {
    const Spectrum s = full_spectrum({4, 1.0, 0.0});
    CHECK_THROWS_AS(observables(s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(observables(s, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(reduced_pair_density(s, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(reduced_pair_density(s, 1.0, {0, 2}), std::invalid_argument);
    CHECK_THROWS_AS((PairDensity{0.5, 0.5, 0.5, 0.0}.validate()), std::domain_error);
    CHECK_THROWS_AS((PairDensity{0.0, 0.0, 0.5, 0.6}.validate()), std::domain_error);
    CHECK_NOTHROW((PairDensity{0.0, 0.0, 0.5, 0.5}.validate()));
}

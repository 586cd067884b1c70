#ifndef XXRING_ANALYTIC_N4_HPP
#define XXRING_ANALYTIC_N4_HPP

namespace xxring::analytic_n4 {

// Closed-form thermodynamics of the four-site XX ring. Per-site quantities
// (u_bar, m_bar) and nearest-neighbour correlators. z may overflow to +inf
// at large beta; log_z stays finite.
struct ClosedFormN4 {
    double z = 0.0;
    double log_z = 0.0;
    double u_bar = 0.0;
    double m_bar = 0.0;
    double g_zz = 0.0;
    double g_xx = 0.0;
};

// Throws std::invalid_argument for beta <= 0 or non-finite input.
ClosedFormN4 closed_forms(double j, double b, double beta);

}  // namespace xxring::analytic_n4

#endif  // XXRING_ANALYTIC_N4_HPP

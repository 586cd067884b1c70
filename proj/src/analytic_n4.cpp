#include "xxring/analytic_n4.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xxring::analytic_n4 {

namespace {

// cosh(x) e^{-s} and sinh(x) e^{-s}, safe whenever |x| <= s.
struct Scaled {
    double s;
    double one() const { return std::exp(-s); }
    double cosh(double x) const { return 0.5 * (std::exp(x - s) + std::exp(-x - s)); }
    double sinh(double x) const { return 0.5 * (std::exp(x - s) - std::exp(-x - s)); }
};

}  // namespace

ClosedFormN4 closed_forms(double j, double b, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta) || !std::isfinite(j) || !std::isfinite(b)) {
        throw std::invalid_argument("closed_forms needs finite J, B and beta > 0");
    }
    const double root2 = std::sqrt(2.0);
    const double a = 4.0 * root2 * beta * j;  // 4 sqrt2 beta J
    const double p = 4.0 * beta * b;          // 4 beta B
    const double q = 4.0 * beta * j;          // 4 beta J
    const double h = 2.0 * beta * b;          // 2 beta B

    const Scaled e{std::max({std::abs(a), std::abs(p), std::abs(q) + std::abs(h), 0.0})};

    // cosh(q) cosh(h), cosh(q) sinh(h) and sinh(q) cosh(h) as sums of single hyperbolics.
    const double cq_ch = 0.5 * (e.cosh(q + h) + e.cosh(q - h));
    const double cq_sh = 0.5 * (e.sinh(h + q) + e.sinh(h - q));
    const double sq_ch = 0.5 * (e.sinh(q + h) + e.sinh(q - h));

    const double z = 4.0 * e.one() + 2.0 * e.cosh(a) + 2.0 * e.cosh(p) + 4.0 * (e.cosh(h) + cq_ch);
    const double minus_zu = 2.0 * j * root2 * e.sinh(a) + 2.0 * b * e.sinh(p) + 2.0 * b * (e.sinh(h) + cq_sh) +
                            4.0 * j * sq_ch;
    const double minus_zm = 2.0 * e.sinh(p) + 2.0 * (e.sinh(h) + cq_sh);
    const double z_gzz = 2.0 * e.cosh(p) - e.cosh(a) - e.one();
    const double z_gxx = -root2 * e.sinh(a) - 2.0 * sq_ch;

    ClosedFormN4 out;
    out.log_z = std::log(z) + e.s;
    out.z = std::exp(out.log_z);
    out.u_bar = -minus_zu / z;
    out.m_bar = -minus_zm / z;
    out.g_zz = z_gzz / z;
    out.g_xx = z_gxx / z;
    return out;
}

}  // namespace xxring::analytic_n4

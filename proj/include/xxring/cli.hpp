#ifndef XXRING_CLI_HPP
#define XXRING_CLI_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "xxring/experiments.hpp"

namespace xxring::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// Header T,B,J,N,U,M,Gxx,Gzz,concurrence; 12 significant digits.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

// Sorted eigenvalues grouped into levels whose members lie within tol of the
// level's lowest member.
struct Level {
    double energy;
    std::size_t multiplicity;
};
std::vector<Level> cluster_levels(std::span<const double> sorted_values, double tol = 1e-9);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xxring::cli

#endif  // XXRING_CLI_HPP

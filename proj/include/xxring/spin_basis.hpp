#ifndef XXRING_SPIN_BASIS_HPP
#define XXRING_SPIN_BASIS_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace xxring {

// Computational basis label of an n-qubit ring. Bit i describes site i
// (site 0 is the first qubit of the ring); a set bit means the qubit is in
// |1> (spin down), a clear bit means |0> (spin up).
using BasisLabel = std::uint32_t;

// Largest ring the sector machinery accepts: 2^16 states, largest sector
// binomial(16, 8) = 12870.
inline constexpr int kMaxSites = 16;

// All labels with a fixed number r of reversed (down) spins, in ascending
// integer order.
class SectorBasis {
public:
    SectorBasis(int n, int r);

    int sites() const { return n_; }
    int reversed() const { return r_; }
    // Eigenvalue of the total sigma_z on every member of the sector.
    int sigma_z() const { return n_ - 2 * r_; }

    std::size_t size() const { return labels_.size(); }
    const std::vector<BasisLabel>& labels() const { return labels_; }
    BasisLabel operator[](std::size_t k) const { return labels_[k]; }

    bool contains(BasisLabel label) const;
    // Position of label in labels(); throws std::out_of_range if absent.
    std::size_t index_of(BasisLabel label) const;

private:
    int n_;
    int r_;
    std::vector<BasisLabel> labels_;
    std::vector<std::int32_t> lookup_;  // 2^n entries, -1 outside the sector
};

SectorBasis enumerate_sector(int n, int r);

std::uint64_t binomial(int n, int k);

inline BasisLabel full_mask(int n) { return n >= 32 ? ~BasisLabel{0} : (BasisLabel{1} << n) - 1; }

// Cyclic shift: the content of site i moves to site (i + 1) mod n.
BasisLabel translate(BasisLabel label, int n);

// Bitwise complement within n bits: action of sigma_x on every site.
BasisLabel lambda_x(BasisLabel label, int n);

// Diagonal sign of the sigma_z string on the odd ring sites 1, 3, ..., n-1
// (bit positions 0, 2, ...). Requires even n.
int lambda_z_sign(BasisLabel label, int n);

// Exchange the states of qubits i and j.
BasisLabel swap_qubits(BasisLabel label, int i, int j);

// Reflection of the ring: site i <-> site n-1-i.
BasisLabel reflect(BasisLabel label, int n);

inline int site_state(BasisLabel label, int site) { return static_cast<int>((label >> site) & 1u); }

// +1 for an up spin (bit clear), -1 for a down spin.
inline int sigma_z_value(BasisLabel label, int site) { return 1 - 2 * site_state(label, site); }

enum class Pauli { x, y, z };

// sigma_alpha on one site maps a basis state to phase * |image>.
struct PauliAction {
    std::complex<double> phase;
    BasisLabel image;
};

PauliAction apply_pauli(BasisLabel label, int site, Pauli which);

}  // namespace xxring

#endif  // XXRING_SPIN_BASIS_HPP

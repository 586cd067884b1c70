#include "xxring/spin_basis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace xxring {

namespace {

void check_ring_size(int n) {
    if (n < 1 || n > kMaxSites) {
        throw std::invalid_argument("ring size " + std::to_string(n) + " outside [1, " +
                                    std::to_string(kMaxSites) + "]");
    }
}

void check_label(BasisLabel label, int n) {
    check_ring_size(n);
    if ((label & ~full_mask(n)) != 0) {
        throw std::invalid_argument("basis label has bits beyond site " + std::to_string(n - 1));
    }
}

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

SectorBasis::SectorBasis(int n, int r) : n_(n), r_(r) {
    check_ring_size(n);
    if (r < 0 || r > n) {
        throw std::invalid_argument("reversed-spin count " + std::to_string(r) + " outside [0, " +
                                    std::to_string(n) + "]");
    }
    const BasisLabel dim = BasisLabel{1} << n;
    lookup_.assign(dim, -1);
    labels_.reserve(binomial(n, r));
    for (BasisLabel x = 0; x < dim; ++x) {
        if (std::popcount(x) == r) {
            lookup_[x] = static_cast<std::int32_t>(labels_.size());
            labels_.push_back(x);
        }
    }
}

bool SectorBasis::contains(BasisLabel label) const {
    return label < lookup_.size() && lookup_[label] >= 0;
}

std::size_t SectorBasis::index_of(BasisLabel label) const {
    if (!contains(label)) {
        throw std::out_of_range("label " + std::to_string(label) + " not in sector r=" + std::to_string(r_));
    }
    return static_cast<std::size_t>(lookup_[label]);
}

SectorBasis enumerate_sector(int n, int r) { return SectorBasis(n, r); }

BasisLabel translate(BasisLabel label, int n) {
    check_label(label, n);
    const BasisLabel top = (label >> (n - 1)) & 1u;
    return ((label << 1) | top) & full_mask(n);
}

BasisLabel lambda_x(BasisLabel label, int n) {
    check_label(label, n);
    return ~label & full_mask(n);
}

int lambda_z_sign(BasisLabel label, int n) {
    check_label(label, n);
    if (n % 2 != 0) {
        throw std::invalid_argument("lambda_z is defined for even rings only");
    }
    BasisLabel odd_sites = 0;
    for (int i = 0; i < n; i += 2) odd_sites |= BasisLabel{1} << i;
    return std::popcount(label & odd_sites) % 2 == 0 ? 1 : -1;
}

BasisLabel swap_qubits(BasisLabel label, int i, int j) {
    const BasisLabel bi = (label >> i) & 1u;
    const BasisLabel bj = (label >> j) & 1u;
    if (bi == bj) return label;
    return label ^ ((BasisLabel{1} << i) | (BasisLabel{1} << j));
}

BasisLabel reflect(BasisLabel label, int n) {
    check_label(label, n);
    for (int i = 0; i < n / 2; ++i) label = swap_qubits(label, i, n - 1 - i);
    return label;
}

PauliAction apply_pauli(BasisLabel label, int site, Pauli which) {
    const BasisLabel bit = BasisLabel{1} << site;
    switch (which) {
        case Pauli::x:
            return {1.0, label ^ bit};
        case Pauli::y:
            // sy|0> = i|1>, sy|1> = -i|0>
            return {(label & bit) ? std::complex<double>{0.0, -1.0} : std::complex<double>{0.0, 1.0}, label ^ bit};
        case Pauli::z:
            return {static_cast<double>(sigma_z_value(label, site)), label};
    }
    throw std::invalid_argument("unknown Pauli operator");
}

}  // namespace xxring

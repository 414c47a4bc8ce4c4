#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "diagon/modp.hpp"
#include "diagon/rat.hpp"

namespace diagon {

// Dense matrix over F_p, p < 2^62, row-major.
struct MatFp {
    std::uint64_t p = 0;
    int rows = 0, cols = 0;
    std::vector<std::uint64_t> a;

    MatFp() = default;
    MatFp(int r, int c, std::uint64_t prime) : p(prime), rows(r), cols(c), a((size_t)r * c, 0) {}
    std::uint64_t& at(int i, int j) { return a[(size_t)i * cols + j]; }
    std::uint64_t at(int i, int j) const { return a[(size_t)i * cols + j]; }
};

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t p);
std::uint64_t invmod(std::uint64_t x, std::uint64_t p);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(MatFp& m);

// Basis of the right nullspace, one vector per free column, in the
// canonical RREF form (free coordinate = 1, pivots back-substituted).
std::vector<std::vector<std::uint64_t>> nullspace(const MatFp& m);

// Garner lift of residues to the symmetric range mod prod(primes).
Int crt_lift(const std::vector<std::uint64_t>& residues,
             const std::vector<std::uint64_t>& primes);

// Lattice-free rational reconstruction: find n/d = r (mod m) with
// |n|, d <= sqrt(m/2); nullopt if none exists.
std::optional<Rat> rational_reconstruct(const Int& r, const Int& m);

// Deterministic list of 62-bit primes used by the modular engines.
const std::vector<std::uint64_t>& engine_primes();

}  // namespace diagon

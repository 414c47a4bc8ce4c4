#include "diagon/linalg.hpp"

#include <stdexcept>

namespace diagon {

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t p) {
    return (std::uint64_t)((unsigned __int128)x * y % p);
}

std::uint64_t invmod(std::uint64_t x, std::uint64_t p) {
    std::int64_t a = (std::int64_t)(x % p), b = (std::int64_t)p, x0 = 1, x1 = 0;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
    }
    if (a != 1) throw std::domain_error("invmod: not invertible");
    if (x0 < 0) x0 += (std::int64_t)p;
    return (std::uint64_t)x0;
}

std::vector<int> rref(MatFp& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int i = row; i < m.rows; ++i)
            if (m.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
        std::uint64_t inv = invmod(m.at(row, col), m.p);
        for (int j = col; j < m.cols; ++j) m.at(row, j) = mulmod(m.at(row, j), inv, m.p);
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            std::uint64_t f = m.at(i, col);
            for (int j = col; j < m.cols; ++j) {
                std::uint64_t sub = mulmod(f, m.at(row, j), m.p);
                m.at(i, j) = (m.at(i, j) >= sub) ? m.at(i, j) - sub : m.at(i, j) + m.p - sub;
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<std::uint64_t>> nullspace(const MatFp& m) {
    MatFp r = m;
    std::vector<int> pivots = rref(r);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;

    std::vector<std::vector<std::uint64_t>> basis;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<std::uint64_t> v(m.cols, 0);
        v[free] = 1;
        for (int k = 0; k < (int)pivots.size(); ++k) {
            std::uint64_t val = r.at(k, free);
            v[pivots[k]] = val == 0 ? 0 : m.p - val;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

Int crt_lift(const std::vector<std::uint64_t>& residues,
             const std::vector<std::uint64_t>& primes) {
    Int x(0), mod(1);
    for (size_t i = 0; i < primes.size(); ++i) {
        Int p((unsigned long)primes[i]);
        Int r((unsigned long)residues[i]);
        // x' = x + mod * t, t = (r - x)/mod (mod p)
        Int t = (r - x) % p;
        if (t < 0) t += p;
        Int minv;
        if (mpz_invert(minv.get_mpz_t(), Int(mod % p).get_mpz_t(), p.get_mpz_t()) == 0)
            throw std::domain_error("crt_lift: moduli not coprime");
        t = (t * minv) % p;
        x += mod * t;
        mod *= p;
    }
    if (x * 2 > mod) x -= mod;  // symmetric range
    return x;
}

std::optional<Rat> rational_reconstruct(const Int& r0, const Int& m) {
    Int r = r0 % m;
    if (r < 0) r += m;
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), Int(m / 2).get_mpz_t());
    Int a = m, b = r, x0 = 0, x1 = 1;
    while (b > bound) {
        Int q = a / b;
        Int t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
    }
    if (x1 == 0) return std::nullopt;
    Int num = b, den = x1;
    if (den < 0) { den = -den; num = -num; }
    if (den > bound || den == 0) return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1 && g != 0) return std::nullopt;  // lift must be in lowest terms already
    return rat(num, den);
}

const std::vector<std::uint64_t>& engine_primes() {
    // fixed 62-bit primes; order matters for reproducibility
    static const std::vector<std::uint64_t> primes = {
        4611686018427387847ULL, 4611686018427387817ULL, 4611686018427387787ULL,
        4611686018427387761ULL, 4611686018427387751ULL, 4611686018427387737ULL,
        4611686018427387733ULL, 4611686018427387709ULL,
    };
    return primes;
}

}  // namespace diagon

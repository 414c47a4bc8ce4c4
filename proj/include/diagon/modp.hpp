#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "diagon/rat.hpp"

namespace diagon {

// Prime-field element with the modulus carried per value. Mixing two
// different moduli in one operation throws. A default-constructed value
// is an exact zero with unspecified modulus (p = 0) so that containers
// of ModP can be created before the prime is known; it combines with
// any modulus.
struct ModP {
    std::int64_t v = 0;
    std::int64_t p = 0;

    ModP() = default;
    ModP(std::int64_t value, std::int64_t prime) : p(prime) {
        if (prime < 2) throw std::invalid_argument("ModP: modulus must be >= 2");
        v = value % prime;
        if (v < 0) v += prime;
    }

    static ModP zero(std::int64_t prime) { return ModP(0, prime); }
    static ModP one(std::int64_t prime) { return ModP(1, prime); }

    bool is_zero() const { return v == 0; }

    friend std::int64_t common_mod(const ModP& a, const ModP& b) {
        if (a.p == 0) return b.p;
        if (b.p == 0 || a.p == b.p) return a.p;
        throw std::invalid_argument("ModP: mixed moduli " + std::to_string(a.p) +
                                    " and " + std::to_string(b.p));
    }

    friend ModP operator+(const ModP& a, const ModP& b) {
        std::int64_t m = common_mod(a, b);
        if (m == 0) return ModP();
        std::int64_t s = a.v + b.v;
        if (s >= m) s -= m;
        return ModP(s, m);
    }
    friend ModP operator-(const ModP& a, const ModP& b) {
        std::int64_t m = common_mod(a, b);
        if (m == 0) return ModP();
        std::int64_t s = a.v - b.v;
        if (s < 0) s += m;
        return ModP(s, m);
    }
    friend ModP operator*(const ModP& a, const ModP& b) {
        std::int64_t m = common_mod(a, b);
        if (m == 0) return ModP();
        return ModP((std::int64_t)((__int128)a.v * b.v % m), m);
    }
    ModP operator-() const { return p == 0 ? ModP() : ModP(p - v, p); }

    ModP inv() const {
        if (p == 0 || v == 0) throw std::domain_error("ModP: inverse of zero");
        // extended Euclid
        std::int64_t a = v, b = p, x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        if (a != 1) throw std::domain_error("ModP: non-invertible element");
        return ModP(x0, p);
    }
    friend ModP operator/(const ModP& a, const ModP& b) { return a * b.inv(); }

    ModP pow(unsigned long e) const {
        ModP r = ModP::one(p ? p : 2), base = *this;
        if (p == 0) return e == 0 ? ModP(1, 2) : ModP();
        r = ModP::one(p);
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const ModP& a, const ModP& b) {
        if (a.v == 0 && b.v == 0) return true;
        return common_mod(a, b) != 0 && a.v == b.v;
    }
    friend bool operator!=(const ModP& a, const ModP& b) { return !(a == b); }
};

// Reduction of an exact rational; the denominator must be prime to p.
inline ModP reduce(const Rat& r, std::int64_t p) {
    Int num = numer(r) % Int(p);
    Int den = denom(r) % Int(p);
    if (den == 0)
        throw std::domain_error("reduce: denominator divisible by " + std::to_string(p));
    ModP n(num.get_si(), p), d(den.get_si(), p);
    return n / d;
}

inline std::string to_string(const ModP& a) { return std::to_string(a.v); }

}  // namespace diagon

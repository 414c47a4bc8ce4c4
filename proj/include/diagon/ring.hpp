#pragma once

#include "diagon/modp.hpp"
#include "diagon/rat.hpp"

namespace diagon {

// Minimal ring interface shared by Rat and ModP. "like" arguments carry
// the modulus for ModP and are ignored for Rat.
template <class R>
struct ring;

template <>
struct ring<Rat> {
    static Rat zero(const Rat&) { return Rat(0); }
    static Rat one(const Rat&) { return Rat(1); }
    static Rat from_long(long n, const Rat&) { return Rat(n); }
    static bool is_zero(const Rat& a) { return a == 0; }
    static Rat inv(const Rat& a) {
        if (a == 0) throw std::domain_error("inverse of zero");
        return Rat(1) / a;
    }
};

// Integers form a ring, not a field: only units are invertible. Used by
// the integer fast path of the diagonal engine.
template <>
struct ring<Int> {
    static Int zero(const Int&) { return Int(0); }
    static Int one(const Int&) { return Int(1); }
    static Int from_long(long n, const Int&) { return Int(n); }
    static bool is_zero(const Int& a) { return a == 0; }
    static Int inv(const Int& a) {
        if (a == 1 || a == -1) return a;
        throw std::domain_error("ring<Int>: only units are invertible");
    }
};

template <>
struct ring<ModP> {
    static ModP zero(const ModP& like) { return like.p ? ModP::zero(like.p) : ModP(); }
    static ModP one(const ModP& like) {
        if (!like.p) throw std::invalid_argument("ModP ring: unknown modulus");
        return ModP::one(like.p);
    }
    static ModP from_long(long n, const ModP& like) {
        if (!like.p) throw std::invalid_argument("ModP ring: unknown modulus");
        return ModP(n, like.p);
    }
    static bool is_zero(const ModP& a) { return a.is_zero(); }
    static ModP inv(const ModP& a) { return a.inv(); }
};

}  // namespace diagon

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace diagon {

// Exact rational scalar. mpq_class keeps values canonical (reduced,
// positive denominator) as long as they are built through the helpers
// below; raw mpq_class(num, den) is not canonicalized by GMP.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "a/b" or "a". Used by the JSON/text interfaces.
inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int numer(const Rat& r) { return r.get_num(); }
inline Int denom(const Rat& r) { return r.get_den(); }

inline Int pow_int(const Int& base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

inline Rat pow_rat(const Rat& base, long e) {
    if (e >= 0) {
        Rat out(pow_int(base.get_num(), (unsigned long)e),
                pow_int(base.get_den(), (unsigned long)e));
        out.canonicalize();
        return out;
    }
    if (base == 0) throw std::domain_error("pow_rat: negative power of zero");
    Rat out(pow_int(base.get_den(), (unsigned long)(-e)),
            pow_int(base.get_num(), (unsigned long)(-e)));
    out.canonicalize();
    return out;
}

// p-adic valuation of a nonzero integer.
inline unsigned long valuation(const Int& n, const Int& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    Int m = abs(n), q, r;
    unsigned long v = 0;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0) return v;
        m = q;
        ++v;
    }
}

}  // namespace diagon

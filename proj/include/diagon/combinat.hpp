#pragma once

#include <optional>
#include <vector>

#include "diagon/rat.hpp"

namespace diagon {

inline Int binom(unsigned long n, unsigned long k) {
    Int out;
    if (k > n) return Int(0);
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline Int factorial(unsigned long n) {
    Int out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

// prod (a_i n)! / prod (b_j n)!, with sum a_i = sum b_j.
struct FactorialRatioSpec {
    std::vector<unsigned long> num;
    std::vector<unsigned long> den;

    FactorialRatioSpec(std::vector<unsigned long> n, std::vector<unsigned long> d)
        : num(std::move(n)), den(std::move(d)) {
        unsigned long sn = 0, sd = 0;
        for (auto a : num) sn += a;
        for (auto b : den) sd += b;
        if (sn != sd)
            throw std::invalid_argument("FactorialRatioSpec: unbalanced multipliers");
    }
};

inline Rat factorial_ratio(const FactorialRatioSpec& spec, unsigned long n) {
    Int num(1), den(1);
    for (auto a : spec.num) num *= factorial(a * n);
    for (auto b : spec.den) den *= factorial(b * n);
    return rat(num, den);
}

// Coefficients rho(n) of a scaled hypergeometric series
//   pFq([a_1..a_p], [b_1..b_q]; s x),
// i.e. rho(n) = prod (a_i)_n / (prod (b_j)_n * n!) * s^n, evaluated by the
// term-ratio recurrence with rho(0) = 1.
struct HypergeomCoeffSpec {
    std::vector<Rat> upper;
    std::vector<Rat> lower;
    Rat scale = Rat(1);

    HypergeomCoeffSpec(std::vector<Rat> a, std::vector<Rat> b, Rat s = Rat(1))
        : upper(std::move(a)), lower(std::move(b)), scale(std::move(s)) {
        for (const Rat& bj : lower)
            if (bj <= 0 && is_integer(bj))
                throw std::domain_error("HypergeomCoeffSpec: lower parameter " +
                                        to_string(bj) + " is a non-positive integer");
    }

    Rat term_ratio(unsigned long n) const {  // rho(n+1)/rho(n)
        Rat r = scale;
        for (const Rat& a : upper) r *= a + (long)n;
        for (const Rat& b : lower) r /= b + (long)n;
        r /= Rat(1 + (long)n);
        return r;
    }
};

inline Rat hypergeom_coeff(const HypergeomCoeffSpec& spec, unsigned long n) {
    Rat rho(1);
    for (unsigned long k = 0; k < n; ++k) rho *= spec.term_ratio(k);
    return rho;
}

struct IntegralityScanReport {
    bool all_integer = true;
    std::optional<unsigned long> first_failure;
};

template <class CoeffFn>  // CoeffFn: unsigned long -> Rat
IntegralityScanReport integrality_scan_fn(CoeffFn coeff, unsigned long N) {
    IntegralityScanReport rep;
    for (unsigned long n = 0; n <= N; ++n) {
        if (!is_integer(coeff(n))) {
            rep.all_integer = false;
            rep.first_failure = n;
            return rep;
        }
    }
    return rep;
}

inline IntegralityScanReport integrality_scan(const HypergeomCoeffSpec& spec,
                                              unsigned long N) {
    Rat rho(1);
    IntegralityScanReport rep;
    for (unsigned long n = 0; n <= N; ++n) {
        if (!is_integer(rho)) {
            rep.all_integer = false;
            rep.first_failure = n;
            return rep;
        }
        rho *= spec.term_ratio(n);
    }
    return rep;
}

inline IntegralityScanReport integrality_scan(const FactorialRatioSpec& spec,
                                              unsigned long N) {
    return integrality_scan_fn([&](unsigned long n) { return factorial_ratio(spec, n); }, N);
}

}  // namespace diagon

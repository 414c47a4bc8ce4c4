#pragma once

#include <string>
#include <vector>

#include "diagon/multipoly.hpp"
#include "diagon/multiseries.hpp"
#include "diagon/series.hpp"

namespace diagon {

// P / prod(den_factors), with denominator nonzero at the origin. The
// denominator is kept in factored form: the paper-style representations
// arrive naturally as products, and the diagonal engine exploits the
// factorization to keep intermediate supports small.
struct RationalFunctionRep {
    std::vector<std::string> vars;
    MultiPoly<Rat> num;
    std::vector<MultiPoly<Rat>> den_factors;

    RationalFunctionRep() = default;
    RationalFunctionRep(std::vector<std::string> variables, MultiPoly<Rat> numerator,
                        std::vector<MultiPoly<Rat>> factors);

    MultiPoly<Rat> denominator() const;
    Rat den_constant() const;
};

// First N+1 diagonal coefficients, exact.
UniSeries<Rat> diagonal(const RationalFunctionRep& R, int N);

// Same, with all arithmetic done in F_p.
UniSeries<ModP> diagonal_mod(const RationalFunctionRep& R, int N, std::int64_t p);

// Brute-force multivariate expansion (geometric series on the expanded
// denominator), for cross-checking the engine at small orders.
MultiSeries expand_multiseries(const RationalFunctionRep& R, int bound);

// Embedding of the power-series root f (f(0) = 0) of P(x, f(x)) = 0 as
// the diagonal of a two-variable rational function. Requires P(0,0) = 0
// and P_y(0,0) != 0; the degenerate P_y(0,0) = 0 case has no such
// two-variable formula and is rejected.
RationalFunctionRep furstenberg_embed(const MultiPoly<Rat>& P);

// Newton iteration for the same root, used as the independent oracle.
UniSeries<Rat> algebraic_root_series(const MultiPoly<Rat>& P, int N);

// --- nested binomial sums ----------------------------------------------

// Linear form a*n + b*k + c in the outer index n and inner index k.
struct LinForm {
    long n = 0, k = 0, c = 0;
};

struct BinFactor {
    LinForm top, bottom;
    unsigned power = 1;
};

// sum_{k=0..n} prod_j binom(top_j, bottom_j)^{power_j}, one inner index.
struct BinSumExpr {
    std::vector<BinFactor> factors;

    // Direct evaluation of the n-th coefficient (the test oracle).
    Int coefficient(long n) const;
};

// Rational function whose diagonal is sum_n (binsum coefficient) x^n,
// built from the contour-integral representation of each binomial:
// one variable per binomial factor plus the carrier z0.
RationalFunctionRep binsum_to_ratfun(const BinSumExpr& e);

bool verify_representation(const RationalFunctionRep& R, const UniSeries<Rat>& target,
                           int N);

}  // namespace diagon

#pragma once

#include <optional>

#include "diagon/combinat.hpp"
#include "diagon/diffop.hpp"
#include "diagon/parser.hpp"

namespace diagon {

// --- construction ---------------------------------------------------------

// Operator expression in x, D (= d/dx) and theta (= x D).
DiffOp<Rat> to_diffop(const ExprPtr& e);
DiffOp<Rat> parse_diffop(const std::string& text);
std::string print_diffop(const DiffOp<Rat>& L);

// theta prod_j (theta + b_j - 1) - s x prod_i (theta + a_i)
DiffOp<Rat> hypergeom_operator(const HypergeomCoeffSpec& spec);

struct HeunSpec {
    Rat a, q, alpha, beta, gamma, delta;
    Rat scale = Rat(1);  // argument is scale*x
};
DiffOp<Rat> heun_operator(const HeunSpec& h);

// Integer-coefficient normalization: primitive, leading coefficient of
// the top polynomial positive. Requires rational input coefficients.
DiffOp<Rat> normalize_diffop(const DiffOp<Rat>& L);

// --- series solutions ------------------------------------------------------

// Unique analytic solution with f(0) = 1; throws when the indicial
// structure at 0 makes that solution non-existent or non-unique.
template <class R>
UniSeries<R> series_from_op(const DiffOp<R>& L, int N);

// Exponent e when the indicial polynomial at 0 is c (theta - e)^order
// with integer e >= 0; nullopt otherwise.
std::optional<int> mum_exponent(const DiffOp<Rat>& L);
bool is_mum(const DiffOp<Rat>& L);  // mum_exponent == 0

// Frobenius basis y_j = sum_{k<=j} ytilde_{j-k} ln(x)^k / k! (all of it
// scaled by x^shift when the indicial roots sit at an integer e > 0).
struct LogSolutionBasis {
    std::vector<UniSeries<Rat>> ytilde;  // ytilde[0](0)=1, ytilde[j>0](0)=0
    int shift = 0;

    int order() const { return (int)ytilde.size(); }
    // y_j as a log-graded series (components carry the x^shift factor)
    LogSeries solution(int j) const;
};
LogSolutionBasis frobenius_solutions(const DiffOp<Rat>& L, int N);

// Apply L to a log-graded series (entries may be Laurent).
LogSeries op_apply_log(const DiffOp<Rat>& L, const LogSeries& f);

// --- guessing ---------------------------------------------------------------

struct GuessBounds {
    int max_order = 6;
    int max_degree = 24;
    int min_order = 1;
};

// Minimal (order, then degree) operator annihilating f, re-verified on
// all available coefficients with a 25% held-out margin; nullopt when no
// operator exists within the bounds.
std::optional<DiffOp<Rat>> guess_ode(const UniSeries<Rat>& f, const GuessBounds& b);

// Same, annihilating several log-graded series simultaneously.
std::optional<DiffOp<Rat>> guess_ode_multi(const std::vector<LogSeries>& fs,
                                           const GuessBounds& b);

// Minimal operator annihilating all 2x2 Wronskians y_i y_j' - y_j y_i'
// of an order-four MUM operator (order five or six).
DiffOp<Rat> exterior_square_order4(const DiffOp<Rat>& L, const GuessBounds& b);

// Minimal operator for the Hadamard product of the analytic solutions.
DiffOp<Rat> hadamard_ops(const DiffOp<Rat>& L1, const DiffOp<Rat>& L2,
                         const GuessBounds& b);

// --- mod-p instantiation ----------------------------------------------------

DiffOp<ModP> reduce_op(const DiffOp<Rat>& L, std::int64_t p);

}  // namespace diagon

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "diagon/diagonal.hpp"
#include "diagon/multipoly.hpp"
#include "diagon/rat.hpp"

namespace diagon {

// Expression AST for the text grammar: rationals, variables, arithmetic,
// rational powers, and function heads (binom, sum, F[p,q], HeunG, Diag,
// Hadamard, and the operator tokens D / theta handled downstream).
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, Var, Add, Sub, Mul, Div, Neg, Pow, Call };
    Kind kind;
    Rat value;                 // Number
    std::string name;          // Var, Call
    std::vector<ExprPtr> args; // binary ops: 2, Neg: 1, Call: any
    Rat exponent;              // Pow

    static ExprPtr number(Rat v);
    static ExprPtr var(std::string n);
    static ExprPtr binary(Kind k, ExprPtr a, ExprPtr b);
    static ExprPtr neg(ExprPtr a);
    static ExprPtr pow(ExprPtr base, Rat e);
    static ExprPtr call(std::string n, std::vector<ExprPtr> a);
};

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
          line(l), column(c) {}
};

ExprPtr parse(const std::string& text);
std::string print(const ExprPtr& e);

// Semantic converters ------------------------------------------------------

// Polynomial in the given variables (division only by constants).
MultiPoly<Rat> to_multipoly(const ExprPtr& e, const std::vector<std::string>& vars);

// Rational function; the variable list is collected from the expression
// (sorted by name) unless given. Denominator factor structure from the
// syntax is preserved.
RationalFunctionRep to_ratfun(const ExprPtr& e,
                              std::vector<std::string> vars = {});

// sum(k=0..n, product of binom(.,.)^m) with linear index forms.
BinSumExpr to_binsum(const ExprPtr& e);

std::vector<std::string> collect_vars(const ExprPtr& e);

}  // namespace diagon

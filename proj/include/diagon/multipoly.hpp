#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagon/ring.hpp"

namespace diagon {

// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
// Operands must share the same variable list.
template <class R>
struct MultiPoly {
    std::vector<std::string> vars;
    std::map<std::vector<unsigned>, R> terms;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> variables) : vars(std::move(variables)) {}

    int nvars() const { return (int)vars.size(); }

    void add_term(const std::vector<unsigned>& e, const R& coeff) {
        if ((int)e.size() != nvars())
            throw std::invalid_argument("MultiPoly: exponent arity mismatch");
        auto it = terms.find(e);
        if (it == terms.end()) {
            if (!ring<R>::is_zero(coeff)) terms.emplace(e, coeff);
        } else {
            it->second = it->second + coeff;
            if (ring<R>::is_zero(it->second)) terms.erase(it);
        }
    }

    static MultiPoly constant(const R& c, std::vector<std::string> variables) {
        MultiPoly p(std::move(variables));
        p.add_term(std::vector<unsigned>(p.nvars(), 0), c);
        return p;
    }
    static MultiPoly variable(int i, std::vector<std::string> variables, const R& one) {
        MultiPoly p(std::move(variables));
        std::vector<unsigned> e(p.nvars(), 0);
        e.at(i) = 1;
        p.add_term(e, one);
        return p;
    }

    R constant_term(const R& like = R()) const {
        auto it = terms.find(std::vector<unsigned>(nvars(), 0));
        return it == terms.end() ? ring<R>::zero(like) : it->second;
    }

    bool is_zero() const { return terms.empty(); }

    unsigned degree_in(int var) const {
        unsigned d = 0;
        for (const auto& [e, c] : terms) d = std::max(d, e[var]);
        return d;
    }

    void check_same_vars(const MultiPoly& o) const {
        if (vars != o.vars) throw std::invalid_argument("MultiPoly: variable lists differ");
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        a.check_same_vars(b);
        MultiPoly out = a;
        for (const auto& [e, c] : b.terms) out.add_term(e, c);
        return out;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        a.check_same_vars(b);
        MultiPoly out = a;
        for (const auto& [e, c] : b.terms) out.add_term(e, -c);
        return out;
    }
    friend MultiPoly operator-(const MultiPoly& a) {
        MultiPoly out = a;
        for (auto& [e, c] : out.terms) c = -c;
        return out;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_same_vars(b);
        MultiPoly out(a.vars);
        std::vector<unsigned> e(a.nvars());
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                for (int i = 0; i < a.nvars(); ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }
    friend MultiPoly operator*(const R& s, const MultiPoly& a) {
        MultiPoly out(a.vars);
        for (const auto& [e, c] : a.terms) out.add_term(e, s * c);
        return out;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.vars == b.vars && a.terms == b.terms;
    }

    MultiPoly pow(unsigned k) const {
        MultiPoly out = constant(ring<R>::one(sample()), vars);
        MultiPoly base = *this;
        while (k) {
            if (k & 1) out = out * base;
            base = base * base;
            k >>= 1;
        }
        return out;
    }

    R sample() const {
        return terms.empty() ? R() : terms.begin()->second;
    }

    // Substitute each variable by a monomial prod_j x_j^{M[i][j]} (no
    // coefficients); enough for the Furstenberg x -> x*y embedding.
    MultiPoly monomial_substitute(const std::vector<std::vector<unsigned>>& M) const {
        MultiPoly out(vars);
        std::vector<unsigned> e(nvars());
        for (const auto& [ea, c] : terms) {
            std::fill(e.begin(), e.end(), 0u);
            for (int i = 0; i < nvars(); ++i)
                for (int j = 0; j < nvars(); ++j) e[j] += ea[i] * M[i][j];
            out.add_term(e, c);
        }
        return out;
    }

    MultiPoly partial(int var) const {
        MultiPoly out(vars);
        for (const auto& [e, c] : terms) {
            if (e[var] == 0) continue;
            std::vector<unsigned> d = e;
            d[var] -= 1;
            out.add_term(d, ring<R>::from_long((long)e[var], c) * c);
        }
        return out;
    }

    template <class F>  // F: R -> S coefficient map
    auto map_coeffs(F f) const {
        MultiPoly<decltype(f(R()))> out(vars);
        for (const auto& [e, c] : terms) out.add_term(e, f(c));
        return out;
    }
};

}  // namespace diagon

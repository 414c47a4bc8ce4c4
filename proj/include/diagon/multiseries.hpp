#pragma once

#include <map>
#include <vector>

#include "diagon/series.hpp"

namespace diagon {

// Multivariate Taylor series truncated at the same per-variable bound.
// Only exponent vectors within the bound are stored.
struct MultiSeries {
    std::vector<std::string> vars;
    int bound = 0;
    std::map<std::vector<unsigned>, Rat> coeff;

    void add(const std::vector<unsigned>& e, const Rat& c) {
        for (unsigned x : e)
            if ((int)x > bound) return;
        auto it = coeff.find(e);
        if (it == coeff.end()) {
            if (c != 0) coeff.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) coeff.erase(it);
        }
    }
};

// Sum of the equal-index coefficients, as a one-variable series.
inline UniSeries<Rat> diag_extract(const MultiSeries& F, int order) {
    if (order > F.bound)
        throw std::domain_error("diag_extract: truncation bound " +
                                std::to_string(F.bound) + " below requested order " +
                                std::to_string(order));
    UniSeries<Rat> out(order);
    if (F.vars.empty()) {
        auto it = F.coeff.find({});
        if (it != F.coeff.end()) out.c[0] = it->second;
        return out;
    }
    for (int m = 0; m <= order; ++m) {
        auto it = F.coeff.find(std::vector<unsigned>(F.vars.size(), (unsigned)m));
        if (it != F.coeff.end()) out.c[m] = it->second;
    }
    return out;
}

inline UniSeries<Rat> diag_extract(const MultiSeries& F) { return diag_extract(F, F.bound); }

}  // namespace diagon

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "diagon/combinat.hpp"
#include "diagon/dfinite.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline diagon::DiffOp<diagon::Rat> load_op(const std::string& name) {
    return diagon::parse_diffop(read_file(std::string(DIAGON_DATA_DIR) + "/operators/" + name));
}

inline diagon::UniSeries<diagon::Rat> hyp_series(const diagon::HypergeomCoeffSpec& spec,
                                                 int n) {
    diagon::UniSeries<diagon::Rat> f(n);
    diagon::Rat rho(1);
    for (int k = 0; k <= n; ++k) {
        f.c[k] = rho;
        rho *= spec.term_ratio(k);
    }
    return f;
}

}  // namespace testutil

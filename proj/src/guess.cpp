#include <algorithm>

#include "diagon/dfinite.hpp"
#include "diagon/linalg.hpp"

namespace diagon {

namespace {

std::uint64_t rat_mod(const Rat& r, std::uint64_t p) {
    Int pp((unsigned long)p);
    Int n = numer(r) % pp, d = denom(r) % pp;
    if (n < 0) n += pp;
    if (d == 0) throw std::domain_error("rat_mod: denominator divisible by prime");
    return mulmod(n.get_ui(), invmod(d.get_ui(), p), p);
}

// One equation stream per (input series, log grade): the values of
// D^k f on a common exponent window.
struct Stream {
    int lo = 0, hi = -1;                      // exponent window
    std::vector<LaurentUni<Rat>> deriv;       // deriv[k], k = 0..r
};

std::vector<Stream> build_streams(const std::vector<LogSeries>& fs, int r) {
    std::vector<Stream> out;
    for (const auto& f : fs) {
        std::vector<LogSeries> dk(r + 1);
        dk[0] = f;
        for (int k = 1; k <= r; ++k) dk[k] = dk[k - 1].derivative();
        int grades = 0;
        for (int k = 0; k <= r; ++k) grades = std::max(grades, (int)dk[k].comp.size());
        for (int g = 0; g < grades; ++g) {
            Stream s;
            s.deriv.resize(r + 1);
            bool all_zero = true;
            for (int k = 0; k <= r; ++k) {
                s.deriv[k] = dk[k].at(g);
                if (!s.deriv[k].is_zero()) all_zero = false;
            }
            if (all_zero) continue;
            s.lo = s.deriv[0].shift;
            s.hi = s.deriv[0].top();
            for (int k = 1; k <= r; ++k) {
                s.lo = std::min(s.lo, s.deriv[k].shift);
                s.hi = std::min(s.hi, s.deriv[k].top());
            }
            if (s.hi >= s.lo) out.push_back(std::move(s));
        }
    }
    return out;
}

// the same streams with coefficients reduced mod p
struct ModStream {
    int lo, hi;
    std::vector<std::vector<std::uint64_t>> vals;  // vals[k][e - lo]
};

std::vector<ModStream> reduce_streams(const std::vector<Stream>& streams, std::uint64_t p) {
    std::vector<ModStream> out;
    for (const auto& s : streams) {
        ModStream m;
        m.lo = s.lo;
        m.hi = s.hi;
        m.vals.assign(s.deriv.size(), std::vector<std::uint64_t>(s.hi - s.lo + 1, 0));
        for (size_t k = 0; k < s.deriv.size(); ++k)
            for (int e = s.lo; e <= s.hi; ++e) {
                Rat v = s.deriv[k].at(e);
                if (v != 0) m.vals[k][e - s.lo] = rat_mod(v, p);
            }
        out.push_back(std::move(m));
    }
    return out;
}

int rows_available(const std::vector<Stream>& streams) {
    int n = 0;
    for (const auto& s : streams) n += s.hi - s.lo + 1;
    return n;
}

// matrix of the first `max_rows` equations at order r, degree d; the
// equation streams are interleaved so every input series constrains the
// solve window
MatFp build_matrix(const std::vector<ModStream>& streams, int r, int d, int max_rows,
                   std::uint64_t p) {
    int U = (r + 1) * (d + 1);
    std::vector<std::vector<std::uint64_t>> rows;
    int max_window = 0;
    for (const auto& s : streams) max_window = std::max(max_window, s.hi - s.lo + 1);
    for (int off = 0; off < max_window && (int)rows.size() < max_rows; ++off) {
        for (const auto& s : streams) {
            if (off > s.hi - s.lo || (int)rows.size() >= max_rows) continue;
            int e = s.lo + off;
            std::vector<std::uint64_t> row(U, 0);
            for (int k = 0; k <= r; ++k)
                for (int j = 0; j <= d; ++j) {
                    int idx = e - j - s.lo;
                    if (idx >= 0) row[k * (d + 1) + j] = s.vals[k][idx];
                }
            rows.push_back(std::move(row));
        }
    }
    MatFp m((int)rows.size(), U, p);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < U; ++j) m.at(i, j) = rows[i][j];
    return m;
}

DiffOp<Rat> op_from_vector(const std::vector<Rat>& v, int r, int d) {
    std::vector<UniPoly<Rat>> a(r + 1);
    for (int k = 0; k <= r; ++k) {
        std::vector<Rat> c(d + 1, Rat(0));
        for (int j = 0; j <= d; ++j) c[j] = v[k * (d + 1) + j];
        a[k] = UniPoly<Rat>(std::move(c));
    }
    return normalize_diffop(DiffOp<Rat>(std::move(a)));
}

bool verify_on_logseries(const DiffOp<Rat>& L, const std::vector<LogSeries>& fs) {
    for (const auto& f : fs) {
        LogSeries res = op_apply_log(L, f);
        for (const auto& c : res.comp)
            if (!c.is_zero()) return false;
    }
    return true;
}

std::optional<DiffOp<Rat>> guess_core(const std::vector<LogSeries>& fs,
                                      const GuessBounds& b, bool* data_short) {
    *data_short = false;
    const auto& primes = engine_primes();
    for (int r = std::max(1, b.min_order); r <= b.max_order; ++r) {
        std::vector<Stream> streams = build_streams(fs, r);
        std::vector<std::vector<ModStream>> mod_streams(primes.size());
        std::vector<bool> reduced(primes.size(), false), prime_bad(primes.size(), false);
        int avail = rows_available(streams);

        for (int d = 0; d <= b.max_degree; ++d) {
            int U = (r + 1) * (d + 1);
            int solve_rows = U + std::max(5, U / 4);
            int holdout = std::max(3, U / 4);
            if (avail < solve_rows + holdout) {
                *data_short = true;
                continue;
            }

            // candidate kernel vectors, most often a single one; when the
            // kernel has higher dimension each canonical basis vector is
            // tried until one verifies exactly
            std::optional<DiffOp<Rat>> found;
            bool empty_kernel = false;
            for (int bi = 0; bi < 4 && !found && !empty_kernel; ++bi) {
                std::vector<std::vector<std::uint64_t>> residues;
                std::vector<std::uint64_t> used;
                std::vector<int> pattern;
                std::optional<std::vector<Rat>> kernel;
                for (size_t pi = 0; pi < primes.size(); ++pi) {
                    if (prime_bad[pi]) continue;
                    if (!reduced[pi]) {
                        try {
                            mod_streams[pi] = reduce_streams(streams, primes[pi]);
                        } catch (const std::domain_error&) {
                            prime_bad[pi] = true;
                            continue;
                        }
                        reduced[pi] = true;
                    }
                    MatFp m = build_matrix(mod_streams[pi], r, d, solve_rows, primes[pi]);
                    auto basis = nullspace(m);
                    if (basis.empty()) { empty_kernel = true; break; }
                    if ((int)basis.size() <= bi) break;
                    std::vector<int> pat;
                    for (int j = 0; j < U; ++j)
                        if (basis[bi][j] != 0) pat.push_back(j);
                    if (used.empty()) pattern = pat;
                    else if (pat != pattern) continue;
                    residues.push_back(basis[bi]);
                    used.push_back(primes[pi]);
                    if (used.size() < 2) continue;

                    Int modulus(1);
                    for (auto q : used) modulus *= Int((unsigned long)q);
                    std::vector<Rat> cand(U, Rat(0));
                    bool ok = true;
                    for (int j = 0; j < U && ok; ++j) {
                        std::vector<std::uint64_t> res;
                        for (auto& v : residues) res.push_back(v[j]);
                        auto rec = rational_reconstruct(crt_lift(res, used), modulus);
                        if (!rec) ok = false;
                        else cand[j] = *rec;
                    }
                    if (!ok) continue;
                    kernel = std::move(cand);
                    break;
                }
                if (empty_kernel || !kernel) continue;
                DiffOp<Rat> L = op_from_vector(*kernel, r, d);
                if (L.is_zero() || L.order() != r) continue;
                if (!verify_on_logseries(L, fs)) continue;
                found = L;
            }
            if (found) return found;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<DiffOp<Rat>> guess_ode(const UniSeries<Rat>& f, const GuessBounds& b) {
    bool data_short = false;
    auto out = guess_core({LogSeries::from_taylor(f)}, b, &data_short);
    if (!out && data_short)
        throw std::domain_error("guess_ode: series too short for the requested bounds");
    return out;
}

std::optional<DiffOp<Rat>> guess_ode_multi(const std::vector<LogSeries>& fs,
                                           const GuessBounds& b) {
    bool data_short = false;
    auto out = guess_core(fs, b, &data_short);
    if (!out && data_short)
        throw std::domain_error("guess_ode_multi: series too short for the requested bounds");
    return out;
}

DiffOp<Rat> exterior_square_order4(const DiffOp<Rat>& L, const GuessBounds& b) {
    if (L.order() != 4)
        throw std::invalid_argument("exterior_square_order4: need an order-four operator");
    int U = (std::min(b.max_order, 6) + 1) * (b.max_degree + 1);
    int N = U / 2 + U / 8 + b.max_degree + 24;
    LogSolutionBasis basis = frobenius_solutions(L, N);
    std::vector<LogSeries> y(4), wr;
    for (int j = 0; j < 4; ++j) y[j] = basis.solution(j);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            wr.push_back(y[i] * y[j].derivative() - y[j] * y[i].derivative());
    GuessBounds bb = b;
    bb.min_order = std::max(b.min_order, 1);
    bb.max_order = std::min(b.max_order, 6);
    auto out = guess_ode_multi(wr, bb);
    if (!out)
        throw std::domain_error("exterior_square_order4: no operator within bounds");
    return *out;
}

DiffOp<Rat> hadamard_ops(const DiffOp<Rat>& L1, const DiffOp<Rat>& L2,
                         const GuessBounds& b) {
    int U = (b.max_order + 1) * (b.max_degree + 1);
    int N = U + U / 2 + b.max_degree + 16;
    auto f = hadamard(series_from_op(L1, N), series_from_op(L2, N));
    auto out = guess_ode(f, b);
    if (!out) throw std::domain_error("hadamard_ops: no operator within bounds");
    return *out;
}

}  // namespace diagon

#include "diagon/diagonal.hpp"

#include "diagon/combinat.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace diagon {

RationalFunctionRep::RationalFunctionRep(std::vector<std::string> variables,
                                         MultiPoly<Rat> numerator,
                                         std::vector<MultiPoly<Rat>> factors)
    : vars(std::move(variables)), num(std::move(numerator)), den_factors(std::move(factors)) {
    if (den_factors.empty())
        den_factors.push_back(MultiPoly<Rat>::constant(Rat(1), vars));
    for (const auto& f : den_factors) {
        if (f.vars != vars) throw std::invalid_argument("RationalFunctionRep: variable mismatch");
        if (f.constant_term() == 0)
            throw std::domain_error("RationalFunctionRep: denominator vanishes at the origin");
    }
    if (num.vars != vars) throw std::invalid_argument("RationalFunctionRep: variable mismatch");
}

MultiPoly<Rat> RationalFunctionRep::denominator() const {
    MultiPoly<Rat> q = MultiPoly<Rat>::constant(Rat(1), vars);
    for (const auto& f : den_factors) q = q * f;
    return q;
}

Rat RationalFunctionRep::den_constant() const {
    Rat c(1);
    for (const auto& f : den_factors) c *= f.constant_term();
    return c;
}

namespace {

// Dense truncated-monomial state for the diagonal engine. Dimensions:
// an optional shared-index slot (value 0..N, or N+1 while still unset)
// followed by one exponent slot per active variable. A variable is
// folded into the shared index as soon as no remaining factor mentions
// it: a term can only reach the diagonal at that exponent, and terms
// whose variables disagree are dropped.
template <class R>
class DiagEngine {
  public:
    DiagEngine(int nvars, int N, const R& like)
        : N_(N), like_(like), data_(1, ring<R>::one(like)) {
        (void)nvars;
    }

    void activate(int v) {
        if (std::find(active_.begin(), active_.end(), v) != active_.end()) return;
        active_.push_back(v);
        std::vector<R> next((size_t)data_.size() * (N_ + 1), ring<R>::zero(like_));
        for (size_t i = 0; i < data_.size(); ++i) next[i * (N_ + 1)] = data_[i];
        data_ = std::move(next);
        check_size();
    }

    // state *= poly (exponents capped at N, overflow dropped)
    void mul_poly(const MultiPoly<R>& p, const std::vector<int>& var_slot) {
        std::vector<R> out(data_.size(), ring<R>::zero(like_));
        struct Term {
            size_t off;
            std::vector<unsigned> exp;  // per active slot
            R coeff;
        };
        std::vector<Term> terms;
        for (const auto& [e, c] : p.terms) {
            Term t{0, std::vector<unsigned>(active_.size(), 0), c};
            for (size_t j = 0; j < e.size(); ++j) {
                if (e[j] == 0) continue;
                int slot = var_slot[j];
                if (slot < 0) throw std::logic_error("mul_poly: inactive variable");
                t.exp[slot] = e[j];
            }
            for (size_t s = 0; s < active_.size(); ++s) t.off = t.off * (N_ + 1) + t.exp[s];
            terms.push_back(std::move(t));
        }
        iterate([&](size_t idx, const std::vector<unsigned>& exps) {
            const R& v = data_[idx];
            if (ring<R>::is_zero(v)) return;
            for (const Term& t : terms) {
                bool ok = true;
                for (size_t s = 0; s < active_.size(); ++s)
                    if (exps[s + mhat_dims()] + t.exp[s] > (unsigned)N_) { ok = false; break; }
                if (!ok) continue;
                out[idx + t.off] = out[idx + t.off] + v * t.coeff;
            }
        });
        data_ = std::move(out);
    }

    // state *= 1/f, f = c(1 + u/c) with u = f - c of positive degree
    void mul_inv_factor(const MultiPoly<R>& f, const std::vector<int>& var_slot) {
        R c = f.constant_term(like_);
        if (ring<R>::is_zero(c)) throw std::domain_error("diagonal: factor constant term is zero");
        R minus_cinv = -ring<R>::inv(c);
        MultiPoly<R> u = f;
        u.add_term(std::vector<unsigned>(f.nvars(), 0), -c);

        scale(ring<R>::inv(c));
        if (u.terms.empty()) return;
        std::vector<R> total = data_;
        int max_iter = (int)active_.size() * N_ + 1;
        for (int it = 0; it < max_iter; ++it) {
            mul_poly(u, var_slot);  // data_ = D * u
            scale(minus_cinv);
            bool nonzero = false;
            for (size_t i = 0; i < data_.size(); ++i) {
                if (ring<R>::is_zero(data_[i])) continue;
                total[i] = total[i] + data_[i];
                nonzero = true;
            }
            if (!nonzero) break;
        }
        data_ = std::move(total);
    }

    // Fold a set of finished variables into the shared diagonal index.
    void complete(const std::vector<int>& finished) {
        if (finished.empty()) return;
        std::vector<int> slots;
        for (int v : finished) {
            auto it = std::find(active_.begin(), active_.end(), v);
            if (it == active_.end()) throw std::logic_error("complete: variable not active");
            slots.push_back((int)(it - active_.begin()));
        }
        std::vector<int> keep_slots;
        for (size_t s = 0; s < active_.size(); ++s)
            if (std::find(slots.begin(), slots.end(), (int)s) == slots.end())
                keep_slots.push_back((int)s);

        std::vector<int> next_active;
        for (int s : keep_slots) next_active.push_back(active_[s]);
        size_t next_size = (size_t)(N_ + 2);
        for (size_t i = 0; i < next_active.size(); ++i) next_size *= (N_ + 1);
        std::vector<R> next(next_size, ring<R>::zero(like_));

        iterate([&](size_t idx, const std::vector<unsigned>& exps) {
            const R& v = data_[idx];
            if (ring<R>::is_zero(v)) return;
            unsigned mhat = has_mhat_ ? exps[0] : (unsigned)(N_ + 1);
            for (int s : slots) {
                unsigned e = exps[s + mhat_dims()];
                if (mhat == (unsigned)(N_ + 1)) mhat = e;
                else if (mhat != e) return;  // cannot reach the diagonal
            }
            if (mhat != (unsigned)(N_ + 1))
                for (int s : keep_slots)
                    if (exps[s + mhat_dims()] > mhat) return;
            size_t nidx = mhat;
            for (int s : keep_slots) nidx = nidx * (N_ + 1) + exps[s + mhat_dims()];
            next[nidx] = next[nidx] + v;
        });
        has_mhat_ = true;
        active_ = std::move(next_active);
        data_ = std::move(next);
    }

    std::vector<int> slot_of(const MultiPoly<R>& p) const {
        std::vector<int> out(p.nvars(), -1);
        for (int j = 0; j < p.nvars(); ++j)
            for (size_t s = 0; s < active_.size(); ++s)
                if (active_[s] == j) out[j] = (int)s;
        return out;
    }

    const std::vector<int>& active() const { return active_; }

    std::vector<R> finish() {
        if (!active_.empty()) throw std::logic_error("finish: variables still active");
        std::vector<R> out(N_ + 1, ring<R>::zero(like_));
        if (!has_mhat_) {
            out[0] = data_[0];  // no variables at all
            return out;
        }
        for (int m = 0; m <= N_; ++m) out[m] = data_[m];
        return out;
    }

  private:
    int mhat_dims() const { return has_mhat_ ? 1 : 0; }

    void scale(const R& s) {
        for (auto& v : data_) v = v * s;
    }

    void check_size() const {
        if (data_.size() > (size_t)4e7)
            throw std::runtime_error("diagonal: state too large at this order");
    }

    template <class Fn>
    void iterate(Fn fn) const {
        int nd = mhat_dims() + (int)active_.size();
        std::vector<unsigned> exps(nd, 0);
        std::vector<unsigned> lim(nd);
        for (int d = 0; d < nd; ++d)
            lim[d] = (has_mhat_ && d == 0) ? (unsigned)(N_ + 2) : (unsigned)(N_ + 1);
        size_t total = data_.size();
        for (size_t idx = 0; idx < total; ++idx) {
            fn(idx, exps);
            for (int d = nd - 1; d >= 0; --d) {
                if (++exps[d] < lim[d]) break;
                exps[d] = 0;
            }
        }
    }

    int N_;
    R like_;
    bool has_mhat_ = false;
    std::vector<int> active_;
    std::vector<R> data_;
};

template <class R>
std::vector<R> run_diagonal(const std::vector<std::string>& vars, const MultiPoly<R>& num,
                            std::vector<MultiPoly<R>> factors, int N, const R& like) {
    int n = (int)vars.size();
    DiagEngine<R> eng(n, N, like);

    auto vars_of = [&](const MultiPoly<R>& p) {
        std::set<int> s;
        for (const auto& [e, c] : p.terms)
            for (int j = 0; j < (int)e.size(); ++j)
                if (e[j] > 0) s.insert(j);
        return s;
    };

    std::vector<std::set<int>> fvars;
    for (const auto& f : factors) fvars.push_back(vars_of(f));

    // Usage counts over the not-yet-processed factors.
    std::vector<int> remaining_use(n, 0);
    for (const auto& s : fvars)
        for (int v : s) remaining_use[v]++;

    // numerator first (its variables are live only until it is absorbed)
    for (int v : vars_of(num)) eng.activate(v);
    eng.mul_poly(num, eng.slot_of(num));

    std::vector<bool> done(factors.size(), false);
    std::vector<bool> completed(n, false);

    auto complete_ready = [&]() {
        std::vector<int> ready;
        for (int v : eng.active())
            if (remaining_use[v] == 0) ready.push_back(v);
        eng.complete(ready);
        for (int v : ready) completed[v] = true;
    };

    for (size_t step = 0; step < factors.size(); ++step) {
        // Greedy order: pick the factor leaving the smallest live set.
        int best = -1;
        size_t best_live = SIZE_MAX;
        for (size_t i = 0; i < factors.size(); ++i) {
            if (done[i]) continue;
            std::set<int> live(eng.active().begin(), eng.active().end());
            for (int v : fvars[i]) live.insert(v);
            size_t liveafter = 0;
            for (int v : live) {
                int uses = remaining_use[v];
                if (fvars[i].count(v)) uses--;
                if (uses > 0) liveafter++;
            }
            if (liveafter < best_live) {
                best_live = liveafter;
                best = (int)i;
            }
        }
        const auto& f = factors[best];
        done[best] = true;
        for (int v : fvars[best]) {
            eng.activate(v);
            remaining_use[v]--;
        }
        eng.mul_inv_factor(f, eng.slot_of(f));
        complete_ready();
    }
    // variables mentioned nowhere pin the diagonal at order 0
    std::vector<int> untouched;
    for (int v = 0; v < n; ++v)
        if (!completed[v]) {
            eng.activate(v);
            untouched.push_back(v);
        }
    eng.complete(untouched);
    return eng.finish();
}

bool all_integer(const RationalFunctionRep& R) {
    auto ok = [](const MultiPoly<Rat>& p) {
        for (const auto& [e, c] : p.terms)
            if (!is_integer(c)) return false;
        return true;
    };
    if (!ok(R.num)) return false;
    for (const auto& f : R.den_factors) {
        if (!ok(f)) return false;
        Rat c = f.constant_term();
        if (c != 1 && c != -1) return false;
    }
    return true;
}

}  // namespace

UniSeries<Rat> diagonal(const RationalFunctionRep& R, int N) {
    if (N < 0) throw std::invalid_argument("diagonal: negative order");
    UniSeries<Rat> out(N);
    if (all_integer(R)) {
        auto numz = R.num.map_coeffs([](const Rat& c) { return numer(c); });
        std::vector<MultiPoly<Int>> fz;
        for (const auto& f : R.den_factors)
            fz.push_back(f.map_coeffs([](const Rat& c) { return numer(c); }));
        auto d = run_diagonal<Int>(R.vars, numz, fz, N, Int(0));
        for (int m = 0; m <= N; ++m) out.c[m] = Rat(d[m]);
        return out;
    }
    auto d = run_diagonal<Rat>(R.vars, R.num, R.den_factors, N, Rat(0));
    for (int m = 0; m <= N; ++m) out.c[m] = d[m];
    return out;
}

UniSeries<ModP> diagonal_mod(const RationalFunctionRep& R, int N, std::int64_t p) {
    auto red = [&](const MultiPoly<Rat>& poly) {
        return poly.map_coeffs([&](const Rat& c) { return reduce(c, p); });
    };
    std::vector<MultiPoly<ModP>> fz;
    for (const auto& f : R.den_factors) fz.push_back(red(f));
    auto d = run_diagonal<ModP>(R.vars, red(R.num), fz, N, ModP::zero(p));
    UniSeries<ModP> out(N, ModP::zero(p));
    for (int m = 0; m <= N; ++m) out.c[m] = d[m];
    return out;
}

MultiSeries expand_multiseries(const RationalFunctionRep& R, int bound) {
    MultiSeries F;
    F.vars = R.vars;
    F.bound = bound;

    MultiPoly<Rat> Q = R.denominator();
    Rat c = Q.constant_term();
    MultiPoly<Rat> u = MultiPoly<Rat>::constant(c, R.vars) - Q;  // positive degree

    // 1/Q = (1/c) sum_k (u/c)^k, truncated to the per-variable bound
    MultiSeries cur;
    cur.vars = R.vars;
    cur.bound = bound;
    for (const auto& [e, co] : R.num.terms) cur.add(e, co / c);

    std::vector<unsigned> sum(R.vars.size());
    int max_iter = bound * (int)R.vars.size() + 1;
    for (int it = 0;; ++it) {
        for (const auto& [e, co] : cur.coeff) F.add(e, co);
        if (cur.coeff.empty() || it >= max_iter) break;
        MultiSeries next;
        next.vars = R.vars;
        next.bound = bound;
        for (const auto& [e, co] : cur.coeff)
            for (const auto& [t, ct] : u.terms) {
                for (size_t j = 0; j < sum.size(); ++j) sum[j] = e[j] + t[j];
                next.add(sum, co * ct / c);
            }
        cur = std::move(next);
    }
    return F;
}

RationalFunctionRep furstenberg_embed(const MultiPoly<Rat>& P) {
    if (P.nvars() != 2) throw std::invalid_argument("furstenberg_embed: need a bivariate polynomial");
    Rat p00 = P.constant_term();
    if (p00 != 0)
        throw std::domain_error("furstenberg_embed: P(0,0) must vanish so the root has no constant term");
    MultiPoly<Rat> Py = P.partial(1);
    if (Py.constant_term() == 0)
        throw std::domain_error(
            "furstenberg_embed: P_y(0,0) = 0; the two-variable residue formula needs a simple root at the origin");

    // x -> x y. Every term then carries a positive power of y, so one
    // y cancels between y^2 P_y(xy,y) and P(xy,y).
    auto sub = [](const MultiPoly<Rat>& q) { return q.monomial_substitute({{1, 1}, {0, 1}}); };
    MultiPoly<Rat> num = sub(Py);
    MultiPoly<Rat> den_full = sub(P);
    MultiPoly<Rat> den(P.vars);
    for (const auto& [e, c] : den_full.terms) {
        if (e[1] == 0) throw std::logic_error("furstenberg_embed: expected y | P(xy, y)");
        den.add_term({e[0], e[1] - 1}, c);
    }
    // numerator: y^2 * P_y(xy, y) / y = y * P_y(xy, y)
    MultiPoly<Rat> num_y(P.vars);
    for (const auto& [e, c] : num.terms) num_y.add_term({e[0], e[1] + 1}, c);
    return RationalFunctionRep(P.vars, num_y, {den});
}

UniSeries<Rat> algebraic_root_series(const MultiPoly<Rat>& P, int N) {
    if (P.nvars() != 2) throw std::invalid_argument("algebraic_root_series: need P(x,y)");
    MultiPoly<Rat> Py = P.partial(1);
    if (Py.constant_term() == 0 || P.constant_term() != 0)
        throw std::domain_error("algebraic_root_series: need P(0,0)=0, P_y(0,0)!=0");

    auto eval = [&](const MultiPoly<Rat>& q, const UniSeries<Rat>& f) {
        unsigned dy = q.degree_in(1);
        std::vector<UniSeries<Rat>> fpow(dy + 1, UniSeries<Rat>::constant(Rat(1), N));
        for (unsigned b = 1; b <= dy; ++b) fpow[b] = fpow[b - 1] * f;
        UniSeries<Rat> out(N);
        for (const auto& [e, c] : q.terms) {
            if ((int)e[0] > N) continue;
            out = out + shift_up(c * fpow[e[1]], e[0]);
        }
        return out;
    };

    UniSeries<Rat> f(N);
    for (int it = 0; it < N + 2; ++it) {
        UniSeries<Rat> val = eval(P, f);
        if (val.is_zero()) break;
        f = f - val / eval(Py, f);
    }
    if (!eval(P, f).is_zero())
        throw std::domain_error("algebraic_root_series: Newton iteration did not converge");
    return f;
}

// --- nested binomial sums ------------------------------------------------

Int BinSumExpr::coefficient(long n) const {
    Int sum(0);
    for (long k = 0; k <= n; ++k) {
        Int term(1);
        for (const auto& f : factors) {
            long top = f.top.n * n + f.top.k * k + f.top.c;
            long bot = f.bottom.n * n + f.bottom.k * k + f.bottom.c;
            if (top < 0 || bot < 0 || bot > top) { term = 0; break; }
            Int b = binom((unsigned long)top, (unsigned long)bot);
            for (unsigned e = 0; e < f.power; ++e) term *= b;
        }
        sum += term;
    }
    return sum;
}

RationalFunctionRep binsum_to_ratfun(const BinSumExpr& e) {
    // one residue variable per binomial factor (powers repeat the factor)
    std::vector<BinFactor> flat;
    for (const auto& f : e.factors)
        for (unsigned i = 0; i < f.power; ++i) {
            BinFactor g = f;
            g.power = 1;
            flat.push_back(g);
        }
    int m = (int)flat.size();
    if (m == 0) throw std::invalid_argument("binsum_to_ratfun: empty product");

    std::vector<std::string> vars;
    for (int j = 0; j <= m; ++j) vars.push_back("z" + std::to_string(j));

    for (const auto& f : flat) {
        auto bad = [&](const std::string& why) {
            throw std::domain_error("binsum_to_ratfun: unsupported factor binom(" +
                                    std::to_string(f.top.n) + "n+" + std::to_string(f.top.k) +
                                    "k+" + std::to_string(f.top.c) + ", " +
                                    std::to_string(f.bottom.n) + "n+" + std::to_string(f.bottom.k) +
                                    "k+" + std::to_string(f.bottom.c) + "): " + why);
        };
        if (f.top.n < 0 || f.top.k < 0 || f.bottom.n < 0 || f.bottom.k < 0)
            bad("negative index coefficients");
        if (f.top.c != 0 || f.bottom.c != 0) bad("constant offsets");
        if (f.bottom.n + f.bottom.k > 1) bad("lower index must be k, n, or 0");
    }

    // sum_{k<=n} M0^n M1^k telescopes to 1/((1 - M0)(1 - M0 M1)); after
    // the substitution x -> z0 z1...zm both factors are polynomial.
    auto build = [&](bool with_inner) {
        MultiPoly<Rat> t = MultiPoly<Rat>::constant(Rat(1), vars);
        std::vector<unsigned> mono(m + 1, 0);
        mono[0] = 1;
        for (int j = 1; j <= m; ++j) {
            const auto& f = flat[j - 1];
            long zpow = 1 - f.bottom.n - (with_inner ? f.bottom.k : 0);
            long onepz = f.top.n + (with_inner ? f.top.k : 0);
            if (zpow < 0)
                throw std::domain_error("binsum_to_ratfun: net negative exponent on z" +
                                        std::to_string(j));
            mono[j] = (unsigned)zpow;
            MultiPoly<Rat> base(vars);
            base.add_term(std::vector<unsigned>(m + 1, 0), Rat(1));
            std::vector<unsigned> zj(m + 1, 0);
            zj[j] = 1;
            base.add_term(zj, Rat(1));  // 1 + z_j
            t = t * base.pow((unsigned)onepz);
        }
        MultiPoly<Rat> shifted(vars);
        std::vector<unsigned> se(m + 1);
        for (const auto& [ee, c] : t.terms) {
            for (int j = 0; j <= m; ++j) se[j] = ee[j] + mono[j];
            shifted.add_term(se, c);
        }
        return MultiPoly<Rat>::constant(Rat(1), vars) - shifted;
    };

    MultiPoly<Rat> F1 = build(false);  // 1 - M0
    MultiPoly<Rat> F2 = build(true);   // 1 - M0*M1
    return RationalFunctionRep(vars, MultiPoly<Rat>::constant(Rat(1), vars), {F1, F2});
}

bool verify_representation(const RationalFunctionRep& R, const UniSeries<Rat>& target,
                           int N) {
    return agree_to(diagonal(R, N), target.truncated(N), N);
}

}  // namespace diagon

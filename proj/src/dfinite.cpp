#include "diagon/dfinite.hpp"

#include <map>

namespace diagon {

// --- LogSeries arithmetic ---------------------------------------------------

LogSeries operator+(const LogSeries& a, const LogSeries& b) {
    std::vector<LaurentUni<Rat>> out(std::max(a.comp.size(), b.comp.size()));
    for (size_t j = 0; j < out.size(); ++j) {
        if (j < a.comp.size() && j < b.comp.size())
            out[j] = a.comp[j] + b.comp[j];
        else if (j < a.comp.size())
            out[j] = a.comp[j];
        else
            out[j] = b.comp[j];
    }
    return LogSeries(std::move(out));
}

LogSeries operator-(const LogSeries& a, const LogSeries& b) {
    LogSeries nb = b;
    for (auto& c : nb.comp) c = -c;
    return a + nb;
}

LogSeries operator*(const LogSeries& a, const LogSeries& b) {
    if (a.comp.empty() || b.comp.empty()) return LogSeries();
    std::vector<LaurentUni<Rat>> out(a.comp.size() + b.comp.size() - 1);
    std::vector<bool> touched(out.size(), false);
    for (size_t i = 0; i < a.comp.size(); ++i) {
        if (a.comp[i].is_zero()) continue;
        for (size_t j = 0; j < b.comp.size(); ++j) {
            if (b.comp[j].is_zero()) continue;
            // ln^i/i! * ln^j/j! = binom(i+j, i) ln^{i+j}/(i+j)!
            Rat bin(binom((unsigned long)(i + j), (unsigned long)i));
            LaurentUni<Rat> term = bin * (a.comp[i] * b.comp[j]);
            out[i + j] = touched[i + j] ? out[i + j] + term : term;
            touched[i + j] = true;
        }
    }
    // untouched slots: exact zeros of unrestricted window
    return LogSeries(std::move(out));
}

LogSeries LogSeries::derivative() const {
    std::vector<LaurentUni<Rat>> out(comp.size());
    for (size_t j = 0; j < comp.size(); ++j) {
        out[j] = comp[j].derivative();
        if (j + 1 < comp.size() && !comp[j + 1].is_zero()) {
            // + comp[j+1] / x
            LaurentUni<Rat> over_x(comp[j + 1].shift - 1, comp[j + 1].u);
            out[j] = out[j] + over_x;
        }
    }
    return LogSeries(std::move(out));
}

LogSeries log_scale(const Rat& s, const LogSeries& a) {
    LogSeries out = a;
    for (auto& c : out.comp) c = s * c;
    return out;
}

LogSeries op_apply_log(const DiffOp<Rat>& L, const LogSeries& f) {
    LogSeries der = f, acc;
    for (int k = 0; k <= L.order(); ++k) {
        if (!L.a[k].is_zero()) {
            LogSeries term = der;
            for (auto& c : term.comp) {
                // a polynomial is exact at every order: give it a window
                // wide enough not to shrink the component's
                UniSeries<Rat> wide(c.u.order() + std::max(L.a[k].degree(), 0));
                for (int j = 0; j <= L.a[k].degree(); ++j) wide.c[j] = L.a[k].c[j];
                c = c * LaurentUni<Rat>(0, wide);
            }
            acc = acc.comp.empty() ? term : acc + term;
        }
        if (k < L.order()) der = der.derivative();
    }
    return acc;
}

// --- theta-form helpers -----------------------------------------------------

namespace {

struct ThetaForm {
    int low = 0;                     // smallest i with P_i != 0
    std::vector<UniPoly<Rat>> P;     // P[i] for x^{low+i}, P[0] = indicial
};

ThetaForm indicial_form(const DiffOp<Rat>& L) {
    auto [s, P] = theta_form(L);
    (void)s;
    int low = 0;
    while (low < (int)P.size() && P[low].is_zero()) ++low;
    if (low == (int)P.size()) throw std::invalid_argument("theta form of zero operator");
    ThetaForm tf;
    tf.low = low;
    tf.P.assign(P.begin() + low, P.end());
    return tf;
}

}  // namespace

std::optional<int> mum_exponent(const DiffOp<Rat>& L) {
    ThetaForm tf = indicial_form(L);
    const UniPoly<Rat>& ind = tf.P[0];
    int r = L.order();
    if (ind.degree() != r) return std::nullopt;
    // c (theta - e)^r: compare with binomial expansion
    Rat c = ind.c[r];
    Rat e = -ind.c[r - 1] / (c * Rat(r));
    if (!is_integer(e) || e < 0) return std::nullopt;
    UniPoly<Rat> probe({-e, Rat(1)});
    UniPoly<Rat> powr({Rat(1)});
    for (int i = 0; i < r; ++i) powr = powr * probe;
    if (!(c * powr == ind)) return std::nullopt;
    return (int)numer(e).get_si();
}

bool is_mum(const DiffOp<Rat>& L) {
    auto e = mum_exponent(L);
    return e.has_value() && *e == 0;
}

// --- analytic solution -------------------------------------------------------

template <class R>
UniSeries<R> series_from_op(const DiffOp<R>& L, int N) {
    auto [s, P] = theta_form(L);
    (void)s;
    int low = 0;
    while (low < (int)P.size() && P[low].is_zero()) ++low;
    if (low == (int)P.size()) throw std::invalid_argument("series_from_op: zero operator");
    R one = ring<R>::one(L.sample());
    const UniPoly<R>& ind = P[low];
    if (!ring<R>::is_zero(ind.eval(ring<R>::zero(one))))
        throw std::domain_error("series_from_op: no analytic solution (indicial roots miss 0)");
    UniSeries<R> f(N, one);
    f.c[0] = one;
    for (int n = 1; n <= N; ++n) {
        R pn = ind.eval(ring<R>::from_long(n, one));
        if (ring<R>::is_zero(pn))
            throw std::domain_error(
                "series_from_op: resonant index n=" + std::to_string(n) +
                "; analytic solution is not unique");
        R acc = ring<R>::zero(one);
        for (int i = 1; i < (int)P.size() - low && i <= n; ++i) {
            if (P[low + i].is_zero()) continue;
            acc = acc + P[low + i].eval(ring<R>::from_long(n - i, one)) * f.c[n - i];
        }
        f.c[n] = -(ring<R>::inv(pn) * acc);
    }
    return f;
}

template UniSeries<Rat> series_from_op<Rat>(const DiffOp<Rat>&, int);
template UniSeries<ModP> series_from_op<ModP>(const DiffOp<ModP>&, int);

// --- Frobenius basis ----------------------------------------------------------

LogSeries LogSolutionBasis::solution(int j) const {
    if (j < 0 || j >= order()) throw std::out_of_range("LogSolutionBasis::solution");
    std::vector<LaurentUni<Rat>> comp(j + 1);
    for (int k = 0; k <= j; ++k)
        comp[k] = LaurentUni<Rat>(shift, ytilde[j - k]);
    return LogSeries(std::move(comp));
}

LogSolutionBasis frobenius_solutions(const DiffOp<Rat>& L, int N) {
    auto e = mum_exponent(L);
    if (!e)
        throw std::domain_error("frobenius_solutions: indicial polynomial is not (theta-e)^r");
    int r = L.order();
    ThetaForm tf = indicial_form(L);
    // conjugate theta -> theta + e so the indicial roots move to 0
    std::vector<UniPoly<Rat>> P(tf.P.size());
    if (*e != 0) {
        UniPoly<Rat> sub({Rat(*e), Rat(1)});
        for (size_t i = 0; i < tf.P.size(); ++i) {
            UniPoly<Rat> acc;
            for (int t = tf.P[i].degree(); t >= 0; --t) {
                acc = acc * sub;
                acc = acc + UniPoly<Rat>({tf.P[i].c[t]});
            }
            P[i] = acc;
        }
    } else {
        P = tf.P;
    }

    // v_n in Q^r: log-grade components of the top solution y_{r-1};
    // theta acts as n I + U with (U v)[k] = v[k+1].
    std::vector<std::vector<Rat>> v(N + 1, std::vector<Rat>(r, Rat(0)));
    v[0][r - 1] = 1;
    auto apply_poly = [&](const UniPoly<Rat>& p, long n,
                          const std::vector<Rat>& w) {
        // p(n I + U) w, U nilpotent upshift
        std::vector<Rat> acc(r, Rat(0));
        for (int t = p.degree(); t >= 0; --t) {
            // acc = (n I + U) acc + p_t w
            std::vector<Rat> next(r);
            for (int k = 0; k < r; ++k) {
                next[k] = Rat(n) * acc[k];
                if (k + 1 < r) next[k] += acc[k + 1];
                next[k] += p.c[t] * w[k];
            }
            acc = std::move(next);
        }
        return acc;
    };
    for (int n = 1; n <= N; ++n) {
        std::vector<Rat> rhs(r, Rat(0));
        for (int i = 1; i < (int)P.size() && i <= n; ++i) {
            if (P[i].is_zero()) continue;
            auto t = apply_poly(P[i], n - i, v[n - i]);
            for (int k = 0; k < r; ++k) rhs[k] -= t[k];
        }
        // solve (n I + U)^r v = rhs / c, c = leading coeff of indicial
        Rat c = P[0].c[P[0].degree()];
        for (int k = 0; k < r; ++k) rhs[k] /= c;
        for (int pass = 0; pass < r; ++pass) {
            std::vector<Rat> sol(r);
            for (int k = r - 1; k >= 0; --k) {
                Rat t = rhs[k];
                if (k + 1 < r) t -= sol[k + 1];
                sol[k] = t / Rat(n);
            }
            rhs = std::move(sol);
        }
        v[n] = rhs;
    }

    LogSolutionBasis basis;
    basis.shift = *e;
    basis.ytilde.assign(r, UniSeries<Rat>(N));
    for (int m = 0; m < r; ++m)
        for (int n = 0; n <= N; ++n) basis.ytilde[m].c[n] = v[n][r - 1 - m];
    // verify the defining application on the full log solution
    LogSeries top = basis.solution(r - 1);
    LogSeries res = op_apply_log(L, top);
    for (const auto& cpt : res.comp)
        if (!cpt.is_zero())
            throw std::logic_error("frobenius_solutions: residual after substitution");
    return basis;
}

// --- operator construction ----------------------------------------------------

DiffOp<Rat> hypergeom_operator(const HypergeomCoeffSpec& spec) {
    Rat one(1);
    DiffOp<Rat> th = DiffOp<Rat>::theta(one);
    DiffOp<Rat> left = th;
    for (const Rat& b : spec.lower) {
        DiffOp<Rat> f = th + DiffOp<Rat>::mult(UniPoly<Rat>({b - 1}));
        left = left * f;
    }
    DiffOp<Rat> right = DiffOp<Rat>::mult(UniPoly<Rat>({Rat(0), spec.scale}));
    for (const Rat& a : spec.upper) {
        DiffOp<Rat> f = th + DiffOp<Rat>::mult(UniPoly<Rat>({a}));
        right = right * f;
    }
    return normalize_diffop(left - right);
}

DiffOp<Rat> heun_operator(const HeunSpec& h) {
    // y'' + (gamma/u + delta/(u-1) + eps/(u-a)) y' + (alpha beta u - q)/(u(u-1)(u-a)) y
    // with u = s x, cleared to polynomial coefficients in x.
    Rat s = h.scale;
    if (s == 0) throw std::invalid_argument("heun_operator: zero scale");
    Rat eps = h.alpha + h.beta + 1 - h.gamma - h.delta;
    // u(u-1)(u-a) y'' + [gamma (u-1)(u-a) + delta u(u-a) + eps u(u-1)] y' + (alpha beta u - q) y
    // u = s x, d/du = (1/s) d/dx
    UniPoly<Rat> u({Rat(0), s});
    UniPoly<Rat> um1 = u - UniPoly<Rat>({Rat(1)});
    UniPoly<Rat> uma = u - UniPoly<Rat>({h.a});
    UniPoly<Rat> a2 = u * um1 * uma;
    UniPoly<Rat> a1 = h.gamma * (um1 * uma) + h.delta * (u * uma) + eps * (u * um1);
    UniPoly<Rat> a0 = UniPoly<Rat>({-h.q, h.alpha * h.beta * s});
    Rat sinv = Rat(1) / s;
    return normalize_diffop(
        DiffOp<Rat>({a0, sinv * a1, (sinv * sinv) * a2}));
}

DiffOp<Rat> normalize_diffop(const DiffOp<Rat>& L) {
    if (L.is_zero()) return L;
    Int lcm(1), gcd(0);
    for (const auto& p : L.a)
        for (const auto& c : p.c)
            if (c != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), denom(c).get_mpz_t());
    DiffOp<Rat> out = L;
    for (auto& p : out.a)
        for (auto& c : p.c) c *= Rat(lcm);
    for (const auto& p : out.a)
        for (const auto& c : p.c)
            if (c != 0) mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), numer(c).get_mpz_t());
    if (gcd == 0) return out;
    Rat scale = rat(Int(1), gcd);
    const UniPoly<Rat>& top = out.a.back();
    if (top.c[top.degree()] < 0) scale = -scale;
    for (auto& p : out.a)
        for (auto& c : p.c) c *= scale;
    return out;
}

DiffOp<ModP> reduce_op(const DiffOp<Rat>& L, std::int64_t p) {
    std::vector<UniPoly<ModP>> a(L.a.size());
    for (size_t k = 0; k < L.a.size(); ++k) {
        std::vector<ModP> c(L.a[k].c.size(), ModP::zero(p));
        for (size_t j = 0; j < L.a[k].c.size(); ++j) c[j] = reduce(L.a[k].c[j], p);
        a[k] = UniPoly<ModP>(std::move(c));
    }
    return DiffOp<ModP>(std::move(a));
}

// --- parsing operators ----------------------------------------------------------

namespace {

DiffOp<Rat> op_eval(const ExprPtr& e) {
    Rat one(1);
    switch (e->kind) {
        case Expr::Kind::Number:
            return DiffOp<Rat>::mult(UniPoly<Rat>({e->value}));
        case Expr::Kind::Var: {
            if (e->name == "x") return DiffOp<Rat>::x_times(one);
            if (e->name == "theta") return DiffOp<Rat>::theta(one);
            if (e->name == "D" || e->name == "Dx") return DiffOp<Rat>::d(one);
            throw std::invalid_argument("operator expression: unknown symbol " + e->name);
        }
        case Expr::Kind::Add:
            return op_eval(e->args[0]) + op_eval(e->args[1]);
        case Expr::Kind::Sub:
            return op_eval(e->args[0]) - op_eval(e->args[1]);
        case Expr::Kind::Neg:
            return -op_eval(e->args[0]);
        case Expr::Kind::Mul:
            return op_eval(e->args[0]) * op_eval(e->args[1]);
        case Expr::Kind::Div: {
            DiffOp<Rat> d = op_eval(e->args[1]);
            if (d.order() != 0 || d.a[0].degree() > 0)
                throw std::invalid_argument("operator expression: division only by constants");
            return DiffOp<Rat>::mult(UniPoly<Rat>({Rat(1) / d.a[0].c[0]})) * op_eval(e->args[0]);
        }
        case Expr::Kind::Pow: {
            if (!is_integer(e->exponent) || e->exponent < 0)
                throw std::invalid_argument("operator expression: bad exponent");
            return op_eval(e->args[0]).pow((unsigned)numer(e->exponent).get_ui(), one);
        }
        case Expr::Kind::Call:
            throw std::invalid_argument("operator expression: unexpected call " + e->name);
    }
    throw std::logic_error("op_eval: unreachable");
}

}  // namespace

DiffOp<Rat> to_diffop(const ExprPtr& e) { return op_eval(e); }

DiffOp<Rat> parse_diffop(const std::string& text) { return op_eval(parse(text)); }

std::string print_diffop(const DiffOp<Rat>& L) {
    if (L.is_zero()) return "0";
    std::string out;
    for (int k = L.order(); k >= 0; --k) {
        if (L.a[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(";
        bool first = true;
        for (int j = L.a[k].degree(); j >= 0; --j) {
            const Rat& c = L.a[k].at(j);
            if (c == 0) continue;
            if (!first) out += c > 0 ? "+" : "";
            out += to_string(c);
            if (j >= 1) out += "*x";
            if (j >= 2) out += "^" + std::to_string(j);
            first = false;
        }
        out += ")";
        if (k >= 1) out += "*D";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

}  // namespace diagon

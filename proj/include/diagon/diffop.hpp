#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagon/series.hpp"

namespace diagon {

// --- dense univariate polynomials (operator coefficients) ---------------

template <class R>
struct UniPoly {
    std::vector<R> c;  // c[j] = coefficient of x^j; normalized: no zero tail

    UniPoly() = default;
    explicit UniPoly(std::vector<R> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && ring<R>::is_zero(c.back())) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; }  // -1 for zero
    R at(int j) const { return j >= 0 && j < (int)c.size() ? c[j] : R(); }

    R eval(const R& x) const {
        R acc = R();
        for (int j = degree(); j >= 0; --j) acc = acc * x + c[j];
        return acc;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<R> out(std::max(a.c.size(), b.c.size()), R());
        for (size_t i = 0; i < out.size(); ++i) {
            if (i < a.c.size()) out[i] = out[i] + a.c[i];
            if (i < b.c.size()) out[i] = out[i] + b.c[i];
        }
        return UniPoly(std::move(out));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<R> out(std::max(a.c.size(), b.c.size()), R());
        for (size_t i = 0; i < out.size(); ++i) {
            if (i < a.c.size()) out[i] = out[i] + a.c[i];
            if (i < b.c.size()) out[i] = out[i] - b.c[i];
        }
        return UniPoly(std::move(out));
    }
    friend UniPoly operator-(const UniPoly& a) {
        UniPoly out = a;
        for (auto& x : out.c) x = -x;
        return out;
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<R> out(a.c.size() + b.c.size() - 1, R());
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (ring<R>::is_zero(a.c[i])) continue;
            for (size_t j = 0; j < b.c.size(); ++j)
                out[i + j] = out[i + j] + a.c[i] * b.c[j];
        }
        return UniPoly(std::move(out));
    }
    friend UniPoly operator*(const R& s, const UniPoly& a) {
        UniPoly out = a;
        for (auto& x : out.c) x = s * x;
        out.trim();
        return out;
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c == b.c; }

    UniPoly derivative() const {
        if (c.size() <= 1) return UniPoly();
        std::vector<R> out(c.size() - 1, R());
        R one = ring<R>::one(c[0]);
        R k = one;
        for (size_t j = 1; j < c.size(); ++j) {
            out[j - 1] = k * c[j];
            k = k + one;
        }
        return UniPoly(std::move(out));
    }
};

// --- linear differential operators ---------------------------------------

// sum_k a_k(x) D^k with polynomial coefficients; a.back() != 0.
template <class R = Rat>
struct DiffOp {
    std::vector<UniPoly<R>> a;

    DiffOp() = default;
    explicit DiffOp(std::vector<UniPoly<R>> coeffs) : a(std::move(coeffs)) { trim(); }

    void trim() {
        while (!a.empty() && a.back().is_zero()) a.pop_back();
    }
    bool is_zero() const { return a.empty(); }
    int order() const { return (int)a.size() - 1; }
    UniPoly<R> coeff(int k) const { return k >= 0 && k < (int)a.size() ? a[k] : UniPoly<R>(); }

    static DiffOp zero() { return DiffOp(); }
    static DiffOp identity(const R& one) {
        return DiffOp({UniPoly<R>({one})});
    }
    static DiffOp d(const R& one) {  // D_x
        return DiffOp({UniPoly<R>(), UniPoly<R>({one})});
    }
    static DiffOp x_times(const R& one) {  // multiplication by x
        return DiffOp({UniPoly<R>({ring<R>::zero(one), one})});
    }
    static DiffOp theta(const R& one) {  // x D_x
        return DiffOp({UniPoly<R>(), UniPoly<R>({ring<R>::zero(one), one})});
    }
    static DiffOp mult(UniPoly<R> p) { return DiffOp({std::move(p)}); }

    friend DiffOp operator+(const DiffOp& A, const DiffOp& B) {
        std::vector<UniPoly<R>> out(std::max(A.a.size(), B.a.size()));
        for (size_t k = 0; k < out.size(); ++k) out[k] = A.coeff((int)k) + B.coeff((int)k);
        return DiffOp(std::move(out));
    }
    friend DiffOp operator-(const DiffOp& A, const DiffOp& B) {
        std::vector<UniPoly<R>> out(std::max(A.a.size(), B.a.size()));
        for (size_t k = 0; k < out.size(); ++k) out[k] = A.coeff((int)k) - B.coeff((int)k);
        return DiffOp(std::move(out));
    }
    friend DiffOp operator-(const DiffOp& A) {
        DiffOp out = A;
        for (auto& p : out.a) p = -p;
        return out;
    }
    friend bool operator==(const DiffOp& A, const DiffOp& B) { return A.a == B.a; }

    // noncommutative product: (A*B)(f) = A(B(f)); uses D p = p D + p'.
    friend DiffOp operator*(const DiffOp& A, const DiffOp& B) {
        if (A.is_zero() || B.is_zero()) return DiffOp();
        // D^k (p(x) .) = sum_j binom(k,j) p^(j) D^{k-j}
        std::vector<UniPoly<R>> out;
        R one = ring<R>::one(sample2(A, B));
        for (int k = 0; k <= A.order(); ++k) {
            if (A.a[k].is_zero()) continue;
            for (int m = 0; m <= B.order(); ++m) {
                if (B.a[m].is_zero()) continue;
                UniPoly<R> dp = B.a[m];
                R bin = one;
                for (int j = 0; j <= k; ++j) {
                    // term: binom(k,j) * a_k * p^(j) * D^{k-j+m}
                    int ord = k - j + m;
                    if ((int)out.size() <= ord) out.resize(ord + 1);
                    out[ord] = out[ord] + bin * (A.a[k] * dp);
                    dp = dp.derivative();
                    if (dp.is_zero()) break;
                    bin = bin * ring<R>::from_long(k - j, one) *
                          ring<R>::inv(ring<R>::from_long(j + 1, one));
                }
            }
        }
        return DiffOp(std::move(out));
    }

    DiffOp pow(unsigned n, const R& one) const {
        DiffOp out = identity(one);
        DiffOp base = *this;
        while (n) {
            if (n & 1) out = out * base;
            base = base * base;
            n >>= 1;
        }
        return out;
    }

    static R sample2(const DiffOp& A, const DiffOp& B) {
        for (const auto& p : A.a)
            for (const auto& x : p.c)
                if (!ring<R>::is_zero(x)) return x;
        for (const auto& p : B.a)
            for (const auto& x : p.c)
                if (!ring<R>::is_zero(x)) return x;
        return R();
    }
    R sample() const { return sample2(*this, *this); }
};

// formal adjoint: sum_k (-D)^k (a_k .)
template <class R>
DiffOp<R> adjoint(const DiffOp<R>& L) {
    R one = ring<R>::one(L.sample());
    DiffOp<R> out, D = DiffOp<R>::d(one);
    for (int k = 0; k <= L.order(); ++k) {
        if (L.a[k].is_zero()) continue;
        DiffOp<R> term = DiffOp<R>::mult(L.a[k]);
        DiffOp<R> dk = D.pow((unsigned)k, one);
        if (k % 2) dk = -dk;
        out = out + dk * term;
    }
    return out;
}

template <class R>
UniSeries<R> op_apply(const DiffOp<R>& L, const UniSeries<R>& f) {
    if (L.is_zero()) throw std::invalid_argument("op_apply: zero operator");
    int r = L.order();
    int n = f.order() - r;
    if (n < 0) throw std::invalid_argument("op_apply: series too short");
    UniSeries<R> out(n, f.sample());
    UniSeries<R> der = f;
    for (int k = 0; k <= r; ++k) {
        const UniPoly<R>& p = L.a[k];
        for (int j = 0; j <= p.degree(); ++j) {
            if (ring<R>::is_zero(p.c[j])) continue;
            for (int m = j; m <= n; ++m) {
                if (m - j > der.order()) break;
                out.c[m] = out.c[m] + p.c[j] * der.c[m - j];
            }
        }
        if (k < r) der = derivative(der);
    }
    return out;
}

// theta-form x^s L = sum_i x^i P_i(theta): returns s and the list of
// theta-polynomials P_i (coefficients of theta^t).
template <class R>
std::pair<int, std::vector<UniPoly<R>>> theta_form(const DiffOp<R>& L) {
    if (L.is_zero()) throw std::invalid_argument("theta_form: zero operator");
    R one = ring<R>::one(L.sample());
    int r = L.order();
    int s = 0;
    for (int k = 0; k <= r; ++k)
        for (int j = 0; j <= L.a[k].degree(); ++j)
            if (!ring<R>::is_zero(L.a[k].c[j])) s = std::max(s, k - j);

    // x^s x^j D^k = x^{j-k+s} theta(theta-1)...(theta-k+1)
    int max_i = 0;
    for (int k = 0; k <= r; ++k) max_i = std::max(max_i, L.a[k].degree() - k + s);
    std::vector<UniPoly<R>> P(max_i + 1);

    // falling factorial polynomials in theta
    std::vector<UniPoly<R>> fall(r + 1);
    fall[0] = UniPoly<R>({one});
    for (int k = 1; k <= r; ++k) {
        UniPoly<R> shift({-ring<R>::from_long(k - 1, one), one});  // theta - (k-1)
        fall[k] = fall[k - 1] * shift;
    }
    for (int k = 0; k <= r; ++k)
        for (int j = 0; j <= L.a[k].degree(); ++j) {
            if (ring<R>::is_zero(L.a[k].c[j])) continue;
            int i = j - k + s;
            P[i] = P[i] + L.a[k].c[j] * fall[k];
        }
    while (!P.empty() && P.back().is_zero()) P.pop_back();
    return {s, P};
}

// --- Laurent series (finite principal part) -------------------------------

// shift + Taylor unit: sum_{j>=0} u[j] x^{shift+j}, coefficients valid
// through x^{shift + u.order()}.
template <class R>
struct LaurentUni {
    int shift = 0;
    UniSeries<R> u;

    LaurentUni() : u(0) {}
    LaurentUni(int s, UniSeries<R> series) : shift(s), u(std::move(series)) {}
    static LaurentUni from_taylor(const UniSeries<R>& f) { return LaurentUni(0, f); }

    int top() const { return shift + u.order(); }  // last valid exponent
    R at(int e) const { return e >= shift ? u.at(e - shift) : ring<R>::zero(u.sample()); }
    bool is_zero() const { return u.is_zero(); }

    // drop leading zeros (raises shift, keeps top)
    LaurentUni normalized() const {
        int v = u.valuation();
        if (v == 0 || u.is_zero()) return *this;
        return LaurentUni(shift + v, shift_down(u, v).truncated(u.order() - v));
    }

    int valuation() const { return shift + u.valuation(); }

    friend LaurentUni operator+(const LaurentUni& a, const LaurentUni& b) {
        int lo = std::min(a.shift, b.shift);
        int hi = std::min(a.top(), b.top());
        if (hi < lo) throw std::domain_error("LaurentUni: empty window in +");
        UniSeries<R> out(hi - lo, a.u.sample());
        for (int e = lo; e <= hi; ++e) out.c[e - lo] = a.at(e) + b.at(e);
        return LaurentUni(lo, std::move(out));
    }
    friend LaurentUni operator-(const LaurentUni& a, const LaurentUni& b) {
        return a + LaurentUni(b.shift, -b.u);
    }
    friend LaurentUni operator-(const LaurentUni& a) { return LaurentUni(a.shift, -a.u); }
    friend LaurentUni operator*(const LaurentUni& a, const LaurentUni& b) {
        // exactness window: min over (a.top + b.valuation-ish); use the
        // conservative min(a.top + b.shift, b.top + a.shift)
        int lo = a.shift + b.shift;
        int hi = std::min(a.top() + b.shift, b.top() + a.shift);
        int n = hi - lo;
        if (n < 0) throw std::domain_error("LaurentUni: empty window in *");
        return LaurentUni(lo, (a.u.truncated(n) * b.u.truncated(n)));
    }
    friend LaurentUni operator*(const R& s, const LaurentUni& a) {
        return LaurentUni(a.shift, s * a.u);
    }

    LaurentUni inverse() const {
        LaurentUni n = normalized();
        if (n.u.is_zero()) throw std::domain_error("LaurentUni: inverse of zero");
        return LaurentUni(-n.shift, series_inv(n.u));
    }

    LaurentUni derivative() const {
        UniSeries<R> out(u.order(), u.sample());
        for (int j = 0; j <= u.order(); ++j)
            out.c[j] = ring<R>::from_long(shift + j, u.sample()) * u.c[j];
        // d/dx sum u_j x^{s+j} = sum (s+j) u_j x^{s+j-1}
        return LaurentUni(shift - 1, std::move(out));
    }
};

template <class R>
bool laurent_agree_to(const LaurentUni<R>& a, const LaurentUni<R>& b, int hi) {
    int lo = std::min(a.shift, b.shift);
    if (a.top() < hi || b.top() < hi) return false;
    for (int e = lo; e <= hi; ++e)
        if (!(a.at(e) == b.at(e))) return false;
    return true;
}

// --- log-graded series ----------------------------------------------------

// sum_j comp[j] * ln(x)^j / j!, each component a Laurent series.
struct LogSeries {
    std::vector<LaurentUni<Rat>> comp;

    LogSeries() = default;
    explicit LogSeries(std::vector<LaurentUni<Rat>> c) : comp(std::move(c)) { trim(); }
    static LogSeries from_taylor(const UniSeries<Rat>& f) {
        return LogSeries({LaurentUni<Rat>::from_taylor(f)});
    }

    void trim() {
        while (!comp.empty() && comp.back().is_zero()) comp.pop_back();
    }
    int log_degree() const { return (int)comp.size() - 1; }
    LaurentUni<Rat> at(int j) const {
        return j >= 0 && j < (int)comp.size() ? comp[j] : LaurentUni<Rat>();
    }
    bool is_zero() const {
        for (const auto& c : comp)
            if (!c.is_zero()) return false;
        return true;
    }

    friend LogSeries operator+(const LogSeries& a, const LogSeries& b);
    friend LogSeries operator-(const LogSeries& a, const LogSeries& b);
    friend LogSeries operator*(const LogSeries& a, const LogSeries& b);
    LogSeries derivative() const;
};

LogSeries log_scale(const Rat& s, const LogSeries& a);

}  // namespace diagon

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagon/ring.hpp"

namespace diagon {

// Truncated power series: coefficients c[0..N] are exact, nothing is
// claimed beyond x^N. Binary operations return the minimum of the two
// truncation orders.
template <class R>
struct UniSeries {
    std::vector<R> c;

    UniSeries() = default;
    explicit UniSeries(int order, const R& like = R()) : c(order + 1, ring<R>::zero(like)) {
        if (order < 0) throw std::invalid_argument("UniSeries: negative order");
    }
    UniSeries(std::vector<R> coeffs) : c(std::move(coeffs)) {
        if (c.empty()) throw std::invalid_argument("UniSeries: empty");
    }

    int order() const { return (int)c.size() - 1; }
    const R& operator[](int i) const { return c[i]; }
    R& operator[](int i) { return c[i]; }
    R at(int i) const { return i <= order() ? c[i] : ring<R>::zero(sample()); }

    // A representative element carrying the ModP modulus, if any.
    R sample() const {
        for (const R& x : c)
            if (!ring<R>::is_zero(x)) return x;
        return c.empty() ? R() : c[0];
    }

    UniSeries truncated(int n) const {
        UniSeries out = *this;
        if (n < order()) out.c.resize(n + 1);
        return out;
    }

    int valuation() const {  // order()+1 when identically zero to truncation
        for (int i = 0; i <= order(); ++i)
            if (!ring<R>::is_zero(c[i])) return i;
        return order() + 1;
    }

    bool is_zero() const { return valuation() > order(); }

    static UniSeries x_power(int k, int order, const R& like) {
        UniSeries out(order, like);
        if (k <= order) out.c[k] = ring<R>::one(like);
        return out;
    }
    static UniSeries constant(const R& value, int order) {
        UniSeries out(order, value);
        out.c[0] = value;
        return out;
    }
};

template <class R>
UniSeries<R> operator+(const UniSeries<R>& a, const UniSeries<R>& b) {
    int n = std::min(a.order(), b.order());
    UniSeries<R> out(n, a.sample());
    for (int i = 0; i <= n; ++i) out.c[i] = a.c[i] + b.c[i];
    return out;
}

template <class R>
UniSeries<R> operator-(const UniSeries<R>& a, const UniSeries<R>& b) {
    int n = std::min(a.order(), b.order());
    UniSeries<R> out(n, a.sample());
    for (int i = 0; i <= n; ++i) out.c[i] = a.c[i] - b.c[i];
    return out;
}

template <class R>
UniSeries<R> operator-(const UniSeries<R>& a) {
    UniSeries<R> out = a;
    for (auto& x : out.c) x = -x;
    return out;
}

template <class R>
UniSeries<R> operator*(const UniSeries<R>& a, const UniSeries<R>& b) {
    int n = std::min(a.order(), b.order());
    UniSeries<R> out(n, a.sample());
    for (int i = 0; i <= n; ++i) {
        if (ring<R>::is_zero(a.c[i])) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (ring<R>::is_zero(b.c[j])) continue;
            out.c[i + j] = out.c[i + j] + a.c[i] * b.c[j];
        }
    }
    return out;
}

template <class R>
UniSeries<R> operator*(const R& s, const UniSeries<R>& a) {
    UniSeries<R> out = a;
    for (auto& x : out.c) x = s * x;
    return out;
}

// x^k * a, truncation order kept.
template <class R>
UniSeries<R> shift_up(const UniSeries<R>& a, int k) {
    UniSeries<R> out(a.order(), a.sample());
    for (int i = 0; i + k <= a.order(); ++i) out.c[i + k] = a.c[i];
    return out;
}

// a / x^k; requires valuation >= k.
template <class R>
UniSeries<R> shift_down(const UniSeries<R>& a, int k) {
    if (a.valuation() < k && !a.is_zero())
        throw std::domain_error("shift_down: valuation too small");
    UniSeries<R> out(a.order(), a.sample());
    for (int i = k; i <= a.order(); ++i) out.c[i - k] = a.c[i];
    return out;
}

template <class R>
UniSeries<R> series_inv(const UniSeries<R>& f) {
    if (ring<R>::is_zero(f.c[0]))
        throw std::domain_error("series_inv: constant term is zero");
    int n = f.order();
    UniSeries<R> g(n, f.sample());
    R c0inv = ring<R>::inv(f.c[0]);
    g.c[0] = c0inv;
    for (int m = 1; m <= n; ++m) {
        R acc = ring<R>::zero(f.sample());
        for (int k = 1; k <= m; ++k)
            if (!ring<R>::is_zero(f.c[k])) acc = acc + f.c[k] * g.c[m - k];
        g.c[m] = -(c0inv * acc);
    }
    return g;
}

template <class R>
UniSeries<R> operator/(const UniSeries<R>& a, const UniSeries<R>& b) {
    return a * series_inv(b);
}

namespace detail {
// Square root of the constant term, or throw. Over Rat both numerator
// and denominator must be perfect squares; over ModP the root must be
// Hensel-liftable (p odd).
inline Rat const_sqrt(const Rat& c) {
    if (c < 0) throw std::domain_error("series_sqrt: negative constant term");
    Int n = numer(c), d = denom(c), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), 2) ||
        !mpz_root(rd.get_mpz_t(), d.get_mpz_t(), 2))
        throw std::domain_error("series_sqrt: constant term " + to_string(c) +
                                " is not a rational square");
    return rat(rn, rd);
}

inline ModP const_sqrt(const ModP& c) {
    if (c.p == 2)
        throw std::domain_error("series_sqrt: no Hensel lift mod 2");
    // p is small in every use of UniSeries<ModP>; a direct scan is fine.
    for (std::int64_t r = 0; r < c.p; ++r)
        if ((ModP(r, c.p) * ModP(r, c.p)) == c) return ModP(r, c.p);
    throw std::domain_error("series_sqrt: constant term is not a square mod " +
                            std::to_string(c.p));
}
}  // namespace detail

template <class R>
UniSeries<R> series_sqrt(const UniSeries<R>& f) {
    R r0 = detail::const_sqrt(f.c[0]);
    if (ring<R>::is_zero(r0)) throw std::domain_error("series_sqrt: zero constant term");
    int n = f.order();
    UniSeries<R> g(n, f.sample());
    g.c[0] = r0;
    R half = ring<R>::inv(r0 + r0);
    for (int m = 1; m <= n; ++m) {
        R acc = f.c[m];
        for (int k = 1; k < m; ++k) acc = acc - g.c[k] * g.c[m - k];
        g.c[m] = half * acc;
    }
    return g;
}

// exp(f) with f(0) = 0, via g' = f' g.
template <class R>
UniSeries<R> series_exp(const UniSeries<R>& f) {
    if (!ring<R>::is_zero(f.c[0]))
        throw std::domain_error("series_exp: constant term must vanish");
    int n = f.order();
    UniSeries<R> g(n, f.sample());
    g.c[0] = ring<R>::one(f.sample());
    for (int m = 1; m <= n; ++m) {
        R acc = ring<R>::zero(f.sample());
        for (int k = 1; k <= m; ++k) {
            if (ring<R>::is_zero(f.c[k])) continue;
            acc = acc + ring<R>::from_long(k, f.sample()) * f.c[k] * g.c[m - k];
        }
        g.c[m] = ring<R>::inv(ring<R>::from_long(m, f.sample())) * acc;
    }
    return g;
}

// log(f) with f(0) = 1, via (log f)' = f'/f.
template <class R>
UniSeries<R> series_log(const UniSeries<R>& f) {
    if (!(f.c[0] == ring<R>::one(f.sample())))
        throw std::domain_error("series_log: constant term must be 1");
    int n = f.order();
    UniSeries<R> dlog(n >= 1 ? n - 1 : 0, f.sample());
    for (int m = 0; m < n; ++m) dlog.c[m] = ring<R>::from_long(m + 1, f.sample()) * f.c[m + 1];
    UniSeries<R> q = dlog / f.truncated(std::max(n - 1, 0));
    UniSeries<R> g(n, f.sample());
    for (int m = 1; m <= n; ++m)
        g.c[m] = ring<R>::inv(ring<R>::from_long(m, f.sample())) * q.c[m - 1];
    return g;
}

template <class R>
UniSeries<R> derivative(const UniSeries<R>& f) {
    int n = f.order();
    UniSeries<R> out(n >= 1 ? n - 1 : 0, f.sample());
    for (int m = 1; m <= n; ++m) out.c[m - 1] = ring<R>::from_long(m, f.sample()) * f.c[m];
    return out;
}

// f(g) for val(g) >= 1, Horner from the top coefficient.
template <class R>
UniSeries<R> series_compose(const UniSeries<R>& f, const UniSeries<R>& g) {
    if (!ring<R>::is_zero(g.c[0]))
        throw std::domain_error("series_compose: inner series must vanish at 0");
    int n = std::min(f.order(), g.order());
    UniSeries<R> acc(n, f.sample());
    for (int k = f.order(); k >= 0; --k) {
        acc = acc * g.truncated(n);
        acc.c[0] = acc.c[0] + f.c[k];
    }
    return acc;
}

// Compositional inverse of f = x + O(x^2): returns g with f(g(q)) = q.
template <class R>
UniSeries<R> series_reversion(const UniSeries<R>& f) {
    if (!ring<R>::is_zero(f.c[0]))
        throw std::domain_error("series_reversion: nonzero constant term");
    if (f.order() < 1 || !(f.c[1] == ring<R>::one(f.sample())))
        throw std::domain_error("series_reversion: linear coefficient must be 1");
    int n = f.order();
    const R like = f.sample();
    UniSeries<R> g = UniSeries<R>::x_power(1, n, like);
    UniSeries<R> q = UniSeries<R>::x_power(1, n, like);
    UniSeries<R> df = derivative(f);
    // f' padded to order n; the padding is multiplied only against the
    // O(x^2)-valuation error term, so it never reaches the result.
    UniSeries<R> dfp(n, like);
    for (int i = 0; i + 1 <= n; ++i) dfp.c[i] = df.c[i];
    // Newton: each pass doubles the number of correct coefficients.
    for (int correct = 1; correct < n; correct *= 2) {
        UniSeries<R> err = series_compose(f, g) - q;
        UniSeries<R> slope = series_compose(dfp, g);
        g = (g - err * series_inv(slope)).truncated(n);
    }
    return g;
}

template <class R>
UniSeries<R> hadamard(const UniSeries<R>& a, const UniSeries<R>& b) {
    int n = std::min(a.order(), b.order());
    UniSeries<R> out(n, a.sample());
    for (int i = 0; i <= n; ++i) out.c[i] = a.c[i] * b.c[i];
    return out;
}

template <class R>
bool agree_to(const UniSeries<R>& a, const UniSeries<R>& b, int n) {
    if (a.order() < n || b.order() < n) return false;
    for (int i = 0; i <= n; ++i)
        if (!(a.c[i] == b.c[i])) return false;
    return true;
}

// --- rational powers, Rat coefficients only ----------------------------

// Exact k-th root of a rational, or throw.
inline Rat rat_root(const Rat& c, unsigned long k) {
    if (c == 0) return Rat(0);
    if (c < 0 && k % 2 == 0)
        throw std::domain_error("rat_root: even root of a negative rational");
    Int n = numer(c), d = denom(c), rn, rd;
    bool neg = n < 0;
    Int an = abs(n);
    if (!mpz_root(rn.get_mpz_t(), an.get_mpz_t(), k) ||
        !mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k))
        throw std::domain_error("rat_root: " + to_string(c) + " has no exact " +
                                std::to_string(k) + "-th root");
    if (neg) rn = -rn;
    return rat(rn, rd);
}

// f^e for rational e; the constant term must admit an exact rational
// e-th power (this is how the algebraic prefactors of the modular-form
// identities are expanded while staying over Q).
inline UniSeries<Rat> series_pow(const UniSeries<Rat>& f, const Rat& e) {
    Rat c0 = f.c[0];
    if (c0 == 0) throw std::domain_error("series_pow: zero constant term");
    long p = (long)numer(e).get_si();
    unsigned long q = denom(e).get_ui();
    Rat r0 = pow_rat(rat_root(c0, q), p);
    UniSeries<Rat> u = ring<Rat>::inv(c0) * f;  // 1 + O(x)
    return r0 * series_exp(e * series_log(u));
}

// --- pullbacks ----------------------------------------------------------

// p(x) = lambda * x^r * A(x) with A(0) = 1; the shape every pullback of
// interest takes near the origin.
struct PullbackSpec {
    Rat lambda = Rat(1);
    int r = 1;
    std::vector<Rat> alpha;  // A(x) = 1 + alpha[0] x + alpha[1] x^2 + ...

    UniSeries<Rat> to_series(int order) const {
        if (r < 1) throw std::domain_error("PullbackSpec: exponent r must be >= 1");
        UniSeries<Rat> A(order);
        A.c[0] = Rat(1);
        for (int i = 0; i < (int)alpha.size() && i + 1 <= order; ++i) A.c[i + 1] = alpha[i];
        return lambda * shift_up(A, r);
    }
};

inline UniSeries<Rat> series_compose(const UniSeries<Rat>& f, const PullbackSpec& p) {
    return series_compose(f, p.to_series(f.order()));
}

}  // namespace diagon

#include <random>

#include "diagon/combinat.hpp"
#include "diagon/series.hpp"
#include "doctest.h"

using namespace diagon;

namespace {

UniSeries<Rat> geometric(int n) {  // 1/(1-x)
    UniSeries<Rat> f(n);
    for (int i = 0; i <= n; ++i) f.c[i] = 1;
    return f;
}

UniSeries<Rat> hypergeom_series(const HypergeomCoeffSpec& spec, int n) {
    UniSeries<Rat> f(n);
    Rat rho(1);
    for (int k = 0; k <= n; ++k) {
        f.c[k] = rho;
        rho *= spec.term_ratio(k);
    }
    return f;
}

UniSeries<Rat> random_series(std::mt19937& rng, int n, Rat c0) {
    std::uniform_int_distribution<long> d(-20, 20), e(1, 7);
    UniSeries<Rat> f(n);
    f.c[0] = c0;
    for (int i = 1; i <= n; ++i) f.c[i] = rat(d(rng), e(rng));
    return f;
}

}  // namespace

TEST_CASE("inverse, sqrt, exp, log on printed cases") {
    UniSeries<Rat> one_minus_x(8);
    one_minus_x.c[0] = 1;
    one_minus_x.c[1] = -1;
    CHECK(agree_to(series_inv(one_minus_x), geometric(8), 8));

    UniSeries<Rat> f(6);
    f.c[0] = 1; f.c[1] = -4;
    auto s = series_sqrt(f);
    CHECK(s.c[0] == 1);
    CHECK(s.c[1] == -2);
    CHECK(s.c[2] == -2);
    CHECK(s.c[3] == -4);
    CHECK(agree_to(s * s, f, 6));

    UniSeries<Rat> onepx(6);
    onepx.c[0] = 1; onepx.c[1] = 1;
    CHECK(agree_to(series_exp(series_log(onepx)), onepx, 6));

    CHECK_THROWS(series_inv(shift_up(geometric(4), 1)));
    CHECK_THROWS(series_exp(onepx));           // nonzero constant term
    CHECK_THROWS(series_log(Rat(2) * onepx));  // constant term != 1
}

TEST_CASE("round-trip properties on random series") {
    std::mt19937 rng(7321);
    for (int i = 0; i < 100; ++i) {
        auto f = random_series(rng, 10, rat(1 + (i % 5)));
        CHECK(agree_to(f * series_inv(f), UniSeries<Rat>::constant(Rat(1), 10), 10));
        auto sq = random_series(rng, 10, Rat(1));
        CHECK(agree_to(series_sqrt(sq * sq), sq, 10));
        auto u = random_series(rng, 10, Rat(1));
        CHECK(agree_to(series_exp(series_log(u)), u, 10));
    }
}

TEST_CASE("hadamard products") {
    // (1-4x)^(-1/2) * (1-4x)^(-1/2) coefficient-wise: central binomials squared
    UniSeries<Rat> f(5);
    f.c[0] = 1; f.c[1] = -4;
    auto g = series_pow(f, rat(-1, 2));
    auto h = hadamard(g, g);
    std::vector<long> want = {1, 4, 36, 400, 4900, 63504};
    for (int i = 0; i <= 5; ++i) CHECK(h.c[i] == want[i]);

    CHECK(agree_to(hadamard(h, geometric(5)), h, 5));  // identity element

    // triple Hadamard power of (1-x)^(-1/2) = 3F2([1/2,1/2,1/2],[1,1]; x)
    UniSeries<Rat> k(8);
    k.c[0] = 1; k.c[1] = -1;
    auto r = series_pow(k, rat(-1, 2));
    auto triple = hadamard(hadamard(r, r), r);
    HypergeomCoeffSpec h3({rat(1, 2), rat(1, 2), rat(1, 2)}, {rat(1), rat(1)}, rat(1));
    CHECK(agree_to(triple, hypergeom_series(h3, 8), 8));
}

TEST_CASE("composition with pullbacks") {
    // identity pullback
    PullbackSpec id;
    auto x = UniSeries<Rat>::x_power(1, 6, Rat());
    CHECK(agree_to(series_compose(x, id), x, 6));
    CHECK_THROWS(PullbackSpec{Rat(1), 0, {}}.to_series(4));

    // 4F3([1/2,1/2,1/2,1/2],[1,1,1]; 256 x / (1 + c1 x)), integer c1
    for (long c1 : {-3L, 0L, 5L}) {
        HypergeomCoeffSpec f43({rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)},
                               {rat(1), rat(1), rat(1)}, rat(256));
        auto base = hypergeom_series(f43, 8);
        UniSeries<Rat> den(8);
        den.c[0] = 1; den.c[1] = c1;
        auto inner = shift_up(series_inv(den), 1);  // x/(1+c1 x)
        auto composed = series_compose(base, inner);
        CHECK(composed.c[0] == 1);
        CHECK(composed.c[1] == 16);
        CHECK(composed.c[2] == rat(16) * rat(81 - c1));
        CHECK(composed.c[3] == rat(16) * (rat(10000) + rat(c1 * c1) - rat(162) * rat(c1)));
    }

    // prefactored level-2 form: (1+256x)^(-1/4) 2F1([1/12,5/12],[1]; 1728x/(1+256x)^3)
    int N = 9;
    HypergeomCoeffSpec f21({rat(1, 12), rat(5, 12)}, {rat(1)}, rat(1));
    auto kernel = hypergeom_series(f21, N);
    UniSeries<Rat> u(N);
    u.c[0] = 1; u.c[1] = 256;
    auto pull = shift_up(Rat(1728) * series_inv(u * u * u), 1);
    auto lhs = series_pow(u, rat(-1, 4)) * series_compose(kernel, pull);
    std::vector<long> want = {1, -4, 100, -3600, 152100, -7033104,
                              344622096, -17582760000L, 924193822500L, -49701090010000L};
    for (int i = 0; i <= N; ++i) CHECK(lhs.c[i] == want[i]);
}

TEST_CASE("reversion") {
    auto x = UniSeries<Rat>::x_power(1, 8, Rat());
    CHECK(agree_to(series_reversion(x), x, 8));

    UniSeries<Rat> f(3);
    f.c[0] = 0; f.c[1] = 1; f.c[2] = 64; f.c[3] = 7072;
    auto g = series_reversion(f);
    CHECK(g.c[1] == 1);
    CHECK(g.c[2] == -64);
    CHECK(g.c[3] == 1120);

    std::mt19937 rng(99);
    std::uniform_int_distribution<long> d(-9, 9);
    for (int i = 0; i < 20; ++i) {
        UniSeries<Rat> h(10);
        h.c[1] = 1;
        for (int k = 2; k <= 10; ++k) h.c[k] = d(rng);
        auto rev = series_reversion(h);
        CHECK(agree_to(series_reversion(rev), h, 10));
        CHECK(agree_to(series_compose(h, rev),
                       UniSeries<Rat>::x_power(1, 10, Rat()), 10));
    }

    UniSeries<Rat> bad(4);
    bad.c[1] = 2;
    CHECK_THROWS(series_reversion(bad));
}

TEST_CASE("series over a prime field") {
    int p = 7;
    UniSeries<ModP> f(10, ModP::zero(p));
    f.c[0] = ModP(1, p);
    f.c[1] = ModP(-1, p);
    auto g = series_inv(f);
    for (int i = 0; i <= 10; ++i) CHECK(g.c[i].v == 1);

    // 4^2 = 2 mod 7: sqrt of constant 2 exists and Hensel-lifts
    UniSeries<ModP> h(6, ModP::zero(p));
    h.c[0] = ModP(2, p);
    h.c[1] = ModP(5, p);
    auto s = series_sqrt(h);
    CHECK(agree_to(s * s, h, 6));

    UniSeries<ModP> m2(3, ModP::zero(2));
    m2.c[0] = ModP(1, 2);
    CHECK_THROWS(series_sqrt(m2));  // no Hensel lift mod 2
}

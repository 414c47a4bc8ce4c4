#include <random>

#include "diagon/combinat.hpp"
#include "diagon/diagonal.hpp"
#include "diagon/parser.hpp"
#include "doctest.h"

using namespace diagon;

namespace {

UniSeries<Rat> hypergeom_series(const HypergeomCoeffSpec& spec, int n) {
    UniSeries<Rat> f(n);
    Rat rho(1);
    for (int k = 0; k <= n; ++k) {
        f.c[k] = rho;
        rho *= spec.term_ratio(k);
    }
    return f;
}

RationalFunctionRep ratfun(const std::string& text) { return to_ratfun(parse(text)); }

}  // namespace

TEST_CASE("two-variable kernels: central binomials") {
    auto R = ratfun("1/(1-z1-z2)");
    auto d = diagonal(R, 8);
    for (int m = 0; m <= 8; ++m) CHECK(d.c[m] == binom(2 * m, m));

    // brute-force multivariate expansion agrees
    auto F = expand_multiseries(R, 6);
    CHECK(agree_to(diag_extract(F), d.truncated(6), 6));
}

TEST_CASE("three-variable kernels from the diagonal corpus") {
    auto R = ratfun("1/(1-z2-z3-z1*z2-z1*z3)");
    auto d = diagonal(R, 5);
    std::vector<long> want = {1, 4, 36, 400, 4900, 63504};
    for (int m = 0; m <= 5; ++m) CHECK(d.c[m] == want[m]);

    // the seven-term kernel equals 1/(1-z) * 2F1([1/3,2/3],[1]; 54 z/(1-z)^3)
    auto R2 = ratfun("1/(1-z1-z2-z3-z1*z2-z2*z3-z3*z1-z1*z2*z3)");
    int N = 10;
    auto d2 = diagonal(R2, N);
    HypergeomCoeffSpec spec({rat(1, 3), rat(2, 3)}, {rat(1)}, rat(54));
    auto kernel = hypergeom_series(spec, N);
    UniSeries<Rat> omz(N);
    omz.c[0] = 1; omz.c[1] = -1;
    auto inner = shift_up(series_inv(omz * omz * omz), 1);  // z/(1-z)^3
    auto rhs = series_inv(omz) * series_compose(kernel, inner);
    CHECK(agree_to(d2, rhs, N));
}

TEST_CASE("four-variable binomial-cube kernel") {
    auto R = ratfun(
        "1/((1-z0*(1+z1)*(1+z2)*(1+z3))*(1-z0*z1*z2*z3*(1+z1)*(1+z2)*(1+z3)))");
    auto d = diagonal(R, 6);
    std::vector<long> want = {1, 2, 10, 56, 346, 2252, 15184};
    for (int m = 0; m <= 6; ++m) CHECK(d.c[m] == want[m]);
}

TEST_CASE("diagonal of separated product equals Hadamard product") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<long> d(-4, 4);
    for (int rep = 0; rep < 6; ++rep) {
        long a1 = d(rng), b1 = d(rng), a2 = d(rng), b2 = d(rng), a3 = d(rng);
        auto f1 = [&](int N) {
            UniSeries<Rat> q(N);
            q.c[0] = 1;
            if (N >= 1) q.c[1] = -a1;
            if (N >= 2) q.c[2] = -b1;
            return series_inv(q);
        };
        auto f2 = [&](int N) {
            UniSeries<Rat> q(N);
            q.c[0] = 1;
            if (N >= 1) q.c[1] = -a2;
            if (N >= 2) q.c[2] = -b2;
            return series_inv(q);
        };
        auto f3 = [&](int N) {
            UniSeries<Rat> q(N);
            q.c[0] = 1;
            if (N >= 1) q.c[1] = -a3;
            return series_inv(q);
        };
        std::string s1 = "1/(1-(" + std::to_string(a1) + ")*x1-(" + std::to_string(b1) + ")*x1^2)";
        std::string s2 = "1/(1-(" + std::to_string(a2) + ")*x2-(" + std::to_string(b2) + ")*x2^2)";
        std::string s3 = "1/(1-(" + std::to_string(a3) + ")*x3)";

        auto R2 = to_ratfun(parse(s1 + "*" + s2), {"x1", "x2"});
        CHECK(agree_to(diagonal(R2, 7), hadamard(f1(7), f2(7)), 7));

        auto R3 = to_ratfun(parse(s1 + "*" + s2 + "*" + s3), {"x1", "x2", "x3"});
        CHECK(agree_to(diagonal(R3, 6), hadamard(hadamard(f1(6), f2(6)), f3(6)), 6));
    }
}

TEST_CASE("diagonals of integer kernels with unit constant stay integral") {
    std::mt19937 rng(515151);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int rep = 0; rep < 8; ++rep) {
        MultiPoly<Rat> q(std::vector<std::string>{"z1", "z2", "z3"});
        q.add_term({0, 0, 0}, Rat(1));
        q.add_term({1, 0, 0}, Rat(d(rng)));
        q.add_term({0, 1, 0}, Rat(d(rng)));
        q.add_term({0, 0, 1}, Rat(d(rng)));
        q.add_term({1, 1, 0}, Rat(d(rng)));
        q.add_term({1, 1, 1}, Rat(d(rng)));
        RationalFunctionRep R({"z1", "z2", "z3"},
                              MultiPoly<Rat>::constant(Rat(1), {"z1", "z2", "z3"}), {q});
        auto diag = diagonal(R, 8);
        for (int m = 0; m <= 8; ++m) CHECK(is_integer(diag.c[m]));
    }
}

TEST_CASE("rejects denominators vanishing at the origin") {
    CHECK_THROWS(ratfun("1/(z1+z2)"));
}

TEST_CASE("Furstenberg embedding of algebraic roots") {
    // root of y - x = 0
    auto P1 = to_multipoly(parse("y-x"), {"x", "y"});
    auto R1 = furstenberg_embed(P1);
    auto d1 = diagonal(R1, 6);
    CHECK(agree_to(d1, UniSeries<Rat>::x_power(1, 6, Rat()), 6));

    // root of y - x - y^2: Newton oracle
    auto P2 = to_multipoly(parse("y-x-y^2"), {"x", "y"});
    auto root = algebraic_root_series(P2, 8);
    CHECK(root.c[1] == 1);
    CHECK(root.c[2] == 1);
    CHECK(root.c[3] == 2);
    CHECK(root.c[4] == 5);
    CHECK(agree_to(diagonal(furstenberg_embed(P2), 8), root, 8));

    // degenerate tangency P_y(0,0) = 0 is rejected
    auto P3 = to_multipoly(parse("(1-x)*y^2-x^2"), {"x", "y"});
    CHECK_THROWS(furstenberg_embed(P3));
    // P(0,0) != 0 is rejected
    CHECK_THROWS(furstenberg_embed(to_multipoly(parse("1+y-x"), {"x", "y"})));
}

TEST_CASE("one function, many representations: x/sqrt(1-x)") {
    // x/sqrt(1-x) = Diag((2xy - cx + cy)/(x + y + 2)) for any rational c
    UniSeries<Rat> omx(8);
    omx.c[0] = 1; omx.c[1] = -1;
    auto target = shift_up(series_pow(omx, rat(-1, 2)), 1);
    for (long c : {0L, 1L, 5L}) {
        std::string s = "(2*x*y-(" + std::to_string(c) + ")*x+(" + std::to_string(c) +
                        ")*y)/(x+y+2)";
        auto R = to_ratfun(parse(s), {"x", "y"});
        CHECK(verify_representation(R, target, 8));
    }
}

TEST_CASE("binomial sums to rational functions") {
    auto cube = to_binsum(parse("sum(k=0..n, binom(n,k)^3)"));
    CHECK(cube.coefficient(0) == 1);
    CHECK(cube.coefficient(3) == 56);
    auto R = binsum_to_ratfun(cube);
    CHECK(R.vars.size() == 4);

    // exact kernel shape: the two factors of the residue construction
    auto expect = ratfun(
        "1/((1-z0*z1*z2*z3*(1+z1)*(1+z2)*(1+z3))*(1-z0*(1+z1)*(1+z2)*(1+z3)))");
    CHECK(R.denominator() == expect.denominator());

    UniSeries<Rat> target(6);
    for (int n = 0; n <= 6; ++n) target.c[n] = Rat(cube.coefficient(n));
    CHECK(verify_representation(R, target, 6));

    // alternative: sum binom(n,k)^2 binom(2k,n) has the same generating function
    auto alt = to_binsum(parse("sum(k=0..n, binom(n,k)^2*binom(2*k,n))"));
    for (int n = 0; n <= 12; ++n) CHECK(alt.coefficient(n) == cube.coefficient(n));
    auto R2 = binsum_to_ratfun(alt);
    auto expect2 = ratfun(
        "1/((1-z0*(1+z1)*(1+z2)*(1+z3)^2)*(1-z0*z1*z2*(1+z1)*(1+z2)))");
    CHECK(R2.denominator() == expect2.denominator());
    CHECK(verify_representation(R2, target, 6));

    // unsupported shapes are reported
    CHECK_THROWS(binsum_to_ratfun(to_binsum(parse("sum(k=0..n, binom(n+k,n+k)^2)"))));
}

TEST_CASE("five representations of the Apery generating function") {
    auto apery = to_binsum(parse("sum(k=0..n, binom(n,k)^2*binom(n+k,k)^2)"));
    std::vector<long> first5 = {1, 5, 73, 1445, 33001};
    UniSeries<Rat> target(8);
    for (int n = 0; n <= 8; ++n) target.c[n] = Rat(apery.coefficient(n));
    for (int n = 0; n <= 4; ++n) CHECK(target.c[n] == first5[n]);

    std::vector<std::string> reps = {
        // five variables
        "1/((1-z0)*((1-z1)*(1-z2)*(1-z3)*(1-z4)-z0*z1*z2))",
        "1/((1-z1*z2*z3*z4)*((1-z3)*(1-z4)-z0*(1+z1)*(1+z2)))",
        // six variables
        "1/((1-z0*z1)*(1-z2-z3-z0*z2*z3)*(1-z4-z5-z1*z4*z5))",
        // eight variables
        "1/((1-z4*z5*z6*z7)*(1-z0*(1+z4))*(1-z1*(1+z5))*(1-z2-z6)*(1-z3-z7))",
    };
    for (const auto& s : reps) CHECK(verify_representation(to_ratfun(parse(s)), target, 8));

    // plus the representation built from the binomial sum itself
    auto R = binsum_to_ratfun(apery);
    CHECK(R.vars.size() == 5);
    auto expect = ratfun(
        "1/((1-z0*z1*z2*z3*z4*(1+z1)*(1+z2)*(1+z3)*(1+z4))"
        "*(1-z0*(1+z1)*(1+z2)*(1+z3)^2*(1+z4)^2))");
    CHECK(R.denominator() == expect.denominator());
    CHECK(verify_representation(R, target, 8));
}

TEST_CASE("negative control: perturbed kernel fails verification") {
    auto good = ratfun(
        "1/((1-z0*(1+z1)*(1+z2)*(1+z3))*(1-z0*z1*z2*z3*(1+z1)*(1+z2)*(1+z3)))");
    auto bad = ratfun(
        "1/((1-z0*(1+z1)*(1+z2)*(1+z3))*(1+z0*z1*z2*z3*(1+z1)*(1+z2)*(1+z3)))");
    auto cube = to_binsum(parse("sum(k=0..n, binom(n,k)^3)"));
    UniSeries<Rat> target(6);
    for (int n = 0; n <= 6; ++n) target.c[n] = Rat(cube.coefficient(n));
    CHECK(verify_representation(good, target, 6));
    CHECK(!verify_representation(bad, target, 6));
}

TEST_CASE("multiseries extraction") {
    auto R = ratfun("1/(1-z1-z2)");
    auto F = expand_multiseries(R, 5);
    auto d = diag_extract(F);
    std::vector<long> want = {1, 2, 6, 20, 70, 252};
    for (int m = 0; m <= 5; ++m) CHECK(d.c[m] == want[m]);
    CHECK_THROWS(diag_extract(F, 9));  // beyond the stored bound

    MultiSeries constant;
    constant.vars = {"z1"};
    constant.bound = 4;
    constant.add({0}, Rat(1));
    auto dc = diag_extract(constant);
    CHECK(dc.c[0] == 1);
    for (int m = 1; m <= 4; ++m) CHECK(dc.c[m] == 0);
}

#include <doctest.h>

#include "qsph/exactq.hpp"

#include <random>

using namespace qsph;

namespace {

// Independent oracle: compare rational functions by exact evaluation at
// several rational points.
bool sameByEval(const RatFun& a, const RatFun& b) {
    const BigRat pts[] = {BigRat(2), BigRat(3, 2), BigRat(-5, 3), BigRat(7), BigRat(-11, 4)};
    for (const auto& p : pts) {
        auto va = a.evalRat(p), vb = b.evalRat(p);
        if (!va || !vb) continue;
        if (*va != *vb) return false;
    }
    return true;
}

RatFun randomLaurentRF(std::mt19937& rng) {
    std::uniform_int_distribution<int> expd(-4, 4), coeffd(-5, 5), termsd(1, 4);
    LaurentPoly p;
    int terms = termsd(rng);
    for (int t = 0; t < terms; ++t)
        p = p + LaurentPoly::monomial(BigInt(coeffd(rng)), expd(rng));
    return RatFun::fromLaurent(p);
}

RatFun randomRF(std::mt19937& rng) {
    RatFun n = randomLaurentRF(rng);
    RatFun d = randomLaurentRF(rng);
    while (d.isZero()) d = randomLaurentRF(rng);
    return n / d;
}

// Random element of A_infinity: numerator degree <= denominator degree.
RatFun randomAInf(std::mt19937& rng) {
    std::uniform_int_distribution<int> cd(-4, 4), degd(0, 3);
    int dd = degd(rng);
    IntPoly den = IntPoly::monomial(BigInt(1), dd);
    for (int k = 0; k < dd; ++k) den = den + IntPoly::monomial(BigInt(cd(rng)), k);
    IntPoly num;
    std::uniform_int_distribution<int> nd(0, dd);
    int dn = nd(rng);
    for (int k = 0; k <= dn; ++k) num = num + IntPoly::monomial(BigInt(cd(rng)), k);
    if (num.isZero()) num = IntPoly(1);
    return RatFun(num, den);
}

}  // namespace

TEST_CASE("IntPoly gcd and exact division") {
    IntPoly q4m1 = IntPoly::monomial(BigInt(1), 4) - IntPoly(1);
    IntPoly q2m1 = IntPoly::monomial(BigInt(1), 2) - IntPoly(1);
    IntPoly g = IntPoly::gcd(q4m1, q2m1);
    CHECK(g == q2m1);
    IntPoly quo = IntPoly::divExact(q4m1, q2m1);
    CHECK(quo == IntPoly::monomial(BigInt(1), 2) + IntPoly(1));
    // Content handling.
    IntPoly a = q4m1.mulScalar(BigInt(2));
    IntPoly b = q2m1.mulScalar(BigInt(4));
    CHECK(IntPoly::gcd(a, b) == q2m1.mulScalar(BigInt(2)));
}

TEST_CASE("RatFun canonical form and equality") {
    RatFun f(IntPoly::monomial(BigInt(1), 4) - IntPoly(1),
             IntPoly::monomial(BigInt(1), 2) - IntPoly(1));
    auto l = f.asLaurent();
    REQUIRE(l.has_value());
    CHECK(l->str() == "q^2 + 1");
    RatFun g(IntPoly(1), IntPoly::monomial(BigInt(1), 1) + IntPoly(1));
    CHECK_FALSE(g.asLaurent().has_value());
    CHECK(quantumInt(5, 1).isALattice());
}

TEST_CASE("bar involution") {
    // q^2 + 1 -> q^-2 + 1
    RatFun f = RatFun::q(2) + RatFun(1);
    RatFun b = f.bar();
    CHECK(b == RatFun::q(-2) + RatFun(1));
    // [n]_i is bar-symmetric.
    for (int n : {-5, -2, 0, 1, 3, 7})
        for (int d : {1, 2, 3}) CHECK(quantumInt(n, d).bar() == quantumInt(n, d));
    // (q^3 - q)/(q + 2): check by independent substitution oracle.
    RatFun h(IntPoly::monomial(BigInt(1), 3) - IntPoly::monomial(BigInt(1), 1),
             IntPoly::monomial(BigInt(1), 1) + IntPoly(2));
    RatFun hb = h.bar();
    // Oracle: hb(x) must equal h(1/x) at sample points.
    for (const BigRat& x : {BigRat(2), BigRat(3, 2), BigRat(-7, 5)}) {
        auto lhs = hb.evalRat(x);
        auto rhs = h.evalRat(BigRat(1) / x);
        REQUIRE(lhs.has_value());
        REQUIRE(rhs.has_value());
        CHECK(*lhs == *rhs);
    }
    // bar is an involution on random samples.
    std::mt19937 rng(12345);
    for (int t = 0; t < 50; ++t) {
        RatFun r = randomRF(rng);
        CHECK(r.bar().bar() == r);
    }
}

TEST_CASE("quantum integers, factorials, binomials") {
    CHECK(quantumInt(0, 1).isZero());
    CHECK(quantumInt(3, 1) == RatFun::q(2) + RatFun(1) + RatFun::q(-2));
    // [-n] = -[n], verified by direct expansion.
    CHECK(quantumInt(-2, 2) == -(RatFun::q(2) + RatFun::q(-2)));
    CHECK(quantumFactorial(0, 1).isOne());
    CHECK(quantumFactorial(3, 1) ==
          (RatFun::q(1) + RatFun::q(-1)) * (RatFun::q(2) + RatFun(1) + RatFun::q(-2)));
    RatFun b42 = quantumBinomial(4, 2, 1);
    CHECK(b42 == RatFun::q(4) + RatFun::q(2) + RatFun(2) + RatFun::q(-2) + RatFun::q(-4));
    // [2][n] = [n+1] + [n-1] for |n| <= 50 and d in {1,2,3}.
    for (int d : {1, 2, 3})
        for (int n = -50; n <= 50; ++n)
            CHECK(quantumInt(2, d) * quantumInt(n, d) ==
                  quantumInt(n + 1, d) + quantumInt(n - 1, d));
    // Binomials are in A and bar-fixed for n <= 12.
    for (int n = 0; n <= 12; ++n)
        for (int k = 0; k <= n; ++k) {
            RatFun bq = quantumBinomial(n, k, 1);
            CHECK(bq.isALattice());
            CHECK(bq.bar() == bq);
        }
}

TEST_CASE("regularity at infinity") {
    RatFun f = RatFun::q(-1);
    CHECK(f.isRegularAtInfinity());
    CHECK(f.isStrictlySmallAtInfinity());
    CHECK(f.evalAtInfinity() == 0);

    RatFun g(IntPoly::monomial(BigInt(2), 1) + IntPoly(1),
             IntPoly::monomial(BigInt(1), 1) + IntPoly(3));
    CHECK(g.isRegularAtInfinity());
    CHECK_FALSE(g.isStrictlySmallAtInfinity());
    CHECK(g.evalAtInfinity() == 2);

    // [3]/[4]: strictly small, value 0 (numerator degree 5, denominator 6).
    RatFun h = quantumInt(3, 1) / quantumInt(4, 1);
    CHECK(h.isRegularAtInfinity());
    CHECK(h.isStrictlySmallAtInfinity());
    CHECK(h.evalAtInfinity() == 0);

    RatFun pole = RatFun::q(3) / (RatFun::q(1) + RatFun(1));
    CHECK_FALSE(pole.isRegularAtInfinity());
    CHECK_THROWS_AS(pole.evalAtInfinity(), PoleAtInfinity);
}

TEST_CASE("A-infinity closure and evaluation homomorphism") {
    std::mt19937 rng(777);
    for (int t = 0; t < 60; ++t) {
        RatFun f = randomAInf(rng), g = randomAInf(rng);
        RatFun s = f + g, p = f * g;
        CHECK(s.isRegularAtInfinity());
        CHECK(p.isRegularAtInfinity());
        CHECK(s.evalAtInfinity() == f.evalAtInfinity() + g.evalAtInfinity());
        CHECK(p.evalAtInfinity() == f.evalAtInfinity() * g.evalAtInfinity());
        // q^-1 A_inf is an ideal.
        RatFun small = f * RatFun::q(-1);
        bool prodSmall = (small * g).isZero() || (small * g).isStrictlySmallAtInfinity();
        CHECK(prodSmall);
        RatFun sum2 = small + g * RatFun::q(-1);
        bool sumSmall = sum2.isZero() || sum2.isStrictlySmallAtInfinity();
        CHECK(sumSmall);
    }
}

TEST_CASE("Laurent membership witness") {
    CHECK(quantumInt(5, 1).asLaurent().has_value());
    CHECK_FALSE((RatFun(1) / (RatFun::q(1) + RatFun(1))).asLaurent().has_value());
    RatFun f(IntPoly::monomial(BigInt(1), 4) - IntPoly(1),
             IntPoly::monomial(BigInt(1), 2) - IntPoly(1));
    auto l = f.asLaurent();
    REQUIRE(l.has_value());
    CHECK(*l == LaurentPoly::monomial(BigInt(1), 2) + LaurentPoly::fromInt(1));
}

TEST_CASE("Laurent serialization round trip") {
    std::mt19937 rng(99);
    for (int t = 0; t < 40; ++t) {
        LaurentPoly p;
        std::uniform_int_distribution<int> expd(-6, 6), coeffd(-9, 9);
        for (int k = 0; k < 4; ++k) p = p + LaurentPoly::monomial(BigInt(coeffd(rng)), expd(rng));
        LaurentPoly back = LaurentPoly::parse(p.str());
        CHECK(back == p);
    }
    CHECK(LaurentPoly::parse("0").isZero());
    CHECK(LaurentPoly::parse("q^-2 + 1") ==
          LaurentPoly::monomial(BigInt(1), -2) + LaurentPoly::fromInt(1));
    CHECK(LaurentPoly::parse("-3*q^2 - q") ==
          LaurentPoly::monomial(BigInt(-3), 2) + LaurentPoly::monomial(BigInt(-1), 1));
}

TEST_CASE("unit detection in A") {
    CHECK(RatFun::q(5).isUnitOfA());
    CHECK((-RatFun::q(-3)).isUnitOfA());
    CHECK_FALSE(RatFun(2).isUnitOfA());
    CHECK_FALSE((RatFun::q(1) + RatFun(1)).isUnitOfA());
}

TEST_CASE("random arithmetic consistency against evaluation oracle") {
    std::mt19937 rng(2024);
    for (int t = 0; t < 40; ++t) {
        RatFun a = randomRF(rng), b = randomRF(rng);
        CHECK(sameByEval(a + b, b + a));
        CHECK(sameByEval((a + b) * a, a * a + b * a));
        if (!b.isZero()) CHECK(sameByEval((a / b) * b, a));
    }
}

#include <doctest.h>

#include "qsph/cartan.hpp"

using namespace qsph;

TEST_CASE("Cartan constructors and validation") {
    auto a2 = CartanDatum::fromType("A2");
    CHECK(a2.rank() == 2);
    CHECK(a2.a(0, 1) == -1);
    CHECK(a2.d(0) == 1);
    auto b2 = CartanDatum::fromType("B2");
    CHECK(b2.a(0, 1) == -1);
    CHECK(b2.a(1, 0) == -2);
    CHECK(b2.d(0) == 2);
    CHECK(b2.d(1) == 1);
    auto g2 = CartanDatum::fromType("G2");
    CHECK(g2.d(1) == 3);
    CHECK_THROWS_AS(CartanDatum({{2, -1}, {0, 2}}, {1, 1}), CartanError);
    CHECK_THROWS_AS(CartanDatum({{2, -1}, {-1, 2}}, {2, 2}), CartanError);  // gcd != 1
}

TEST_CASE("positive roots") {
    CHECK(CartanDatum::fromType("A2").positiveRoots().size() == 3);
    CHECK(CartanDatum::fromType("A3").positiveRoots().size() == 6);
    CHECK(CartanDatum::fromType("B2").positiveRoots().size() == 4);
    CHECK(CartanDatum::fromType("D4").positiveRoots().size() == 12);
    CHECK(CartanDatum::fromType("G2").positiveRoots().size() == 6);
    CHECK(CartanDatum::fromType("E6").positiveRoots().size() == 36);
    CHECK(CartanDatum::fromType("E7").positiveRoots().size() == 63);
    CHECK(CartanDatum::fromType("F4").positiveRoots().size() == 24);
}

TEST_CASE("Weyl dimension oracle") {
    auto a1 = CartanDatum::fromType("A1");
    for (int n = 0; n <= 8; ++n) CHECK(a1.weylDim({n}) == n + 1);
    auto a2 = CartanDatum::fromType("A2");
    CHECK(a2.weylDim({1, 0}) == 3);
    CHECK(a2.weylDim({0, 1}) == 3);
    CHECK(a2.weylDim({1, 1}) == 8);
    CHECK(a2.weylDim({2, 2}) == 27);
    auto a3 = CartanDatum::fromType("A3");
    CHECK(a3.weylDim({1, 0, 0}) == 4);
    CHECK(a3.weylDim({0, 1, 0}) == 6);
    CHECK(a3.weylDim({1, 0, 1}) == 15);
    CHECK(a3.weylDim({1, 1, 1}) == 64);
    auto b2 = CartanDatum::fromType("B2");
    CHECK(b2.weylDim({1, 0}) == 5);
    CHECK(b2.weylDim({0, 1}) == 4);
    auto g2 = CartanDatum::fromType("G2");
    CHECK(g2.weylDim({1, 0}) == 7);
}

TEST_CASE("reflections and longest words") {
    auto a2 = CartanDatum::fromType("A2");
    Weight w = {1, 0};
    Weight r = a2.reflect(0, w);
    CHECK(r == Weight{-1, 1});
    auto w0 = a2.longestWord();
    CHECK(w0.size() == 3);  // number of positive roots
    // w0 sends rho to -rho.
    Weight rho = {1, 1};
    CHECK(a2.applyWord(w0, rho) == Weight{-1, -1});
    auto a3 = CartanDatum::fromType("A3");
    CHECK(a3.longestWord().size() == 6);
    // Parabolic {1} (0-based {1}) of A3: longest word = s2 alone.
    auto wj = a3.longestWordOfParabolic({1});
    CHECK(wj == std::vector<int>{1});
}

TEST_CASE("dominance difference") {
    auto a2 = CartanDatum::fromType("A2");
    // alpha_1 = 2w1 - w2: lambda = (1,1), mu = lambda - alpha_1 = (-1, 2).
    auto d = a2.dominanceDiff({1, 1}, {-1, 2});
    REQUIRE(d.has_value());
    CHECK(*d == std::vector<int>{1, 0});
    CHECK_FALSE(a2.dominanceDiff({1, 0}, {0, 1}).has_value());
    CHECK(a2.heightFromTop({1, 1}, {0, 0}) == 2);  // rho = alpha1 + alpha2
}

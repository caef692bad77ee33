#include <doctest.h>

#include "qsph/linalg.hpp"

using namespace qsph;

TEST_CASE("SpanSolver insert/solve") {
    SpanSolver s;
    ModVec v1 = mvMake({{0, RatFun(1)}, {1, RatFun::q(1)}});
    ModVec v2 = mvMake({{1, RatFun(1)}, {2, RatFun(2)}});
    CHECK(s.insert(v1).has_value());
    CHECK(s.insert(v2).has_value());
    ModVec dep = mvAdd(mvScaled(v1, RatFun(3)), mvScaled(v2, RatFun::q(-2)));
    CHECK_FALSE(s.insert(dep).has_value());
    auto sol = s.solve(dep);
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == RatFun(3));
    CHECK((*sol)[1] == RatFun::q(-2));
    ModVec out = mvMake({{3, RatFun(1)}});
    CHECK_FALSE(s.solve(out).has_value());
}

TEST_CASE("kernelOfImages") {
    // Columns: c0 -> (1, 0), c1 -> (q, 0), c2 -> (0, 1).
    std::vector<ModVec> images = {
        mvMake({{0, RatFun(1)}}),
        mvMake({{0, RatFun::q(1)}}),
        mvMake({{1, RatFun(1)}}),
    };
    auto ker = kernelOfImages(images);
    REQUIRE(ker.size() == 1);
    // Kernel vector proportional to (q, -1, 0).
    const auto& k = ker[0];
    CHECK(k[2].isZero());
    CHECK(k[0] * RatFun(1) == -k[1] * RatFun::q(1));
    // Verify it really is in the kernel.
    ModVec acc;
    for (size_t j = 0; j < images.size(); ++j) mvAddScaled(acc, images[j], k[j]);
    CHECK(mvIsZero(acc));
}

TEST_CASE("denseSolve") {
    std::vector<std::vector<RatFun>> a = {{RatFun(1), RatFun::q(1)}, {RatFun(0), RatFun(1)}};
    std::vector<RatFun> b = {RatFun::q(2), RatFun(1)};
    auto x = denseSolve(a, b);
    REQUIRE(x.has_value());
    CHECK((*x)[1] == RatFun(1));
    CHECK((*x)[0] == RatFun::q(2) - RatFun::q(1));
}

TEST_CASE("DvrLattice membership and valuations") {
    DvrLattice lat;
    lat.addGenerator(mvMake({{0, RatFun(1)}}));
    lat.addGenerator(mvMake({{0, RatFun(1)}, {1, RatFun::q(-1)}}));
    lat.addGenerator(mvMake({{1, RatFun::q(-1)}}));
    lat.build();
    CHECK(lat.rank() == 2);
    // v = b0 + q^-1 b1-ish vectors.
    CHECK(lat.contains(mvMake({{0, RatFun(1)}})));
    CHECK(lat.contains(mvMake({{1, RatFun::q(-1)}})));
    CHECK(lat.contains(mvMake({{1, RatFun::q(-2)}})));
    CHECK_FALSE(lat.contains(mvMake({{1, RatFun(1)}})));  // q * (q^-1 b1) not allowed
    CHECK(lat.containsSmall(mvMake({{0, RatFun::q(-1)}})));
    CHECK_FALSE(lat.containsSmall(mvMake({{0, RatFun(1)}})));
}

TEST_CASE("DvrLattice picks minimal valuation pivots") {
    DvrLattice lat;
    // Generators q^-2 e0 and e0: lattice is A_inf * e0.
    lat.addGenerator(mvMake({{0, RatFun::q(-2)}}));
    lat.addGenerator(mvMake({{0, RatFun(1)}}));
    lat.build();
    CHECK(lat.rank() == 1);
    CHECK(lat.contains(mvMake({{0, RatFun(1)}})));
    CHECK_FALSE(lat.contains(mvMake({{0, RatFun::q(1)}})));
    CHECK(lat.pivotValuations() == std::vector<int>{0});
}

TEST_CASE("ALattice unit and divisor pivots") {
    RatFun half = RatFun(1) / (RatFun::q(1) + RatFun::q(-1));  // 1/[2]
    ALattice lat;
    lat.addGenerator(mvMake({{0, RatFun(1)}}));
    lat.addGenerator(mvMake({{1, half}}));
    lat.addGenerator(mvMake({{1, RatFun(1)}}));
    lat.build();
    CHECK(lat.complete());
    CHECK(lat.rank() == 2);
    // (1/[2]) e1 is a basis vector; e1 = [2] * it is inside.
    CHECK(lat.contains(mvMake({{1, RatFun(1)}})) == Decision::Yes);
    CHECK(lat.contains(mvMake({{1, half}})) == Decision::Yes);
    CHECK(lat.contains(mvMake({{1, half * half}})) == Decision::No);
    CHECK(lat.contains(mvMake({{0, half}})) == Decision::No);
    CHECK(lat.contains(mvMake({{0, -RatFun::q(7)}})) == Decision::Yes);
}

TEST_CASE("ALattice reports partial extraction honestly") {
    // Generators 2*e0 and [2]*e0: the A-span is the ideal (2, [2]) e0 which
    // has no single divisor generator; extraction must not claim a basis.
    ALattice lat;
    lat.addGenerator(mvMake({{0, RatFun(2)}}));
    lat.addGenerator(mvMake({{0, RatFun::q(1) + RatFun::q(-1)}}));
    lat.build();
    CHECK_FALSE(lat.complete());
    CHECK(lat.contains(mvMake({{0, RatFun(1)}})) == Decision::Undecided);
}

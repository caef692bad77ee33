// Benchmarks for the exact arithmetic kernels and the module pipeline.
#include <benchmark/benchmark.h>

#include "qsph/spherical.hpp"

using namespace qsph;

namespace {

std::shared_ptr<AdmissiblePair> aivA3() {
    return std::make_shared<AdmissiblePair>(CartanDatum::fromType("A3"), std::set<int>{1},
                                            std::vector<int>{2, 1, 0});
}

void BM_ratfun_mul(benchmark::State& state) {
    RatFun a = quantumFactorial(8, 1) / quantumInt(5, 1);
    RatFun b = quantumBinomial(10, 4, 1) + RatFun::q(-3);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_ratfun_mul);

void BM_ratfun_add_reduce(benchmark::State& state) {
    RatFun a = quantumInt(9, 1) / quantumInt(4, 1);
    RatFun b = quantumInt(7, 1) / quantumInt(6, 1);
    for (auto _ : state) benchmark::DoNotOptimize(a + b);
}
BENCHMARK(BM_ratfun_add_reduce);

void BM_poly_gcd(benchmark::State& state) {
    IntPoly a = (quantumFactorialLaurent(7, 1) * quantumIntLaurent(9, 1)).bar().isZero()
                    ? IntPoly(1)
                    : RatFun::fromLaurent(quantumFactorialLaurent(7, 1)).num();
    IntPoly b = RatFun::fromLaurent(quantumFactorialLaurent(5, 1) * quantumIntLaurent(11, 1)).num();
    for (auto _ : state) benchmark::DoNotOptimize(IntPoly::gcd(a, b));
}
BENCHMARK(BM_poly_gcd);

void BM_build_simple(benchmark::State& state) {
    auto cd = CartanDatum::fromType("A2");
    int a = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(WeightModule::buildSimple(cd, {a, a}, 3000));
}
BENCHMARK(BM_build_simple)->Arg(1)->Arg(2)->Arg(3);

void BM_kernel_ff(benchmark::State& state) {
    // Stacked eigen-system of the rank-one family on a chain module.
    auto ai = std::make_shared<AdmissiblePair>(CartanDatum::fromType("A1"), std::set<int>{},
                                               std::vector<int>{0});
    auto par = defaultParameters(*ai, 6);
    auto mod = WeightModule::buildSimple(ai->cartan(), {6});
    CoidealAction act(mod, ai, par);
    Character chi = characterChi(*ai, par, -7);
    std::vector<ModVec> images;
    for (int k = 0; k < mod->dim(); ++k) {
        ModVec img = act.applyB(0, ModVec{{k, RatFun(1)}});
        mvAddScaled(img, ModVec{{k, RatFun(1)}}, -chi.bValue.at(0));
        images.push_back(img);
    }
    for (auto _ : state) benchmark::DoNotOptimize(kernelOfImagesFF(images));
}
BENCHMARK(BM_kernel_ff);

void BM_solve_spherical(benchmark::State& state) {
    auto p = aivA3();
    auto par = defaultParameters(*p, 1);
    auto mod = WeightModule::buildSimple(p->cartan(), {1, 0, 1}, 3000);
    CoidealAction act(mod, p, par);
    Character chi = characterChi(*p, par, 0);
    for (auto _ : state) benchmark::DoNotOptimize(solveSpherical(act, chi));
}
BENCHMARK(BM_solve_spherical);

void BM_crystal_lattice(benchmark::State& state) {
    auto mod = WeightModule::buildSimple(CartanDatum::fromType("A2"), {1, 1});
    for (auto _ : state) benchmark::DoNotOptimize(CrystalLattice(mod).basis().size());
}
BENCHMARK(BM_crystal_lattice);

}  // namespace

BENCHMARK_MAIN();

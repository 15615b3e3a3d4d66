// Serial vs OpenMP timings of the two data-parallel kernels: Chern character
// expansion of the K-lattice generators and the degree-2 isomorphism search.

#include <benchmark/benchmark.h>

#include <string>

#include "qtor/kernels.hpp"
#include "qtor/serialization.hpp"

using namespace qtor;

namespace {

GradedRing ring(const std::string& name) {
    return cohomology(
        validate(io::manifold_from_json(io::read_file(std::string(QTOR_DATA_DIR) + "/manifolds/" + name + ".json"))));
}

std::vector<RationalVector> lines(const GradedRing& r) {
    std::vector<RationalVector> out;
    for (std::size_t j = 0; j < r.rank(1); ++j) {
        RationalVector x(r.total_rank());
        x[r.offset(1) + j] = 1;
        out.push_back(std::move(x));
    }
    return out;
}

const char* chern_fixture(int64_t i) { return i == 0 ? "bott_tower_6" : "bott_tower_12"; }

void BM_ChernExpansion(benchmark::State& state, bool parallel) {
    const GradedRing r = ring(chern_fixture(state.range(0)));
    const auto ls = lines(r);
    const auto exps = kernels::chern_exponents(r.rank(1), r.n());
    for (auto _ : state) {
        auto out = parallel ? kernels::expand_chern_monomials(r, ls, exps)
                            : kernels::expand_chern_monomials_serial(r, ls, exps);
        benchmark::DoNotOptimize(out);
    }
    state.SetLabel(std::string(chern_fixture(state.range(0))) + ", " + std::to_string(exps.size()) + " monomials");
}

void BM_IsoSearch(benchmark::State& state, bool parallel) {
    // Hirzebruch 0 vs 1 has no isomorphism, so the whole candidate space is scanned.
    const GradedRing a = ring("hirzebruch_0"), b = ring("hirzebruch_1");
    const int bound = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto idx = parallel ? kernels::first_degree2_iso(a, b, bound) : kernels::first_degree2_iso_serial(a, b, bound);
        benchmark::DoNotOptimize(idx);
    }
    state.SetLabel(std::to_string(*kernels::candidate_count(2, bound)) + " candidates");
}

}  // namespace

BENCHMARK_CAPTURE(BM_ChernExpansion, serial, false)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ChernExpansion, parallel, true)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_IsoSearch, serial, false)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_IsoSearch, parallel, true)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

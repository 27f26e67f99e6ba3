#include <benchmark/benchmark.h>

#include <sstream>

#include "olg/data.hpp"
#include "olg/simple.hpp"
#include "olg/solver.hpp"
#include "olg/tails.hpp"

namespace {

olg::EconomySpec reference_econ() {
    olg::EconomySpec econ;
    econ.gamma = olg::data::canonical_gamma("brazil");
    econ.alpha = olg::data::canonical_alpha("brazil");
    econ.theta = 2.82;
    econ.phi = 0.2;
    econ.horizon = 6;
    return econ;
}

olg::tails::FullLifespanTail reference_tail() { return {1.14, 2.82}; }

void BM_backward_solve(benchmark::State& state) {
    const auto econ = reference_econ();
    const auto tail = reference_tail();
    const auto boundary = olg::tails::boundary_prices(tail, -0.0895);
    for (auto _ : state) {
        auto cand = olg::solver::backward_solve(econ, tail, boundary);
        benchmark::DoNotOptimize(cand);
    }
}
BENCHMARK(BM_backward_solve);

void BM_sweep(benchmark::State& state) {
    const auto econ = reference_econ();
    const auto tail = reference_tail();
    const double step = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto res = olg::solver::sweep(econ, tail, step, 1);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_sweep)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_sweep_parallel(benchmark::State& state) {
    const auto econ = reference_econ();
    const auto tail = reference_tail();
    for (auto _ : state) {
        auto res = olg::solver::sweep(econ, tail, 1e-4, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_sweep_parallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_lambda3(benchmark::State& state) {
    double acc = 0;
    for (auto _ : state) {
        acc += olg::tails::lambda3(1.14, 2.82);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_lambda3);

void BM_backward_rate(benchmark::State& state) {
    olg::simple::SimpleEconomy econ;
    econ.alpha = {2.0};
    for (auto _ : state) {
        const double r = olg::simple::backward_rate(econ, static_cast<int>(state.range(0)), 10.0);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_backward_rate)->Arg(60)->Arg(600);

void BM_ingest(benchmark::State& state) {
    const auto text = olg::data::to_csv(olg::data::bundled_series());
    for (auto _ : state) {
        std::stringstream ss(text);
        auto series = olg::data::ingest(ss);
        benchmark::DoNotOptimize(series);
    }
}
BENCHMARK(BM_ingest);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "relayq/fixed_rate.hpp"
#include "relayq/mixed_rate.hpp"
#include "relayq/numerics.hpp"
#include "relayq/sim.hpp"

namespace {

using namespace relayq;

void BM_ExpIntegralE1(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exp_integral_e1(x));
        x = x < 40.0 ? x * 1.3 : 0.1;
    }
}
BENCHMARK(BM_ExpIntegralE1);

void BM_LambertW0(benchmark::State& state) {
    double x = -0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambert_w0(x));
        x = x < 9.0 ? x + 0.37 : -0.3;
    }
}
BENCHMARK(BM_LambertW0);

void BM_StationaryDistribution(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const DelayVariant dv = make_delay_variant(DelayPolicy::V1, {0.2, 0.3}, 0.7);
    const TransitionMatrix m = buffer_chain_matrix(dv, {0.2, 0.3}, L);
    for (auto _ : state) benchmark::DoNotOptimize(stationary_distribution(m));
}
BENCHMARK(BM_StationaryDistribution)->Arg(8)->Arg(32)->Arg(128);

void BM_MarkovClosedForm(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const OutageProfile prof{0.2, 0.3};
    const DelayVariant dv = make_delay_variant(DelayPolicy::V1, prof, 0.7);
    for (auto _ : state)
        benchmark::DoNotOptimize(markov_metrics(dv, prof, L, {2.0, 2.0}));
}
BENCHMARK(BM_MarkovClosedForm)->Arg(8)->Arg(64);

void BM_SolveRho(benchmark::State& state) {
    const OutageProfile prof{0.2591817793182821, 0.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_rho(prof, {2.0, 2.0}, 10.0));
}
BENCHMARK(BM_SolveRho);

void BM_SolvePowerAllocation(benchmark::State& state) {
    const ChannelParams ch{10.0, 1.0, 10.0, 10.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_power_allocation(ch, {2.0, 2.0}, 10.0));
}
BENCHMARK(BM_SolvePowerAllocation);

void BM_SimulateFixedOptimal(benchmark::State& state) {
    RunConfig cfg;
    cfg.scheme = Scheme::FixedOptimal;
    cfg.slots = static_cast<std::uint64_t>(state.range(0));
    cfg.seed = 1;
    cfg.rates = {2.0, 2.0};
    cfg.profile = OutageProfile{0.3, 0.3};
    for (auto _ : state) benchmark::DoNotOptimize(run(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateFixedOptimal)->Arg(100'000)->Arg(1'000'000);

void BM_SimulateMixed(benchmark::State& state) {
    RunConfig cfg;
    cfg.scheme = Scheme::Mixed;
    cfg.slots = static_cast<std::uint64_t>(state.range(0));
    cfg.seed = 1;
    cfg.rates = {2.0, 2.0};
    cfg.channel = ChannelParams{10.0, 10.0, 1.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(run(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateMixed)->Arg(100'000)->Arg(1'000'000);

} // namespace

BENCHMARK_MAIN();

// Serial reference vs OpenMP versions of the pairwise kernels.

#include <string>

#include <benchmark/benchmark.h>

#include "curvelab/contact.hpp"
#include "curvelab/probe.hpp"

using namespace curvelab;

namespace {

// branches y = x^(3/2) + k*x^(13/6), six sheets each
Curve workload(std::int64_t branches)
{
    std::string text;
    for (std::int64_t k = 1; k <= branches; ++k)
        text += "y = x^(3/2) + " + std::to_string(k) + "*x^(13/6)\n";
    return parse_curve(text);
}

template <QMap (*F)(const Curve&)>
void bm_q_map(benchmark::State& state)
{
    const Curve c = workload(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(F(c));
    state.counters["sheets"] = static_cast<double>(6 * state.range(0));
}

template <std::vector<Triple> (*F)(const ContactMatrix&)>
void bm_ultrametric(benchmark::State& state)
{
    const QMap q = q_map(workload(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(F(q.q));
    state.counters["sheets"] = static_cast<double>(q.sheets.size());
}

template <QMapEstimate (*F)(const Curve&, const SampleGrid&)>
void bm_estimate(benchmark::State& state)
{
    const Curve c = workload(state.range(0));
    const SampleGrid g = SampleGrid::geometric();
    for (auto _ : state)
        benchmark::DoNotOptimize(F(c, g));
    state.counters["sheets"] = static_cast<double>(6 * state.range(0));
}

}  // namespace

BENCHMARK(bm_q_map<q_map_serial>)->Name("q_map/serial")->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_q_map<q_map>)->Name("q_map/omp")->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_ultrametric<verify_ultrametric_serial>)->Name("verify_ultrametric/serial")->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_ultrametric<verify_ultrametric>)->Name("verify_ultrametric/omp")->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_estimate<estimate_qmap_serial>)->Name("estimate_qmap/serial")->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_estimate<estimate_qmap>)->Name("estimate_qmap/omp")->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

#include "manetsim/routing/presets.hpp"
#include "manetsim/scenario.hpp"

#include <benchmark/benchmark.h>

using namespace manetsim;

namespace {

// One 60 s run per iteration; the argument indexes all_presets().
void BM_Run(benchmark::State& state, NetType net) {
    const auto preset = routing::all_presets().at(static_cast<std::size_t>(state.range(0)));
    auto s = Scenario::defaults(net, preset);
    s.node_count = 30;
    s.horizon = 60.0;
    std::uint64_t events = 0;
    for (auto _ : state) {
        const auto m = run(s);
        events += m.routing_packets + m.data_sent;
        benchmark::DoNotOptimize(m.data_delivered);
    }
    state.SetLabel(routing::preset_name(preset));
    state.counters["pkts/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK_CAPTURE(BM_Run, manet, NetType::Manet)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Run, vanet, NetType::Vanet)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

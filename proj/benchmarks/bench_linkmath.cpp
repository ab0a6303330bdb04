#include "manetsim/linkmath.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace manetsim::linkmath;

namespace {

void BM_EstimateSpeed(benchmark::State& state) {
    const DistanceSample s0{0.0, 100.0}, s1{1.0, 100.4987562112089}, s2{2.0, 101.9803902718557};
    for (auto _ : state) benchmark::DoNotOptimize(estimate_speed(s0, s1, s2));
}
BENCHMARK(BM_EstimateSpeed);

void BM_LinkExpiry(benchmark::State& state) {
    const auto est = estimate_speed({0.0, 100.0}, {1.0, 90.0}, {2.0, 80.0});
    for (auto _ : state) benchmark::DoNotOptimize(link_expiry_time(est, {80.0, 250.0, 0.0}));
}
BENCHMARK(BM_LinkExpiry);

void BM_Availability(benchmark::State& state) {
    double travel = 0.0;
    for (auto _ : state) {
        travel = std::fmod(travel + 7.3, 500.0);
        benchmark::DoNotOptimize(availability_probability({200.0, 250.0, travel}));
    }
}
BENCHMARK(BM_Availability);

void BM_Forecast(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(forecast({0.0, 120.0}, {0.5, 118.0}, {1.0, 117.0}, 250.0, 2.0));
}
BENCHMARK(BM_Forecast);

}  // namespace

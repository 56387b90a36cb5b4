#include <benchmark/benchmark.h>

#include <random>

#include "safegate/change/change_detection.hpp"
#include "safegate/gateway/token.hpp"
#include "safegate/illumination/illumination.hpp"
#include "safegate/imaging/threshold.hpp"
#include "safegate/perception/lbp.hpp"
#include "safegate/perception/recognizer.hpp"
#include "safegate/perception/synthetic_faces.hpp"

using namespace safegate;

namespace {

imaging::Frame noisy(int w, int h, int channels, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> d(60, 190);
    imaging::Frame f(w, h, channels);
    for (auto& v : f.data()) v = static_cast<std::uint8_t>(d(rng));
    return f;
}

void BM_DetectChanges(benchmark::State& state) {
    const auto prev = noisy(640, 480, 1, 1);
    auto curr = prev;
    for (int y = 200; y < 260; ++y)
        for (int x = 300; x < 340; ++x) curr.at(x, y) = 255;
    change::ChangeConfig config;
    config.strategy = change::parse_strategy(state.range(0) == 0 ? "binary:20" : state.range(0) == 1 ? "otsu" : "adaptive:11:-10");
    for (auto _ : state) benchmark::DoNotOptimize(change::detect_changes(prev, curr, config));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DetectChanges)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Otsu(benchmark::State& state) {
    const auto f = noisy(640, 480, 1, 2);
    for (auto _ : state) benchmark::DoNotOptimize(imaging::otsu_level(f));
}
BENCHMARK(BM_Otsu);

void BM_Clahe(benchmark::State& state) {
    const auto f = noisy(640, 480, 1, 3);
    for (auto _ : state) benchmark::DoNotOptimize(illumination::clahe(f));
}
BENCHMARK(BM_Clahe)->Unit(benchmark::kMillisecond);

void BM_NormalizeIllumination(benchmark::State& state) {
    const auto f = noisy(640, 480, 3, 4);
    for (auto _ : state) benchmark::DoNotOptimize(illumination::normalize_illumination(f));
}
BENCHMARK(BM_NormalizeIllumination)->Unit(benchmark::kMillisecond);

void BM_LbpHistogram(benchmark::State& state) {
    const auto face = perception::synthetic_face(1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(perception::extract_lbp_histogram(face));
}
BENCHMARK(BM_LbpHistogram);

void BM_Recognize(benchmark::State& state) {
    perception::ProfileModel model;
    for (int id = 0; id < state.range(0); ++id) {
        std::vector<imaging::Frame> crops;
        for (int s = 1; s <= 5; ++s) crops.push_back(perception::synthetic_face(static_cast<std::uint64_t>(id + 1), static_cast<std::uint64_t>(s)));
        model = model.enroll({"id" + std::to_string(id), "P", ""}, crops);
    }
    const auto query = perception::synthetic_face(1, 99);
    for (auto _ : state) benchmark::DoNotOptimize(model.recognize(query));
}
BENCHMARK(BM_Recognize)->Arg(1)->Arg(10)->Arg(50);

void BM_TokenRoundTrip(benchmark::State& state) {
    const auto key = gateway::TokenKey::generate();
    std::vector<std::uint8_t> payload(static_cast<std::size_t>(state.range(0)), 0x5a);
    for (auto _ : state) benchmark::DoNotOptimize(gateway::decrypt_frame(gateway::encrypt_frame(payload, key), key));
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TokenRoundTrip)->Arg(1024)->Arg(300 * 1024);

}  // namespace

BENCHMARK_MAIN();

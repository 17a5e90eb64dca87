#include "ghvfdt/hoeffding_tree.hpp"
#include "ghvfdt/split_criteria.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace ghvfdt;

namespace {

constexpr std::size_t kFeatures = 8;

std::vector<StreamRecord> make_stream(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<StreamRecord> out(n);
    for (auto& r : out) {
        r.features.resize(kFeatures);
        for (auto& x : r.features) x = u(rng);
        const bool p = (r.features[0] > 0.7 && r.features[1] < 0.3) || u(rng) < 0.01;
        r.truth = p ? ClassLabel::Positive : ClassLabel::Negative;
        r.observed = r.truth;
    }
    return out;
}

const std::vector<StreamRecord>& stream() {
    static const auto s = make_stream(1 << 16, 1);
    return s;
}

void BM_TrainOne(benchmark::State& state) {
    TreeConfig cfg;
    cfg.criterion = static_cast<SplitCriterion>(state.range(0));
    const auto& s = stream();
    HoeffdingTree tree(cfg, kFeatures);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tree.train_one(s[i]));
        if (++i == s.size()) {
            state.PauseTiming();
            tree = HoeffdingTree(cfg, kFeatures);
            i = 0;
            state.ResumeTiming();
        }
    }
    state.SetLabel(std::string(to_string(cfg.criterion)));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TrainOne)->DenseRange(0, 2);

void BM_Predict(benchmark::State& state) {
    HoeffdingTree tree(TreeConfig{}, kFeatures);
    const auto& s = stream();
    for (const auto& r : s) tree.train_one(r);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tree.predict(s[i].features));
        i = (i + 1) % s.size();
    }
    state.counters["leaves"] = static_cast<double>(tree.leaf_count());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Predict);

void BM_HellingerGaussian(benchmark::State& state) {
    double mu = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hellinger_gaussian(mu, 1.0, 0.5, 2.0));
        mu += 1e-9;
    }
}
BENCHMARK(BM_HellingerGaussian);

void BM_HellingerBinned(benchmark::State& state) {
    const auto bins = static_cast<std::size_t>(state.range(0));
    auto h = ClassHistogram::equal_width(0.0, 1.0, bins);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10'000; ++i) {
        h.add(u(rng), i % 10 ? ClassLabel::Negative : ClassLabel::Positive);
    }
    for (auto _ : state) benchmark::DoNotOptimize(hellinger_binned(h));
}
BENCHMARK(BM_HellingerBinned)->Arg(10)->Arg(100);

void BM_BestTwoFeatures(benchmark::State& state) {
    const auto criterion = static_cast<SplitCriterion>(state.range(0));
    TreeConfig cfg;
    cfg.criterion = criterion;
    cfg.grace_period = 1 << 30;
    HoeffdingTree tree(cfg, kFeatures);
    for (const auto& r : stream()) tree.train_one(r);
    const auto& stats = std::get<LeafNode>(tree.node(0)).stats;
    for (auto _ : state) benchmark::DoNotOptimize(best_two_features(stats, criterion));
    state.SetLabel(std::string(to_string(criterion)));
}
BENCHMARK(BM_BestTwoFeatures)->DenseRange(0, 2);

} // namespace

BENCHMARK_MAIN();

#include "ghvfdt/stream.hpp"

#include "ghvfdt/error.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <fmt/format.h>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace ghvfdt {

namespace {

// std::shuffle and std::uniform_int_distribution are implementation-defined;
// these keep streams identical across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = -n % n;  // 2^64 mod n
    while (true) {
        const std::uint64_t x = rng();
        if (x >= limit) return x % n;
    }
}

template <typename T>
void fisher_yates(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

constexpr std::uint64_t kMaskStream = 0x9E3779B97F4A7C15ULL;

StreamRecord make_record(const Dataset& data, std::size_t row) {
    const auto f = data.row(row);
    const ClassLabel truth = data.labels[row];
    return StreamRecord{std::vector<double>(f.begin(), f.end()), truth, truth};
}

} // namespace

std::size_t labeled_count(double labeling_fraction, std::size_t n) noexcept {
    const double raw = std::floor(labeling_fraction * static_cast<double>(n) + 0.5);
    if (!(raw > 0.0)) return 0;
    return std::min(n, static_cast<std::size_t>(raw));
}

BuiltStream build_stream(const Dataset& data, const StreamSpec& spec) {
    if (spec.imbalance_ratio == 0) throw ConfigError("stream: imbalance ratio must be >= 1");
    if (!(spec.labeling_fraction >= 0.0 && spec.labeling_fraction <= 1.0)) {
        throw ConfigError(fmt::format("stream: labeling fraction {} outside [0, 1]",
                                      spec.labeling_fraction));
    }
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        (data.labels[i] == ClassLabel::Positive ? pos : neg).push_back(i);
    }
    if (pos.size() < spec.pretrain_pos || neg.size() < spec.pretrain_neg) {
        throw ConfigError(fmt::format(
            "stream: pre-training needs {} positives and {} negatives, dataset has {} and {}",
            spec.pretrain_pos, spec.pretrain_neg, pos.size(), neg.size()));
    }

    std::mt19937_64 rng(spec.seed);
    if (spec.shuffle) {
        fisher_yates(pos, rng);
        fisher_yates(neg, rng);
    }

    const std::size_t avail_pos = pos.size() - spec.pretrain_pos;
    const std::size_t avail_neg = neg.size() - spec.pretrain_neg;
    std::size_t n_pos = std::min<std::size_t>(avail_pos, avail_neg / spec.imbalance_ratio);
    if (spec.max_eval_positives > 0) n_pos = std::min(n_pos, spec.max_eval_positives);
    if (n_pos == 0) {
        throw ConfigError(fmt::format(
            "stream: ratio +1:-{} unattainable ({} positives and {} negatives left after "
            "pre-training)",
            spec.imbalance_ratio, avail_pos, avail_neg));
    }
    const std::size_t n_neg = n_pos * static_cast<std::size_t>(spec.imbalance_ratio);

    BuiltStream out;
    out.pretrain_rows.assign(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(spec.pretrain_pos));
    out.pretrain_rows.insert(out.pretrain_rows.end(), neg.begin(),
                             neg.begin() + static_cast<std::ptrdiff_t>(spec.pretrain_neg));
    const auto pp = static_cast<std::ptrdiff_t>(spec.pretrain_pos);
    const auto pn = static_cast<std::ptrdiff_t>(spec.pretrain_neg);
    out.eval_rows.assign(pos.begin() + pp, pos.begin() + pp + static_cast<std::ptrdiff_t>(n_pos));
    out.eval_rows.insert(out.eval_rows.end(), neg.begin() + pn,
                         neg.begin() + pn + static_cast<std::ptrdiff_t>(n_neg));
    if (spec.shuffle) {
        fisher_yates(out.pretrain_rows, rng);
        fisher_yates(out.eval_rows, rng);
    } else {
        std::sort(out.pretrain_rows.begin(), out.pretrain_rows.end());
        std::sort(out.eval_rows.begin(), out.eval_rows.end());
    }

    out.pretrain.reserve(out.pretrain_rows.size());
    for (const auto r : out.pretrain_rows) out.pretrain.push_back(make_record(data, r));
    out.eval.reserve(out.eval_rows.size());
    for (const auto r : out.eval_rows) {
        auto rec = make_record(data, r);
        rec.observed.reset();
        out.eval.push_back(std::move(rec));
    }
    out.eval_positives = n_pos;
    out.eval_negatives = n_neg;

    // partial Fisher-Yates over positions picks the labeled subset
    const std::size_t n = out.eval.size();
    out.labeled = labeled_count(spec.labeling_fraction, n);
    std::mt19937_64 mask_rng(spec.seed ^ kMaskStream);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < out.labeled; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_below(mask_rng, n - i));
        std::swap(order[i], order[j]);
        auto& rec = out.eval[order[i]];
        rec.observed = rec.truth;
    }
    return out;
}

std::uint64_t stream_digest(std::span<const StreamRecord> records) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& r : records) {
        for (const double x : r.features) mix(std::bit_cast<std::uint64_t>(x));
        mix(static_cast<std::uint64_t>(r.truth));
        mix(r.observed ? 1 + static_cast<std::uint64_t>(*r.observed) : 0);
    }
    return h;
}

RunResult run_prequential(HoeffdingTree& tree, std::span<const StreamRecord> pretrain,
                          std::span<const StreamRecord> eval) {
    const auto start = std::chrono::steady_clock::now();
    for (const auto& rec : pretrain) {
        if (!rec.observed) throw ContractViolation("run_prequential: unlabeled pre-training record");
        tree.train_one(rec);
    }
    const std::uint64_t splits_before = tree.split_count();

    RunResult result;
    for (const auto& rec : eval) {
        result.confusion.record(rec.truth, tree.predict(rec.features));
        ++result.instances_processed;
        if (rec.observed) {
            tree.train_one(rec);
            ++result.labeled_used;
        }
    }
    result.splits = tree.split_count() - splits_before;
    result.leaves = tree.leaf_count();
    result.depth = tree.depth();
    result.memory_cells = tree.memory_cells();
    result.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - start);
    return result;
}

RunResult run_prequential(const TreeConfig& config, std::span<const StreamRecord> pretrain,
                          std::span<const StreamRecord> eval) {
    if (pretrain.empty() && eval.empty()) {
        config.validate();
        return RunResult{};
    }
    if (pretrain.empty()) {
        HoeffdingTree tree(config, eval.front().features.size());
        return run_prequential(tree, pretrain, eval);
    }
    const auto ranges = HoeffdingTree::ranges_of(pretrain);
    HoeffdingTree tree(config, ranges);
    return run_prequential(tree, pretrain, eval);
}

std::vector<StreamResult> run_grid(const Dataset& data, const GridSpec& spec, std::size_t threads,
                                   const std::function<void(const StreamResult&)>& on_done) {
    if (spec.algorithms.empty() || spec.ratios.empty() || spec.labelings.empty() ||
        spec.repeats == 0) {
        throw ConfigError("grid: algorithms, ratios, labelings and repeats must be non-empty");
    }
    spec.tree.validate();

    const std::size_t n_alg = spec.algorithms.size();
    const std::size_t n_lab = spec.labelings.size();
    const std::size_t n_rep = spec.repeats;
    const std::size_t slots = spec.ratios.size() * n_lab * n_rep;
    std::vector<StreamResult> results(slots * n_alg);

    auto index_of = [&](std::size_t ri, std::size_t li, std::size_t ai, std::size_t rep) {
        return ((ri * n_lab + li) * n_alg + ai) * n_rep + rep;
    };

    std::mutex callback_mutex;
    auto run_slot = [&](std::size_t slot) {
        const std::size_t rep = slot % n_rep;
        const std::size_t li = (slot / n_rep) % n_lab;
        const std::size_t ri = slot / (n_rep * n_lab);

        StreamSpec s = spec.stream;
        s.imbalance_ratio = spec.ratios[ri];
        s.labeling_fraction = spec.labelings[li];
        s.seed = spec.base_seed + rep;

        std::optional<BuiltStream> stream;
        std::string error;
        try {
            stream = build_stream(data, s);
        } catch (const Error& e) {
            error = e.what();
        }
        const std::uint64_t digest = stream ? stream_digest(stream->eval) : 0;
        for (std::size_t ai = 0; ai < n_alg; ++ai) {
            StreamResult& out = results[index_of(ri, li, ai, rep)];
            out.cell = CellKey{spec.algorithms[ai], s.imbalance_ratio, s.labeling_fraction, rep,
                               s.seed};
            out.digest = digest;
            if (stream) {
                out.eval_positives = stream->eval_positives;
                out.eval_negatives = stream->eval_negatives;
                out.labeled = stream->labeled;
                TreeConfig tc = spec.tree;
                tc.criterion = spec.algorithms[ai];
                try {
                    out.run = run_prequential(tc, stream->pretrain, stream->eval);
                } catch (const Error& e) {
                    out.error = e.what();
                }
            } else {
                out.error = error;
            }
            if (on_done) {
                std::lock_guard lock(callback_mutex);
                on_done(out);
            }
        }
    };

    threads = std::max<std::size_t>(1, std::min(threads, slots));
    if (threads == 1) {
        for (std::size_t slot = 0; slot < slots; ++slot) run_slot(slot);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t slot = next++; slot < slots; slot = next++) {
                    try {
                        run_slot(slot);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

} // namespace ghvfdt

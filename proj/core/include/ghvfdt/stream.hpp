#pragma once

#include "ghvfdt/dataset.hpp"
#include "ghvfdt/hoeffding_tree.hpp"
#include "ghvfdt/metrics.hpp"
#include "ghvfdt/types.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ghvfdt {

/// How one evaluation stream is cut from a static dataset.
struct StreamSpec {
    /// r in +1:-r.
    std::uint64_t imbalance_ratio = 10;
    /// Fraction of evaluation records whose label reaches the learner.
    /// 0 is accepted (all unlabeled) for testing.
    double labeling_fraction = 1.0;
    std::size_t pretrain_pos = 200;
    std::size_t pretrain_neg = 1000;
    std::uint64_t seed = 0;
    /// false keeps source order (temporally ordered data).
    bool shuffle = true;
    /// Cap on evaluation positives; 0 uses every positive the ratio permits.
    std::size_t max_eval_positives = 0;
};

struct BuiltStream {
    std::vector<StreamRecord> pretrain;
    std::vector<StreamRecord> eval;
    /// Dataset row of each record, parallel to pretrain / eval.
    std::vector<std::size_t> pretrain_rows;
    std::vector<std::size_t> eval_rows;
    std::size_t eval_positives = 0;
    std::size_t eval_negatives = 0;
    std::size_t labeled = 0;
};

/// round(labeling_fraction * n) with halves rounded up.
std::size_t labeled_count(double labeling_fraction, std::size_t n) noexcept;

/// Cuts a pre-training prefix and an evaluation stream with class ratio
/// exactly 1:r from `data`. Positive rows are subsampled when there are not
/// enough negatives for all of them. The label mask is drawn from its own
/// generator, so the evaluation records do not depend on the labeling
/// fraction. Throws ConfigError when the quotas cannot be met.
BuiltStream build_stream(const Dataset& data, const StreamSpec& spec);

/// 64-bit FNV-1a digest over features, truths and observed labels.
std::uint64_t stream_digest(std::span<const StreamRecord> records) noexcept;

struct RunResult {
    Confusion confusion;
    std::uint64_t instances_processed = 0;
    std::uint64_t labeled_used = 0;
    /// Splits made during the evaluation phase.
    std::uint64_t splits = 0;
    std::size_t leaves = 0;
    std::size_t depth = 0;
    std::size_t memory_cells = 0;
    std::chrono::nanoseconds wall_time{0};
};

/// Trains `tree` on every pre-training record, then for each evaluation
/// record predicts (scored against its truth) and trains when its label is
/// observed.
RunResult run_prequential(HoeffdingTree& tree, std::span<const StreamRecord> pretrain,
                          std::span<const StreamRecord> eval);

/// Builds a tree whose root histograms span the pre-training ranges and
/// runs the protocol above.
RunResult run_prequential(const TreeConfig& config, std::span<const StreamRecord> pretrain,
                          std::span<const StreamRecord> eval);

struct GridSpec {
    std::vector<SplitCriterion> algorithms;
    std::vector<std::uint64_t> ratios;
    std::vector<double> labelings;
    std::size_t repeats = 10;
    std::uint64_t base_seed = 0;
    /// criterion is overridden per algorithm.
    TreeConfig tree;
    /// imbalance_ratio, labeling_fraction and seed are overridden per cell.
    StreamSpec stream;
};

struct CellKey {
    SplitCriterion algorithm = SplitCriterion::HellingerGaussian;
    std::uint64_t ratio = 0;
    double labeling = 0.0;
    std::size_t repeat = 0;
    std::uint64_t seed = 0;
};

struct StreamResult {
    CellKey cell;
    /// Empty when the cell failed; `error` then says why.
    std::optional<RunResult> run;
    std::string error;
    std::size_t eval_positives = 0;
    std::size_t eval_negatives = 0;
    std::size_t labeled = 0;
    std::uint64_t digest = 0;
};

/// Runs every (ratio, labeling, algorithm, repeat) cell. Repeat k uses
/// seed base_seed + k and every algorithm sees the same stream within a
/// (ratio, labeling, repeat) slot. Results are ordered ratio-major, then
/// labeling, algorithm, repeat, independent of `threads`. A cell whose
/// stream cannot be built is reported as failed without stopping the grid.
std::vector<StreamResult> run_grid(const Dataset& data, const GridSpec& spec,
                                   std::size_t threads = 1,
                                   const std::function<void(const StreamResult&)>& on_done = {});

} // namespace ghvfdt

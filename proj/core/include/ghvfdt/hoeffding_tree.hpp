#pragma once

#include "ghvfdt/leaf_stats.hpp"
#include "ghvfdt/split_criteria.hpp"
#include "ghvfdt/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace ghvfdt {

struct TreeConfig {
    SplitCriterion criterion = SplitCriterion::HellingerGaussian;
    double delta = 1e-7;
    double tau = 0.05;
    std::size_t bins = 10;
    /// Labeled arrivals at a leaf between split attempts; 1 checks on every
    /// instance.
    std::uint64_t grace_period = 200;
    /// Upper bound on leaves that keep statistics; 0 disables the cap.
    std::size_t max_leaves = 0;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    bool uses_histograms() const noexcept {
        return criterion != SplitCriterion::HellingerGaussian;
    }

    friend bool operator==(const TreeConfig&, const TreeConfig&) = default;
};

struct InternalNode {
    std::size_t feature = 0;
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;

    friend bool operator==(const InternalNode&, const InternalNode&) = default;
};

struct LeafNode {
    LeafStats stats;
    ClassLabel majority = ClassLabel::Negative;
    /// Inactive leaves keep class counts and a majority label but drop their
    /// feature statistics and never split.
    bool active = true;

    friend bool operator==(const LeafNode&, const LeafNode&) = default;
};

using TreeNode = std::variant<InternalNode, LeafNode>;

struct SplitEvent {
    std::size_t leaf_id = 0;
    std::size_t feature = 0;
    double threshold = 0.0;

    friend bool operator==(const SplitEvent&, const SplitEvent&) = default;
};

/// Incremental Hoeffding tree for two classes over real-valued features.
///
/// Routing sends `x[feature] < threshold` left and everything else right.
/// Nodes live in an index-addressed arena; node 0 is the root and a split
/// turns a leaf slot into an internal node and appends its two children.
class HoeffdingTree {
public:
    /// Root histograms (binned criteria) span [0, 1] on every feature.
    HoeffdingTree(TreeConfig config, std::size_t num_features);

    /// Root histograms span `root_ranges` (usually the pre-training min/max).
    HoeffdingTree(TreeConfig config, std::span<const FeatureRange> root_ranges);

    /// Per-feature min/max over a set of records.
    static std::vector<FeatureRange> ranges_of(std::span<const StreamRecord> records);

    ClassLabel predict(std::span<const double> features) const;

    /// Updates the reached leaf with a labeled record and, when the split test
    /// passes, replaces it by an internal node. Throws ContractViolation for
    /// unlabeled records and InputError for malformed features.
    std::optional<SplitEvent> train_one(const StreamRecord& record);
    std::optional<SplitEvent> train_one(std::span<const double> features, ClassLabel label);

    /// Node id of the leaf that `features` routes to.
    std::size_t leaf_of(std::span<const double> features) const;

    const TreeConfig& config() const noexcept { return config_; }
    std::size_t num_features() const noexcept { return num_features_; }
    std::span<const TreeNode> nodes() const noexcept { return nodes_; }
    const TreeNode& node(std::size_t id) const { return nodes_.at(id); }

    std::size_t leaf_count() const noexcept;
    std::size_t active_leaf_count() const noexcept;
    std::size_t internal_count() const noexcept { return nodes_.size() - leaf_count(); }
    std::size_t depth() const;
    std::uint64_t split_count() const noexcept { return splits_; }

    /// Statistic cells held by the tree: LeafStats::memory_cells() summed
    /// over leaves plus two per internal node (feature and threshold).
    std::size_t memory_cells() const noexcept;

    /// Closed form of memory_cells() for this configuration:
    /// active_leaves * f * (2c + b*c [binned only]) + 2 * internal.
    std::size_t expected_memory_cells() const noexcept;

    /// Rebuilds a tree from its parts (deserialization). Validates the
    /// arena's shape and throws InputError on inconsistencies.
    static HoeffdingTree from_parts(TreeConfig config, std::size_t num_features,
                                    std::vector<TreeNode> nodes, std::uint64_t splits);

    friend bool operator==(const HoeffdingTree&, const HoeffdingTree&) = default;

private:
    HoeffdingTree() = default;

    LeafStats fresh_stats(const LeafStats* parent, std::size_t split_feature,
                          double threshold, bool left) const;
    std::optional<SplitEvent> attempt_split(std::size_t leaf_id);
    void enforce_leaf_cap();
    void check_features(std::span<const double> features) const;

    TreeConfig config_;
    std::size_t num_features_ = 0;
    std::vector<TreeNode> nodes_;
    std::uint64_t splits_ = 0;
};

} // namespace ghvfdt

#include "ghvfdt/hoeffding_tree.hpp"

#include "ghvfdt/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <utility>

namespace ghvfdt {

void TreeConfig::validate() const {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ConfigError(fmt::format("tree config: delta must lie in (0, 1), got {}", delta));
    }
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw ConfigError(fmt::format("tree config: tau must be >= 0, got {}", tau));
    }
    if (bins < 2) throw ConfigError(fmt::format("tree config: bins must be >= 2, got {}", bins));
    if (grace_period < 1) throw ConfigError("tree config: grace_period must be >= 1");
}

namespace {

// Edge range for a root histogram when the supplied range is degenerate.
FeatureRange usable_range(FeatureRange r) {
    if (r.spans()) return r;
    if (r.empty()) return {0.0, 1.0};
    return {r.lo - 0.5, r.hi + 0.5};
}

} // namespace

HoeffdingTree::HoeffdingTree(TreeConfig config, std::size_t num_features)
    : HoeffdingTree(config, std::vector<FeatureRange>(num_features, FeatureRange{0.0, 1.0})) {}

HoeffdingTree::HoeffdingTree(TreeConfig config, std::span<const FeatureRange> root_ranges)
    : config_(config), num_features_(root_ranges.size()) {
    config_.validate();
    if (num_features_ == 0) throw ConfigError("tree: at least one feature required");
    LeafStats root;
    if (config_.uses_histograms()) {
        std::vector<ClassHistogram> hists;
        hists.reserve(num_features_);
        for (const auto& r : root_ranges) {
            const FeatureRange u = usable_range(r);
            hists.push_back(ClassHistogram::equal_width(u.lo, u.hi, config_.bins));
        }
        root = LeafStats(num_features_, std::move(hists));
    } else {
        root = LeafStats(num_features_);
    }
    nodes_.emplace_back(LeafNode{std::move(root), ClassLabel::Negative, true});
}

std::vector<FeatureRange> HoeffdingTree::ranges_of(std::span<const StreamRecord> records) {
    if (records.empty()) return {};
    std::vector<FeatureRange> ranges(records.front().features.size());
    for (const auto& r : records) {
        if (r.features.size() != ranges.size()) {
            throw InputError("ranges_of: records disagree on feature count");
        }
        for (std::size_t j = 0; j < ranges.size(); ++j) ranges[j].include(r.features[j]);
    }
    return ranges;
}

void HoeffdingTree::check_features(std::span<const double> features) const {
    if (features.size() != num_features_) {
        throw InputError(fmt::format("tree: expected {} features, got {}", num_features_,
                                     features.size()));
    }
}

std::size_t HoeffdingTree::leaf_of(std::span<const double> features) const {
    check_features(features);
    std::size_t id = 0;
    while (const auto* in = std::get_if<InternalNode>(&nodes_[id])) {
        id = features[in->feature] < in->threshold ? in->left : in->right;
    }
    return id;
}

ClassLabel HoeffdingTree::predict(std::span<const double> features) const {
    return std::get<LeafNode>(nodes_[leaf_of(features)]).majority;
}

std::optional<SplitEvent> HoeffdingTree::train_one(const StreamRecord& record) {
    if (!record.observed) {
        throw ContractViolation("train_one: unlabeled records must not reach the learner");
    }
    return train_one(record.features, *record.observed);
}

std::optional<SplitEvent> HoeffdingTree::train_one(std::span<const double> features,
                                                   ClassLabel label) {
    check_features(features);
    for (const double x : features) {
        if (!std::isfinite(x)) throw InputError("train_one: non-finite feature value");
    }
    const std::size_t id = leaf_of(features);
    auto& leaf = std::get<LeafNode>(nodes_[id]);
    auto& stats = leaf.stats;
    if (leaf.active) {
        stats.add(features, label);
    } else {
        ++stats.class_counts[class_index(label)];
    }

    const auto neg = stats.count(ClassLabel::Negative);
    const auto pos = stats.count(ClassLabel::Positive);
    if (pos > neg) {
        leaf.majority = ClassLabel::Positive;
    } else if (neg > pos) {
        leaf.majority = ClassLabel::Negative;
    }

    if (!leaf.active || !stats.impure() || stats.since_last_attempt < config_.grace_period) {
        return std::nullopt;
    }
    return attempt_split(id);
}

std::optional<SplitEvent> HoeffdingTree::attempt_split(std::size_t leaf_id) {
    auto& leaf = std::get<LeafNode>(nodes_[leaf_id]);
    leaf.stats.since_last_attempt = 0;

    const BestSplits top = best_two_features(leaf.stats, config_.criterion);
    if (!top.best.valid() || !(top.best.score > 0.0)) return std::nullopt;

    const HoeffdingParams params{config_.delta, config_.tau, criterion_range(config_.criterion)};
    const double eps = hoeffding_epsilon(params, leaf.stats.total());
    if (!(top.best.score - top.second.score > eps || eps < config_.tau)) return std::nullopt;

    const SplitEvent event{leaf_id, top.best.feature, top.best.threshold};
    LeafNode parent = std::move(leaf);
    LeafNode left{fresh_stats(&parent.stats, event.feature, event.threshold, true),
                  parent.majority, true};
    LeafNode right{fresh_stats(&parent.stats, event.feature, event.threshold, false),
                   parent.majority, true};

    const std::size_t left_id = nodes_.size();
    nodes_.emplace_back(std::move(left));
    nodes_.emplace_back(std::move(right));
    nodes_[leaf_id] = InternalNode{event.feature, event.threshold, left_id, left_id + 1};
    ++splits_;
    enforce_leaf_cap();
    return event;
}

LeafStats HoeffdingTree::fresh_stats(const LeafStats* parent, std::size_t split_feature,
                                     double threshold, bool left) const {
    if (!config_.uses_histograms()) return LeafStats(num_features_);

    std::vector<ClassHistogram> hists;
    hists.reserve(num_features_);
    for (std::size_t j = 0; j < num_features_; ++j) {
        FeatureRange r = parent->observed[j];
        if (j == split_feature) {
            if (left) {
                r.hi = std::min(r.hi, threshold);
            } else {
                r.lo = std::max(r.lo, threshold);
            }
        }
        auto h = ClassHistogram::try_equal_width(r.lo, r.hi, config_.bins);
        if (!h) {
            const auto e = parent->histograms[j].edges();
            h = ClassHistogram(std::vector<double>(e.begin(), e.end()));
        }
        hists.push_back(std::move(*h));
    }
    return LeafStats(num_features_, std::move(hists));
}

void HoeffdingTree::enforce_leaf_cap() {
    if (config_.max_leaves == 0) return;
    while (active_leaf_count() > config_.max_leaves) {
        // deactivate the active leaf with the fewest minority-side instances
        std::size_t victim = nodes_.size();
        std::uint64_t victim_promise = 0;
        for (std::size_t id = 0; id < nodes_.size(); ++id) {
            const auto* leaf = std::get_if<LeafNode>(&nodes_[id]);
            if (!leaf || !leaf->active) continue;
            const auto promise = std::min(leaf->stats.class_counts[0], leaf->stats.class_counts[1]);
            if (victim == nodes_.size() || promise < victim_promise) {
                victim = id;
                victim_promise = promise;
            }
        }
        auto& leaf = std::get<LeafNode>(nodes_[victim]);
        leaf.active = false;
        leaf.stats.gaussian = {};
        leaf.stats.histograms = {};
        leaf.stats.observed = {};
        leaf.stats.since_last_attempt = 0;
    }
}

std::size_t HoeffdingTree::leaf_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const auto& n) {
        return std::holds_alternative<LeafNode>(n);
    }));
}

std::size_t HoeffdingTree::active_leaf_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const auto& n) {
        const auto* leaf = std::get_if<LeafNode>(&n);
        return leaf && leaf->active;
    }));
}

std::size_t HoeffdingTree::depth() const {
    std::size_t deepest = 0;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        const auto [id, d] = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, d);
        if (const auto* in = std::get_if<InternalNode>(&nodes_[id])) {
            stack.emplace_back(in->left, d + 1);
            stack.emplace_back(in->right, d + 1);
        }
    }
    return deepest;
}

std::size_t HoeffdingTree::memory_cells() const noexcept {
    std::size_t cells = 0;
    for (const auto& n : nodes_) {
        if (const auto* leaf = std::get_if<LeafNode>(&n)) {
            cells += leaf->stats.memory_cells();
        } else {
            cells += 2;
        }
    }
    return cells;
}

std::size_t HoeffdingTree::expected_memory_cells() const noexcept {
    const std::size_t per_feature =
        2 * kNumClasses + (config_.uses_histograms() ? config_.bins * kNumClasses : 0);
    return active_leaf_count() * num_features_ * per_feature + 2 * internal_count();
}

HoeffdingTree HoeffdingTree::from_parts(TreeConfig config, std::size_t num_features,
                                        std::vector<TreeNode> nodes, std::uint64_t splits) {
    try {
        config.validate();
    } catch (const ConfigError& e) {
        throw InputError(e.what());
    }
    if (num_features == 0) throw InputError("tree: at least one feature required");
    if (nodes.empty()) throw InputError("tree: empty node list");

    // every non-root node must be referenced exactly once, by an earlier node
    std::vector<int> refs(nodes.size(), 0);
    for (std::size_t id = 0; id < nodes.size(); ++id) {
        if (const auto* in = std::get_if<InternalNode>(&nodes[id])) {
            if (in->feature >= num_features) throw InputError("tree: split feature out of range");
            if (!std::isfinite(in->threshold)) throw InputError("tree: non-finite threshold");
            for (const std::size_t child : {in->left, in->right}) {
                if (child <= id || child >= nodes.size()) {
                    throw InputError("tree: child index out of order or range");
                }
                ++refs[child];
            }
        } else {
            const auto& leaf = std::get<LeafNode>(nodes[id]);
            const auto& s = leaf.stats;
            if (leaf.active) {
                if (s.gaussian.size() != num_features) {
                    throw InputError("tree: leaf Gaussian table has wrong width");
                }
                const bool hist = config.uses_histograms();
                if (hist && (s.histograms.size() != num_features ||
                             s.observed.size() != num_features)) {
                    throw InputError("tree: leaf histograms missing for a binned criterion");
                }
                if (!hist && !s.histograms.empty()) {
                    throw InputError("tree: unexpected histograms for the Gaussian criterion");
                }
                for (const auto& h : s.histograms) {
                    if (h.bins() != config.bins) throw InputError("tree: histogram bin count mismatch");
                }
            }
        }
    }
    for (std::size_t id = 1; id < nodes.size(); ++id) {
        if (refs[id] != 1) throw InputError("tree: node arena is not a tree");
    }

    HoeffdingTree t;
    t.config_ = config;
    t.num_features_ = num_features;
    t.nodes_ = std::move(nodes);
    t.splits_ = splits;
    return t;
}

} // namespace ghvfdt

#pragma once

#include "ghvfdt/class_histogram.hpp"
#include "ghvfdt/gaussian_stat.hpp"
#include "ghvfdt/types.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace ghvfdt {

struct FeatureRange {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    bool empty() const noexcept { return !(lo <= hi); }
    bool spans() const noexcept { return lo < hi; }
    void include(double x) noexcept {
        if (x < lo) lo = x;
        if (x > hi) hi = x;
    }
    friend bool operator==(const FeatureRange&, const FeatureRange&) = default;
};

/// Sufficient statistics kept at one leaf.
///
/// Gaussian cells are always present (one per feature and class). Histograms
/// and observed ranges exist only for the binned criteria; `histograms` is
/// empty otherwise.
struct LeafStats {
    std::vector<std::array<GaussianStat, kNumClasses>> gaussian;
    std::vector<ClassHistogram> histograms;
    std::vector<FeatureRange> observed;
    std::array<std::uint64_t, kNumClasses> class_counts{0, 0};
    std::uint64_t since_last_attempt = 0;

    LeafStats() = default;

    /// Gaussian-only statistics for `num_features` features.
    explicit LeafStats(std::size_t num_features);

    /// Gaussian statistics plus one histogram per feature, built from `edges`.
    LeafStats(std::size_t num_features, std::vector<ClassHistogram> empty_histograms);

    std::size_t num_features() const noexcept { return gaussian.size(); }
    bool has_histograms() const noexcept { return !histograms.empty(); }

    std::uint64_t total() const noexcept { return class_counts[0] + class_counts[1]; }
    std::uint64_t count(ClassLabel c) const noexcept { return class_counts[class_index(c)]; }
    bool impure() const noexcept { return class_counts[0] > 0 && class_counts[1] > 0; }

    /// Folds in one labeled instance. Length and finiteness are checked by
    /// the caller (the tree validates once per record).
    void add(std::span<const double> features, ClassLabel label);

    /// Statistic cells held: 2 per GaussianStat (location and spread) and
    /// one per histogram bin per class.
    std::size_t memory_cells() const noexcept;

    friend bool operator==(const LeafStats&, const LeafStats&) = default;
};

} // namespace ghvfdt

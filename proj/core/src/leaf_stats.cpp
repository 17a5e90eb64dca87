#include "ghvfdt/leaf_stats.hpp"

#include "ghvfdt/error.hpp"

namespace ghvfdt {

LeafStats::LeafStats(std::size_t num_features) : gaussian(num_features) {}

LeafStats::LeafStats(std::size_t num_features, std::vector<ClassHistogram> empty_histograms)
    : gaussian(num_features), histograms(std::move(empty_histograms)),
      observed(num_features) {
    if (histograms.size() != num_features) {
        throw InputError("LeafStats: one histogram per feature required");
    }
}

void LeafStats::add(std::span<const double> features, ClassLabel label) {
    const std::size_t k = class_index(label);
    for (std::size_t j = 0; j < gaussian.size(); ++j) {
        gaussian[j][k].add(features[j]);
    }
    for (std::size_t j = 0; j < histograms.size(); ++j) {
        histograms[j].add(features[j], label);
        observed[j].include(features[j]);
    }
    ++class_counts[k];
    ++since_last_attempt;
}

std::size_t LeafStats::memory_cells() const noexcept {
    std::size_t cells = gaussian.size() * kNumClasses * 2;
    for (const auto& h : histograms) {
        cells += h.bins() * kNumClasses;
    }
    return cells;
}

} // namespace ghvfdt

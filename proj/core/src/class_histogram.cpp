#include "ghvfdt/class_histogram.hpp"

#include "ghvfdt/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

namespace ghvfdt {

ClassHistogram::ClassHistogram(std::vector<double> edges) : edges_(std::move(edges)) {
    if (edges_.size() < 3) {
        throw InputError("ClassHistogram: need at least two bins");
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (!std::isfinite(edges_[i])) {
            throw InputError("ClassHistogram: non-finite bin edge");
        }
        if (i > 0 && !(edges_[i - 1] < edges_[i])) {
            throw InputError("ClassHistogram: edges must be strictly increasing");
        }
    }
    counts_pos_.assign(edges_.size() - 1, 0);
    counts_neg_.assign(edges_.size() - 1, 0);
}

namespace {

std::optional<std::vector<double>> equal_width_edges(double lo, double hi, std::size_t bins) {
    if (bins < 2 || !std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        return std::nullopt;
    }
    std::vector<double> edges(bins + 1);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t j = 0; j < bins; ++j) {
        edges[j] = lo + width * static_cast<double>(j);
    }
    edges[bins] = hi;
    // a tiny span can collapse adjacent edges under rounding
    for (std::size_t j = 1; j <= bins; ++j) {
        if (!(edges[j - 1] < edges[j])) return std::nullopt;
    }
    return edges;
}

} // namespace

ClassHistogram ClassHistogram::equal_width(double lo, double hi, std::size_t bins) {
    if (bins < 2) throw InputError("ClassHistogram: bins must be >= 2");
    auto edges = equal_width_edges(lo, hi, bins);
    if (!edges) {
        throw InputError(fmt::format("ClassHistogram: range [{}, {}] unusable for {} bins", lo,
                                     hi, bins));
    }
    return ClassHistogram(std::move(*edges));
}

std::optional<ClassHistogram> ClassHistogram::try_equal_width(double lo, double hi,
                                                              std::size_t bins) {
    auto edges = equal_width_edges(lo, hi, bins);
    if (!edges) return std::nullopt;
    return ClassHistogram(std::move(*edges));
}

std::size_t ClassHistogram::bin_of(double x) const noexcept {
    // first edge strictly greater than x; interior edges belong to the upper bin
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    const auto idx = static_cast<std::size_t>(std::distance(edges_.begin(), it));
    if (idx == 0) return 0;
    return std::min(idx - 1, bins() - 1);
}

void ClassHistogram::add(double x, ClassLabel label) {
    if (!std::isfinite(x)) {
        throw InputError(fmt::format("ClassHistogram: non-finite observation {}", x));
    }
    const std::size_t j = bin_of(x);
    if (label == ClassLabel::Positive) {
        ++counts_pos_[j];
        ++total_pos_;
    } else {
        ++counts_neg_[j];
        ++total_neg_;
    }
}

void ClassHistogram::set_counts(std::vector<std::uint64_t> pos, std::vector<std::uint64_t> neg) {
    if (pos.size() != bins() || neg.size() != bins()) {
        throw InputError("ClassHistogram: count vector size does not match bins");
    }
    counts_pos_ = std::move(pos);
    counts_neg_ = std::move(neg);
    total_pos_ = std::accumulate(counts_pos_.begin(), counts_pos_.end(), std::uint64_t{0});
    total_neg_ = std::accumulate(counts_neg_.begin(), counts_neg_.end(), std::uint64_t{0});
}

} // namespace ghvfdt

#pragma once

#include "ghvfdt/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ghvfdt {

/// Fixed-edge per-class histogram of one feature at one leaf.
///
/// Bin j covers [edges[j], edges[j+1]). Values below edges.front() fall in
/// bin 0 and values at or above edges.back() fall in the last bin, so every
/// update lands somewhere. Edges never move after construction.
class ClassHistogram {
public:
    ClassHistogram() = default;

    /// Takes explicit edges; needs at least 3 strictly increasing values
    /// (two bins).
    explicit ClassHistogram(std::vector<double> edges);

    /// `bins` equal-width bins spanning [lo, hi]. Requires bins >= 2 and
    /// finite lo < hi.
    static ClassHistogram equal_width(double lo, double hi, std::size_t bins);

    /// As equal_width, but returns nullopt instead of throwing when the
    /// range is empty or too narrow to hold distinct edges.
    static std::optional<ClassHistogram> try_equal_width(double lo, double hi, std::size_t bins);

    void add(double x, ClassLabel label);

    std::size_t bin_of(double x) const noexcept;
    std::size_t bins() const noexcept { return counts_pos_.size(); }

    std::span<const double> edges() const noexcept { return edges_; }
    std::span<const std::uint64_t> counts(ClassLabel label) const noexcept {
        return label == ClassLabel::Positive ? std::span<const std::uint64_t>(counts_pos_)
                                             : std::span<const std::uint64_t>(counts_neg_);
    }
    std::uint64_t total(ClassLabel label) const noexcept {
        return label == ClassLabel::Positive ? total_pos_ : total_neg_;
    }

    /// Overwrites the count vectors (deserialization and test fixtures).
    /// Sizes must equal bins().
    void set_counts(std::vector<std::uint64_t> pos, std::vector<std::uint64_t> neg);

    friend bool operator==(const ClassHistogram&, const ClassHistogram&) = default;

private:
    std::vector<double> edges_;
    std::vector<std::uint64_t> counts_pos_;
    std::vector<std::uint64_t> counts_neg_;
    std::uint64_t total_pos_ = 0;
    std::uint64_t total_neg_ = 0;
};

} // namespace ghvfdt

#pragma once

#include "ghvfdt/types.hpp"

#include <cstdint>
#include <span>

namespace ghvfdt {

struct Confusion {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    void record(ClassLabel truth, ClassLabel predicted) noexcept {
        if (truth == ClassLabel::Positive) {
            (predicted == ClassLabel::Positive ? tp : fn) += 1;
        } else {
            (predicted == ClassLabel::Positive ? fp : tn) += 1;
        }
    }

    std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
    std::uint64_t positives() const noexcept { return tp + fn; }
    std::uint64_t negatives() const noexcept { return tn + fp; }

    friend bool operator==(const Confusion&, const Confusion&) = default;
};

struct MetricSet {
    double recall = 0.0;
    double fpr = 0.0;
    double gmean = 0.0;
    double fscore = 0.0;
    double precision = 0.0;
};

/// Recall, false-positive rate, G-Mean, F1 and precision.
///
/// Throws InputError for negative counts and InsufficientData when either
/// class is absent (G-Mean is undefined). Precision with no positive
/// predictions is 0, and so is F1 when precision + recall is 0.
MetricSet metrics_from_confusion(std::int64_t tp, std::int64_t fp, std::int64_t tn,
                                 std::int64_t fn);
MetricSet metrics_from_confusion(const Confusion& c);

struct MeanStd {
    double mean = 0.0;
    /// Sample standard deviation (n - 1); 0 for fewer than two values.
    double stddev = 0.0;
};

MeanStd mean_std(std::span<const double> values) noexcept;

} // namespace ghvfdt

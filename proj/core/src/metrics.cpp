#include "ghvfdt/metrics.hpp"

#include "ghvfdt/error.hpp"

#include <cmath>

namespace ghvfdt {

MetricSet metrics_from_confusion(std::int64_t tp, std::int64_t fp, std::int64_t tn,
                                 std::int64_t fn) {
    if (tp < 0 || fp < 0 || tn < 0 || fn < 0) {
        throw InputError("metrics: confusion counts must be non-negative");
    }
    if (tp + fn == 0 || tn + fp == 0) {
        throw InsufficientData("metrics: G-Mean needs at least one instance of each class");
    }
    const auto d = [](std::int64_t v) { return static_cast<double>(v); };
    MetricSet m;
    m.recall = d(tp) / d(tp + fn);
    m.fpr = d(fp) / d(tn + fp);
    const double specificity = d(tn) / d(tn + fp);
    m.gmean = std::sqrt(m.recall * specificity);
    m.precision = tp + fp == 0 ? 0.0 : d(tp) / d(tp + fp);
    const double pr = m.precision + m.recall;
    m.fscore = pr == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / pr;
    return m;
}

MetricSet metrics_from_confusion(const Confusion& c) {
    return metrics_from_confusion(static_cast<std::int64_t>(c.tp), static_cast<std::int64_t>(c.fp),
                                  static_cast<std::int64_t>(c.tn), static_cast<std::int64_t>(c.fn));
}

MeanStd mean_std(std::span<const double> values) noexcept {
    MeanStd out;
    if (values.empty()) return out;
    double sum = 0.0;
    for (const double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) return out;
    double ss = 0.0;
    for (const double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return out;
}

} // namespace ghvfdt

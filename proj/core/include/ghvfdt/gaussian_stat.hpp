#pragma once

#include <cstdint>

namespace ghvfdt {

/// Running count, mean and sum of squared deviations for one
/// (leaf, feature, class) cell, updated with Welford's recurrence.
///
/// Variance is the population variance m2 / count. A default-constructed
/// stat has count == 0, mean == 0 and m2 == 0.
class GaussianStat {
public:
    GaussianStat() = default;

    /// Folds one observation in. Throws InputError on NaN or infinity.
    void add(double x);

    /// Combines the statistics of a disjoint sequence (Chan et al. merge).
    void merge(const GaussianStat& other) noexcept;

    std::uint64_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    double m2() const noexcept { return m2_; }

    /// Population variance; 0 when fewer than one observation.
    double variance() const noexcept;
    double stddev() const noexcept;

    /// Rebuilds a stat from stored fields (deserialization). Throws
    /// InputError if the fields violate the type's invariants.
    static GaussianStat from_parts(std::uint64_t count, double mean, double m2);

    friend bool operator==(const GaussianStat&, const GaussianStat&) = default;

private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

} // namespace ghvfdt

#pragma once

#include "ghvfdt/class_histogram.hpp"
#include "ghvfdt/gaussian_stat.hpp"
#include "ghvfdt/leaf_stats.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>

namespace ghvfdt {

enum class SplitCriterion { InfoGain, HellingerBinned, HellingerGaussian };

std::string_view to_string(SplitCriterion c) noexcept;

/// Parses "vfdt" / "info-gain", "hd-vfdt" / "hellinger-binned",
/// "gh-vfdt" / "hellinger-gaussian".
std::optional<SplitCriterion> parse_criterion(std::string_view name) noexcept;

/// Range R of the criterion, as used by the Hoeffding bound:
/// sqrt(2) for binned Hellinger, 1 for Gaussian Hellinger and binary
/// information gain.
double criterion_range(SplitCriterion c) noexcept;

/// Hellinger distance between the normalized positive and negative
/// frequency vectors of `h`, in [0, sqrt(2)].
/// Throws UndefinedDistance if either class has no instances.
double hellinger_binned(const ClassHistogram& h);

/// Binned Hellinger distance of the two-way partition that puts bins
/// [0, cut) on the left and [cut, bins) on the right. `cut` in [1, bins-1].
double hellinger_binned_cut(const ClassHistogram& h, std::size_t cut);

/// Closed-form Hellinger distance between N(mu1, sigma1^2) and
/// N(mu2, sigma2^2), in [0, 1].
///
/// Degenerate spreads: both zero gives 0 for equal means and 1 otherwise;
/// a single zero spread is floored at kMinSigma.
double hellinger_gaussian(double mu1, double sigma1, double mu2, double sigma2);

/// Same distance from running statistics (population standard deviation).
/// Throws InsufficientData unless both sides have at least two observations.
double hellinger_gaussian(const GaussianStat& pos, const GaussianStat& neg);

inline constexpr double kMinSigma = 1e-9;

/// Binary entropy (bits) of a (pos, neg) count pair; 0 for an empty pair.
double binary_entropy(double pos, double neg) noexcept;

/// Information gain (bits) of the two-way split at bin boundary `cut`
/// (bins [0, cut) left). Empty children contribute nothing.
/// Throws ContractViolation for an empty histogram or out-of-range cut.
double info_gain(const ClassHistogram& h, std::size_t cut);

struct HoeffdingParams {
    double delta = 1e-7;
    double tau = 0.05;
    double range = 1.0;
};

/// eps = sqrt(R^2 ln(1/delta) / (2n)). Throws ContractViolation for n == 0
/// or parameters outside their domains.
double hoeffding_epsilon(const HoeffdingParams& params, std::uint64_t n);

struct SplitScore {
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    std::size_t feature = kNone;
    double threshold = 0.0;
    double score = 0.0;

    bool valid() const noexcept { return feature != kNone; }
    friend bool operator==(const SplitScore&, const SplitScore&) = default;
};

/// Best score and cut point for a single feature, or nullopt when the
/// feature cannot be scored yet (too few observations of a class, or no
/// histogram for a binned criterion).
std::optional<SplitScore> score_feature(const LeafStats& stats, std::size_t feature,
                                        SplitCriterion criterion);

struct BestSplits {
    SplitScore best;
    SplitScore second;
};

/// Top two features by criterion score. Ties go to the lower feature index
/// and, within a feature, to the lower threshold. A slot with no scoreable
/// feature is invalid with score 0.
BestSplits best_two_features(const LeafStats& stats, SplitCriterion criterion);

} // namespace ghvfdt

#include "ghvfdt/split_criteria.hpp"

#include "ghvfdt/error.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace ghvfdt {

std::string_view to_string(SplitCriterion c) noexcept {
    switch (c) {
    case SplitCriterion::InfoGain: return "vfdt";
    case SplitCriterion::HellingerBinned: return "hd-vfdt";
    case SplitCriterion::HellingerGaussian: return "gh-vfdt";
    }
    return "unknown";
}

std::optional<SplitCriterion> parse_criterion(std::string_view name) noexcept {
    if (name == "vfdt" || name == "info-gain") return SplitCriterion::InfoGain;
    if (name == "hd-vfdt" || name == "hellinger-binned") return SplitCriterion::HellingerBinned;
    if (name == "gh-vfdt" || name == "hellinger-gaussian") return SplitCriterion::HellingerGaussian;
    return std::nullopt;
}

double criterion_range(SplitCriterion c) noexcept {
    return c == SplitCriterion::HellingerBinned ? std::numbers::sqrt2 : 1.0;
}

namespace {

// One term of the Hellinger sum. Each frequency is a single division so
// that scaling a count and its total by the same integer is exact.
inline double hellinger_term(double pos, double pos_total, double neg, double neg_total) {
    const double d = std::sqrt(pos / pos_total) - std::sqrt(neg / neg_total);
    return d * d;
}

} // namespace

double hellinger_binned(const ClassHistogram& h) {
    const auto pos_total = static_cast<double>(h.total(ClassLabel::Positive));
    const auto neg_total = static_cast<double>(h.total(ClassLabel::Negative));
    if (pos_total == 0.0 || neg_total == 0.0) {
        throw UndefinedDistance("hellinger_binned: both classes need at least one instance");
    }
    const auto pos = h.counts(ClassLabel::Positive);
    const auto neg = h.counts(ClassLabel::Negative);
    double sum = 0.0;
    for (std::size_t j = 0; j < h.bins(); ++j) {
        sum += hellinger_term(static_cast<double>(pos[j]), pos_total,
                              static_cast<double>(neg[j]), neg_total);
    }
    return std::sqrt(sum);
}

double hellinger_binned_cut(const ClassHistogram& h, std::size_t cut) {
    if (cut == 0 || cut >= h.bins()) {
        throw ContractViolation(fmt::format("hellinger_binned_cut: cut {} outside [1, {}]", cut,
                                            h.bins() - 1));
    }
    const auto pos_total = h.total(ClassLabel::Positive);
    const auto neg_total = h.total(ClassLabel::Negative);
    if (pos_total == 0 || neg_total == 0) {
        throw UndefinedDistance("hellinger_binned_cut: both classes need at least one instance");
    }
    const auto pos = h.counts(ClassLabel::Positive);
    const auto neg = h.counts(ClassLabel::Negative);
    std::uint64_t pos_left = 0;
    std::uint64_t neg_left = 0;
    for (std::size_t j = 0; j < cut; ++j) {
        pos_left += pos[j];
        neg_left += neg[j];
    }
    const auto pt = static_cast<double>(pos_total);
    const auto nt = static_cast<double>(neg_total);
    const double sum =
        hellinger_term(static_cast<double>(pos_left), pt, static_cast<double>(neg_left), nt) +
        hellinger_term(static_cast<double>(pos_total - pos_left), pt,
                       static_cast<double>(neg_total - neg_left), nt);
    return std::sqrt(sum);
}

double hellinger_gaussian(double mu1, double sigma1, double mu2, double sigma2) {
    if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(sigma1) ||
        !std::isfinite(sigma2) || sigma1 < 0.0 || sigma2 < 0.0) {
        throw InputError("hellinger_gaussian: means must be finite and spreads finite, >= 0");
    }
    if (sigma1 == 0.0 && sigma2 == 0.0) {
        return mu1 == mu2 ? 0.0 : 1.0;
    }
    if (sigma1 == 0.0) sigma1 = kMinSigma;
    if (sigma2 == 0.0) sigma2 = kMinSigma;

    const double var_sum = sigma1 * sigma1 + sigma2 * sigma2;
    const double diff = mu1 - mu2;
    const double coefficient =
        std::sqrt(2.0 * sigma1 * sigma2 / var_sum) * std::exp(-0.25 * diff * diff / var_sum);
    const double one_minus = 1.0 - coefficient;
    return one_minus <= 0.0 ? 0.0 : std::sqrt(one_minus);
}

double hellinger_gaussian(const GaussianStat& pos, const GaussianStat& neg) {
    if (pos.count() < 2 || neg.count() < 2) {
        throw InsufficientData("hellinger_gaussian: need at least two observations per class");
    }
    return hellinger_gaussian(pos.mean(), pos.stddev(), neg.mean(), neg.stddev());
}

double binary_entropy(double pos, double neg) noexcept {
    const double n = pos + neg;
    if (n <= 0.0) return 0.0;
    double h = 0.0;
    if (pos > 0.0) {
        const double p = pos / n;
        h -= p * std::log2(p);
    }
    if (neg > 0.0) {
        const double q = neg / n;
        h -= q * std::log2(q);
    }
    return h;
}

double info_gain(const ClassHistogram& h, std::size_t cut) {
    if (cut == 0 || cut >= h.bins()) {
        throw ContractViolation(fmt::format("info_gain: cut {} outside [1, {}]", cut,
                                            h.bins() - 1));
    }
    const auto pos_total = h.total(ClassLabel::Positive);
    const auto neg_total = h.total(ClassLabel::Negative);
    if (pos_total + neg_total == 0) {
        throw ContractViolation("info_gain: empty histogram");
    }
    const auto pos = h.counts(ClassLabel::Positive);
    const auto neg = h.counts(ClassLabel::Negative);
    std::uint64_t pos_left = 0;
    std::uint64_t neg_left = 0;
    for (std::size_t j = 0; j < cut; ++j) {
        pos_left += pos[j];
        neg_left += neg[j];
    }
    const auto n = static_cast<double>(pos_total + neg_total);
    const auto n_left = static_cast<double>(pos_left + neg_left);
    const double n_right = n - n_left;
    const double parent = binary_entropy(static_cast<double>(pos_total),
                                         static_cast<double>(neg_total));
    const double left = binary_entropy(static_cast<double>(pos_left),
                                       static_cast<double>(neg_left));
    const double right = binary_entropy(static_cast<double>(pos_total - pos_left),
                                        static_cast<double>(neg_total - neg_left));
    const double gain = parent - (n_left / n) * left - (n_right / n) * right;
    return gain < 0.0 ? 0.0 : gain;
}

double hoeffding_epsilon(const HoeffdingParams& params, std::uint64_t n) {
    if (n == 0) throw ContractViolation("hoeffding_epsilon: n must be >= 1");
    if (!(params.delta > 0.0 && params.delta < 1.0)) {
        throw ContractViolation("hoeffding_epsilon: delta must lie in (0, 1)");
    }
    if (!(params.range > 0.0)) throw ContractViolation("hoeffding_epsilon: range must be > 0");
    const double r = params.range;
    return std::sqrt(r * r * std::log(1.0 / params.delta) / (2.0 * static_cast<double>(n)));
}

std::optional<SplitScore> score_feature(const LeafStats& stats, std::size_t feature,
                                        SplitCriterion criterion) {
    if (feature >= stats.num_features()) {
        throw ContractViolation(fmt::format("score_feature: feature {} out of range", feature));
    }
    if (criterion == SplitCriterion::HellingerGaussian) {
        const auto& pos = stats.gaussian[feature][class_index(ClassLabel::Positive)];
        const auto& neg = stats.gaussian[feature][class_index(ClassLabel::Negative)];
        if (pos.count() < 2 || neg.count() < 2) return std::nullopt;
        return SplitScore{feature, 0.5 * (pos.mean() + neg.mean()), hellinger_gaussian(pos, neg)};
    }

    if (!stats.has_histograms()) return std::nullopt;
    const ClassHistogram& h = stats.histograms[feature];
    const bool hellinger = criterion == SplitCriterion::HellingerBinned;
    if (hellinger && (h.total(ClassLabel::Positive) == 0 || h.total(ClassLabel::Negative) == 0)) {
        return std::nullopt;
    }
    if (!hellinger && h.total(ClassLabel::Positive) + h.total(ClassLabel::Negative) == 0) {
        return std::nullopt;
    }
    SplitScore best{feature, h.edges()[1], -1.0};
    for (std::size_t cut = 1; cut < h.bins(); ++cut) {
        const double s = hellinger ? hellinger_binned_cut(h, cut) : info_gain(h, cut);
        if (s > best.score) {
            best.score = s;
            best.threshold = h.edges()[cut];
        }
    }
    return best;
}

BestSplits best_two_features(const LeafStats& stats, SplitCriterion criterion) {
    BestSplits out;
    for (std::size_t j = 0; j < stats.num_features(); ++j) {
        const auto s = score_feature(stats, j, criterion);
        if (!s) continue;
        if (!out.best.valid() || s->score > out.best.score) {
            out.second = out.best;
            out.best = *s;
        } else if (!out.second.valid() || s->score > out.second.score) {
            out.second = *s;
        }
    }
    return out;
}

} // namespace ghvfdt

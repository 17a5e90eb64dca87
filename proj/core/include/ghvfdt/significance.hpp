#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ghvfdt {

struct AnovaResult {
    double f_statistic = 0.0;
    double p_value = 1.0;
    std::size_t df_between = 0;
    std::size_t df_within = 0;
    double ms_between = 0.0;
    double ms_within = 0.0;
};

/// One-way ANOVA over k groups. Needs k >= 2 and at least two samples per
/// group (InsufficientData otherwise). With zero within-group variance the
/// result is F = 0, p = 1 if the group means also agree, and F = inf, p = 0
/// if they do not.
AnovaResult anova_oneway(std::span<const std::vector<double>> groups);

/// CDF of the studentized range for k means and `df` error degrees of
/// freedom (df <= 0 means infinite).
double studentized_range_cdf(double q, std::size_t k, double df);

/// Upper critical value q with P(Q > q) = alpha, found by bisection on the
/// CDF.
double studentized_range_critical(double alpha, std::size_t k, double df);

struct PairwiseComparison {
    std::size_t first = 0;
    std::size_t second = 0;
    /// mean(first) - mean(second)
    double mean_difference = 0.0;
    /// Smallest |difference| that is significant at the report's alpha.
    double critical_difference = 0.0;
    double p_value = 1.0;
    bool significant = false;
};

struct SignificanceReport {
    std::vector<std::string> groups;
    double f_statistic = 0.0;
    double p_value = 1.0;
    double alpha = 0.01;
    double q_critical = 0.0;
    std::vector<PairwiseComparison> pairwise;
};

/// Tukey HSD (Tukey-Kramer for unequal group sizes) after a one-way ANOVA.
/// Pairs are listed (0,1), (0,2), ..., (k-2,k-1). Empty `names` are
/// replaced by "g0", "g1", ...
SignificanceReport tukey_hsd(std::span<const std::vector<double>> groups, double alpha,
                             std::vector<std::string> names = {});

} // namespace ghvfdt

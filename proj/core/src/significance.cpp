#include "ghvfdt/significance.hpp"

#include "ghvfdt/error.hpp"

#include <algorithm>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

namespace ghvfdt {

namespace {

double group_mean(const std::vector<double>& g) {
    double s = 0.0;
    for (const double v : g) s += v;
    return s / static_cast<double>(g.size());
}

void check_groups(std::span<const std::vector<double>> groups) {
    if (groups.size() < 2) throw InsufficientData("anova: at least two groups required");
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (groups[i].size() < 2) {
            throw InsufficientData(fmt::format("anova: group {} has fewer than two samples", i));
        }
        for (const double v : groups[i]) {
            if (!std::isfinite(v)) throw InputError("anova: non-finite sample");
        }
    }
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

// Range distribution of k standard normals: P(range <= w).
double range_cdf_infinite_df(double w, std::size_t k) {
    if (w <= 0.0) return 0.0;
    const double km1 = static_cast<double>(k - 1);
    auto integrand = [&](double z) {
        const double inner = normal_cdf(z) - normal_cdf(z - w);
        return inner <= 0.0 ? 0.0 : normal_pdf(z) * std::pow(inner, km1);
    };
    using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double upper = 9.0 + w;
    const double p = static_cast<double>(k) * Quad::integrate(integrand, -9.0, upper, 12, 1e-13);
    return std::clamp(p, 0.0, 1.0);
}

} // namespace

AnovaResult anova_oneway(std::span<const std::vector<double>> groups) {
    check_groups(groups);
    std::size_t n_total = 0;
    double grand_sum = 0.0;
    for (const auto& g : groups) {
        n_total += g.size();
        for (const double v : g) grand_sum += v;
    }
    const double grand_mean = grand_sum / static_cast<double>(n_total);

    double ss_between = 0.0;
    double ss_within = 0.0;
    for (const auto& g : groups) {
        const double m = group_mean(g);
        ss_between += static_cast<double>(g.size()) * (m - grand_mean) * (m - grand_mean);
        for (const double v : g) ss_within += (v - m) * (v - m);
    }

    AnovaResult r;
    r.df_between = groups.size() - 1;
    r.df_within = n_total - groups.size();
    r.ms_between = ss_between / static_cast<double>(r.df_between);
    r.ms_within = ss_within / static_cast<double>(r.df_within);

    // treat sums of squares at rounding level as exact zeros
    const double scale = std::max(1.0, grand_mean * grand_mean * static_cast<double>(n_total));
    const bool no_within = ss_within <= 1e-14 * scale;
    const bool no_between = ss_between <= 1e-14 * scale;
    if (no_within) {
        r.f_statistic = no_between ? 0.0 : std::numeric_limits<double>::infinity();
        r.p_value = no_between ? 1.0 : 0.0;
        return r;
    }
    r.f_statistic = r.ms_between / r.ms_within;
    const boost::math::fisher_f dist(static_cast<double>(r.df_between),
                                     static_cast<double>(r.df_within));
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.f_statistic));
    return r;
}

double studentized_range_cdf(double q, std::size_t k, double df) {
    if (k < 2) throw ContractViolation("studentized range: k must be >= 2");
    if (!(q > 0.0)) return 0.0;
    if (!(df > 0.0) || std::isinf(df)) return range_cdf_infinite_df(q, k);

    // Mix the infinite-df range CDF over s = sqrt(chi2_df / df), whose density is
    // df^(df/2) / (Gamma(df/2) 2^(df/2-1)) s^(df-1) exp(-df s^2 / 2).
    const double log_norm = 0.5 * df * std::log(df) - std::lgamma(0.5 * df) -
                            (0.5 * df - 1.0) * std::numbers::ln2;
    auto density = [&](double s) {
        if (s <= 0.0) return 0.0;
        return std::exp(log_norm + (df - 1.0) * std::log(s) - 0.5 * df * s * s);
    };
    // s concentrates around 1 with spread ~ 1/sqrt(2 df)
    const double spread = 1.0 / std::sqrt(2.0 * df);
    const double lo = std::max(0.0, 1.0 - 14.0 * spread);
    const double hi = 1.0 + 14.0 * spread + (df < 10.0 ? 6.0 : 0.0);
    using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double p = Quad::integrate(
        [&](double s) { return density(s) * range_cdf_infinite_df(q * s, k); }, lo, hi, 10,
        1e-11);
    return std::clamp(p, 0.0, 1.0);
}

double studentized_range_critical(double alpha, std::size_t k, double df) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ContractViolation("studentized range: alpha must lie in (0, 1)");
    }
    const double target = 1.0 - alpha;
    double lo = 0.0;
    double hi = 1.0;
    while (studentized_range_cdf(hi, k, df) < target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw Error("studentized range: critical value search diverged");
    }
    for (int it = 0; it < 100 && hi - lo > 1e-10 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (studentized_range_cdf(mid, k, df) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

SignificanceReport tukey_hsd(std::span<const std::vector<double>> groups, double alpha,
                             std::vector<std::string> names) {
    const AnovaResult anova = anova_oneway(groups);
    if (!(alpha > 0.0 && alpha < 1.0)) throw ContractViolation("tukey_hsd: alpha outside (0, 1)");

    SignificanceReport rep;
    rep.f_statistic = anova.f_statistic;
    rep.p_value = anova.p_value;
    rep.alpha = alpha;
    if (names.empty()) {
        for (std::size_t i = 0; i < groups.size(); ++i) names.push_back(fmt::format("g{}", i));
    }
    if (names.size() != groups.size()) throw InputError("tukey_hsd: one name per group required");
    rep.groups = std::move(names);

    const std::size_t k = groups.size();
    const auto df = static_cast<double>(anova.df_within);
    rep.q_critical = studentized_range_critical(alpha, k, df);

    std::vector<double> means;
    for (const auto& g : groups) means.push_back(group_mean(g));

    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            PairwiseComparison c;
            c.first = i;
            c.second = j;
            c.mean_difference = means[i] - means[j];
            const double se = std::sqrt(anova.ms_within / 2.0 *
                                        (1.0 / static_cast<double>(groups[i].size()) +
                                         1.0 / static_cast<double>(groups[j].size())));
            c.critical_difference = rep.q_critical * se;
            const double diff = std::abs(c.mean_difference);
            if (se == 0.0 || anova.ms_within <= 0.0) {
                c.significant = diff > 0.0;
                c.p_value = c.significant ? 0.0 : 1.0;
            } else {
                c.significant = diff > c.critical_difference;
                c.p_value = 1.0 - studentized_range_cdf(diff / se, k, df);
            }
            rep.pairwise.push_back(c);
        }
    }
    return rep;
}

} // namespace ghvfdt

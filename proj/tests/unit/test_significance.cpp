#include "ghvfdt/error.hpp"
#include "ghvfdt/significance.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

using namespace ghvfdt;

namespace {

using Groups = std::vector<std::vector<double>>;

// Reference values below were computed with scipy.stats (f_oneway,
// tukey_hsd, studentized_range) before the implementation was written.
const Groups kWorked{
    {0.91, 0.89, 0.93, 0.90, 0.92, 0.88, 0.94, 0.90, 0.91, 0.89},
    {0.88, 0.87, 0.90, 0.86, 0.89, 0.91, 0.87, 0.88, 0.86, 0.90},
    {0.52, 0.48, 0.55, 0.50, 0.47, 0.53, 0.51, 0.49, 0.54, 0.50},
};

std::set<std::pair<std::size_t, std::size_t>> significant_pairs(const SignificanceReport& r) {
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (const auto& p : r.pairwise)
        if (p.significant) out.emplace(p.first, p.second);
    return out;
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

} // namespace

TEST(Anova, SmallReferenceExample) {
    const Groups g{{1, 2, 3}, {2, 3, 4}, {10, 11, 12}};
    const auto r = anova_oneway(g);
    EXPECT_NEAR(r.f_statistic, 73.0, 1e-9);
    EXPECT_NEAR(r.p_value, 6.150677941390873e-05, 1e-12);
    EXPECT_EQ(r.df_between, 2u);
    EXPECT_EQ(r.df_within, 6u);
}

TEST(Anova, WorkedExample) {
    const auto r = anova_oneway(kWorked);
    EXPECT_NEAR(r.f_statistic, 1112.529850746293, 1e-6);
    EXPECT_NEAR(r.p_value, 1.1576630578999431e-26, 1e-30);
}

TEST(Anova, UnequalSizes) {
    const Groups g{{1.0, 1.3, 0.9, 1.1}, {1.6, 1.8, 1.5, 1.7, 1.9, 1.6}, {1.2, 1.1, 1.4, 1.3, 1.0}};
    const auto r = anova_oneway(g);
    EXPECT_NEAR(r.f_statistic, 21.907605633802813, 1e-9);
    EXPECT_NEAR(r.p_value, 9.875794370155621e-05, 1e-12);
}

TEST(Anova, TwoGroupsMatchPooledTSquared) {
    const Groups g{{2.1, 2.5, 2.2, 2.8, 2.4}, {3.0, 2.9, 3.3, 2.7, 3.1, 3.2}};
    double ss = 0;
    for (const auto& grp : g) {
        const double m = mean(grp);
        for (double x : grp) ss += (x - m) * (x - m);
    }
    const double n1 = 5, n2 = 6;
    const double sp2 = ss / (n1 + n2 - 2);
    const double t = (mean(g[0]) - mean(g[1])) / std::sqrt(sp2 * (1 / n1 + 1 / n2));
    const auto r = anova_oneway(g);
    EXPECT_NEAR(r.f_statistic, t * t, 1e-9);
    EXPECT_NEAR(r.f_statistic, 18.4602272727273, 1e-9);
}

TEST(Anova, ConstantGroups) {
    const Groups same{{3, 3, 3}, {3, 3, 3}};
    auto r = anova_oneway(same);
    EXPECT_EQ(r.f_statistic, 0.0);
    EXPECT_EQ(r.p_value, 1.0);
    const Groups apart{{3, 3, 3}, {4, 4, 4}};
    r = anova_oneway(apart);
    EXPECT_TRUE(std::isinf(r.f_statistic));
    EXPECT_EQ(r.p_value, 0.0);
}

TEST(Anova, InsufficientData) {
    EXPECT_THROW(anova_oneway(Groups{{1, 2, 3}}), InsufficientData);
    EXPECT_THROW(anova_oneway(Groups{{1, 2, 3}, {4}}), InsufficientData);
}

TEST(Anova, RangeProperty) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z(0, 1);
    for (int i = 0; i < 200; ++i) {
        Groups g(3, std::vector<double>(6));
        for (auto& grp : g)
            for (auto& x : grp) x = z(rng);
        const auto r = anova_oneway(g);
        EXPECT_GE(r.f_statistic, 0.0);
        EXPECT_GE(r.p_value, 0.0);
        EXPECT_LE(r.p_value, 1.0);
    }
}

TEST(StudentizedRange, CdfAndCriticalValues) {
    EXPECT_NEAR(studentized_range_cdf(3.5, 3, 27), 0.9495093194000047, 1e-7);
    EXPECT_NEAR(studentized_range_critical(0.01, 3, 27), 4.4948422455264465, 1e-5);
    EXPECT_NEAR(studentized_range_critical(0.01, 3, 0), 4.12030320646012, 1e-5);
    EXPECT_NEAR(studentized_range_critical(0.05, 3, 10), 3.876776750013158, 1e-5);
    EXPECT_NEAR(studentized_range_critical(0.01, 4, 20), 5.018016131510623, 1e-5);
    EXPECT_NEAR(studentized_range_critical(0.01, 2, 5), 5.7023112927712685, 1e-5);
}

TEST(StudentizedRange, TwoMeansMatchScaledNormal) {
    // With k = 2 and infinite df, Q = |Z1 - Z2| so P(Q <= q) = 2 Phi(q / sqrt 2) - 1.
    for (double q : {0.5, 1.0, 2.0, 3.0}) {
        const double expect = std::erf(q / 2.0);
        EXPECT_NEAR(studentized_range_cdf(q, 2, 0), expect, 1e-9);
    }
}

TEST(Tukey, WorkedExampleSignificantPairs) {
    const auto r = tukey_hsd(kWorked, 0.01, {"A", "B", "C"});
    ASSERT_EQ(r.pairwise.size(), 3u);
    EXPECT_NEAR(r.f_statistic, 1112.529850746293, 1e-6);
    const std::set<std::pair<std::size_t, std::size_t>> expect{{0, 2}, {1, 2}};
    EXPECT_EQ(significant_pairs(r), expect);
    EXPECT_NEAR(r.pairwise[0].p_value, 0.034784595891781955, 1e-6);
    EXPECT_NEAR(r.pairwise[0].mean_difference, mean(kWorked[0]) - mean(kWorked[1]), 1e-12);
    EXPECT_EQ(r.groups, (std::vector<std::string>{"A", "B", "C"}));

    const auto loose = tukey_hsd(kWorked, 0.05);
    EXPECT_EQ(significant_pairs(loose).size(), 3u);
    EXPECT_EQ(loose.groups, (std::vector<std::string>{"g0", "g1", "g2"}));
}

TEST(Tukey, UnequalSizes) {
    const Groups g{{1.0, 1.3, 0.9, 1.1}, {1.6, 1.8, 1.5, 1.7, 1.9, 1.6}, {1.2, 1.1, 1.4, 1.3, 1.0}};
    const auto r = tukey_hsd(g, 0.01);
    EXPECT_NEAR(r.pairwise[0].p_value, 0.0001694676607038037, 1e-6);
    EXPECT_NEAR(r.pairwise[1].p_value, 0.4827995746503644, 1e-6);
    EXPECT_NEAR(r.pairwise[2].p_value, 0.0007265810788794624, 1e-6);
    const std::set<std::pair<std::size_t, std::size_t>> expect{{0, 1}, {1, 2}};
    EXPECT_EQ(significant_pairs(r), expect);
}

TEST(Tukey, IdenticalGroupsNeverSignificant) {
    const Groups g{{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}};
    const auto r = tukey_hsd(g, 0.01);
    EXPECT_TRUE(significant_pairs(r).empty());
}

TEST(Tukey, ExtremeShiftIsSignificant) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> z(0, 1);
    Groups g(3, std::vector<double>(10));
    for (auto& grp : g)
        for (auto& x : grp) x = z(rng);
    for (auto& x : g[2]) x += 100.0;
    const auto r = tukey_hsd(g, 0.01);
    const auto sig = significant_pairs(r);
    EXPECT_TRUE(sig.count({0, 2}));
    EXPECT_TRUE(sig.count({1, 2}));
}

TEST(Tukey, CoversEveryPairOnceAndIsMonotoneInAlpha) {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> z(0, 1);
    for (int trial = 0; trial < 30; ++trial) {
        Groups g(4, std::vector<double>(8));
        for (std::size_t i = 0; i < g.size(); ++i)
            for (auto& x : g[i]) x = z(rng) + 0.4 * static_cast<double>(i);
        const auto strict = tukey_hsd(g, 0.01);
        const auto loose = tukey_hsd(g, 0.1);
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (const auto& p : strict.pairwise) {
            EXPECT_LT(p.first, p.second);
            EXPECT_TRUE(seen.emplace(p.first, p.second).second);
        }
        EXPECT_EQ(seen.size(), 6u);
        const auto a = significant_pairs(strict), b = significant_pairs(loose);
        for (const auto& p : a) EXPECT_TRUE(b.count(p));
    }
}

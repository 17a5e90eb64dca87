#include "ghvfdt/class_histogram.hpp"
#include "ghvfdt/error.hpp"
#include "ghvfdt/gaussian_stat.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

using namespace ghvfdt;

TEST(GaussianStat, SingleObservation) {
    GaussianStat s;
    s.add(5.0);
    EXPECT_EQ(s.count(), 1u);
    EXPECT_EQ(s.mean(), 5.0);
    EXPECT_EQ(s.m2(), 0.0);
    EXPECT_EQ(s.variance(), 0.0);
}

TEST(GaussianStat, MatchesTwoPassMoments) {
    const std::vector<double> xs{2.0, 4.0, 6.0};
    GaussianStat s;
    for (double x : xs) s.add(x);

    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / 3.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);

    EXPECT_EQ(s.count(), 3u);
    EXPECT_DOUBLE_EQ(s.mean(), 4.0);
    EXPECT_DOUBLE_EQ(s.mean(), mean);
    EXPECT_DOUBLE_EQ(s.variance(), 8.0 / 3.0);
    EXPECT_DOUBLE_EQ(s.variance(), ss / 3.0);
    EXPECT_DOUBLE_EQ(s.stddev(), std::sqrt(8.0 / 3.0));
}

TEST(GaussianStat, ConstantSequenceHasZeroVarianceExactly) {
    GaussianStat s;
    for (int i = 0; i < 1'000'000; ++i) s.add(3.0);
    EXPECT_EQ(s.mean(), 3.0);
    EXPECT_EQ(s.variance(), 0.0);
}

TEST(GaussianStat, EmptyStatIsAllZero) {
    GaussianStat s;
    EXPECT_EQ(s.count(), 0u);
    EXPECT_EQ(s.mean(), 0.0);
    EXPECT_EQ(s.m2(), 0.0);
    EXPECT_EQ(s.variance(), 0.0);
}

TEST(GaussianStat, RejectsNonFinite) {
    GaussianStat s;
    EXPECT_THROW(s.add(std::numeric_limits<double>::quiet_NaN()), InputError);
    EXPECT_THROW(s.add(std::numeric_limits<double>::infinity()), InputError);
    EXPECT_EQ(s.count(), 0u);
}

TEST(GaussianStat, LargeOffsetDoesNotCancel) {
    // naive sum-of-squares loses everything here
    GaussianStat s;
    for (double x : {1e9 + 4.0, 1e9 + 7.0, 1e9 + 13.0, 1e9 + 16.0}) s.add(x);
    EXPECT_NEAR(s.variance(), 22.5, 1e-6);
}

TEST(GaussianStatProperty, MeanIsOrderInsensitive) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    std::vector<double> xs(10'000);
    for (auto& x : xs) x = u(rng);

    GaussianStat reference;
    for (double x : xs) reference.add(x);
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(xs.begin(), xs.end(), rng);
        GaussianStat s;
        for (double x : xs) s.add(x);
        EXPECT_LE(std::abs(s.mean() - reference.mean()),
                  1e-9 * std::max(1.0, std::abs(reference.mean())));
    }
}

TEST(GaussianStatProperty, MergeEqualsConcatenation) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(5.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> len(0, 500);
        GaussianStat a, b, whole;
        const int na = len(rng), nb = len(rng);
        for (int i = 0; i < na; ++i) {
            const double x = n(rng);
            a.add(x);
            whole.add(x);
        }
        for (int i = 0; i < nb; ++i) {
            const double x = n(rng);
            b.add(x);
            whole.add(x);
        }
        a.merge(b);
        ASSERT_EQ(a.count(), whole.count());
        if (whole.count() == 0) continue;
        EXPECT_LE(std::abs(a.mean() - whole.mean()), 1e-9 * std::abs(whole.mean()));
        EXPECT_LE(std::abs(a.m2() - whole.m2()), 1e-9 * std::max(1.0, whole.m2()));
    }
}

TEST(GaussianStat, FromPartsValidates) {
    EXPECT_THROW(GaussianStat::from_parts(0, 1.0, 0.0), InputError);
    EXPECT_THROW(GaussianStat::from_parts(3, 1.0, -1.0), InputError);
    const auto s = GaussianStat::from_parts(3, 4.0, 8.0);
    EXPECT_DOUBLE_EQ(s.variance(), 8.0 / 3.0);
}

TEST(ClassHistogram, InteriorPoint) {
    ClassHistogram h({0.0, 1.0, 2.0});
    h.add(0.5, ClassLabel::Positive);
    EXPECT_EQ(h.counts(ClassLabel::Positive)[0], 1u);
    EXPECT_EQ(h.counts(ClassLabel::Positive)[1], 0u);
}

TEST(ClassHistogram, ClampsAboveRange) {
    ClassHistogram h({0.0, 1.0, 2.0});
    h.add(2.7, ClassLabel::Negative);
    EXPECT_EQ(h.counts(ClassLabel::Negative)[0], 0u);
    EXPECT_EQ(h.counts(ClassLabel::Negative)[1], 1u);
}

TEST(ClassHistogram, ClampsBelowRangeAndTopEdge) {
    ClassHistogram h({0.0, 1.0, 2.0});
    h.add(-5.0, ClassLabel::Negative);
    h.add(2.0, ClassLabel::Negative);
    EXPECT_EQ(h.counts(ClassLabel::Negative)[0], 1u);
    EXPECT_EQ(h.counts(ClassLabel::Negative)[1], 1u);
}

TEST(ClassHistogram, InteriorEdgeBelongsToUpperBin) {
    ClassHistogram h({0.0, 1.0, 2.0});
    h.add(1.0, ClassLabel::Positive);
    EXPECT_EQ(h.counts(ClassLabel::Positive)[0], 0u);
    EXPECT_EQ(h.counts(ClassLabel::Positive)[1], 1u);
    // half-open [edge_j, edge_{j+1}): just below the edge stays in the lower bin
    EXPECT_EQ(h.bin_of(std::nextafter(1.0, 0.0)), 0u);
}

TEST(ClassHistogram, RejectsBadEdgesAndValues) {
    EXPECT_THROW(ClassHistogram({0.0, 1.0}), InputError);
    EXPECT_THROW(ClassHistogram({0.0, 1.0, 1.0}), InputError);
    EXPECT_THROW(ClassHistogram({0.0, std::numeric_limits<double>::infinity(), 2.0}), InputError);
    EXPECT_THROW(ClassHistogram::equal_width(1.0, 1.0, 10), InputError);
    EXPECT_THROW(ClassHistogram::equal_width(0.0, 1.0, 1), InputError);
    EXPECT_FALSE(ClassHistogram::try_equal_width(2.0, 1.0, 4).has_value());
    ClassHistogram h({0.0, 1.0, 2.0});
    EXPECT_THROW(h.add(std::numeric_limits<double>::quiet_NaN(), ClassLabel::Positive), InputError);
}

TEST(ClassHistogram, EqualWidthEdges) {
    const auto h = ClassHistogram::equal_width(0.0, 10.0, 10);
    ASSERT_EQ(h.bins(), 10u);
    EXPECT_EQ(h.edges().front(), 0.0);
    EXPECT_EQ(h.edges().back(), 10.0);
    EXPECT_DOUBLE_EQ(h.edges()[3], 3.0);
}

TEST(ClassHistogramProperty, TotalsAreConserved) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 4.0);
    std::bernoulli_distribution coin(0.2);
    auto h = ClassHistogram::equal_width(-3.0, 3.0, 10);
    std::uint64_t pos = 0, neg = 0;
    for (int i = 0; i < 20'000; ++i) {
        const bool p = coin(rng);
        h.add(n(rng), p ? ClassLabel::Positive : ClassLabel::Negative);
        (p ? pos : neg) += 1;
    }
    const auto cp = h.counts(ClassLabel::Positive);
    const auto cn = h.counts(ClassLabel::Negative);
    EXPECT_EQ(std::accumulate(cp.begin(), cp.end(), std::uint64_t{0}), pos);
    EXPECT_EQ(std::accumulate(cn.begin(), cn.end(), std::uint64_t{0}), neg);
    EXPECT_EQ(h.total(ClassLabel::Positive) + h.total(ClassLabel::Negative), 20'000u);
}

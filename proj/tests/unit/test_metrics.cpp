#include "ghvfdt/error.hpp"
#include "ghvfdt/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace ghvfdt;

TEST(Metrics, ImbalancedExample) {
    const auto m = metrics_from_confusion(50, 100, 900, 50);
    EXPECT_DOUBLE_EQ(m.recall, 0.5);
    EXPECT_DOUBLE_EQ(m.fpr, 0.1);
    EXPECT_NEAR(m.gmean, std::sqrt(0.45), 1e-15);
    EXPECT_NEAR(m.gmean, 0.67082, 1e-5);
    EXPECT_NEAR(m.precision, 50.0 / 150.0, 1e-15);
    EXPECT_NEAR(m.fscore, 2 * (1.0 / 3) * 0.5 / (1.0 / 3 + 0.5), 1e-15);
}

TEST(Metrics, DegeneratePredictor) {
    const auto m = metrics_from_confusion(0, 0, 100, 10);
    EXPECT_EQ(m.recall, 0.0);
    EXPECT_EQ(m.gmean, 0.0);
    EXPECT_EQ(m.fscore, 0.0);
    EXPECT_EQ(m.precision, 0.0);
    EXPECT_EQ(m.fpr, 0.0);
}

TEST(Metrics, HarmonicMeanOfEquals) {
    const auto m = metrics_from_confusion(80, 20, 880, 20);
    EXPECT_NEAR(m.precision, 0.8, 1e-15);
    EXPECT_NEAR(m.recall, 0.8, 1e-15);
    EXPECT_NEAR(m.fscore, 0.8, 1e-15);
}

TEST(Metrics, Errors) {
    EXPECT_THROW(metrics_from_confusion(-1, 0, 1, 1), InputError);
    EXPECT_THROW(metrics_from_confusion(1, 0, 1, -3), InputError);
    EXPECT_THROW(metrics_from_confusion(0, 1, 1, 0), InsufficientData);
    EXPECT_THROW(metrics_from_confusion(1, 0, 0, 1), InsufficientData);
}

TEST(Metrics, ConfusionOverloadAndRecord) {
    Confusion c;
    c.record(ClassLabel::Positive, ClassLabel::Positive);
    c.record(ClassLabel::Positive, ClassLabel::Negative);
    c.record(ClassLabel::Negative, ClassLabel::Negative);
    c.record(ClassLabel::Negative, ClassLabel::Positive);
    c.record(ClassLabel::Negative, ClassLabel::Negative);
    EXPECT_EQ(c.tp, 1u);
    EXPECT_EQ(c.fn, 1u);
    EXPECT_EQ(c.tn, 2u);
    EXPECT_EQ(c.fp, 1u);
    EXPECT_EQ(c.total(), 5u);
    const auto m = metrics_from_confusion(c);
    EXPECT_DOUBLE_EQ(m.recall, 0.5);
    EXPECT_NEAR(m.fpr, 1.0 / 3.0, 1e-15);
}

TEST(Metrics, GmeanIdentityAndScalingInvariance) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::int64_t> d(0, 5000);
    for (int i = 0; i < 500; ++i) {
        const std::int64_t tp = d(rng), fp = d(rng), tn = d(rng) + 1, fn = d(rng) + 1;
        const auto m = metrics_from_confusion(tp, fp, tn, fn);
        EXPECT_NEAR(m.gmean * m.gmean, m.recall * (1 - m.fpr), 1e-12);
        for (std::int64_t k : {2, 7, 1000}) {
            const auto s = metrics_from_confusion(k * tp, k * fp, k * tn, k * fn);
            EXPECT_NEAR(s.gmean, m.gmean, 1e-15);
            EXPECT_NEAR(s.fscore, m.fscore, 1e-15);
        }
        for (double v : {m.recall, m.fpr, m.gmean, m.fscore, m.precision}) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(Metrics, MeanStd) {
    const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
    const auto ms = mean_std(v);
    EXPECT_DOUBLE_EQ(ms.mean, 5.0);
    EXPECT_NEAR(ms.stddev, std::sqrt(32.0 / 7.0), 1e-15);
    EXPECT_EQ(mean_std(std::vector<double>{3.0}).stddev, 0.0);
    EXPECT_EQ(mean_std(std::vector<double>{}).mean, 0.0);
}

#pragma once

#include "experiment_config.hpp"

#include "ghvfdt/metrics.hpp"
#include "ghvfdt/significance.hpp"
#include "ghvfdt/stream.hpp"

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ghvfdt::cli {

/// Metrics reported per run, in output order.
inline constexpr std::array<std::string_view, 5> kMetricNames{"recall", "fpr", "gmean", "fscore",
                                                              "precision"};
/// Metrics that get a significance block per cell.
inline constexpr std::array<std::string_view, 4> kSignificanceMetrics{"gmean", "fscore", "recall",
                                                                      "fpr"};

double metric_value(const MetricSet& m, std::string_view name);

struct DatasetInfo {
    std::size_t rows = 0;
    std::size_t features = 0;
    std::uint64_t digest = 0;
};

struct RunRow {
    StreamResult result;
    std::optional<MetricSet> metrics;
};

struct CellSummary {
    SplitCriterion algorithm{};
    std::uint64_t ratio = 0;
    double labeling = 0.0;
    std::size_t runs = 0;
    std::size_t failed = 0;
    std::array<MeanStd, kMetricNames.size()> metrics{};
};

struct CellSignificance {
    std::uint64_t ratio = 0;
    double labeling = 0.0;
    std::string metric;
    std::optional<SignificanceReport> report;
    /// Why no report was produced.
    std::string note;
};

struct ExperimentReport {
    ExperimentConfig config;
    DatasetInfo dataset;
    std::vector<RunRow> runs;
    std::vector<CellSummary> summary;
    std::vector<CellSignificance> significance;

    std::size_t failed_runs() const;
};

ExperimentReport build_report(const ExperimentConfig& config, const DatasetInfo& dataset,
                              std::vector<StreamResult> results);

void write_runs_csv(std::ostream& out, const ExperimentReport& r);
void write_summary_csv(std::ostream& out, const ExperimentReport& r);
void write_significance_csv(std::ostream& out, const ExperimentReport& r);
void write_json(std::ostream& out, const ExperimentReport& r);

} // namespace ghvfdt::cli

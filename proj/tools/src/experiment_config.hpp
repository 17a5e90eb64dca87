#pragma once

#include "ghvfdt/hoeffding_tree.hpp"
#include "ghvfdt/split_criteria.hpp"
#include "ghvfdt/stream.hpp"

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace ghvfdt::cli {

enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat f) noexcept;
std::optional<OutputFormat> parse_format(std::string_view s) noexcept;

/// Everything needed to reproduce one grid run.
struct ExperimentConfig {
    /// As written in the config file; used for provenance in the output.
    std::string dataset;
    /// `dataset` resolved against the config file's directory.
    std::filesystem::path dataset_path;
    std::vector<SplitCriterion> algorithms{SplitCriterion::InfoGain,
                                           SplitCriterion::HellingerBinned,
                                           SplitCriterion::HellingerGaussian};
    std::vector<std::uint64_t> ratios{10, 100, 1000, 10000};
    std::vector<double> labelings{0.1, 0.5, 0.75, 1.0};
    std::size_t repeats = 10;
    std::uint64_t seed = 0;
    TreeConfig tree;
    std::size_t pretrain_pos = 200;
    std::size_t pretrain_neg = 1000;
    std::size_t max_eval_positives = 0;
    bool shuffle = true;
    double alpha = 0.01;
    std::filesystem::path output_path = "results.csv";
    OutputFormat output_format = OutputFormat::Csv;

    GridSpec grid() const;
};

/// Parses the flat `key = value` format. `#` starts a comment, list values
/// are comma separated. Relative paths are resolved against `base_dir`.
/// Throws ConfigError listing every offending key.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Names of all accepted keys, in documentation order.
const std::vector<std::string>& config_keys();

} // namespace ghvfdt::cli

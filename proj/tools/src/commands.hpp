#pragma once

#include "experiment_config.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ghvfdt::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
    kExitOk = 0,
    /// validate found problems, or some grid cells failed.
    kExitIssues = 1,
    /// Bad configuration, unreadable input or an I/O failure.
    kExitError = 2,
};

struct RunOptions {
    std::filesystem::path config_path;
    std::optional<std::size_t> threads;
    std::optional<std::filesystem::path> output;
    std::optional<OutputFormat> format;
};

/// Thread cap: the explicit value, else GHVFDT_THREADS, else the core count.
std::size_t resolve_threads(std::optional<std::size_t> requested);

/// Output files written for a configuration: the main file first, then
/// the CSV companions (summary, significance).
std::vector<std::filesystem::path> output_files(const ExperimentConfig& config);

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);

struct ValidateOptions {
    std::filesystem::path dataset;
    std::size_t pretrain_pos = 200;
    std::size_t pretrain_neg = 1000;
};

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);

struct ConvertCommandOptions {
    std::filesystem::path input;
    std::vector<std::string> minority;
    bool no_header = false;
    std::optional<char> delimiter;
    /// Defaults to <input stem>.binary.csv next to the input.
    std::optional<std::filesystem::path> output;
};

int cmd_convert(const ConvertCommandOptions& opts, std::ostream& out, std::ostream& err);

} // namespace ghvfdt::cli

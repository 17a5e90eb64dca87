#pragma once

#include "ghvfdt/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ghvfdt {

/// A static binary-class dataset held row-major in memory.
struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<double> values;
    std::vector<ClassLabel> labels;

    std::size_t num_features() const noexcept { return feature_names.size(); }
    std::size_t rows() const noexcept { return labels.size(); }
    std::span<const double> row(std::size_t i) const noexcept {
        return {values.data() + i * num_features(), num_features()};
    }
    std::size_t count(ClassLabel c) const noexcept;
};

/// Parses the class column: -1 and 0 map to Negative, 1 (or +1) to Positive.
/// Numeric spellings such as "1.0" are accepted.
std::optional<ClassLabel> parse_class_label(std::string_view text) noexcept;

/// Reads a CSV with a header row: m real-valued feature columns followed by
/// the class column. Blank lines are ignored. Any malformed row, wrong
/// column count or non-finite value throws InputError naming the line.
Dataset read_dataset_csv(std::istream& in, std::string_view source = "<stream>");
Dataset load_dataset_csv(const std::filesystem::path& path);

struct ValidationIssue {
    std::size_t line = 0;
    std::string message;
};

/// Non-throwing summary of a dataset file, used by `ghvfdt validate`.
struct ValidationReport {
    bool readable = true;
    std::size_t rows = 0;
    std::size_t features = 0;
    std::size_t positives = 0;
    std::size_t negatives = 0;
    std::vector<ValidationIssue> issues;
};

ValidationReport validate_dataset_csv(std::istream& in);
ValidationReport validate_dataset_csv(const std::filesystem::path& path);

struct ConvertOptions {
    /// Raw class values that become the positive (minority) class.
    std::set<std::string> minority;
    bool has_header = true;
    /// 0 auto-detects: comma if the first data line contains one, otherwise
    /// runs of whitespace.
    char delimiter = 0;
};

struct ConvertSummary {
    std::size_t rows = 0;
    std::size_t positives = 0;
    std::size_t negatives = 0;
};

/// Rewrites a multi-class table as a binary CSV understood by the loader:
/// the last column becomes 1 for minority values and -1 otherwise, and a
/// header row is emitted (synthesized as f0..f{m-1},class if absent).
ConvertSummary convert_to_binary(std::istream& in, std::ostream& out, const ConvertOptions& opts);

} // namespace ghvfdt

#include "ghvfdt/dataset.hpp"

#include "ghvfdt/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <ostream>

namespace ghvfdt {

std::size_t Dataset::count(ClassLabel c) const noexcept {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), c));
}

namespace {

std::string_view trim(std::string_view s) noexcept {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool blank(std::string_view s) noexcept { return trim(s).empty(); }

std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
    std::vector<std::string_view> out;
    if (delimiter == ' ') {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            const std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i > start) out.push_back(line.substr(start, i - start));
        }
        return out;
    }
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_real(std::string_view text) noexcept {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

// Shared row scanner for the strict loader and the validator. `on_issue`
// returns whether scanning should continue.
template <typename OnRow, typename OnIssue>
std::size_t scan_csv(std::istream& in, std::vector<std::string>& header, OnRow on_row,
                     OnIssue on_issue) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<double> features;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto fields = split_fields(line, ',');
        if (!have_header) {
            if (fields.size() < 2) {
                on_issue(line_no, "header needs at least one feature and a class column");
                return line_no;
            }
            for (std::size_t i = 0; i + 1 < fields.size(); ++i) header.emplace_back(fields[i]);
            have_header = true;
            continue;
        }
        if (fields.size() != header.size() + 1) {
            if (!on_issue(line_no, fmt::format("expected {} columns, found {}", header.size() + 1,
                                               fields.size()))) {
                return line_no;
            }
            continue;
        }
        features.clear();
        std::optional<std::string> problem;
        for (std::size_t i = 0; i < header.size() && !problem; ++i) {
            const auto v = parse_real(fields[i]);
            if (!v) {
                problem = fmt::format("column {} ('{}'): not a number", i + 1, fields[i]);
            } else if (!std::isfinite(*v)) {
                problem = fmt::format("column {} ('{}'): non-finite value", i + 1, fields[i]);
            } else {
                features.push_back(*v);
            }
        }
        if (problem) {
            if (!on_issue(line_no, *problem)) return line_no;
            continue;
        }
        const auto label = parse_class_label(fields.back());
        if (!label) {
            if (!on_issue(line_no, fmt::format("class column: '{}' is not one of -1, 0, 1",
                                               fields.back()))) {
                return line_no;
            }
            continue;
        }
        on_row(features, *label);
    }
    return line_no;
}

} // namespace

std::optional<ClassLabel> parse_class_label(std::string_view text) noexcept {
    const auto v = parse_real(text);
    if (!v) return std::nullopt;
    if (*v == 1.0) return ClassLabel::Positive;
    if (*v == -1.0 || *v == 0.0) return ClassLabel::Negative;
    return std::nullopt;
}

Dataset read_dataset_csv(std::istream& in, std::string_view source) {
    Dataset ds;
    scan_csv(
        in, ds.feature_names,
        [&](const std::vector<double>& f, ClassLabel c) {
            ds.values.insert(ds.values.end(), f.begin(), f.end());
            ds.labels.push_back(c);
        },
        [&](std::size_t line, const std::string& msg) -> bool {
            throw InputError(fmt::format("{}:{}: {}", source, line, msg));
        });
    return ds;
}

Dataset load_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(fmt::format("cannot open dataset '{}'", path.string()));
    return read_dataset_csv(in, path.string());
}

ValidationReport validate_dataset_csv(std::istream& in) {
    ValidationReport report;
    std::vector<std::string> header;
    scan_csv(
        in, header,
        [&](const std::vector<double>&, ClassLabel c) {
            ++report.rows;
            (c == ClassLabel::Positive ? report.positives : report.negatives) += 1;
        },
        [&](std::size_t line, std::string msg) {
            report.issues.push_back({line, std::move(msg)});
            return true;
        });
    report.features = header.size();
    return report;
}

ValidationReport validate_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        ValidationReport r;
        r.readable = false;
        r.issues.push_back({0, fmt::format("cannot open '{}'", path.string())});
        return r;
    }
    return validate_dataset_csv(in);
}

ConvertSummary convert_to_binary(std::istream& in, std::ostream& out, const ConvertOptions& opts) {
    if (opts.minority.empty()) throw ConfigError("convert: at least one minority class required");
    ConvertSummary summary;
    std::string line;
    std::size_t line_no = 0;
    std::size_t columns = 0;
    char delimiter = opts.delimiter;
    bool header_pending = opts.has_header;
    bool header_written = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        if (delimiter == 0) delimiter = line.find(',') != std::string::npos ? ',' : ' ';
        const auto fields = split_fields(line, delimiter);
        if (fields.size() < 2) {
            throw InputError(fmt::format("convert: line {}: need features and a class", line_no));
        }
        if (columns == 0) columns = fields.size();
        if (fields.size() != columns) {
            throw InputError(fmt::format("convert: line {}: expected {} columns, found {}",
                                         line_no, columns, fields.size()));
        }
        if (header_pending) {
            for (std::size_t i = 0; i + 1 < fields.size(); ++i) out << fields[i] << ',';
            out << "class\n";
            header_pending = false;
            header_written = true;
            continue;
        }
        if (!header_written) {
            for (std::size_t i = 0; i + 1 < columns; ++i) out << 'f' << i << ',';
            out << "class\n";
            header_written = true;
        }
        for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
            if (!parse_real(fields[i])) {
                throw InputError(fmt::format("convert: line {}: column {} ('{}') is not a number",
                                             line_no, i + 1, fields[i]));
            }
            out << fields[i] << ',';
        }
        const bool positive = opts.minority.count(std::string(fields.back())) > 0;
        out << (positive ? "1" : "-1") << '\n';
        ++summary.rows;
        (positive ? summary.positives : summary.negatives) += 1;
    }
    return summary;
}

} // namespace ghvfdt

#include "experiment_config.hpp"

#include "ghvfdt/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <set>

namespace ghvfdt::cli {

std::string_view to_string(OutputFormat f) noexcept { return f == OutputFormat::Json ? "json" : "csv"; }

std::optional<OutputFormat> parse_format(std::string_view s) noexcept {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    return std::nullopt;
}

GridSpec ExperimentConfig::grid() const {
    GridSpec g;
    g.algorithms = algorithms;
    g.ratios = ratios;
    g.labelings = labelings;
    g.repeats = repeats;
    g.base_seed = seed;
    g.tree = tree;
    g.stream.pretrain_pos = pretrain_pos;
    g.stream.pretrain_neg = pretrain_neg;
    g.stream.max_eval_positives = max_eval_positives;
    g.stream.shuffle = shuffle;
    return g;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "dataset",      "algorithms",   "ratios",       "labelings",          "repeats",
        "seed",         "delta",        "tau",          "bins",               "grace_period",
        "max_leaves",   "pretrain_pos", "pretrain_neg", "max_eval_positives", "shuffle",
        "alpha",        "output",       "format"};
    return keys;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(',', start);
        const auto item = trim(s.substr(start, pos - start));
        if (!item.empty()) out.push_back(item);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
    T v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(v)) return std::nullopt;
    }
    return v;
}

std::optional<bool> parse_bool(std::string_view s) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    return std::nullopt;
}

template <typename T>
std::optional<std::vector<T>> parse_number_list(std::string_view s) {
    std::vector<T> out;
    for (auto item : split_list(s)) {
        auto v = parse_number<T>(item);
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    if (out.empty()) return std::nullopt;
    return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view p) {
    std::filesystem::path path{std::string(p)};
    return path.is_relative() && !base.empty() ? base / path : path;
}

} // namespace

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    std::vector<std::string> problems;
    std::set<std::string> seen;
    const std::set<std::string> known(config_keys().begin(), config_keys().end());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            problems.push_back(fmt::format("line {}: expected key = value", line_no));
            continue;
        }
        const std::string key(trim(view.substr(0, eq)));
        const auto value = trim(view.substr(eq + 1));
        const auto bad = [&](std::string_view why) {
            problems.push_back(fmt::format("{} (line {}): {}", key, line_no, why));
        };
        if (!known.count(key)) {
            bad("unknown key");
            continue;
        }
        if (!seen.insert(key).second) {
            bad("given more than once");
            continue;
        }
        if (value.empty()) {
            bad("empty value");
            continue;
        }

        if (key == "dataset") {
            cfg.dataset = std::string(value);
            cfg.dataset_path = resolve(base_dir, value);
        } else if (key == "algorithms") {
            std::vector<SplitCriterion> algs;
            bool ok = true;
            for (auto item : split_list(value)) {
                const auto c = parse_criterion(item);
                if (!c) {
                    bad(fmt::format("unknown algorithm '{}' (use vfdt, hd-vfdt, gh-vfdt)", item));
                    ok = false;
                    break;
                }
                if (std::find(algs.begin(), algs.end(), *c) != algs.end()) {
                    bad(fmt::format("algorithm '{}' listed twice", item));
                    ok = false;
                    break;
                }
                algs.push_back(*c);
            }
            if (ok && algs.empty()) {
                bad("no algorithms");
                ok = false;
            }
            if (ok) cfg.algorithms = std::move(algs);
        } else if (key == "ratios") {
            const auto v = parse_number_list<std::uint64_t>(value);
            if (!v || std::count(v->begin(), v->end(), 0u)) {
                bad("expected a list of positive integers");
            } else {
                cfg.ratios = *v;
            }
        } else if (key == "labelings") {
            const auto v = parse_number_list<double>(value);
            if (!v || std::any_of(v->begin(), v->end(), [](double f) { return f <= 0 || f > 1; })) {
                bad("expected a list of fractions in (0, 1]");
            } else {
                cfg.labelings = *v;
            }
        } else if (key == "repeats" || key == "bins" || key == "grace_period" ||
                   key == "max_leaves" || key == "pretrain_pos" || key == "pretrain_neg" ||
                   key == "max_eval_positives") {
            const auto v = parse_number<std::uint64_t>(value);
            if (!v) {
                bad("expected a non-negative integer");
                continue;
            }
            if (key == "repeats") cfg.repeats = *v;
            if (key == "bins") cfg.tree.bins = *v;
            if (key == "grace_period") cfg.tree.grace_period = *v;
            if (key == "max_leaves") cfg.tree.max_leaves = *v;
            if (key == "pretrain_pos") cfg.pretrain_pos = *v;
            if (key == "pretrain_neg") cfg.pretrain_neg = *v;
            if (key == "max_eval_positives") cfg.max_eval_positives = *v;
        } else if (key == "seed") {
            const auto v = parse_number<std::uint64_t>(value);
            if (!v) bad("expected a non-negative integer");
            else cfg.seed = *v;
        } else if (key == "delta" || key == "tau" || key == "alpha") {
            const auto v = parse_number<double>(value);
            if (!v) {
                bad("expected a real number");
                continue;
            }
            if (key == "delta") cfg.tree.delta = *v;
            if (key == "tau") cfg.tree.tau = *v;
            if (key == "alpha") cfg.alpha = *v;
        } else if (key == "shuffle") {
            const auto v = parse_bool(value);
            if (!v) bad("expected true or false");
            else cfg.shuffle = *v;
        } else if (key == "output") {
            cfg.output_path = resolve(base_dir, value);
        } else if (key == "format") {
            const auto f = parse_format(value);
            if (!f) bad("expected csv or json");
            else cfg.output_format = *f;
        }
    }

    if (!seen.count("dataset")) problems.push_back("dataset: required key missing");
    if (cfg.repeats == 0) problems.push_back("repeats: must be at least 1");
    if (!(cfg.alpha > 0 && cfg.alpha < 1)) problems.push_back("alpha: must lie in (0, 1)");
    try {
        cfg.tree.validate();
    } catch (const ConfigError& e) {
        problems.push_back(fmt::format("tree parameters: {}", e.what()));
    }
    if (!problems.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw ConfigError(msg);
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
    return parse_config(in, path.parent_path());
}

} // namespace ghvfdt::cli

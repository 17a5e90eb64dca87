#include "commands.hpp"

#include "report.hpp"

#include "ghvfdt/dataset.hpp"
#include "ghvfdt/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <thread>

namespace ghvfdt::cli {

namespace fs = std::filesystem;

std::size_t resolve_threads(std::optional<std::size_t> requested) {
    if (requested && *requested > 0) return *requested;
    if (const char* env = std::getenv("GHVFDT_THREADS")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<fs::path> output_files(const ExperimentConfig& config) {
    std::vector<fs::path> files{config.output_path};
    if (config.output_format == OutputFormat::Csv) {
        auto summary = config.output_path;
        auto significance = config.output_path;
        files.push_back(summary.replace_extension(".summary.csv"));
        files.push_back(significance.replace_extension(".significance.csv"));
    }
    return files;
}

namespace {

std::uint64_t file_digest(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

// Writes every file to a sibling temporary first and renames only after all
// of them were written, so a failure leaves no partial output behind.
void write_outputs(const std::vector<std::pair<fs::path, std::string>>& files) {
    std::vector<fs::path> temps;
    const auto cleanup = [&] {
        std::error_code ec;
        for (const auto& t : temps) fs::remove(t, ec);
    };
    for (const auto& [path, content] : files) {
        auto tmp = path;
        tmp += ".tmp";
        temps.push_back(tmp);
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        if (!out) {
            cleanup();
            throw InputError(fmt::format("cannot write '{}'", path.string()));
        }
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::error_code ec;
        fs::rename(temps[i], files[i].first, ec);
        if (ec) {
            cleanup();
            throw InputError(fmt::format("cannot write '{}': {}", files[i].first.string(),
                                         ec.message()));
        }
    }
}

std::string render(const std::function<void(std::ostream&)>& fn) {
    std::ostringstream s;
    fn(s);
    return s.str();
}

} // namespace

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        auto config = load_config(opts.config_path);
        if (opts.output) config.output_path = *opts.output;
        if (opts.format) config.output_format = *opts.format;

        const Dataset data = load_dataset_csv(config.dataset_path);
        const DatasetInfo info{data.rows(), data.num_features(), file_digest(config.dataset_path)};
        const std::size_t threads = resolve_threads(opts.threads);
        const auto grid = config.grid();
        const std::size_t total = grid.algorithms.size() * grid.ratios.size() *
                                  grid.labelings.size() * grid.repeats;
        out << fmt::format("dataset {}: {} rows, {} features\n", config.dataset, data.rows(),
                           data.num_features());
        out << fmt::format("running {} runs on {} thread(s)\n", total, threads);

        auto results = run_grid(data, grid, threads);
        const auto report = build_report(config, info, std::move(results));

        const auto paths = output_files(config);
        std::vector<std::pair<fs::path, std::string>> files;
        if (config.output_format == OutputFormat::Json) {
            files.emplace_back(paths[0], render([&](std::ostream& s) { write_json(s, report); }));
        } else {
            files.emplace_back(paths[0], render([&](std::ostream& s) { write_runs_csv(s, report); }));
            files.emplace_back(paths[1],
                               render([&](std::ostream& s) { write_summary_csv(s, report); }));
            files.emplace_back(paths[2],
                               render([&](std::ostream& s) { write_significance_csv(s, report); }));
        }
        write_outputs(files);

        for (const auto& s : report.summary) {
            if (s.runs == 0) continue;
            out << fmt::format("{:>7} 1:{:<6} labeled {:<5} gmean {:.3f}+-{:.3f} fscore {:.3f}\n",
                               to_string(s.algorithm), s.ratio, s.labeling, s.metrics[2].mean,
                               s.metrics[2].stddev, s.metrics[3].mean);
        }
        for (const auto& p : paths) out << "wrote " << p.string() << '\n';

        const auto failed = report.failed_runs();
        if (failed > 0) {
            err << fmt::format("warning: {} of {} runs failed:\n", failed, report.runs.size());
            std::vector<std::string> seen;
            for (const auto& row : report.runs) {
                if (row.metrics) continue;
                const auto& c = row.result.cell;
                const auto msg = fmt::format("  ratio {} labeling {}: {}", c.ratio, c.labeling,
                                             row.result.error);
                if (std::find(seen.begin(), seen.end(), msg) == seen.end()) {
                    err << msg << '\n';
                    seen.push_back(msg);
                }
            }
            return kExitIssues;
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
    const auto r = validate_dataset_csv(opts.dataset);
    if (!r.readable) {
        err << "error: " << r.issues.front().message << '\n';
        return kExitError;
    }
    out << fmt::format("file:      {}\n", opts.dataset.string());
    out << fmt::format("rows:      {}\n", r.rows);
    out << fmt::format("features:  {}\n", r.features);
    out << fmt::format("positives: {}\n", r.positives);
    out << fmt::format("negatives: {}\n", r.negatives);
    if (r.rows == 0) out << "warning: no data rows\n";

    const bool quotas = r.positives > opts.pretrain_pos && r.negatives > opts.pretrain_neg;
    if (!quotas) {
        out << fmt::format("pre-training quota {}/{} leaves no evaluation data\n",
                           opts.pretrain_pos, opts.pretrain_neg);
    } else {
        const auto pos = r.positives - opts.pretrain_pos;
        const auto neg = r.negatives - opts.pretrain_neg;
        out << fmt::format("after pre-training {}/{}: {} positives, {} negatives available\n",
                           opts.pretrain_pos, opts.pretrain_neg, pos, neg);
        out << fmt::format("largest achievable ratio: 1:{}\n", neg);
        for (std::uint64_t ratio : {1, 10, 100, 1000, 10000}) {
            if (ratio > neg) {
                out << fmt::format("  1:{:<6} not achievable\n", ratio);
                continue;
            }
            const auto n_pos = std::min<std::uint64_t>(pos, neg / ratio);
            out << fmt::format("  1:{:<6} {} positives, {} negatives\n", ratio, n_pos,
                               n_pos * ratio);
        }
    }
    for (const auto& issue : r.issues) {
        out << fmt::format("line {}: {}\n", issue.line, issue.message);
    }
    if (!r.issues.empty()) {
        out << fmt::format("{} problem line(s)\n", r.issues.size());
        return kExitIssues;
    }
    return kExitOk;
}

int cmd_convert(const ConvertCommandOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        ConvertOptions co;
        co.minority.insert(opts.minority.begin(), opts.minority.end());
        co.has_header = !opts.no_header;
        co.delimiter = opts.delimiter.value_or(0);
        fs::path target = opts.output.value_or(
            opts.input.parent_path() / (opts.input.stem().string() + ".binary.csv"));

        std::ifstream in(opts.input);
        if (!in) throw InputError(fmt::format("cannot open '{}'", opts.input.string()));
        std::ostringstream buffer;
        const auto s = convert_to_binary(in, buffer, co);
        write_outputs({{target, buffer.str()}});
        out << fmt::format("wrote {}: {} rows, {} positive, {} negative\n", target.string(), s.rows,
                           s.positives, s.negatives);
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

} // namespace ghvfdt::cli

#include "report.hpp"

#include "ghvfdt/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

namespace ghvfdt::cli {

using nlohmann::ordered_json;

double metric_value(const MetricSet& m, std::string_view name) {
    if (name == "recall") return m.recall;
    if (name == "fpr") return m.fpr;
    if (name == "gmean") return m.gmean;
    if (name == "fscore") return m.fscore;
    if (name == "precision") return m.precision;
    throw ContractViolation(fmt::format("unknown metric '{}'", name));
}

std::size_t ExperimentReport::failed_runs() const {
    std::size_t n = 0;
    for (const auto& r : runs) n += !r.metrics.has_value();
    return n;
}

namespace {

std::string num(double v) { return fmt::format("{}", v); }

// Runs of one (ratio, labeling, algorithm) cell are contiguous in grid order.
struct CellRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};

CellSignificance significance_for(const ExperimentReport& r, std::size_t first_cell,
                                  std::string_view metric) {
    const auto& cfg = r.config;
    const std::size_t reps = cfg.repeats;
    CellSignificance out;
    out.ratio = r.runs[first_cell].result.cell.ratio;
    out.labeling = r.runs[first_cell].result.cell.labeling;
    out.metric = std::string(metric);
    if (cfg.algorithms.size() < 2) {
        out.note = "needs at least two algorithms";
        return out;
    }
    if (reps < 2) {
        out.note = "needs at least two repeats";
        return out;
    }
    std::vector<std::vector<double>> groups(cfg.algorithms.size());
    std::vector<std::string> names;
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
        names.emplace_back(to_string(cfg.algorithms[a]));
        for (std::size_t k = 0; k < reps; ++k) {
            const auto& row = r.runs[first_cell + a * reps + k];
            if (!row.metrics) {
                out.note = "some runs in this cell failed";
                return out;
            }
            groups[a].push_back(metric_value(*row.metrics, metric));
        }
    }
    try {
        out.report = tukey_hsd(groups, cfg.alpha, std::move(names));
    } catch (const Error& e) {
        out.note = e.what();
    }
    return out;
}

ordered_json config_json(const ExperimentReport& r) {
    const auto& c = r.config;
    ordered_json algs = ordered_json::array();
    for (auto a : c.algorithms) algs.push_back(std::string(to_string(a)));
    return ordered_json{{"dataset", c.dataset},
                        {"dataset_rows", r.dataset.rows},
                        {"dataset_features", r.dataset.features},
                        {"dataset_digest", fmt::format("{:016x}", r.dataset.digest)},
                        {"algorithms", algs},
                        {"ratios", c.ratios},
                        {"labelings", c.labelings},
                        {"repeats", c.repeats},
                        {"seed", c.seed},
                        {"delta", c.tree.delta},
                        {"tau", c.tree.tau},
                        {"bins", c.tree.bins},
                        {"grace_period", c.tree.grace_period},
                        {"max_leaves", c.tree.max_leaves},
                        {"pretrain_pos", c.pretrain_pos},
                        {"pretrain_neg", c.pretrain_neg},
                        {"max_eval_positives", c.max_eval_positives},
                        {"shuffle", c.shuffle},
                        {"alpha", c.alpha}};
}

// Columns shared by every per-run row: enough to rebuild the cell.
constexpr std::string_view kProvenanceHeader =
    "dataset,dataset_digest,algorithm,ratio,labeling,repeat,seed,delta,tau,bins,grace_period,"
    "max_leaves,pretrain_pos,pretrain_neg,max_eval_positives,shuffle";

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

std::string provenance(const ExperimentReport& r, const CellKey& k) {
    const auto& c = r.config;
    return fmt::format("{},{:016x},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", csv_field(c.dataset),
                       r.dataset.digest, to_string(k.algorithm), k.ratio, num(k.labeling),
                       k.repeat, k.seed, num(c.tree.delta), num(c.tree.tau), c.tree.bins,
                       c.tree.grace_period, c.tree.max_leaves, c.pretrain_pos, c.pretrain_neg,
                       c.max_eval_positives, c.shuffle ? "true" : "false");
}

} // namespace

ExperimentReport build_report(const ExperimentConfig& config, const DatasetInfo& dataset,
                              std::vector<StreamResult> results) {
    ExperimentReport r;
    r.config = config;
    r.dataset = dataset;
    for (auto& res : results) {
        RunRow row{std::move(res), std::nullopt};
        if (row.result.run) {
            try {
                row.metrics = metrics_from_confusion(row.result.run->confusion);
            } catch (const InsufficientData& e) {
                row.result.error = e.what();
            }
        }
        r.runs.push_back(std::move(row));
    }

    const std::size_t reps = config.repeats;
    const std::size_t algs = config.algorithms.size();
    for (std::size_t cell = 0; cell + reps <= r.runs.size(); cell += reps) {
        CellSummary s;
        const auto& key = r.runs[cell].result.cell;
        s.algorithm = key.algorithm;
        s.ratio = key.ratio;
        s.labeling = key.labeling;
        std::array<std::vector<double>, kMetricNames.size()> values;
        for (std::size_t k = 0; k < reps; ++k) {
            const auto& row = r.runs[cell + k];
            if (!row.metrics) {
                ++s.failed;
                continue;
            }
            ++s.runs;
            for (std::size_t m = 0; m < kMetricNames.size(); ++m) {
                values[m].push_back(metric_value(*row.metrics, kMetricNames[m]));
            }
        }
        for (std::size_t m = 0; m < kMetricNames.size(); ++m) s.metrics[m] = mean_std(values[m]);
        r.summary.push_back(s);
    }

    for (std::size_t block = 0; block + algs * reps <= r.runs.size(); block += algs * reps) {
        for (auto metric : kSignificanceMetrics) {
            r.significance.push_back(significance_for(r, block, metric));
        }
    }
    return r;
}

void write_runs_csv(std::ostream& out, const ExperimentReport& r) {
    out << kProvenanceHeader
        << ",status,eval_positives,eval_negatives,labeled,tp,fp,tn,fn";
    for (auto m : kMetricNames) out << ',' << m;
    out << ",splits,leaves,depth,memory_cells,stream_digest,error\n";
    for (const auto& row : r.runs) {
        const auto& res = row.result;
        out << provenance(r, res.cell) << ',' << (row.metrics ? "ok" : "failed") << ','
            << res.eval_positives << ',' << res.eval_negatives << ',' << res.labeled;
        if (res.run) {
            const auto& c = res.run->confusion;
            out << fmt::format(",{},{},{},{}", c.tp, c.fp, c.tn, c.fn);
        } else {
            out << ",,,,";
        }
        for (auto m : kMetricNames) {
            out << ',';
            if (row.metrics) out << num(metric_value(*row.metrics, m));
        }
        if (res.run) {
            out << fmt::format(",{},{},{},{}", res.run->splits, res.run->leaves, res.run->depth,
                               res.run->memory_cells);
        } else {
            out << ",,,,";
        }
        out << fmt::format(",{:016x},", res.digest) << csv_field(res.error) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const ExperimentReport& r) {
    out << "dataset,algorithm,ratio,labeling,repeats,runs_ok,runs_failed";
    for (auto m : kMetricNames) out << ',' << m << "_mean," << m << "_std";
    out << '\n';
    for (const auto& s : r.summary) {
        out << fmt::format("{},{},{},{},{},{},{}", csv_field(r.config.dataset),
                           to_string(s.algorithm), s.ratio, num(s.labeling), r.config.repeats,
                           s.runs, s.failed);
        for (const auto& ms : s.metrics) {
            if (s.runs == 0) {
                out << ",,";
            } else {
                out << ',' << num(ms.mean) << ',' << num(ms.stddev);
            }
        }
        out << '\n';
    }
}

void write_significance_csv(std::ostream& out, const ExperimentReport& r) {
    out << "dataset,ratio,labeling,metric,alpha,kind,first,second,statistic,mean_difference,"
           "critical_difference,p_value,significant,note\n";
    for (const auto& s : r.significance) {
        const auto prefix = fmt::format("{},{},{},{},{}", csv_field(r.config.dataset), s.ratio,
                                        num(s.labeling), s.metric, num(r.config.alpha));
        if (!s.report) {
            out << prefix << ",skipped,,,,,,,," << csv_field(s.note) << '\n';
            continue;
        }
        const auto& rep = *s.report;
        out << prefix << ",anova,,," << num(rep.f_statistic) << ",,," << num(rep.p_value)
            << ",,\n";
        for (const auto& p : rep.pairwise) {
            out << prefix << ",tukey," << rep.groups[p.first] << ',' << rep.groups[p.second] << ','
                << num(rep.q_critical) << ',' << num(p.mean_difference) << ','
                << num(p.critical_difference) << ',' << num(p.p_value) << ','
                << (p.significant ? "true" : "false") << ",\n";
        }
    }
}

void write_json(std::ostream& out, const ExperimentReport& r) {
    ordered_json doc;
    doc["format"] = "ghvfdt-results";
    doc["version"] = 1;
    doc["config"] = config_json(r);

    const std::size_t reps = r.config.repeats;
    ordered_json cells = ordered_json::array();
    for (std::size_t i = 0; i < r.summary.size(); ++i) {
        const auto& s = r.summary[i];
        ordered_json cell{{"algorithm", std::string(to_string(s.algorithm))},
                          {"ratio", s.ratio},
                          {"labeling", s.labeling},
                          {"runs_ok", s.runs},
                          {"runs_failed", s.failed}};
        ordered_json summary = ordered_json::object();
        for (std::size_t m = 0; m < kMetricNames.size(); ++m) {
            if (s.runs == 0) continue;
            summary[std::string(kMetricNames[m])] = {{"mean", s.metrics[m].mean},
                                                     {"std", s.metrics[m].stddev}};
        }
        cell["summary"] = summary;
        ordered_json runs = ordered_json::array();
        for (std::size_t k = 0; k < reps; ++k) {
            const auto& row = r.runs[i * reps + k];
            const auto& res = row.result;
            ordered_json j{{"repeat", res.cell.repeat},
                           {"seed", res.cell.seed},
                           {"status", row.metrics ? "ok" : "failed"},
                           {"eval_positives", res.eval_positives},
                           {"eval_negatives", res.eval_negatives},
                           {"labeled", res.labeled},
                           {"stream_digest", fmt::format("{:016x}", res.digest)}};
            if (res.run) {
                const auto& c = res.run->confusion;
                j["confusion"] = {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}};
                j["tree"] = {{"splits", res.run->splits},
                             {"leaves", res.run->leaves},
                             {"depth", res.run->depth},
                             {"memory_cells", res.run->memory_cells}};
            }
            if (row.metrics) {
                ordered_json m = ordered_json::object();
                for (auto name : kMetricNames) m[std::string(name)] = metric_value(*row.metrics, name);
                j["metrics"] = m;
            }
            if (!res.error.empty()) j["error"] = res.error;
            runs.push_back(std::move(j));
        }
        cell["runs"] = std::move(runs);
        cells.push_back(std::move(cell));
    }
    doc["cells"] = std::move(cells);

    ordered_json sig = ordered_json::array();
    for (const auto& s : r.significance) {
        ordered_json j{{"ratio", s.ratio}, {"labeling", s.labeling}, {"metric", s.metric}};
        if (!s.report) {
            j["skipped"] = s.note;
        } else {
            const auto& rep = *s.report;
            j["alpha"] = rep.alpha;
            j["f_statistic"] = rep.f_statistic;
            j["p_value"] = rep.p_value;
            j["q_critical"] = rep.q_critical;
            ordered_json pairs = ordered_json::array();
            for (const auto& p : rep.pairwise) {
                pairs.push_back({{"first", rep.groups[p.first]},
                                 {"second", rep.groups[p.second]},
                                 {"mean_difference", p.mean_difference},
                                 {"critical_difference", p.critical_difference},
                                 {"p_value", p.p_value},
                                 {"significant", p.significant}});
            }
            j["pairwise"] = std::move(pairs);
        }
        sig.push_back(std::move(j));
    }
    doc["significance"] = std::move(sig);
    out << doc.dump(2) << '\n';
}

} // namespace ghvfdt::cli

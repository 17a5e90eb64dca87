#include "ghvfdt/tree_json.hpp"

#include "ghvfdt/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

namespace ghvfdt {

using nlohmann::json;

namespace {

json gaussian_to_json(const GaussianStat& g) {
    return json{{"count", g.count()}, {"mean", g.mean()}, {"m2", g.m2()}};
}

GaussianStat gaussian_from_json(const json& j) {
    return GaussianStat::from_parts(j.at("count").get<std::uint64_t>(), j.at("mean").get<double>(),
                                    j.at("m2").get<double>());
}

json leaf_to_json(const LeafNode& leaf) {
    const auto& s = leaf.stats;
    json out{{"type", "leaf"},
             {"majority", to_string(leaf.majority)},
             {"active", leaf.active},
             {"class_counts", {{"negative", s.class_counts[0]}, {"positive", s.class_counts[1]}}},
             {"since_last_attempt", s.since_last_attempt}};
    json gaussian = json::array();
    for (const auto& cell : s.gaussian) {
        gaussian.push_back({{"negative", gaussian_to_json(cell[0])},
                            {"positive", gaussian_to_json(cell[1])}});
    }
    out["gaussian"] = std::move(gaussian);
    if (s.has_histograms()) {
        json hists = json::array();
        for (std::size_t j = 0; j < s.histograms.size(); ++j) {
            const auto& h = s.histograms[j];
            const auto e = h.edges();
            const auto n = h.counts(ClassLabel::Negative);
            const auto p = h.counts(ClassLabel::Positive);
            json observed = nullptr;
            if (!s.observed[j].empty()) observed = json::array({s.observed[j].lo, s.observed[j].hi});
            hists.push_back({{"edges", std::vector<double>(e.begin(), e.end())},
                             {"negative", std::vector<std::uint64_t>(n.begin(), n.end())},
                             {"positive", std::vector<std::uint64_t>(p.begin(), p.end())},
                             {"observed", std::move(observed)}});
        }
        out["histograms"] = std::move(hists);
    }
    return out;
}

ClassLabel label_from_json(const json& j) {
    const auto s = j.get<std::string>();
    if (s == "positive") return ClassLabel::Positive;
    if (s == "negative") return ClassLabel::Negative;
    throw InputError(fmt::format("tree document: unknown label '{}'", s));
}

LeafNode leaf_from_json(const json& j) {
    LeafNode leaf;
    leaf.majority = label_from_json(j.at("majority"));
    leaf.active = j.at("active").get<bool>();
    auto& s = leaf.stats;
    s.class_counts[0] = j.at("class_counts").at("negative").get<std::uint64_t>();
    s.class_counts[1] = j.at("class_counts").at("positive").get<std::uint64_t>();
    s.since_last_attempt = j.at("since_last_attempt").get<std::uint64_t>();
    for (const auto& cell : j.at("gaussian")) {
        s.gaussian.push_back({gaussian_from_json(cell.at("negative")),
                              gaussian_from_json(cell.at("positive"))});
    }
    if (j.contains("histograms")) {
        for (const auto& hj : j.at("histograms")) {
            ClassHistogram h(hj.at("edges").get<std::vector<double>>());
            h.set_counts(hj.at("positive").get<std::vector<std::uint64_t>>(),
                         hj.at("negative").get<std::vector<std::uint64_t>>());
            s.histograms.push_back(std::move(h));
            FeatureRange r;
            if (!hj.at("observed").is_null()) {
                r.lo = hj.at("observed").at(0).get<double>();
                r.hi = hj.at("observed").at(1).get<double>();
            }
            s.observed.push_back(r);
        }
    }
    return leaf;
}

} // namespace

std::string serialize_tree(const HoeffdingTree& tree, int indent) {
    const auto& c = tree.config();
    json doc{{"format", kTreeFormat},
             {"version", kTreeFormatVersion},
             {"config",
              {{"criterion", to_string(c.criterion)},
               {"delta", c.delta},
               {"tau", c.tau},
               {"bins", c.bins},
               {"grace_period", c.grace_period},
               {"max_leaves", c.max_leaves}}},
             {"num_features", tree.num_features()},
             {"splits", tree.split_count()}};
    json nodes = json::array();
    for (const auto& n : tree.nodes()) {
        if (const auto* in = std::get_if<InternalNode>(&n)) {
            nodes.push_back({{"type", "internal"},
                             {"feature", in->feature},
                             {"threshold", in->threshold},
                             {"left", in->left},
                             {"right", in->right}});
        } else {
            nodes.push_back(leaf_to_json(std::get<LeafNode>(n)));
        }
    }
    doc["nodes"] = std::move(nodes);
    return doc.dump(indent);
}

HoeffdingTree deserialize_tree(std::string_view text) {
    try {
        const json doc = json::parse(text);
        if (doc.at("format").get<std::string>() != kTreeFormat) {
            throw InputError("tree document: unknown format tag");
        }
        const int version = doc.at("version").get<int>();
        if (version != kTreeFormatVersion) {
            throw InputError(fmt::format("tree document: unsupported version {}", version));
        }
        const auto& cj = doc.at("config");
        TreeConfig config;
        const auto criterion = parse_criterion(cj.at("criterion").get<std::string>());
        if (!criterion) throw InputError("tree document: unknown criterion");
        config.criterion = *criterion;
        config.delta = cj.at("delta").get<double>();
        config.tau = cj.at("tau").get<double>();
        config.bins = cj.at("bins").get<std::size_t>();
        config.grace_period = cj.at("grace_period").get<std::uint64_t>();
        config.max_leaves = cj.at("max_leaves").get<std::size_t>();

        std::vector<TreeNode> nodes;
        for (const auto& nj : doc.at("nodes")) {
            const auto type = nj.at("type").get<std::string>();
            if (type == "internal") {
                nodes.emplace_back(InternalNode{nj.at("feature").get<std::size_t>(),
                                                nj.at("threshold").get<double>(),
                                                nj.at("left").get<std::size_t>(),
                                                nj.at("right").get<std::size_t>()});
            } else if (type == "leaf") {
                nodes.emplace_back(leaf_from_json(nj));
            } else {
                throw InputError(fmt::format("tree document: unknown node type '{}'", type));
            }
        }
        return HoeffdingTree::from_parts(config, doc.at("num_features").get<std::size_t>(),
                                         std::move(nodes), doc.at("splits").get<std::uint64_t>());
    } catch (const json::exception& e) {
        throw InputError(fmt::format("tree document: {}", e.what()));
    }
}

} // namespace ghvfdt

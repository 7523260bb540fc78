#include "bandwave/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace bandwave {

namespace {

const char* algorithm_tag(Algorithm alg) {
    switch (alg) {
        case Algorithm::CuthillMcKee: return "cm";
        case Algorithm::King: return "king";
        case Algorithm::Sloan: return "sloan";
        case Algorithm::Gps: return "gps";
    }
    return "";
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_ms(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - from)
        .count();
}

}  // namespace

CategoryLabel parse_category(std::string_view text) {
    CategoryLabel label;
    if (text == "none") {
        label.is_none = true;
        return label;
    }
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 2 || parts.size() > 3)
        throw ParseError("bad category '" + std::string(text) +
                         "': expected [bi|tot],<alg>[,hf|,vf] or none");
    if (parts[0] == "bi")
        label.kind = GraphKind::Bipartite;
    else if (parts[0] == "tot")
        label.kind = GraphKind::Total;
    else
        throw ParseError("bad graph kind '" + parts[0] + "' in category '" + std::string(text) +
                         "'");
    if (parts[1] == "cm")
        label.algorithm = Algorithm::CuthillMcKee;
    else if (parts[1] == "king")
        label.algorithm = Algorithm::King;
    else if (parts[1] == "sloan")
        label.algorithm = Algorithm::Sloan;
    else if (parts[1] == "gps")
        label.algorithm = Algorithm::Gps;
    else
        throw ParseError("unknown algorithm '" + parts[1] + "' in category '" +
                         std::string(text) + "'");
    if (parts.size() == 3) {
        if (parts[2] == "hf")
            label.flip = Flip::Horizontal;
        else if (parts[2] == "vf")
            label.flip = Flip::Vertical;
        else
            throw ParseError("unknown flip '" + parts[2] + "' in category '" + std::string(text) +
                             "'");
    }
    return label;
}

std::string print_category(const CategoryLabel& label) {
    if (label.is_none) return "none";
    std::string out = label.kind == GraphKind::Bipartite ? "bi," : "tot,";
    out += algorithm_tag(label.algorithm);
    if (label.flip == Flip::Horizontal) out += ",hf";
    if (label.flip == Flip::Vertical) out += ",vf";
    return out;
}

std::vector<CategoryLabel> default_categories() {
    std::vector<CategoryLabel> out;
    out.push_back(CategoryLabel{true, GraphKind::Bipartite, Algorithm::CuthillMcKee, Flip::None});
    for (GraphKind kind : {GraphKind::Bipartite, GraphKind::Total})
        for (Algorithm alg :
             {Algorithm::CuthillMcKee, Algorithm::King, Algorithm::Sloan, Algorithm::Gps})
            for (Flip flip : {Flip::None, Flip::Horizontal, Flip::Vertical})
                out.push_back(CategoryLabel{false, kind, alg, flip});
    return out;
}

std::string csv_header() {
    return "model,category,bandwidth,bandwidth_n,profile,profile_n,span,span_n,avgwf,avgwf_n,"
           "es,es_n,wes,wes_n,states,final_nodes,peak_nodes,reorder_ms,reach_ms";
}

std::string to_csv_row(const RunRecord& rec) {
    std::ostringstream out;
    out << csv_quote(rec.model) << ',' << csv_quote(rec.category) << ',';
    if (rec.error.empty()) {
        const MetricsReport& m = rec.metrics;
        out << m.bandwidth << ',' << fmt_double(to_double(m.bandwidth_n)) << ',' << m.profile
            << ',' << fmt_double(to_double(m.profile_n)) << ',' << m.span << ','
            << fmt_double(to_double(m.span_n)) << ',' << fmt_double(to_double(m.avg_wavefront))
            << ',' << fmt_double(to_double(m.avg_wavefront_n)) << ',' << m.event_span << ','
            << fmt_double(to_double(m.event_span_n)) << ','
            << fmt_double(to_double(m.weighted_event_span)) << ','
            << fmt_double(to_double(m.weighted_event_span_n)) << ',';
        if (rec.has_reach)
            out << fmt_double(rec.states) << ',' << rec.final_nodes << ',' << rec.peak_nodes
                << ',';
        else
            out << ",,,";
        out << fmt_ms(rec.reorder_ms) << ',';
        out << (rec.has_reach ? fmt_ms(rec.reach_ms) : "");
    } else {
        out << ",,,,,,,,,,,,,,,,";
    }
    return out.str();
}

std::string to_json_line(const RunRecord& rec) {
    nlohmann::json j;
    j["model"] = rec.model;
    j["category"] = rec.category;
    if (rec.error.empty()) {
        const MetricsReport& m = rec.metrics;
        j["bandwidth"] = m.bandwidth;
        j["bandwidth_n"] = to_double(m.bandwidth_n);
        j["profile"] = m.profile;
        j["profile_n"] = to_double(m.profile_n);
        j["span"] = m.span;
        j["span_n"] = to_double(m.span_n);
        j["avgwf"] = to_double(m.avg_wavefront);
        j["avgwf_n"] = to_double(m.avg_wavefront_n);
        j["es"] = m.event_span;
        j["es_n"] = to_double(m.event_span_n);
        j["wes"] = to_double(m.weighted_event_span);
        j["wes_n"] = to_double(m.weighted_event_span_n);
        j["reorder_ms"] = rec.reorder_ms;
        if (rec.has_reach) {
            j["states"] = rec.states;
            j["final_nodes"] = rec.final_nodes;
            j["peak_nodes"] = rec.peak_nodes;
            j["iterations"] = rec.iterations;
            j["reach_ms"] = rec.reach_ms;
        }
        j["timing_trusted"] = rec.timing_trusted;
    } else {
        j["error"] = rec.error;
    }
    return j.dump();
}

std::vector<double> mean_standard_score(const std::vector<std::vector<double>>& values) {
    if (values.empty()) throw std::invalid_argument("mean standard score of an empty table");
    const std::size_t categories = values.front().size();
    if (categories < 2)
        throw std::invalid_argument("mean standard score needs at least two categories");
    std::vector<double> scores(categories, 0.0);
    for (const auto& row : values) {
        if (row.size() != categories)
            throw std::invalid_argument("ragged mean-standard-score table");
        double mu = 0;
        for (double v : row) mu += v;
        mu /= static_cast<double>(categories);
        double var = 0;
        for (double v : row) var += (v - mu) * (v - mu);
        double sigma = std::sqrt(var / static_cast<double>(categories));
        if (sigma > 0)
            for (std::size_t c = 0; c < categories; ++c) scores[c] += (row[c] - mu) / sigma;
    }
    for (double& s : scores) s /= static_cast<double>(values.size());
    return scores;
}

std::string render_pbm(const BipartiteDependencyGraph& bg, const SplitPermutation& sp) {
    BipartiteDependencyGraph permuted = bg.permuted(sp);
    DenseBitMatrix m = permuted.biadjacency();
    std::ostringstream out;
    out << "P1\n" << m.cols() << ' ' << m.rows() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << (m.at(i, j) ? '1' : '0');
        }
        out << '\n';
    }
    return out.str();
}

Model load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::string name = std::filesystem::path(path).stem().string();

    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("model file is empty: " + path);
    Model model;
    model.name = std::move(name);
    if (text[first] == '<') {
        model.net = parse_pnml(text);
        model.graph = dependency_graph(*model.net, DependencyKind::Write);
    } else {
        model.graph = BipartiteDependencyGraph::from_matrix(DenseBitMatrix::from_text(text));
    }
    return model;
}

std::vector<std::string> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    std::filesystem::path base = std::filesystem::path(path).parent_path();
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        std::filesystem::path entry(line.substr(b, e - b + 1));
        out.push_back(entry.is_absolute() ? entry.string() : (base / entry).string());
    }
    return out;
}

RunRecord run_cell(const Model& model, const CategoryLabel& category, const BenchOptions& opt) {
    RunRecord rec;
    rec.model = model.name;
    rec.category = print_category(category);
    rec.timing_trusted = opt.parallelism <= 1;
    try {
        // The four matrix metrics are evaluated on the ordering algorithm's
        // own vertex order of the lifted graph (which interleaves rows and
        // columns); only ES/WES and the reachability back-end consume the
        // row/column projection.
        auto t0 = std::chrono::steady_clock::now();
        SplitPermutation sp;
        UndirectedOrderedGraph ordered;
        if (category.is_none) {
            sp.rows = Permutation::identity(model.graph.row_count());
            sp.cols = Permutation::identity(model.graph.col_count());
            ordered = symmetrize(model.graph);
        } else {
            OrderingConfig cfg = default_config(category.algorithm);
            cfg.use_total_graph = category.kind == GraphKind::Total;
            ReorderOutcome outcome = reorder_graph(model.graph, cfg, category.flip);
            sp = std::move(outcome.split);
            ordered = std::move(outcome.ordered);
        }
        rec.reorder_ms = elapsed_ms(t0);

        rec.metrics = combined_metrics(ordered, model.graph.permuted(sp));

        if (model.net) {
            ReachConfig rc;
            rc.strategy = opt.strategy;
            rc.sat_granularity = opt.sat_granularity;
            rc.variable_order = sp.cols;
            rc.transition_order = sp.rows;
            auto t1 = std::chrono::steady_clock::now();
            ReachResult rr = reach(*model.net, rc);
            rec.reach_ms = elapsed_ms(t1);
            rec.has_reach = true;
            rec.states = rr.state_count;
            rec.final_nodes = rr.final_node_count;
            rec.peak_nodes = rr.peak_node_count;
            rec.iterations = rr.iterations;
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

namespace {

// One MSS table over the records; `metric` extracts the value, `keep`
// selects the participating categories (indices into `categories`).  Models
// with a failed or missing cell in any kept column are dropped.
std::vector<double> mss_table(const std::vector<RunRecord>& records, std::size_t model_count,
                              std::size_t category_count, const std::vector<std::size_t>& keep,
                              double (*metric)(const RunRecord&), bool need_reach) {
    std::vector<std::vector<double>> values;
    for (std::size_t m = 0; m < model_count; ++m) {
        std::vector<double> row;
        bool ok = true;
        for (std::size_t c : keep) {
            const RunRecord& rec = records[m * category_count + c];
            if (!rec.error.empty() || (need_reach && !rec.has_reach)) {
                ok = false;
                break;
            }
            row.push_back(metric(rec));
        }
        if (ok) values.push_back(std::move(row));
    }
    if (values.empty() || keep.size() < 2) return std::vector<double>(keep.size(), 0.0);
    return mean_standard_score(values);
}

}  // namespace

BenchOutput run_bench(const std::vector<Model>& models, const BenchOptions& opt) {
    if (models.empty()) throw std::invalid_argument("bench needs at least one model");
    if (opt.categories.empty()) throw std::invalid_argument("bench needs at least one category");

    const std::size_t cats = opt.categories.size();
    std::vector<RunRecord> records(models.size() * cats);
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= records.size()) break;
            records[i] = run_cell(models[i / cats], opt.categories[i % cats], opt);
        }
    };
    int threads = std::max(1, opt.parallelism);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    BenchOutput out;
    out.records = std::move(records);
    std::ostringstream csv, jsonl;
    csv << csv_header() << '\n';
    for (const RunRecord& rec : out.records) {
        csv << to_csv_row(rec) << '\n';
        jsonl << to_json_line(rec) << '\n';
    }
    out.csv = csv.str();
    out.jsonl = jsonl.str();

    // MSS summary: the four matrix metrics (optionally grouped by graph
    // kind), the two event metrics, and peak nodes.
    struct Column {
        const char* name;
        double (*metric)(const RunRecord&);
        bool matrix_metric;
        bool need_reach;
    };
    const Column columns[] = {
        {"bandwidth_n", [](const RunRecord& r) { return to_double(r.metrics.bandwidth_n); }, true,
         false},
        {"profile_n", [](const RunRecord& r) { return to_double(r.metrics.profile_n); }, true,
         false},
        {"span_n", [](const RunRecord& r) { return to_double(r.metrics.span_n); }, true, false},
        {"avgwf_n", [](const RunRecord& r) { return to_double(r.metrics.avg_wavefront_n); }, true,
         false},
        {"es_n", [](const RunRecord& r) { return to_double(r.metrics.event_span_n); }, false,
         false},
        {"wes_n", [](const RunRecord& r) { return to_double(r.metrics.weighted_event_span_n); },
         false, false},
        {"peak_nodes", [](const RunRecord& r) { return static_cast<double>(r.peak_nodes); },
         false, true},
    };

    std::vector<std::vector<double>> table(cats,
                                           std::vector<double>(std::size(columns), 0.0));
    for (std::size_t col = 0; col < std::size(columns); ++col) {
        std::vector<std::vector<std::size_t>> groups;
        if (opt.group_mss_by_kind && columns[col].matrix_metric) {
            std::vector<std::size_t> bi, tot;
            for (std::size_t c = 0; c < cats; ++c)
                (opt.categories[c].is_none || opt.categories[c].kind == GraphKind::Bipartite
                     ? bi
                     : tot)
                    .push_back(c);
            if (!bi.empty()) groups.push_back(std::move(bi));
            if (!tot.empty()) groups.push_back(std::move(tot));
        } else {
            std::vector<std::size_t> all(cats);
            for (std::size_t c = 0; c < cats; ++c) all[c] = c;
            groups.push_back(std::move(all));
        }
        for (const auto& keep : groups) {
            std::vector<double> scores = mss_table(out.records, models.size(), cats, keep,
                                                   columns[col].metric, columns[col].need_reach);
            for (std::size_t k = 0; k < keep.size(); ++k) table[keep[k]][col] = scores[k];
        }
    }

    std::ostringstream mss;
    mss << "mean standard score over " << models.size() << " model(s)";
    if (opt.group_mss_by_kind) mss << ", matrix metrics grouped by graph kind";
    mss << "\n";
    mss << "category        ";
    for (const Column& c : columns) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " %11s", c.name);
        mss << buf;
    }
    mss << '\n';
    for (std::size_t c = 0; c < cats; ++c) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-16s", print_category(opt.categories[c]).c_str());
        mss << buf;
        for (std::size_t col = 0; col < std::size(columns); ++col) {
            std::snprintf(buf, sizeof buf, " %11.4f", table[c][col]);
            mss << buf;
        }
        mss << '\n';
    }
    out.mss_summary = mss.str();
    return out;
}

}  // namespace bandwave

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bandwave/metrics.hpp"
#include "bandwave/ordering.hpp"
#include "bandwave/petri.hpp"
#include "bandwave/reach.hpp"

namespace bandwave {

// Which graph the ordering algorithm ran on: the symmetrized dependency
// graph (bi) or its total graph (tot).  The same choice selects the graph
// the four matrix metrics are evaluated on.
enum class GraphKind { Bipartite, Total };

// Grammar: "none" | ("bi"|"tot") "," alg ["," ("hf"|"vf")], alg one of
// cm/king/sloan/gps.
struct CategoryLabel {
    bool is_none = false;
    GraphKind kind = GraphKind::Bipartite;
    Algorithm algorithm = Algorithm::CuthillMcKee;
    Flip flip = Flip::None;
    bool operator==(const CategoryLabel&) const = default;
};

CategoryLabel parse_category(std::string_view text);
std::string print_category(const CategoryLabel& label);
// none plus every (kind, algorithm, flip) combination: 25 labels.
std::vector<CategoryLabel> default_categories();

struct RunRecord {
    std::string model;
    std::string category;
    MetricsReport metrics;
    bool has_reach = false;
    double states = 0;
    std::size_t final_nodes = 0;
    std::size_t peak_nodes = 0;
    int iterations = 0;
    double reorder_ms = 0;
    double reach_ms = 0;
    bool timing_trusted = true;
    std::string error;  // nonempty marks a failed cell
};

std::string csv_header();
std::string to_csv_row(const RunRecord& rec);
std::string to_json_line(const RunRecord& rec);

// values[model][category].  Per model, each category value is standardized
// by the population mean/deviation over that model's row (zero deviation
// contributes zero); the result is the per-category mean over models.
std::vector<double> mean_standard_score(const std::vector<std::vector<double>>& values);

// Permuted dependency matrix as an ASCII portable bitmap (P1, width = places,
// height = transitions).
std::string render_pbm(const BipartiteDependencyGraph& bg, const SplitPermutation& sp);

// A model on disk: PNML (net present) or the bare matrix text format.
struct Model {
    std::string name;
    BipartiteDependencyGraph graph;
    std::optional<PetriNet> net;
};

Model load_model(const std::string& path);
// Manifest: one model path per line, '#' comments, resolved relative to the
// manifest's directory.
std::vector<std::string> read_manifest(const std::string& path);

struct BenchOptions {
    std::vector<CategoryLabel> categories = default_categories();
    Strategy strategy = Strategy::SatLike;
    int sat_granularity = 10;
    int parallelism = 1;
    // Standardize the four matrix metrics within categories of the same
    // graph kind instead of across all categories ("none" counts as bi).
    bool group_mss_by_kind = false;
};

struct BenchOutput {
    std::vector<RunRecord> records;  // model-major, categories in option order
    std::string csv;
    std::string jsonl;
    std::string mss_summary;
};

RunRecord run_cell(const Model& model, const CategoryLabel& category, const BenchOptions& opt);
BenchOutput run_bench(const std::vector<Model>& models, const BenchOptions& opt);

}  // namespace bandwave

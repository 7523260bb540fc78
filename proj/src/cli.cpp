#include "bandwave/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bandwave/bench.hpp"
#include "bandwave/metrics.hpp"
#include "bandwave/ordering.hpp"
#include "bandwave/philosophers.hpp"
#include "bandwave/reach.hpp"

namespace bandwave {

namespace {

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SplitPermutation order_from_file(const std::string& path) {
    return permutation_from_text(read_file(path));
}

SplitPermutation identity_split(const BipartiteDependencyGraph& bg) {
    return SplitPermutation{Permutation::identity(static_cast<int>(bg.row_count())),
                            Permutation::identity(static_cast<int>(bg.col_count()))};
}

Algorithm algorithm_from(const std::string& name) {
    if (name == "cm") return Algorithm::CuthillMcKee;
    if (name == "king") return Algorithm::King;
    if (name == "sloan") return Algorithm::Sloan;
    return Algorithm::Gps;
}

Strategy strategy_from(const std::string& name) {
    if (name == "bfs") return Strategy::Bfs;
    if (name == "chaining") return Strategy::Chaining;
    return Strategy::SatLike;
}

std::string format_count(double v) {
    if (v >= 0 && v <= 9007199254740992.0 && v == std::floor(v)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

void print_metrics(std::ostream& out, const MetricsReport& m) {
    auto norm = [](const Rational& r) { return format_significant(to_double(r)); };
    out << "bandwidth " << m.bandwidth << " (" << norm(m.bandwidth_n) << ")\n";
    out << "profile " << m.profile << " (" << norm(m.profile_n) << ")\n";
    out << "span " << m.span << " (" << norm(m.span_n) << ")\n";
    out << "avg-wavefront " << format_significant(to_double(m.avg_wavefront)) << " ("
        << norm(m.avg_wavefront_n) << ")\n";
    out << "event-span " << m.event_span << " (" << norm(m.event_span_n) << ")\n";
    out << "weighted-event-span " << format_significant(to_double(m.weighted_event_span)) << " ("
        << norm(m.weighted_event_span_n) << ")\n";
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
    CLI::App app{"bandwidth/wavefront variable-ordering toolkit"};
    app.require_subcommand(1);

    // metrics
    auto* metrics_cmd = app.add_subcommand("metrics", "print ordering-quality metrics of a model");
    std::string metrics_model, metrics_order;
    metrics_cmd->add_option("model", metrics_model, "PNML or matrix file")->required();
    metrics_cmd->add_option("--order-file", metrics_order, "split permutation to apply first");
    metrics_cmd->callback([&] {
        Model model = load_model(metrics_model);
        BipartiteDependencyGraph bg = model.graph;
        if (!metrics_order.empty()) bg = bg.permuted(order_from_file(metrics_order));
        print_metrics(std::cout, full_metrics(bg));
    });

    // reorder
    auto* reorder_cmd = app.add_subcommand("reorder", "compute a split permutation");
    std::string reorder_model, reorder_alg, reorder_flip = "none", reorder_start, reorder_out;
    bool reorder_total = false, reorder_reverse = false;
    int w1 = 1, w2 = 2;
    reorder_cmd->add_option("model", reorder_model, "PNML or matrix file")->required();
    reorder_cmd->add_option("--alg", reorder_alg, "ordering algorithm")
        ->required()
        ->check(CLI::IsMember({"cm", "king", "sloan", "gps"}));
    reorder_cmd->add_flag("--total-graph", reorder_total, "order the total graph");
    reorder_cmd->add_option("--flip", reorder_flip, "mirror the result")
        ->check(CLI::IsMember({"h", "v", "none"}));
    reorder_cmd->add_flag("--reverse", reorder_reverse, "reverse the numbering");
    reorder_cmd->add_option("--start", reorder_start, "start-vertex policy")
        ->check(CLI::IsMember({"mindeg", "pseudo"}));
    reorder_cmd->add_option("--sloan-w1", w1, "Sloan degree weight");
    reorder_cmd->add_option("--sloan-w2", w2, "Sloan distance weight");
    reorder_cmd->add_option("-o,--output", reorder_out, "write here instead of stdout");
    reorder_cmd->callback([&] {
        Model model = load_model(reorder_model);
        OrderingConfig cfg = default_config(algorithm_from(reorder_alg));
        if (reorder_start == "mindeg") cfg.start = StartPolicy::MinDegree;
        if (reorder_start == "pseudo") cfg.start = StartPolicy::PseudoPeripheral;
        cfg.reverse = reorder_reverse;
        cfg.sloan_w1 = w1;
        cfg.sloan_w2 = w2;
        cfg.use_total_graph = reorder_total;
        Flip flip = reorder_flip == "h"   ? Flip::Horizontal
                    : reorder_flip == "v" ? Flip::Vertical
                                          : Flip::None;
        std::string text = to_permutation_text(reorder_pipeline(model.graph, cfg, flip));
        if (reorder_out.empty())
            std::cout << text;
        else
            write_file_atomic(reorder_out, text);
    });

    // reach
    auto* reach_cmd = app.add_subcommand("reach", "symbolic reachability of a Petri net");
    std::string reach_model, reach_order, reach_strategy;
    int reach_gran = 10;
    reach_cmd->add_option("model", reach_model, "PNML file")->required();
    reach_cmd->add_option("--order-file", reach_order, "split permutation to apply first");
    reach_cmd->add_option("--strategy", reach_strategy, "fixpoint strategy")
        ->required()
        ->check(CLI::IsMember({"bfs", "chaining", "sat-like"}));
    reach_cmd->add_option("--sat-granularity", reach_gran, "transitions per saturation group")
        ->check(CLI::PositiveNumber);
    reach_cmd->callback([&] {
        Model model = load_model(reach_model);
        if (!model.net) throw std::runtime_error("reachability requires a Petri net model");
        ReachConfig cfg;
        cfg.strategy = strategy_from(reach_strategy);
        cfg.sat_granularity = reach_gran;
        if (!reach_order.empty()) {
            SplitPermutation sp = order_from_file(reach_order);
            cfg.variable_order = sp.cols;
            cfg.transition_order = sp.rows;
        }
        ReachResult r = reach(*model.net, cfg);
        std::cout << "states " << format_count(r.state_count) << "\n";
        std::cout << "final-nodes " << r.final_node_count << "\n";
        std::cout << "peak-nodes " << r.peak_node_count << "\n";
        std::cout << "iterations " << r.iterations << "\n";
    });

    // render
    auto* render_cmd = app.add_subcommand("render", "write the dependency matrix as a PBM bitmap");
    std::string render_model, render_order, render_out;
    render_cmd->add_option("model", render_model, "PNML or matrix file")->required();
    render_cmd->add_option("--order-file", render_order, "split permutation to apply first");
    render_cmd->add_option("-o,--output", render_out, "output .pbm path")->required();
    render_cmd->callback([&] {
        Model model = load_model(render_model);
        SplitPermutation sp = render_order.empty() ? identity_split(model.graph)
                                                   : order_from_file(render_order);
        write_file_atomic(render_out, render_pbm(model.graph, sp));
    });

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run a model x category grid");
    std::string bench_manifest, bench_strategy = "sat-like", bench_csv, bench_log;
    std::vector<std::string> bench_categories;
    int bench_gran = 10, bench_parallel = 1;
    bool bench_group = false;
    bench_cmd->add_option("manifest", bench_manifest, "file listing model paths")->required();
    bench_cmd->add_option("--category", bench_categories,
                          "category label (repeatable); default: the full 25-label grid");
    bench_cmd->add_option("--strategy", bench_strategy, "fixpoint strategy")
        ->check(CLI::IsMember({"bfs", "chaining", "sat-like"}));
    bench_cmd->add_option("--sat-granularity", bench_gran, "transitions per saturation group")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--parallel", bench_parallel, "worker threads over grid cells")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_flag("--group-mss-by-kind", bench_group,
                        "standardize matrix metrics within bi/tot kinds");
    bench_cmd->add_option("--csv", bench_csv, "write the CSV here instead of stdout");
    bench_cmd->add_option("--log", bench_log, "write one JSON record per run here");
    bench_cmd->callback([&] {
        BenchOptions opt;
        if (!bench_categories.empty()) {
            opt.categories.clear();
            for (const auto& c : bench_categories) opt.categories.push_back(parse_category(c));
        }
        opt.strategy = strategy_from(bench_strategy);
        opt.sat_granularity = bench_gran;
        opt.parallelism = bench_parallel;
        opt.group_mss_by_kind = bench_group;
        std::vector<Model> models;
        for (const auto& path : read_manifest(bench_manifest))
            models.push_back(load_model(path));
        BenchOutput out = run_bench(models, opt);
        if (bench_csv.empty())
            std::cout << out.csv;
        else
            write_file_atomic(bench_csv, out.csv);
        if (!bench_log.empty()) write_file_atomic(bench_log, out.jsonl);
        std::cout << out.mss_summary;
    });

    // gen-philosophers
    auto* gen_cmd = app.add_subcommand("gen-philosophers", "generate a philosopher ring net");
    int gen_count = 0, gen_block = 16;
    std::string gen_layout, gen_out;
    gen_cmd->add_option("--count", gen_count, "number of philosophers")
        ->required()
        ->check(CLI::Range(2, 1000000));
    gen_cmd->add_option("--layout", gen_layout, "place declaration layout")
        ->required()
        ->check(CLI::IsMember({"interleaved", "grouped", "blocked"}));
    gen_cmd->add_option("--block", gen_block, "philosophers per block (blocked layout)")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("-o,--output", gen_out, "write here instead of stdout");
    gen_cmd->callback([&] {
        PhilosopherLayout layout = gen_layout == "interleaved" ? PhilosopherLayout::Interleaved
                                   : gen_layout == "grouped"   ? PhilosopherLayout::Grouped
                                                               : PhilosopherLayout::Blocked;
        std::string text = to_pnml(dining_philosophers(gen_count, layout, gen_block));
        if (gen_out.empty())
            std::cout << text;
        else
            write_file_atomic(gen_out, text);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace bandwave

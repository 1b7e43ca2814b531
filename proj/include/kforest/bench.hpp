#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "kforest/graph.hpp"

namespace kforest {

/** One corpus entry: a graph plus the metadata the report rows carry. */
struct BenchJob {
    std::string graph_id;
    int line_count = 0;  // arrangement lines behind the graph; 0 when unknown
    Graph graph;
};

struct ReportRow {
    std::string graph_id;
    int line_count = 0;
    Vertex vertex_count = 0;
    std::size_t edge_count = 0;
    Weight mst_weight = 0;
    std::string algorithm;
    int k = 0;
    Weight heaviest = 0;
    double ratio = 0.0;  // heaviest / mst_weight
    std::int64_t wall_us = 0;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;    // canonically sorted by (graph_id, algorithm, k)
    std::vector<std::string> notes; // skipped combinations and per-row failures
};

struct ExperimentConfig {
    std::vector<int> ks;
    bool run_spectral = true;
    bool run_dp = true;
    int threads = 0;         // 0 = one per hardware thread; KFOREST_THREADS caps it
    bool zero_times = false; // report wall_us as 0 so output is byte-stable
};

/**
 * Runs the configured algorithms over the corpus in a worker pool, one task
 * per graph. Spectral runs only at power-of-two k (one shared recursion per
 * graph covers all of them); every forest is validated before its row is
 * recorded; failures become notes, not errors. Row order and content are
 * independent of the pool size.
 */
ExperimentReport run_experiment(const std::vector<BenchJob>& corpus,
                                const ExperimentConfig& config);

/** CSV text of the report rows; parse_report(format_report(r)).rows == r.rows. */
std::string format_report(const ExperimentReport& report);
ExperimentReport parse_report(const std::string& text);

struct CellStats {
    std::string algorithm;
    int k = 0;
    std::size_t samples = 0;
    double mean_ratio = 0.0;
    double stddev = 0.0;
};

/** Paired comparison per k; differences are spectral minus dp. */
struct PairedStats {
    int k = 0;
    std::size_t samples = 0;
    double t = 0.0;
    double p = 1.0;
    bool degenerate = false;  // zero-variance differences, t undefined
};

struct SummaryStats {
    std::vector<CellStats> cells;
    std::vector<PairedStats> paired;
    std::vector<std::string> notes;
};

/**
 * Mean and sample stddev of the ratio per (algorithm, k), plus a paired
 * t-test per k where both algorithms covered the same graphs. Cells with a
 * lone sample and unpairable k values are noted and carried without stats.
 */
SummaryStats summarize(const ExperimentReport& report);

/** Human-readable summary table for the CLI. */
std::string format_summary(const SummaryStats& summary);

/** Reads one graph file; "# arrangement lines=..." comments fill line_count. */
BenchJob load_bench_job(const std::filesystem::path& file);

/** All *.graph files of a directory, ordered by file name. */
std::vector<BenchJob> load_corpus(const std::filesystem::path& dir);

}  // namespace kforest

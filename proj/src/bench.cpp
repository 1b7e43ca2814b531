#include "kforest/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "kforest/dp_partition.hpp"
#include "kforest/mst.hpp"
#include "kforest/spectral.hpp"
#include "kforest/stats.hpp"

namespace kforest {

namespace {

constexpr const char* kCsvHeader =
    "graph_id,lines,vertices,edges,mst_weight,algorithm,k,heaviest,ratio,wall_us";

unsigned effective_workers(int requested) {
    unsigned n = requested > 0 ? static_cast<unsigned>(requested)
                               : std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap_text = std::getenv("KFOREST_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(cap_text, &end, 10);
        if (end != nullptr && *end == '\0' && cap > 0)
            n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

bool row_less(const ReportRow& a, const ReportRow& b) {
    return std::tie(a.graph_id, a.algorithm, a.k) < std::tie(b.graph_id, b.algorithm, b.k);
}

std::string format_ratio(double ratio) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9f", ratio);
    return buf;
}

/** Notes carry a sort key so their order never depends on the pool size. */
struct JobOutput {
    std::vector<ReportRow> rows;
    std::vector<std::string> notes;
};

ReportRow checked_row(const BenchJob& job, Weight mst_weight, const std::string& algorithm,
                      int k, const Forest& forest, std::int64_t wall_us) {
    validate_forest(job.graph, forest);
    if (forest.trees.size() != static_cast<std::size_t>(k))
        throw Error(algorithm + " produced " + std::to_string(forest.trees.size()) +
                    " trees, wanted " + std::to_string(k));
    ReportRow row;
    row.graph_id = job.graph_id;
    row.line_count = job.line_count;
    row.vertex_count = job.graph.vertex_count();
    row.edge_count = job.graph.edge_count();
    row.mst_weight = mst_weight;
    row.algorithm = algorithm;
    row.k = k;
    row.heaviest = forest.heaviest();
    row.ratio = static_cast<double>(row.heaviest) / static_cast<double>(mst_weight);
    row.wall_us = wall_us;
    return row;
}

JobOutput process_job(const BenchJob& job, const std::vector<int>& ks,
                      const ExperimentConfig& config) {
    JobOutput out;
    const Graph& g = job.graph;
    const Vertex n = g.vertex_count();

    Weight mst_weight = 0;
    try {
        mst_weight = kruskal_mst(g).weight;
    } catch (const Error& e) {
        out.notes.push_back(job.graph_id + ": skipped (" + e.what() + ")");
        return out;
    }
    if (mst_weight <= 0) {
        out.notes.push_back(job.graph_id + ": skipped (mst weight is zero, ratios undefined)");
        return out;
    }

    if (config.run_dp) {
        for (const int k : ks) {
            if (k < 2 || k > n) {
                out.notes.push_back(job.graph_id + " dp k=" + std::to_string(k) +
                                    ": skipped (k outside 2.." + std::to_string(n) + ")");
                continue;
            }
            try {
                const auto start = std::chrono::steady_clock::now();
                const Forest forest = dp_k_forest(g, k);
                const auto wall = std::chrono::duration_cast<std::chrono::microseconds>(
                                      std::chrono::steady_clock::now() - start)
                                      .count();
                out.rows.push_back(
                    checked_row(job, mst_weight, "dp", k, forest, config.zero_times ? 0 : wall));
            } catch (const Error& e) {
                out.notes.push_back(job.graph_id + " dp k=" + std::to_string(k) + ": failed (" +
                                    e.what() + ")");
            }
        }
    }

    if (config.run_spectral) {
        std::vector<int> eligible;
        for (const int k : ks) {
            if (k < 1 || (k & (k - 1)) != 0) {
                out.notes.push_back(job.graph_id + " spectral k=" + std::to_string(k) +
                                    ": skipped (k not a power of two)");
            } else if (k > n) {
                out.notes.push_back(job.graph_id + " spectral k=" + std::to_string(k) +
                                    ": skipped (k exceeds vertex count)");
            } else {
                eligible.push_back(k);
            }
        }
        std::sort(eligible.begin(), eligible.end());

        // One recursion covers every power of two at once; if the deepest
        // level fails, retry shallower so the small k still get rows.
        while (!eligible.empty()) {
            const int top = eligible.back();
            std::vector<std::int64_t> level_us;
            std::vector<Forest> ladder;
            try {
                ladder = spectral_forest_ladder(g, top, {}, &level_us);
            } catch (const Error& e) {
                out.notes.push_back(job.graph_id + " spectral k=" + std::to_string(top) +
                                    ": failed (" + e.what() + ")");
                eligible.pop_back();
                continue;
            }
            for (const int k : eligible) {
                std::size_t level = 0;
                while ((1 << level) < k) ++level;
                try {
                    out.rows.push_back(checked_row(
                        job, mst_weight, "spectral", k, ladder[level],
                        config.zero_times ? 0 : level_us[level]));
                } catch (const Error& e) {
                    out.notes.push_back(job.graph_id + " spectral k=" + std::to_string(k) +
                                        ": failed (" + e.what() + ")");
                }
            }
            break;
        }
    }
    return out;
}

}  // namespace

ExperimentReport run_experiment(const std::vector<BenchJob>& corpus,
                                const ExperimentConfig& config) {
    std::vector<int> ks(config.ks);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

    std::vector<JobOutput> outputs(corpus.size());
    std::atomic<std::size_t> cursor{0};
    auto drain = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= corpus.size()) return;
            outputs[i] = process_job(corpus[i], ks, config);
        }
    };

    const unsigned workers = effective_workers(config.threads);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(drain);
    drain();
    for (std::thread& t : pool) t.join();

    ExperimentReport report;
    for (JobOutput& out : outputs) {
        for (ReportRow& row : out.rows) report.rows.push_back(std::move(row));
        for (std::string& note : out.notes) report.notes.push_back(std::move(note));
    }
    std::sort(report.rows.begin(), report.rows.end(), row_less);
    return report;
}

std::string format_report(const ExperimentReport& report) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const ReportRow& row : report.rows) {
        if (row.graph_id.find(',') != std::string::npos ||
            row.algorithm.find(',') != std::string::npos)
            throw Error("format_report: field contains a comma: " + row.graph_id);
        out << row.graph_id << ',' << row.line_count << ',' << row.vertex_count << ','
            << row.edge_count << ',' << row.mst_weight << ',' << row.algorithm << ',' << row.k
            << ',' << row.heaviest << ',' << format_ratio(row.ratio) << ',' << row.wall_us
            << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

long long parse_integer(const std::string& text, long line_no, const char* what) {
    try {
        std::size_t used = 0;
        const long long value = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + text + "'");
    }
}

double parse_real(const std::string& text, long line_no, const char* what) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + text + "'");
    }
}

}  // namespace

ExperimentReport parse_report(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    bool have_header = false;
    ExperimentReport report;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!have_header) {
            if (line != kCsvHeader)
                throw ParseError("line " + std::to_string(line_no) + ": unexpected header");
            have_header = true;
            continue;
        }
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 10)
            throw ParseError("line " + std::to_string(line_no) + ": expected 10 fields, got " +
                             std::to_string(fields.size()));
        ReportRow row;
        row.graph_id = fields[0];
        row.line_count = static_cast<int>(parse_integer(fields[1], line_no, "line count"));
        row.vertex_count = static_cast<Vertex>(parse_integer(fields[2], line_no, "vertex count"));
        row.edge_count = static_cast<std::size_t>(parse_integer(fields[3], line_no, "edge count"));
        row.mst_weight = parse_integer(fields[4], line_no, "mst weight");
        row.algorithm = fields[5];
        row.k = static_cast<int>(parse_integer(fields[6], line_no, "k"));
        row.heaviest = parse_integer(fields[7], line_no, "heaviest");
        row.ratio = parse_real(fields[8], line_no, "ratio");
        row.wall_us = parse_integer(fields[9], line_no, "wall time");
        report.rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError("empty input: missing CSV header");
    return report;
}

SummaryStats summarize(const ExperimentReport& report) {
    SummaryStats summary;

    std::map<std::pair<std::string, int>, std::vector<std::pair<std::string, double>>> cells;
    for (const ReportRow& row : report.rows)
        cells[{row.algorithm, row.k}].emplace_back(row.graph_id, row.ratio);

    for (const auto& [key, samples] : cells) {
        CellStats cell;
        cell.algorithm = key.first;
        cell.k = key.second;
        cell.samples = samples.size();
        std::vector<double> ratios;
        ratios.reserve(samples.size());
        for (const auto& [id, ratio] : samples) ratios.push_back(ratio);
        cell.mean_ratio = mean(ratios);
        if (ratios.size() >= 2) {
            cell.stddev = sample_stddev(ratios);
        } else {
            summary.notes.push_back(cell.algorithm + " k=" + std::to_string(cell.k) +
                                    ": single sample, no stddev");
        }
        summary.cells.push_back(std::move(cell));
    }

    std::set<int> ks;
    for (const auto& [key, samples] : cells) ks.insert(key.second);
    for (const int k : ks) {
        const auto spectral = cells.find({"spectral", k});
        const auto dp = cells.find({"dp", k});
        if (spectral == cells.end() || dp == cells.end()) continue;
        if (spectral->second.size() != dp->second.size() ||
            !std::equal(spectral->second.begin(), spectral->second.end(), dp->second.begin(),
                        [](const auto& a, const auto& b) { return a.first == b.first; })) {
            summary.notes.push_back("k=" + std::to_string(k) +
                                    ": algorithms cover different graphs, pairing skipped");
            continue;
        }
        if (spectral->second.size() < 2) {
            summary.notes.push_back("k=" + std::to_string(k) +
                                    ": too few pairs for a t-test, pairing skipped");
            continue;
        }
        PairedStats pair;
        pair.k = k;
        pair.samples = spectral->second.size();
        std::vector<double> xs, ys;
        for (const auto& [id, ratio] : spectral->second) xs.push_back(ratio);
        for (const auto& [id, ratio] : dp->second) ys.push_back(ratio);
        try {
            const TTestResult r = paired_t_test(xs, ys);
            pair.t = r.t;
            pair.p = r.p;
        } catch (const DegenerateSampleError&) {
            pair.degenerate = true;
        }
        summary.paired.push_back(pair);
    }
    return summary;
}

std::string format_summary(const SummaryStats& summary) {
    std::ostringstream out;
    out << "algorithm      k  samples  mean_ratio     stddev\n";
    char buf[128];
    for (const CellStats& cell : summary.cells) {
        std::snprintf(buf, sizeof buf, "%-12s %4d %8zu  %10.6f %10.6f\n", cell.algorithm.c_str(),
                      cell.k, cell.samples, cell.mean_ratio, cell.stddev);
        out << buf;
    }
    if (!summary.paired.empty()) {
        out << "\npaired t-test (spectral - dp)\n";
        out << "   k  samples          t          p\n";
        for (const PairedStats& pair : summary.paired) {
            if (pair.degenerate) {
                std::snprintf(buf, sizeof buf, "%4d %8zu  degenerate: zero-variance differences\n",
                              pair.k, pair.samples);
            } else {
                std::snprintf(buf, sizeof buf, "%4d %8zu %10.4f %10.4f\n", pair.k, pair.samples,
                              pair.t, pair.p);
            }
            out << buf;
        }
    }
    for (const std::string& note : summary.notes) out << "note: " << note << '\n';
    return out.str();
}

BenchJob load_bench_job(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error("cannot open " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    BenchJob job;
    job.graph_id = file.stem().string();
    job.graph = parse_graph(text);

    // sidecar metadata written by the generator
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const std::size_t tag = line.find("lines=");
        if (!line.empty() && line[0] == '#' && tag != std::string::npos) {
            try {
                job.line_count = std::stoi(line.substr(tag + 6));
            } catch (const std::exception&) {
                job.line_count = 0;
            }
            break;
        }
    }
    return job;
}

std::vector<BenchJob> load_corpus(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw Error("corpus directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".graph")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<BenchJob> corpus;
    corpus.reserve(files.size());
    for (const auto& file : files) corpus.push_back(load_bench_job(file));
    if (corpus.empty()) throw Error("no .graph files in " + dir.string());
    return corpus;
}

}  // namespace kforest

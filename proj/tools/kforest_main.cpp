#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kforest/arrangement.hpp"
#include "kforest/bench.hpp"
#include "kforest/dp_partition.hpp"
#include "kforest/exact.hpp"
#include "kforest/spectral.hpp"

namespace {

using namespace kforest;

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_graph(buffer.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("write failed for " + path);
}

struct GenerateOptions {
    int lines = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_generate(const GenerateOptions& opt) {
    const LineArrangement arr = random_lines(opt.lines, opt.seed);
    std::vector<Weight> line_weights;
    const Graph g = dual_graph(arr, opt.seed, &line_weights);

    std::ostringstream text;
    text << "# arrangement lines=" << opt.lines << " seed=" << opt.seed << '\n';
    text << "# line_weights";
    for (const Weight w : line_weights) text << ' ' << w;
    text << '\n' << format_graph(g);
    write_text_file(opt.out, text.str());
    std::cout << "wrote " << opt.out << ": " << g.vertex_count() << " vertices, "
              << g.edge_count() << " edges\n";
    return 0;
}

struct PartitionOptions {
    std::string algo;
    int k = 0;
    std::string in;
    std::string dot;
    bool zero_diagonal = false;
};

int run_partition(const PartitionOptions& opt) {
    const Graph g = read_graph_file(opt.in);
    Forest forest;
    if (opt.algo == "dp") {
        forest = dp_k_forest(g, opt.k);
    } else {
        SpectralOptions options;
        if (opt.zero_diagonal) options.diagonal = SimilarityDiagonal::kZero;
        forest = spectral_k_forest(g, opt.k, options);
    }
    validate_forest(g, forest);
    std::cout << format_forest(forest);
    if (!opt.dot.empty()) write_text_file(opt.dot, forest_dot(g, forest));
    return 0;
}

struct ExactOptions {
    int k = 0;
    std::string in;
};

int run_exact(const ExactOptions& opt) {
    const Graph g = read_graph_file(opt.in);
    const ExactResult result = exact_min_k_forest(g, opt.k);
    std::cout << format_forest(result.forest);
    return 0;
}

struct BenchOptions {
    std::string corpus;
    std::vector<int> ks;
    std::string out;
    std::string algo = "both";
    int threads = 0;
    bool zero_times = false;
};

int run_bench(const BenchOptions& opt) {
    const std::vector<BenchJob> corpus = load_corpus(opt.corpus);
    ExperimentConfig config;
    config.ks = opt.ks;
    config.run_dp = opt.algo != "spectral";
    config.run_spectral = opt.algo != "dp";
    config.threads = opt.threads;
    config.zero_times = opt.zero_times;
    const ExperimentReport report = run_experiment(corpus, config);
    write_text_file(opt.out, format_report(report));
    for (const std::string& note : report.notes) std::cerr << "note: " << note << '\n';
    std::cout << "wrote " << opt.out << ": " << report.rows.size() << " rows over "
              << corpus.size() << " graphs\n";
    return 0;
}

struct StatsOptions {
    std::string in;
};

int run_stats(const StatsOptions& opt) {
    std::ifstream in(opt.in);
    if (!in) throw Error("cannot open " + opt.in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const ExperimentReport report = parse_report(buffer.str());
    std::cout << format_summary(summarize(report));
    return 0;
}

struct CrosscheckOptions {
    std::string in;
    std::string corpus;
};

int run_crosscheck(const CrosscheckOptions& opt) {
    std::ifstream in(opt.in);
    if (!in) throw Error("cannot open " + opt.in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const ExperimentReport report = parse_report(buffer.str());
    const std::vector<BenchJob> corpus = load_corpus(opt.corpus);

    long checked = 0;
    long skipped = 0;
    long violations = 0;
    for (const ReportRow& row : report.rows) {
        const BenchJob* job = nullptr;
        for (const BenchJob& candidate : corpus)
            if (candidate.graph_id == row.graph_id) {
                job = &candidate;
                break;
            }
        if (job == nullptr) throw Error("report row names unknown graph " + row.graph_id);
        ExactResult exact;
        try {
            exact = exact_min_k_forest(job->graph, row.k);
        } catch (const TooLargeError&) {
            ++skipped;
            continue;
        }
        ++checked;
        if (row.heaviest < exact.weight) {
            ++violations;
            std::cout << "violation: " << row.graph_id << ' ' << row.algorithm
                      << " k=" << row.k << " reports " << row.heaviest
                      << " below the exact optimum " << exact.weight << '\n';
        }
    }
    std::cout << "checked " << checked << " rows against the oracle, skipped " << skipped
              << " (too large), " << violations << " violations\n";
    return violations == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate minimum spanning k-forests of weighted graphs"};
    app.require_subcommand(1);

    GenerateOptions generate_opt;
    CLI::App* generate = app.add_subcommand(
        "generate", "Generate a random line-arrangement dual graph");
    generate->add_option("--lines", generate_opt.lines, "number of lines")
        ->required()
        ->check(CLI::PositiveNumber);
    generate->add_option("--seed", generate_opt.seed, "RNG seed")->required();
    generate->add_option("--out", generate_opt.out, "output graph file")->required();

    PartitionOptions partition_opt;
    CLI::App* partition =
        app.add_subcommand("partition", "Split a graph into a spanning k-forest");
    partition->add_option("--algo", partition_opt.algo, "algorithm")
        ->required()
        ->check(CLI::IsMember({"dp", "spectral"}));
    partition->add_option("--k", partition_opt.k, "tree count")->required();
    partition->add_option("--in", partition_opt.in, "input graph file")->required();
    partition->add_option("--dot", partition_opt.dot, "write a Graphviz rendering here");
    partition->add_flag("--zero-diagonal", partition_opt.zero_diagonal,
                        "zero the similarity diagonal (spectral only)");

    ExactOptions exact_opt;
    CLI::App* exact = app.add_subcommand("exact", "Exact minimum spanning k-forest (small graphs)");
    exact->add_option("--k", exact_opt.k, "tree count")->required();
    exact->add_option("--in", exact_opt.in, "input graph file")->required();

    BenchOptions bench_opt;
    CLI::App* bench = app.add_subcommand("bench", "Run both algorithms over a graph corpus");
    bench->add_option("--corpus", bench_opt.corpus, "directory of .graph files")->required();
    bench->add_option("--ks", bench_opt.ks, "tree counts")->required()->delimiter(',');
    bench->add_option("--out", bench_opt.out, "output CSV file")->required();
    bench->add_option("--algo", bench_opt.algo, "restrict to one algorithm")
        ->check(CLI::IsMember({"dp", "spectral", "both"}));
    bench->add_option("--threads", bench_opt.threads,
                      "worker count, 0 = one per core (KFOREST_THREADS caps it)");
    bench->add_flag("--zero-times", bench_opt.zero_times,
                    "report wall times as 0 for byte-stable output");

    StatsOptions stats_opt;
    CLI::App* stats = app.add_subcommand("stats", "Summarize a benchmark CSV");
    stats->add_option("--in", stats_opt.in, "report CSV file")->required();

    CrosscheckOptions crosscheck_opt;
    CLI::App* crosscheck = app.add_subcommand(
        "crosscheck", "Verify report rows against the exact oracle where feasible");
    crosscheck->add_option("--in", crosscheck_opt.in, "report CSV file")->required();
    crosscheck->add_option("--corpus", crosscheck_opt.corpus, "directory of .graph files")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (generate->parsed()) return run_generate(generate_opt);
        if (partition->parsed()) return run_partition(partition_opt);
        if (exact->parsed()) return run_exact(exact_opt);
        if (bench->parsed()) return run_bench(bench_opt);
        if (stats->parsed()) return run_stats(stats_opt);
        if (crosscheck->parsed()) return run_crosscheck(crosscheck_opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

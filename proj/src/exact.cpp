#include "kforest/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>

#include "kforest/mst.hpp"

namespace kforest {

namespace {

constexpr int kMaxGeneralVertices = 12;
constexpr int kMaxBisectionVertices = 22;
constexpr std::size_t kMaxDecideValues = 10;

/**
 * MST weight of the subgraph induced by `mask`, or -1 when it is empty or
 * disconnected. `edges` must be in canonical order so the scan is Kruskal.
 */
Weight induced_mst_weight(const std::vector<Edge>& edges, std::uint32_t mask,
                          std::vector<Vertex>& parent) {
    if (mask == 0) return -1;
    const int members = std::popcount(mask);
    for (std::size_t v = 0; v < parent.size(); ++v)
        parent[v] = static_cast<Vertex>(v);

    auto find = [&parent](Vertex v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };

    int joined = 0;
    Weight weight = 0;
    for (const Edge& e : edges) {
        if (joined == members - 1) break;
        if (!(mask >> e.u & 1) || !(mask >> e.v & 1)) continue;
        const Vertex ru = find(e.u);
        const Vertex rv = find(e.v);
        if (ru == rv) continue;
        parent[static_cast<std::size_t>(ru)] = rv;
        weight += e.w;
        ++joined;
    }
    return joined == members - 1 ? weight : -1;
}

/** Induced-subgraph MST of one block, mapped back to the parent graph's ids. */
Tree block_tree(const Graph& g, const std::vector<Vertex>& members) {
    auto [sub, to_old] = induced_subgraph(g, members);
    const Tree local = kruskal_mst(sub);
    std::vector<Vertex> vertices;
    vertices.reserve(local.vertices.size());
    for (const Vertex v : local.vertices) vertices.push_back(to_old[static_cast<std::size_t>(v)]);
    std::vector<Edge> edges;
    edges.reserve(local.edges.size());
    for (const Edge& e : local.edges)
        edges.push_back(Edge{to_old[static_cast<std::size_t>(e.u)],
                             to_old[static_cast<std::size_t>(e.v)], e.w});
    return make_tree(std::move(vertices), std::move(edges));
}

ExactResult result_from_masks(const Graph& g, const std::vector<std::uint32_t>& blocks) {
    ExactResult r;
    for (const std::uint32_t mask : blocks) {
        std::vector<Vertex> members;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (mask >> v & 1) members.push_back(v);
        r.forest.trees.push_back(block_tree(g, members));
        r.weight = std::max(r.weight, r.forest.trees.back().weight);
    }
    return r;
}

ExactResult exact_general(const Graph& g, const int k) {
    const int n = g.vertex_count();
    const std::uint32_t mask_count = 1u << n;
    std::vector<Vertex> scratch(static_cast<std::size_t>(n));
    std::vector<Weight> mst_of(mask_count, -1);
    for (std::uint32_t mask = 1; mask < mask_count; ++mask)
        mst_of[mask] = induced_mst_weight(g.edges(), mask, scratch);

    std::vector<std::uint32_t> blocks(static_cast<std::size_t>(k), 0);
    std::vector<std::uint32_t> best_blocks;
    Weight best = std::numeric_limits<Weight>::max();

    // Restricted growth: vertex `pos` joins an existing block or opens the
    // next one; ascending block ids give lexicographic order.
    auto walk = [&](auto&& self, int pos, int used) -> void {
        if (pos == n) {
            if (used != k) return;
            Weight worst = 0;
            for (int b = 0; b < k; ++b) {
                const Weight w = mst_of[blocks[static_cast<std::size_t>(b)]];
                if (w < 0) return;
                worst = std::max(worst, w);
            }
            if (worst < best) {
                best = worst;
                best_blocks = blocks;
            }
            return;
        }
        if (used + (n - pos) < k) return;
        const int limit = std::min(used, k - 1);
        for (int b = 0; b <= limit; ++b) {
            blocks[static_cast<std::size_t>(b)] |= 1u << pos;
            self(self, pos + 1, used + (b == used ? 1 : 0));
            blocks[static_cast<std::size_t>(b)] &= ~(1u << pos);
        }
    };
    blocks[0] = 1;
    walk(walk, 1, 1);

    if (best_blocks.empty()) throw Error("exact_min_k_forest: no connected partition found");
    ExactResult r = result_from_masks(g, best_blocks);
    r.weight = best;
    return r;
}

ExactResult exact_bisection(const Graph& g) {
    const int n = g.vertex_count();
    const int width = n - 1;
    const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1;
    std::vector<Vertex> scratch(static_cast<std::size_t>(n));

    Weight best = std::numeric_limits<Weight>::max();
    std::uint32_t best_second = 0;
    // Bit (width - v) of `code` says vertex v sits in the second block, so
    // counting codes upward matches the growth-string order of exact_general.
    for (std::uint32_t code = 1; code < (1u << width); ++code) {
        std::uint32_t second = 0;
        for (std::uint32_t rest = code; rest != 0; rest &= rest - 1) {
            const int bit = std::countr_zero(rest);
            second |= 1u << (width - bit);
        }
        const Weight w_first = induced_mst_weight(g.edges(), all & ~second, scratch);
        if (w_first < 0) continue;
        const Weight w_second = induced_mst_weight(g.edges(), second, scratch);
        if (w_second < 0) continue;
        const Weight worst = std::max(w_first, w_second);
        if (worst < best) {
            best = worst;
            best_second = second;
            if (best == 0) break;
        }
    }

    if (best == std::numeric_limits<Weight>::max())
        throw Error("exact_min_k_forest: no connected partition found");
    ExactResult r = result_from_masks(g, {all & ~best_second, best_second});
    r.weight = best;
    return r;
}

}  // namespace

ExactResult exact_min_k_forest(const Graph& g, int k) {
    const int n = g.vertex_count();
    if (k < 1 || k > n)
        throw UnsupportedKError("exact_min_k_forest: k must lie in 1.." + std::to_string(n));
    if (!is_connected(g)) throw DisconnectedError("exact_min_k_forest: graph is not connected");
    const int limit = k == 2 ? kMaxBisectionVertices : kMaxGeneralVertices;
    if (n > limit)
        throw TooLargeError("exact_min_k_forest: " + std::to_string(n) +
                            " vertices exceed the brute-force limit of " + std::to_string(limit));
    if (k == 2) return exact_bisection(g);
    return exact_general(g, k);
}

Weight PartitionInstance::total() const {
    Weight sum = 0;
    for (const Weight x : values) sum += x;
    return sum;
}

Graph partition_reduction_graph(const PartitionInstance& inst) {
    if (inst.values.empty())
        throw Error("partition_reduction_graph: need at least one value");
    for (const Weight x : inst.values)
        if (x < 1) throw Error("partition_reduction_graph: values must be positive");

    const Vertex hub_a = 0;
    const Vertex hub_b = 1;
    std::vector<Edge> edges;
    edges.reserve(3 * inst.values.size());
    for (std::size_t i = 0; i < inst.values.size(); ++i) {
        const Vertex mid = static_cast<Vertex>(2 * i + 2);
        const Vertex apex = static_cast<Vertex>(2 * i + 3);
        edges.push_back(Edge{hub_a, mid, 0});
        edges.push_back(Edge{std::min(hub_b, mid), std::max(hub_b, mid), 0});
        edges.push_back(Edge{mid, apex, inst.values[i]});
    }
    return Graph(static_cast<Vertex>(2 * inst.values.size() + 2), std::move(edges));
}

bool decide_partition(const PartitionInstance& inst) {
    if (inst.values.size() > kMaxDecideValues)
        throw TooLargeError("decide_partition: " + std::to_string(inst.values.size()) +
                            " values exceed the limit of " + std::to_string(kMaxDecideValues));
    if (inst.total() % 2 != 0) return false;
    const Graph g = partition_reduction_graph(inst);
    return exact_min_k_forest(g, 2).weight == inst.half_sum();
}

}  // namespace kforest

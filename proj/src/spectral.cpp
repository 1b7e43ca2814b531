#include "kforest/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <queue>
#include <tuple>

#include "kforest/mst.hpp"
#include "kforest/shortest_path.hpp"

namespace kforest {
namespace {

// Components of the subgraph induced by `block`, sorted vertex lists ordered
// by smallest member.
std::vector<std::vector<Vertex>> block_components(const Graph& g, const std::vector<Vertex>& block) {
    std::vector<char> in_block(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const Vertex v : block) in_block[static_cast<std::size_t>(v)] = 1;
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<std::vector<Vertex>> components;
    std::vector<Vertex> sorted(block);
    std::sort(sorted.begin(), sorted.end());
    std::vector<Vertex> stack;
    for (const Vertex start : sorted) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<Vertex> comp;
        stack.push_back(start);
        seen[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (const auto& [to, w] : g.neighbors(v)) {
                (void)w;
                if (in_block[static_cast<std::size_t>(to)] &&
                    !seen[static_cast<std::size_t>(to)]) {
                    seen[static_cast<std::size_t>(to)] = 1;
                    stack.push_back(to);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

// Largest component; the earliest one (smallest lead vertex) wins ties.
std::size_t plurality_index(const std::vector<std::vector<Vertex>>& components) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < components.size(); ++i)
        if (components[i].size() > components[best].size()) best = i;
    return best;
}

// Deterministic two-seed growth: every vertex joins the side whose seed
// region reaches it first. Guaranteed to leave both sides connected.
void grow_from_seeds(const Graph& g, const std::vector<Vertex>& seed_a,
                     const std::vector<Vertex>& seed_b, std::vector<Vertex>& a,
                     std::vector<Vertex>& b) {
    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    std::vector<Weight> dist(n, -1);
    std::vector<char> label(n, 0);
    using Item = std::tuple<Weight, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (const Vertex v : seed_a) {
        dist[static_cast<std::size_t>(v)] = 0;
        label[static_cast<std::size_t>(v)] = 1;
        queue.emplace(0, v);
    }
    for (const Vertex v : seed_b) {
        dist[static_cast<std::size_t>(v)] = 0;
        label[static_cast<std::size_t>(v)] = 2;
        queue.emplace(0, v);
    }
    std::vector<char> done(n, 0);
    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        const std::size_t vi = static_cast<std::size_t>(v);
        if (done[vi] || d != dist[vi]) continue;
        done[vi] = 1;
        for (const auto& [to, w] : g.neighbors(v)) {
            const std::size_t ti = static_cast<std::size_t>(to);
            if (done[ti]) continue;
            const Weight nd = d + w;
            if (dist[ti] < 0 || nd < dist[ti]) {
                dist[ti] = nd;
                label[ti] = label[vi];
                queue.emplace(nd, to);
            }
        }
    }
    a.clear();
    b.clear();
    for (std::size_t i = 0; i < n; ++i) (label[i] == 2 ? b : a).push_back(static_cast<Vertex>(i));
}

// Mends one block: reconnects the stranded component with the smallest lead
// vertex. Returns false when the block is already connected.
bool repair_one(const Graph& g, std::vector<Vertex>& block, std::vector<Vertex>& other,
                std::vector<Repair>* repairs) {
    auto components = block_components(g, block);
    if (components.size() <= 1) return false;
    const std::size_t anchor = plurality_index(components);
    std::size_t stranded = anchor == 0 ? 1 : 0;  // earliest non-anchor component
    const std::vector<Vertex>& anchor_comp = components[anchor];
    const std::vector<Vertex>& stranded_comp = components[stranded];

    const Vertex v = stranded_comp.front();
    const std::vector<Weight> dist = dijkstra_distances(g, v);
    Vertex target = -1;
    for (const Vertex u : anchor_comp) {
        if (dist[static_cast<std::size_t>(u)] < 0) continue;
        if (target < 0 || dist[static_cast<std::size_t>(u)] < dist[static_cast<std::size_t>(target)] ||
            (dist[static_cast<std::size_t>(u)] == dist[static_cast<std::size_t>(target)] && u < target))
            target = u;
    }
    if (target < 0) throw Error("repair_blocks: stranded piece cannot reach its block");
    const Path path = dijkstra_path(g, v, target);

    std::vector<char> in_block(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const Vertex x : block) in_block[static_cast<std::size_t>(x)] = 1;
    std::vector<Vertex> pulled;
    for (std::size_t i = 1; i + 1 < path.vertices.size(); ++i) {
        const Vertex x = path.vertices[i];
        if (!in_block[static_cast<std::size_t>(x)]) pulled.push_back(x);
    }

    if (pulled.size() == other.size()) {
        // Pulling the path would empty the other block; the stranded piece
        // defects to it instead.
        std::vector<char> leaving(static_cast<std::size_t>(g.vertex_count()), 0);
        for (const Vertex x : stranded_comp) leaving[static_cast<std::size_t>(x)] = 1;
        std::erase_if(block, [&leaving](Vertex x) { return leaving[static_cast<std::size_t>(x)]; });
        other.insert(other.end(), stranded_comp.begin(), stranded_comp.end());
        std::sort(other.begin(), other.end());
        if (repairs) repairs->push_back(Repair{v, {}});
        return true;
    }

    std::vector<char> joining(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const Vertex x : pulled) joining[static_cast<std::size_t>(x)] = 1;
    std::erase_if(other, [&joining](Vertex x) { return joining[static_cast<std::size_t>(x)]; });
    block.insert(block.end(), pulled.begin(), pulled.end());
    std::sort(block.begin(), block.end());
    if (repairs) repairs->push_back(Repair{v, path.vertices});
    return true;
}

Forest forest_from_blocks(const Graph& g, const std::vector<std::vector<Vertex>>& blocks) {
    Forest f;
    for (const auto& block : blocks) {
        auto [sub, to_old] = induced_subgraph(g, block);
        const Tree local = modified_kruskal_mst(sub);
        std::vector<Vertex> vertices;
        vertices.reserve(local.vertices.size());
        for (const Vertex v : local.vertices)
            vertices.push_back(to_old[static_cast<std::size_t>(v)]);
        std::vector<Edge> edges;
        edges.reserve(local.edges.size());
        for (const Edge& e : local.edges)
            edges.push_back(Edge{to_old[static_cast<std::size_t>(e.u)],
                                 to_old[static_cast<std::size_t>(e.v)], e.w});
        f.trees.push_back(make_tree(std::move(vertices), std::move(edges)));
    }
    return f;
}

int levels_for(int k) {
    int levels = 0;
    while ((1 << levels) < k) ++levels;
    return levels;
}

}  // namespace

void repair_blocks(const Graph& g, std::vector<Vertex>& a, std::vector<Vertex>& b,
                   std::vector<Repair>* repairs) {
    if (a.empty() || b.empty()) throw Error("repair_blocks: both blocks must be non-empty");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const long budget = 2L * g.vertex_count() + 8;
    for (long round = 0; round < budget; ++round) {
        if (repair_one(g, a, b, repairs)) continue;
        if (repair_one(g, b, a, repairs)) continue;
        return;
    }
    // The pull/defect loop is expected to settle well within the budget; if
    // it ever cycles, rebuild both sides from their largest components.
    auto comps_a = block_components(g, a);
    auto comps_b = block_components(g, b);
    grow_from_seeds(g, comps_a[plurality_index(comps_a)], comps_b[plurality_index(comps_b)], a, b);
}

Bisection bisect(const Graph& g, SimilarityDiagonal diagonal) {
    const Vertex n = g.vertex_count();
    if (n < 2) throw Error("bisect: need at least two vertices");
    if (!is_connected(g)) throw DisconnectedError("bisect: graph is not connected");

    Bisection out;
    if (n == 2) {
        // No spectral signal exists for two vertices; the only balanced
        // split is returned directly.
        out.a = {0};
        out.b = {1};
        return out;
    }

    const DistanceMatrix dm = floyd_warshall(g);
    const SimilarityModel model = similarity_model(dm, diagonal);
    const EigenSolution sol = fiedler_generalized(model);

    for (Vertex v = 0; v < n; ++v)
        (sol.y[static_cast<std::size_t>(v)] > 0.0L ? out.a : out.b).push_back(v);

    if (out.a.empty() || out.b.empty()) {
        // Degenerate sign pattern; split at the median of y, ties toward A.
        out.a.clear();
        out.b.clear();
        std::vector<long double> sorted_y(sol.y);
        std::sort(sorted_y.begin(), sorted_y.end());
        const long double median = sorted_y[static_cast<std::size_t>(n - 1) / 2];
        for (Vertex v = 0; v < n; ++v)
            (sol.y[static_cast<std::size_t>(v)] >= median ? out.a : out.b).push_back(v);
        if (out.b.empty()) {
            // Everything sits at or above the median value; peel the
            // minimum class off as B.
            const long double low = sorted_y.front();
            out.a.clear();
            for (Vertex v = 0; v < n; ++v)
                (sol.y[static_cast<std::size_t>(v)] == low ? out.b : out.a).push_back(v);
        }
        if (out.a.empty() || out.b.empty())
            throw ConvergenceError("bisect: eigenvector admits no two-sided split");
    }

    repair_blocks(g, out.a, out.b, &out.repairs);
    return out;
}

Forest spectral_k_forest(const Graph& g, int k, const SpectralOptions& options) {
    return spectral_forest_ladder(g, k, options).back();
}

std::vector<Forest> spectral_forest_ladder(const Graph& g, int max_k,
                                           const SpectralOptions& options,
                                           std::vector<std::int64_t>* level_wall_us) {
    const auto started = std::chrono::steady_clock::now();
    auto elapsed_us = [&started] {
        return std::chrono::duration_cast<std::chrono::microseconds>(
                   std::chrono::steady_clock::now() - started)
            .count();
    };
    const Vertex n = g.vertex_count();
    if (max_k < 1) throw UnsupportedKError("tree count must be at least 1");
    if (max_k > n)
        throw UnsupportedKError("tree count " + std::to_string(max_k) + " exceeds vertex count " +
                                std::to_string(n));
    if ((max_k & (max_k - 1)) != 0)
        throw UnsupportedKError("bisection needs a power-of-two tree count, got " +
                                std::to_string(max_k));
    if (!is_connected(g)) throw DisconnectedError("spectral_k_forest: graph is not connected");

    const int levels = levels_for(max_k);
    std::vector<std::vector<Vertex>> blocks(1);
    blocks[0].resize(static_cast<std::size_t>(n));
    std::iota(blocks[0].begin(), blocks[0].end(), Vertex{0});

    std::vector<Forest> ladder;
    if (level_wall_us) level_wall_us->clear();
    ladder.push_back(forest_from_blocks(g, blocks));
    if (level_wall_us) level_wall_us->push_back(elapsed_us());
    for (int level = 0; level < levels; ++level) {
        std::vector<std::vector<Vertex>> next;
        next.reserve(blocks.size() * 2);
        for (const auto& block : blocks) {
            if (block.size() < 2)
                throw BlockDeficitError(
                    "spectral_k_forest: a single-vertex block at level " + std::to_string(level) +
                    " cannot split further; " + std::to_string(1 << levels) +
                    " trees are unreachable");
            auto [sub, to_old] = induced_subgraph(g, block);
            Bisection bis = bisect(sub, options.diagonal);
            std::vector<Vertex> a, b;
            a.reserve(bis.a.size());
            b.reserve(bis.b.size());
            for (const Vertex v : bis.a) a.push_back(to_old[static_cast<std::size_t>(v)]);
            for (const Vertex v : bis.b) b.push_back(to_old[static_cast<std::size_t>(v)]);
            next.push_back(std::move(a));
            next.push_back(std::move(b));
        }
        blocks = std::move(next);
        ladder.push_back(forest_from_blocks(g, blocks));
        if (level_wall_us) level_wall_us->push_back(elapsed_us());
    }
    return ladder;
}

}  // namespace kforest

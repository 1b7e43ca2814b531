#include "kforest/shortest_path.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

namespace kforest {
namespace {

constexpr Weight kInf = -1;

void check_vertex(const Graph& g, Vertex v, const char* role) {
    if (v < 0 || v >= g.vertex_count())
        throw Error(std::string("dijkstra: ") + role + " vertex out of range");
}

// Relaxes (distance, hop count) pairs from `src` over the whole graph.
void run(const Graph& g, Vertex src, std::vector<Weight>& dist, std::vector<int>& hops) {
    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    dist.assign(n, kInf);
    hops.assign(n, 0);
    using Item = std::tuple<Weight, int, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[static_cast<std::size_t>(src)] = 0;
    queue.emplace(0, 0, src);
    while (!queue.empty()) {
        const auto [d, h, v] = queue.top();
        queue.pop();
        const std::size_t vi = static_cast<std::size_t>(v);
        if (d != dist[vi] || h != hops[vi]) continue;
        for (const auto& [to, w] : g.neighbors(v)) {
            const std::size_t ti = static_cast<std::size_t>(to);
            const Weight nd = d + w;
            const int nh = h + 1;
            if (dist[ti] == kInf || nd < dist[ti] || (nd == dist[ti] && nh < hops[ti])) {
                dist[ti] = nd;
                hops[ti] = nh;
                queue.emplace(nd, nh, to);
            }
        }
    }
}

}  // namespace

Path dijkstra_path(const Graph& g, Vertex src, Vertex dst) {
    check_vertex(g, src, "source");
    check_vertex(g, dst, "target");

    // Distances toward dst let the path be rebuilt front to back, so the
    // smallest usable neighbor at each step yields the lexicographically
    // smallest optimal sequence overall.
    std::vector<Weight> dist;
    std::vector<int> hops;
    run(g, dst, dist, hops);
    if (dist[static_cast<std::size_t>(src)] == kInf)
        throw UnreachableError("dijkstra: no path from " + std::to_string(src) + " to " +
                               std::to_string(dst));

    Path path;
    path.weight = dist[static_cast<std::size_t>(src)];
    Vertex cur = src;
    path.vertices.push_back(cur);
    while (cur != dst) {
        const std::size_t ci = static_cast<std::size_t>(cur);
        Vertex next = -1;
        for (const auto& [to, w] : g.neighbors(cur)) {
            const std::size_t ti = static_cast<std::size_t>(to);
            if (dist[ti] == kInf) continue;
            if (dist[ti] + w == dist[ci] && hops[ti] + 1 == hops[ci]) {
                next = to;  // neighbors are scanned in ascending id order
                break;
            }
        }
        if (next < 0) throw Error("dijkstra: inconsistent distance table");
        path.vertices.push_back(next);
        cur = next;
    }
    return path;
}

std::vector<Weight> dijkstra_distances(const Graph& g, Vertex src) {
    check_vertex(g, src, "source");
    std::vector<Weight> dist;
    std::vector<int> hops;
    run(g, src, dist, hops);
    return dist;
}

}  // namespace kforest

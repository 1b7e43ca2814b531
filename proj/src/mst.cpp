#include "kforest/mst.hpp"

#include <algorithm>
#include <numeric>

namespace kforest {
namespace {

class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

void require_connected(const Graph& g, const char* who) {
    if (g.vertex_count() == 0) throw Error(std::string(who) + ": empty graph");
    if (!is_connected(g)) throw DisconnectedError(std::string(who) + ": graph is not connected");
}

std::vector<Vertex> all_vertices(const Graph& g) {
    std::vector<Vertex> vs(static_cast<std::size_t>(g.vertex_count()));
    std::iota(vs.begin(), vs.end(), Vertex{0});
    return vs;
}

}  // namespace

Tree kruskal_mst(const Graph& g) {
    require_connected(g, "kruskal_mst");
    DisjointSet dsu(static_cast<std::size_t>(g.vertex_count()));
    std::vector<Edge> chosen;
    chosen.reserve(static_cast<std::size_t>(g.vertex_count()) - 1);
    for (const Edge& e : g.edges()) {
        if (dsu.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) {
            chosen.push_back(e);
            if (chosen.size() + 1 == static_cast<std::size_t>(g.vertex_count())) break;
        }
    }
    return make_tree(all_vertices(g), std::move(chosen));
}

Tree modified_kruskal_mst(const Graph& g) {
    require_connected(g, "modified_kruskal_mst");
    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    DisjointSet dsu(n);
    std::vector<int> degree(n, 0);
    std::vector<Edge> pool(g.edges());
    std::vector<Edge> chosen;
    chosen.reserve(n - 1);

    while (chosen.size() + 1 < n) {
        // Drop edges that no longer join two trees, then scan the lightest
        // remaining weight class for the pick that keeps degrees smallest.
        std::erase_if(pool, [&dsu](const Edge& e) {
            return dsu.find(static_cast<std::size_t>(e.u)) ==
                   dsu.find(static_cast<std::size_t>(e.v));
        });
        if (pool.empty()) throw DisconnectedError("modified_kruskal_mst: ran out of edges");
        const Weight lightest = pool.front().w;  // pool keeps canonical order
        const Edge* pick = nullptr;
        int pick_degree = 0;
        for (const Edge& e : pool) {
            if (e.w != lightest) break;
            const int merged = std::max(degree[static_cast<std::size_t>(e.u)],
                                        degree[static_cast<std::size_t>(e.v)]);
            if (pick == nullptr || merged < pick_degree) {
                pick = &e;
                pick_degree = merged;
            }
            // Equal degree keeps the earlier edge: canonical order already
            // sorts by (u, v) inside one weight class.
        }
        dsu.unite(static_cast<std::size_t>(pick->u), static_cast<std::size_t>(pick->v));
        ++degree[static_cast<std::size_t>(pick->u)];
        ++degree[static_cast<std::size_t>(pick->v)];
        chosen.push_back(*pick);
    }
    return make_tree(all_vertices(g), std::move(chosen));
}

}  // namespace kforest

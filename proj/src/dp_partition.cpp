#include "kforest/dp_partition.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "kforest/mst.hpp"

namespace kforest {
namespace {

// Local view of a tree: contiguous ids 0..n-1 with an adjacency list.
struct LocalTree {
    std::vector<Vertex> to_old;
    std::vector<std::vector<std::pair<Vertex, Weight>>> adj;

    Vertex local_id(Vertex old_id) const {
        const auto it = std::lower_bound(to_old.begin(), to_old.end(), old_id);
        return static_cast<Vertex>(it - to_old.begin());
    }
};

LocalTree local_view(const Tree& t) {
    LocalTree lt;
    lt.to_old = t.vertices;  // already sorted
    lt.adj.assign(t.vertices.size(), {});
    for (const Edge& e : t.edges) {
        const Vertex u = lt.local_id(e.u);
        const Vertex v = lt.local_id(e.v);
        lt.adj[static_cast<std::size_t>(u)].emplace_back(v, e.w);
        lt.adj[static_cast<std::size_t>(v)].emplace_back(u, e.w);
    }
    for (auto& nbrs : lt.adj) std::sort(nbrs.begin(), nbrs.end());
    return lt;
}

// Distances from `root` along the tree; parents let paths be rebuilt.
void sweep(const LocalTree& lt, Vertex root, std::vector<Weight>& dist,
           std::vector<Vertex>& parent) {
    dist.assign(lt.to_old.size(), -1);
    parent.assign(lt.to_old.size(), -1);
    std::vector<Vertex> stack{root};
    dist[static_cast<std::size_t>(root)] = 0;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (const auto& [to, w] : lt.adj[static_cast<std::size_t>(v)]) {
            if (dist[static_cast<std::size_t>(to)] >= 0) continue;
            dist[static_cast<std::size_t>(to)] = dist[static_cast<std::size_t>(v)] + w;
            parent[static_cast<std::size_t>(to)] = v;
            stack.push_back(to);
        }
    }
}

Vertex farthest(const std::vector<Weight>& dist) {
    Vertex best = 0;
    for (std::size_t i = 1; i < dist.size(); ++i)
        if (dist[i] > dist[static_cast<std::size_t>(best)]) best = static_cast<Vertex>(i);
    return best;  // scan order makes the smallest id win ties
}

}  // namespace

PathDecomposition longest_path(const Tree& t) {
    if (t.vertices.empty()) throw Error("longest_path: empty tree");
    const LocalTree lt = local_view(t);
    const std::size_t n_vertices = lt.to_old.size();

    std::vector<Weight> dist;
    std::vector<Vertex> parent;
    sweep(lt, 0, dist, parent);
    const Vertex end_one = farthest(dist);
    sweep(lt, end_one, dist, parent);
    const Vertex end_two = farthest(dist);

    // Orient the trunk from the smaller endpoint id (in original ids).
    Vertex from = end_one, to = end_two;
    if (lt.to_old[static_cast<std::size_t>(to)] < lt.to_old[static_cast<std::size_t>(from)])
        std::swap(from, to);
    sweep(lt, from, dist, parent);

    std::vector<Vertex> trunk;  // local ids, from -> to
    for (Vertex v = to; v >= 0; v = parent[static_cast<std::size_t>(v)]) trunk.push_back(v);
    std::reverse(trunk.begin(), trunk.end());

    std::vector<char> on_trunk(n_vertices, 0);
    for (const Vertex v : trunk) on_trunk[static_cast<std::size_t>(v)] = 1;

    PathDecomposition pd;
    pd.trunk_vertices.reserve(trunk.size());
    for (const Vertex v : trunk) pd.trunk_vertices.push_back(lt.to_old[static_cast<std::size_t>(v)]);
    for (std::size_t i = 0; i + 1 < trunk.size(); ++i) {
        const Vertex a = lt.to_old[static_cast<std::size_t>(trunk[i])];
        const Vertex b = lt.to_old[static_cast<std::size_t>(trunk[i + 1])];
        Weight w = -1;
        for (const auto& [nb, nw] : lt.adj[static_cast<std::size_t>(trunk[i])])
            if (nb == trunk[i + 1]) w = nw;
        pd.trunk_edges.push_back(Edge{std::min(a, b), std::max(a, b), w});
    }

    // Weight of the off-trunk subtrees hanging at each trunk vertex.
    pd.hanging.assign(trunk.size(), 0);
    for (std::size_t i = 0; i < trunk.size(); ++i) {
        Weight sum = 0;
        std::vector<Vertex> stack;
        std::vector<char> seen(n_vertices, 0);
        seen[static_cast<std::size_t>(trunk[i])] = 1;
        for (const auto& [nb, nw] : lt.adj[static_cast<std::size_t>(trunk[i])]) {
            if (on_trunk[static_cast<std::size_t>(nb)]) continue;
            sum += nw;
            seen[static_cast<std::size_t>(nb)] = 1;
            stack.push_back(nb);
        }
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            for (const auto& [nb, nw] : lt.adj[static_cast<std::size_t>(v)]) {
                if (seen[static_cast<std::size_t>(nb)]) continue;
                sum += nw;
                seen[static_cast<std::size_t>(nb)] = 1;
                stack.push_back(nb);
            }
        }
        pd.hanging[i] = sum;
    }

    const std::size_t n_edges = pd.trunk_edges.size();
    pd.prefix.assign(n_edges + 2, 0);
    for (std::size_t i = 1; i <= n_edges; ++i)
        pd.prefix[i] = pd.prefix[i - 1] + pd.hanging[i - 1] + pd.trunk_edges[i - 1].w;
    pd.prefix[n_edges + 1] = pd.prefix[n_edges];

    // The last trunk vertex also carries hanging weight.
    pd.total = pd.prefix[n_edges] + pd.hanging[trunk.size() - 1];
    if (pd.total != t.weight) throw Error("longest_path: decomposition lost weight");
    return pd;
}

CutSet dp_cut_set(const PathDecomposition& pd, int parts) {
    if (parts < 1) throw UnsupportedKError("dp_cut_set: share count must be positive");
    const std::size_t n = pd.trunk_edges.size();
    const Weight total = pd.total;
    const Weight kk = parts;

    // Every penalty is an integer multiple of 1/parts, so the recurrence
    // runs on integers scaled by `parts` and only the published tables
    // convert back to rationals.
    std::vector<Weight> scaled(n + 2, 0);
    std::vector<int> argmin(n + 2, 0);
    std::vector<Weight> discount(n + 2, 0);
    argmin[0] = -1;

    for (std::size_t i = 1; i <= n + 1; ++i) {
        const Weight w_i = i <= n ? pd.trunk_edges[i - 1].w : 0;
        const Weight left = pd.prefix[i] - w_i;
        Weight best = std::numeric_limits<Weight>::max();
        int best_j = 0;
        for (std::size_t j = 0; j < i; ++j) {
            const Weight piece = kk * (left - pd.prefix[j]);
            const Weight target = total - discount[j] - w_i;
            const Weight gap = piece >= target ? piece - target : target - piece;
            const Weight candidate = gap + scaled[j];
            if (candidate < best) {
                best = candidate;
                best_j = static_cast<int>(j);
            }
        }
        scaled[i] = best;
        argmin[i] = best_j;
        discount[i] = discount[static_cast<std::size_t>(best_j)] + w_i;
    }

    CutSet cs;
    cs.tables.penalty.resize(n + 2);
    cs.tables.argmin = argmin;
    cs.tables.discount = discount;
    for (std::size_t i = 0; i <= n + 1; ++i) cs.tables.penalty[i] = Rational(scaled[i], kk);

    for (int c = argmin[n + 1]; c != 0; c = argmin[static_cast<std::size_t>(c)])
        cs.positions.push_back(c);
    std::reverse(cs.positions.begin(), cs.positions.end());
    for (const int pos : cs.positions)
        cs.edges.push_back(pd.trunk_edges[static_cast<std::size_t>(pos) - 1]);
    return cs;
}

Forest apply_cuts(const Tree& t, const std::vector<Edge>& cuts) {
    std::vector<Edge> sorted_cuts(cuts);
    for (Edge& e : sorted_cuts)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(sorted_cuts.begin(), sorted_cuts.end(), canonical_edge_less);

    auto is_cut = [&sorted_cuts](const Edge& e) {
        return std::binary_search(sorted_cuts.begin(), sorted_cuts.end(), e,
                                  canonical_edge_less);
    };
    for (const Edge& c : sorted_cuts)
        if (!std::binary_search(t.edges.begin(), t.edges.end(), c, canonical_edge_less))
            throw Error("apply_cuts: cut edge is not part of the tree");

    const LocalTree lt = local_view(t);
    // Union the kept edges, then group vertices into components.
    std::vector<std::size_t> dsu(t.vertices.size());
    std::iota(dsu.begin(), dsu.end(), std::size_t{0});
    auto find = [&dsu](std::size_t x) {
        while (dsu[x] != x) {
            dsu[x] = dsu[dsu[x]];
            x = dsu[x];
        }
        return x;
    };
    for (const Edge& e : t.edges) {
        if (is_cut(e)) continue;
        const std::size_t a = find(static_cast<std::size_t>(lt.local_id(e.u)));
        const std::size_t b = find(static_cast<std::size_t>(lt.local_id(e.v)));
        if (a != b) dsu[a] = b;
    }
    std::map<std::size_t, std::size_t> groups;  // root -> tree index, id order
    std::vector<std::vector<Vertex>> vertices;
    std::vector<std::vector<Edge>> edges;
    for (std::size_t i = 0; i < t.vertices.size(); ++i) {
        const std::size_t root = find(i);
        if (!groups.contains(root)) {
            groups[root] = vertices.size();
            vertices.emplace_back();
            edges.emplace_back();
        }
        vertices[groups[root]].push_back(t.vertices[i]);
    }
    for (const Edge& e : t.edges) {
        if (is_cut(e)) continue;
        edges[groups[find(static_cast<std::size_t>(lt.local_id(e.u)))]].push_back(e);
    }

    Forest f;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        f.trees.push_back(make_tree(std::move(vertices[i]), std::move(edges[i])));
    f.cut_edges = std::move(sorted_cuts);
    return f;
}

namespace {

void sort_trees(Forest& f) {
    std::sort(f.trees.begin(), f.trees.end(),
              [](const Tree& a, const Tree& b) { return a.vertices.front() < b.vertices.front(); });
}

// Heaviest tree; prefers more vertices on equal weight (a splittable pick),
// then the smallest lead vertex.
std::size_t heaviest_index(const Forest& f) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < f.trees.size(); ++i) {
        const Tree& a = f.trees[i];
        const Tree& b = f.trees[best];
        if (a.weight > b.weight ||
            (a.weight == b.weight && a.vertices.size() > b.vertices.size()))
            best = i;
    }
    return best;
}

// When the recurrence declines to cut, split at the trunk edge whose worse
// side is lightest.
Edge forced_cut(const Tree& t, const PathDecomposition& pd) {
    if (!pd.trunk_edges.empty()) {
        std::size_t best = 0;
        Weight best_worse = std::numeric_limits<Weight>::max();
        for (std::size_t i = 1; i <= pd.trunk_edges.size(); ++i) {
            const Weight left = pd.prefix[i] - pd.trunk_edges[i - 1].w;
            const Weight right = pd.total - pd.prefix[i];
            const Weight worse = std::max(left, right);
            if (worse < best_worse) {
                best_worse = worse;
                best = i;
            }
        }
        return pd.trunk_edges[best - 1];
    }
    // Zero-diameter tree (every edge weightless): any edge balances.
    return t.edges.front();
}

}  // namespace

Forest fixup_forest(Forest f, int parts, const DpOptions& options) {
    if (parts < 1) throw UnsupportedKError("fixup_forest: tree count must be positive");
    std::size_t vertex_total = 0;
    for (const Tree& t : f.trees) vertex_total += t.vertices.size();
    if (static_cast<std::size_t>(parts) > vertex_total)
        throw UnsupportedKError("fixup_forest: " + std::to_string(parts) +
                                " trees exceed " + std::to_string(vertex_total) + " vertices");
    Weight source_total = 0;
    for (const Tree& t : f.trees) source_total += t.weight;
    for (const Edge& e : f.cut_edges) source_total += e.w;

    sort_trees(f);
    while (f.trees.size() < static_cast<std::size_t>(parts)) {
        const std::size_t pick = heaviest_index(f);
        Tree tree = std::move(f.trees[pick]);
        f.trees.erase(f.trees.begin() + static_cast<std::ptrdiff_t>(pick));

        const int needed = parts - static_cast<int>(f.trees.size()) - 1;
        int shares = needed + 1;
        if (options.shares == SubtreeShares::kProportional && source_total > 0) {
            const Weight proportional =
                (tree.weight * parts + source_total - 1) / source_total;  // ceiling
            shares = static_cast<int>(
                std::min<Weight>(needed + 1, std::max<Weight>(2, proportional)));
        }

        const PathDecomposition pd = longest_path(tree);
        CutSet cs = dp_cut_set(pd, shares);
        std::vector<Edge> cuts = cs.edges;
        if (cuts.empty()) cuts.push_back(forced_cut(tree, pd));

        Forest pieces = apply_cuts(tree, cuts);
        for (Tree& t : pieces.trees) f.trees.push_back(std::move(t));
        for (const Edge& e : pieces.cut_edges) f.cut_edges.push_back(e);
        sort_trees(f);
    }

    while (f.trees.size() > static_cast<std::size_t>(parts)) {
        // Restore the cut edge whose merge creates the lightest tree.
        auto tree_of = [&f](Vertex v) -> std::size_t {
            for (std::size_t i = 0; i < f.trees.size(); ++i)
                if (std::binary_search(f.trees[i].vertices.begin(), f.trees[i].vertices.end(), v))
                    return i;
            throw Error("fixup_forest: cut edge endpoint outside the forest");
        };
        std::size_t best_cut = f.cut_edges.size();
        Weight best_weight = 0;
        for (std::size_t c = 0; c < f.cut_edges.size(); ++c) {
            const Edge& e = f.cut_edges[c];
            const std::size_t a = tree_of(e.u);
            const std::size_t b = tree_of(e.v);
            if (a == b) throw Error("fixup_forest: cut edge does not separate two trees");
            const Weight merged = f.trees[a].weight + f.trees[b].weight + e.w;
            const bool better =
                best_cut == f.cut_edges.size() || merged < best_weight ||
                (merged == best_weight && canonical_edge_less(e, f.cut_edges[best_cut]));
            if (better) {
                best_cut = c;
                best_weight = merged;
            }
        }
        if (best_cut == f.cut_edges.size())
            throw Error("fixup_forest: too many trees but no cut edge to restore");

        const Edge e = f.cut_edges[best_cut];
        f.cut_edges.erase(f.cut_edges.begin() + static_cast<std::ptrdiff_t>(best_cut));
        const std::size_t a = tree_of(e.u);
        const std::size_t b = tree_of(e.v);
        Tree merged;
        merged.vertices = f.trees[a].vertices;
        merged.vertices.insert(merged.vertices.end(), f.trees[b].vertices.begin(),
                               f.trees[b].vertices.end());
        merged.edges = f.trees[a].edges;
        merged.edges.insert(merged.edges.end(), f.trees[b].edges.begin(), f.trees[b].edges.end());
        merged.edges.push_back(e);
        const std::size_t lo = std::min(a, b);
        const std::size_t hi = std::max(a, b);
        f.trees.erase(f.trees.begin() + static_cast<std::ptrdiff_t>(hi));
        f.trees.erase(f.trees.begin() + static_cast<std::ptrdiff_t>(lo));
        f.trees.push_back(make_tree(std::move(merged.vertices), std::move(merged.edges)));
        sort_trees(f);
    }
    return f;
}

Forest dp_k_forest(const Graph& g, int k, const DpOptions& options) {
    const Vertex n = g.vertex_count();
    if (k < 2) throw UnsupportedKError("dp_k_forest: need at least 2 trees");
    if (k > n)
        throw UnsupportedKError("dp_k_forest: " + std::to_string(k) + " trees exceed " +
                                std::to_string(n) + " vertices");
    if (!is_connected(g)) throw DisconnectedError("dp_k_forest: graph is not connected");

    const Tree mst = modified_kruskal_mst(g);
    const PathDecomposition pd = longest_path(mst);
    const CutSet cs = dp_cut_set(pd, k);
    Forest f = apply_cuts(mst, cs.edges);
    return fixup_forest(std::move(f), k, options);
}

}  // namespace kforest

#include "kforest/graph.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <set>
#include <sstream>

namespace kforest {
namespace {

std::string edge_name(Vertex u, Vertex v) {
    return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

}  // namespace

bool canonical_edge_less(const Edge& a, const Edge& b) {
    if (a.w != b.w) return a.w < b.w;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
}

Graph::Graph(Vertex vertex_count, std::vector<Edge> edges) : vertex_count_(vertex_count) {
    if (vertex_count < 0) throw ParseError("negative vertex count");
    for (Edge& e : edges) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= vertex_count)
            throw ParseError("edge " + edge_name(e.u, e.v) + " out of vertex range");
        if (e.u == e.v) throw ParseError("self-loop at vertex " + std::to_string(e.u));
        if (e.w < 0) throw ParseError("negative weight on edge " + edge_name(e.u, e.v));
    }
    std::sort(edges.begin(), edges.end(), canonical_edge_less);
    edges_ = std::move(edges);

    std::vector<std::pair<Vertex, Vertex>> pairs;
    pairs.reserve(edges_.size());
    for (const Edge& e : edges_) pairs.emplace_back(e.u, e.v);
    std::sort(pairs.begin(), pairs.end());
    const auto dup = std::adjacent_find(pairs.begin(), pairs.end());
    if (dup != pairs.end())
        throw ParseError("duplicate edge " + edge_name(dup->first, dup->second));

    adjacency_.assign(static_cast<std::size_t>(vertex_count_), {});
    for (const Edge& e : edges_) {
        adjacency_[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
        adjacency_[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.w);
        total_weight_ += e.w;
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

Graph parse_graph(std::istream& in) {
    std::string line;
    long line_no = 0;
    bool have_header = false;
    Vertex vertex_count = 0;
    long declared_edges = 0;
    std::vector<Edge> edges;
    std::set<std::pair<Vertex, Vertex>> seen;

    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        std::istringstream fields(line);
        if (!have_header) {
            if (!(fields >> vertex_count >> declared_edges))
                throw ParseError("line " + std::to_string(line_no) + ": malformed header");
            std::string extra;
            if (fields >> extra)
                throw ParseError("line " + std::to_string(line_no) + ": trailing text in header");
            if (vertex_count < 0 || declared_edges < 0)
                throw ParseError("line " + std::to_string(line_no) + ": negative count in header");
            have_header = true;
            continue;
        }
        Edge e;
        if (!(fields >> e.u >> e.v >> e.w))
            throw ParseError("line " + std::to_string(line_no) + ": malformed edge line");
        std::string extra;
        if (fields >> extra)
            throw ParseError("line " + std::to_string(line_no) + ": trailing text after edge");
        if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
            throw ParseError("line " + std::to_string(line_no) + ": vertex id out of range");
        if (e.u == e.v) throw ParseError("line " + std::to_string(line_no) + ": self-loop");
        if (e.w < 0) throw ParseError("line " + std::to_string(line_no) + ": negative weight");
        if (!seen.insert(std::minmax(e.u, e.v)).second)
            throw ParseError("line " + std::to_string(line_no) + ": duplicate edge");
        edges.push_back(e);
    }
    if (!have_header) throw ParseError("empty input: missing header line");
    if (static_cast<long>(edges.size()) != declared_edges)
        throw ParseError("header declares " + std::to_string(declared_edges) + " edges but " +
                         std::to_string(edges.size()) + " were given");
    return Graph(vertex_count, std::move(edges));
}

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

std::string format_graph(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
    return out.str();
}

Tree make_tree(std::vector<Vertex> vertices, std::vector<Edge> edges) {
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw Error("tree with repeated vertex");
    for (Edge& e : edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(edges.begin(), edges.end(), canonical_edge_less);
    if (edges.size() + 1 != vertices.size())
        throw Error("tree with " + std::to_string(vertices.size()) + " vertices needs " +
                    std::to_string(vertices.size() - 1) + " edges, got " +
                    std::to_string(edges.size()));
    Tree t;
    t.vertices = std::move(vertices);
    t.edges = std::move(edges);
    for (const Edge& e : t.edges) t.weight += e.w;
    return t;
}

Weight Forest::heaviest() const {
    Weight best = 0;
    for (const Tree& t : trees) best = std::max(best, t.weight);
    return best;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    const Vertex n = g.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<Vertex>> components;
    std::vector<Vertex> stack;
    for (Vertex start = 0; start < n; ++start) {
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
                if (!seen[static_cast<std::size_t>(to)]) {
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

bool is_connected(const Graph& g) {
    return g.vertex_count() <= 1 || connected_components(g).size() == 1;
}

std::pair<Graph, std::vector<Vertex>> induced_subgraph(const Graph& g,
                                                       const std::vector<Vertex>& vertices) {
    std::vector<Vertex> to_old(vertices);
    std::sort(to_old.begin(), to_old.end());
    if (std::adjacent_find(to_old.begin(), to_old.end()) != to_old.end())
        throw Error("induced subgraph with repeated vertex");
    std::vector<Vertex> to_new(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < to_old.size(); ++i) {
        const Vertex v = to_old[i];
        if (v < 0 || v >= g.vertex_count()) throw Error("induced subgraph vertex out of range");
        to_new[static_cast<std::size_t>(v)] = static_cast<Vertex>(i);
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        const Vertex u = to_new[static_cast<std::size_t>(e.u)];
        const Vertex v = to_new[static_cast<std::size_t>(e.v)];
        if (u >= 0 && v >= 0) edges.push_back(Edge{u, v, e.w});
    }
    return {Graph(static_cast<Vertex>(to_old.size()), std::move(edges)), std::move(to_old)};
}

void validate_forest(const Graph& g, const Forest& f) {
    const Vertex n = g.vertex_count();
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    std::size_t covered_count = 0;

    for (std::size_t ti = 0; ti < f.trees.size(); ++ti) {
        const Tree& t = f.trees[ti];
        const std::string label = "tree " + std::to_string(ti);
        if (t.vertices.empty()) throw Error(label + " is empty");
        if (!std::is_sorted(t.vertices.begin(), t.vertices.end()))
            throw Error(label + " vertices not sorted");
        for (const Vertex v : t.vertices) {
            if (v < 0 || v >= n) throw Error(label + " has vertex out of range");
            if (covered[static_cast<std::size_t>(v)])
                throw Error("vertex " + std::to_string(v) + " appears in two trees");
            covered[static_cast<std::size_t>(v)] = 1;
            ++covered_count;
        }
        if (t.edges.size() + 1 != t.vertices.size())
            throw Error(label + " edge count does not match vertex count");

        Weight sum = 0;
        std::vector<Vertex> local(t.vertices);
        auto local_id = [&local, &label](Vertex v) {
            const auto it = std::lower_bound(local.begin(), local.end(), v);
            if (it == local.end() || *it != v)
                throw Error(label + " edge endpoint outside the tree");
            return static_cast<std::size_t>(it - local.begin());
        };
        // Union-find over the tree's own vertices: connected and acyclic
        // together follow from "n-1 edges, no cycle".
        std::vector<std::size_t> parent(local.size());
        for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
        auto find = [&parent](std::size_t x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (const Edge& e : t.edges) {
            bool in_graph = false;
            for (const auto& [to, w] : g.neighbors(e.u)) {
                if (to == e.v && w == e.w) {
                    in_graph = true;
                    break;
                }
            }
            if (!in_graph)
                throw Error(label + " uses edge (" + std::to_string(e.u) + ", " +
                            std::to_string(e.v) + ") absent from the graph");
            const std::size_t a = find(local_id(e.u));
            const std::size_t b = find(local_id(e.v));
            if (a == b) throw Error(label + " contains a cycle");
            parent[a] = b;
            sum += e.w;
        }
        if (sum != t.weight) throw Error(label + " weight field does not match its edges");
    }
    if (covered_count != static_cast<std::size_t>(n))
        throw Error("forest covers " + std::to_string(covered_count) + " of " +
                    std::to_string(n) + " vertices");
}

ForestSummary forest_summary(const Forest& f) {
    ForestSummary s;
    for (const Tree& t : f.trees) {
        s.per_tree.push_back(t.weight);
        s.heaviest = std::max(s.heaviest, t.weight);
        s.total += t.weight;
    }
    return s;
}

std::string forest_dot(const Graph& g, const Forest& f) {
    static const std::array<const char*, 10> palette = {
        "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e",
        "#e6ab02", "#a6761d", "#666666", "#1f78b4", "#b2182b"};
    std::ostringstream out;
    out << "graph forest {\n  node [style=filled, fontcolor=white];\n";
    for (std::size_t ti = 0; ti < f.trees.size(); ++ti) {
        const char* color = palette[ti % palette.size()];
        for (const Vertex v : f.trees[ti].vertices)
            out << "  " << v << " [fillcolor=\"" << color << "\"];\n";
        for (const Edge& e : f.trees[ti].edges)
            out << "  " << e.u << " -- " << e.v << " [label=\"" << e.w << "\", color=\"" << color
                << "\", penwidth=2];\n";
    }
    for (const Edge& e : f.cut_edges)
        out << "  " << e.u << " -- " << e.v << " [label=\"" << e.w
            << "\", style=dashed, color=gray];\n";
    (void)g;
    out << "}\n";
    return out.str();
}

std::string format_forest(const Forest& f) {
    std::ostringstream out;
    for (const Tree& t : f.trees) {
        for (std::size_t i = 0; i < t.edges.size(); ++i) {
            const Edge& e = t.edges[i];
            if (i) out << ' ';
            out << e.u << '-' << e.v << ':' << e.w;
        }
        out << '\n';
    }
    ForestSummary s = forest_summary(f);
    out << "heaviest=" << s.heaviest << " total_trees=" << f.trees.size() << '\n';
    return out.str();
}

}  // namespace kforest

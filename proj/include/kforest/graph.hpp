#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kforest/errors.hpp"

namespace kforest {

using Vertex = std::int32_t;
using Weight = std::int64_t;

/** Undirected weighted edge, stored with u < v. */
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    Weight w = 0;

    friend bool operator==(const Edge& a, const Edge& b) {
        return a.u == b.u && a.v == b.v && a.w == b.w;
    }
};

/** Canonical edge order: by weight, then by endpoints. */
bool canonical_edge_less(const Edge& a, const Edge& b);

/**
 * Simple undirected graph with non-negative integer weights.
 *
 * Construction validates the edge list (ids in range, no self-loops, no
 * duplicate endpoint pairs, no negative weights) and stores edges in
 * canonical order, which every tie-breaking rule downstream relies on.
 */
class Graph {
public:
    Graph() = default;
    Graph(Vertex vertex_count, std::vector<Edge> edges);

    Vertex vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    Weight total_weight() const { return total_weight_; }

    /** Neighbors of v as (other endpoint, weight), ordered by endpoint id. */
    const std::vector<std::pair<Vertex, Weight>>& neighbors(Vertex v) const {
        return adjacency_[static_cast<std::size_t>(v)];
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
    }

private:
    Vertex vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<Vertex, Weight>>> adjacency_;
    Weight total_weight_ = 0;
};

/**
 * Reads a graph from text.
 *
 * Line one holds "<vertex_count> <edge_count>"; each further line holds one
 * edge as "<u> <v> <w>" with 0-based vertex ids. Lines starting with '#' and
 * blank lines are ignored. Errors name the offending line number.
 */
Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);

/** Writes the canonical text form; parse(format(g)) == g, bit for bit. */
std::string format_graph(const Graph& g);

/** One tree of a spanning forest; vertex ids refer to the parent graph. */
struct Tree {
    std::vector<Vertex> vertices;  // sorted ascending
    std::vector<Edge> edges;       // canonical order
    Weight weight = 0;

    friend bool operator==(const Tree& a, const Tree& b) {
        return a.vertices == b.vertices && a.edges == b.edges && a.weight == b.weight;
    }
};

/** Builds a Tree from its parts; sorts, sums the weight, and checks shape. */
Tree make_tree(std::vector<Vertex> vertices, std::vector<Edge> edges);

/** A spanning k-forest plus the edges that were removed to produce it. */
struct Forest {
    std::vector<Tree> trees;
    std::vector<Edge> cut_edges;

    Weight heaviest() const;
};

/** Connected components as sorted vertex lists, ordered by smallest member. */
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

bool is_connected(const Graph& g);

/**
 * Subgraph induced by `vertices` (sorted, distinct). Vertices are renumbered
 * 0..|vertices|-1 in order; the returned map sends new ids back to old ones.
 */
std::pair<Graph, std::vector<Vertex>> induced_subgraph(const Graph& g,
                                                       const std::vector<Vertex>& vertices);

/**
 * Checks that `f` is a spanning forest of `g`: trees are vertex-disjoint,
 * cover every vertex, are connected and acyclic, and use only edges of `g`
 * with their original weights. Throws Error with a description otherwise.
 */
void validate_forest(const Graph& g, const Forest& f);

struct ForestSummary {
    std::vector<Weight> per_tree;
    Weight heaviest = 0;
    Weight total = 0;
};

/** Per-tree weights in tree order, plus the maximum and the sum. */
ForestSummary forest_summary(const Forest& f);

/** Graphviz rendering with one color per tree; cut edges drawn dashed. */
std::string forest_dot(const Graph& g, const Forest& f);

/** Forest text form: one line of "u-v:w" tokens per tree, then a summary. */
std::string format_forest(const Forest& f);

}  // namespace kforest

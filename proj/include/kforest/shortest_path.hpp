#pragma once

#include "kforest/graph.hpp"

namespace kforest {

/** A walk through the graph; vertices lists src first and dst last. */
struct Path {
    std::vector<Vertex> vertices;
    Weight weight = 0;
};

/**
 * Shortest path from src to dst by Dijkstra's algorithm. Among minimum
 * weight paths the one with fewest edges wins, and among those the
 * lexicographically smallest vertex sequence. Throws UnreachableError when
 * dst cannot be reached.
 */
Path dijkstra_path(const Graph& g, Vertex src, Vertex dst);

/** Distance table from src; unreachable vertices hold -1. */
std::vector<Weight> dijkstra_distances(const Graph& g, Vertex src);

}  // namespace kforest

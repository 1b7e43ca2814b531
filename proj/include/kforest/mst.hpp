#pragma once

#include "kforest/graph.hpp"

namespace kforest {

/**
 * Minimum spanning tree by Kruskal's algorithm over the canonical edge
 * order, so equal-weight choices are deterministic. Requires a connected
 * graph with at least one vertex.
 */
Tree kruskal_mst(const Graph& g);

/**
 * Kruskal variant that keeps vertex degrees low. Each round looks at the
 * lightest weight class among edges that still join two different trees and
 * picks the edge whose merged endpoints reach the smallest maximum degree;
 * remaining ties fall back to the smallest endpoint pair. Same weight as any
 * MST, but flatter, which shortens the trunk path the cutting stage works on.
 */
Tree modified_kruskal_mst(const Graph& g);

}  // namespace kforest

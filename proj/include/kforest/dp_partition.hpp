#pragma once

#include <vector>

#include "kforest/graph.hpp"
#include "kforest/rational.hpp"

namespace kforest {

/**
 * A tree arranged along its maximum-weight path ("trunk"). Off-trunk
 * subtrees hang from the trunk vertex they attach to and are charged to it.
 *
 * With trunk edges e_1..e_n, prefix[i] is the weight of everything strictly
 * left of e_i plus e_i itself: trunk edges e_1..e_i and the subtrees hanging
 * at trunk_vertices[0..i-1]. prefix[0] is 0 and prefix[n+1] repeats
 * prefix[n], the whole tree's weight, matching the virtual weightless edge
 * the cutting recurrence appends past the trunk's end.
 */
struct PathDecomposition {
    std::vector<Vertex> trunk_vertices;  // v_0..v_n
    std::vector<Edge> trunk_edges;       // e_1..e_n in trunk order
    std::vector<Weight> hanging;         // off-trunk weight charged to v_i
    std::vector<Weight> prefix;          // size n + 2
    Weight total = 0;
};

/**
 * Maximum-weight simple path of the tree, found with two farthest-vertex
 * sweeps. Distance ties resolve to the smallest vertex id, and the trunk
 * runs from the smaller endpoint to the larger, so the decomposition is
 * deterministic.
 */
PathDecomposition longest_path(const Tree& t);

/**
 * Tables of the cutting recurrence, indexed 1..n+1 (entry 0 is the seed).
 * penalty[i] is the best total imbalance of any cut chain ending at trunk
 * edge i, argmin[i] the previous cut it extends (0 for none), and
 * discount[i] the accumulated weight of the cuts along that chain.
 */
struct DpTables {
    std::vector<Rational> penalty;
    std::vector<int> argmin;
    std::vector<Weight> discount;
};

/** Chosen trunk edges, ascending 1-based positions, plus the full tables. */
struct CutSet {
    std::vector<int> positions;
    std::vector<Edge> edges;
    DpTables tables;
};

/**
 * Picks trunk edges to cut so the resulting piece weights stay close to a
 * 1/parts share each. Exact rational dynamic program; equal penalties
 * resolve to the smallest previous index, which prefers fewer cuts.
 */
CutSet dp_cut_set(const PathDecomposition& pd, int parts);

/** Removes `cuts` (which must be tree edges) and returns the components as
    trees ordered by smallest vertex. */
Forest apply_cuts(const Tree& t, const std::vector<Edge>& cuts);

/** How fixup_forest chooses the share count when re-cutting a subtree. */
enum class SubtreeShares {
    kProportional,  // its weight share of the original tree, capped by need
    kNeedOnly,      // always the number of missing trees plus one
};

struct DpOptions {
    SubtreeShares shares = SubtreeShares::kProportional;
};

/**
 * Adjusts a forest cut from one tree until it has exactly `parts` trees.
 * Too few: re-run the cutting recurrence on the heaviest tree (a forced
 * balanced cut steps in when the recurrence declines to cut). Too many:
 * repeatedly restore the cut edge whose merge yields the lightest tree.
 */
Forest fixup_forest(Forest f, int parts, const DpOptions& options = {});

/**
 * Approximate minimum spanning k-forest: degree-aware MST, trunk
 * decomposition, balance-driven cuts, then fixup to exactly k trees.
 * Requires a connected graph and 2 <= k <= vertex count.
 */
Forest dp_k_forest(const Graph& g, int k, const DpOptions& options = {});

}  // namespace kforest

#pragma once

#include <vector>

#include "kforest/graph.hpp"

namespace kforest {

/** Result of the brute-force solver: the forest and its heaviest-tree weight. */
struct ExactResult {
    Forest forest;
    Weight weight = 0;
};

/**
 * Minimum spanning k-forest by exhaustive search.
 *
 * Enumerates every partition of the vertex set into exactly k blocks whose
 * induced subgraphs are connected; each block contributes its induced-subgraph
 * MST and the objective is the heaviest block. Partitions are visited as
 * restricted growth strings in lexicographic order and the first minimizer
 * wins, so the result is deterministic.
 *
 * Guards: at most 12 vertices in general; k = 2 takes a subset-enumeration
 * path that stretches the limit to 22 vertices (the partition-decision
 * reduction needs 2m+2 of them).
 */
ExactResult exact_min_k_forest(const Graph& g, int k);

/** A multiset of positive integers to split into two halves of equal sum. */
struct PartitionInstance {
    std::vector<Weight> values;

    Weight total() const;
    /** Half of the total; only meaningful when the total is even. */
    Weight half_sum() const { return total() / 2; }
};

/**
 * The gadget graph tying the split decision to 2-forest weight: two hub
 * vertices, and per value a midpoint joined to both hubs by weight-0 edges
 * plus an apex hanging off the midpoint by an edge of that value's weight.
 * Layout: hubs at ids 0 and 1, midpoint i at 2i+2, apex i at 2i+3.
 */
Graph partition_reduction_graph(const PartitionInstance& inst);

/**
 * True iff the values split into two halves of equal sum, decided by solving
 * the reduction graph exactly for k = 2. Odd totals are immediately false.
 * Guard: at most 10 values.
 */
bool decide_partition(const PartitionInstance& inst);

}  // namespace kforest

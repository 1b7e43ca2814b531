#pragma once

#include <cstdint>
#include <vector>

#include "kforest/graph.hpp"

namespace kforest {

/** One line as integer coefficients of a*x + b*y = c, with (a, b) nonzero. */
struct Line {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
};

/** Lines in general position: pairwise non-parallel, no concurrent triple. */
struct LineArrangement {
    std::vector<Line> lines;
    std::uint64_t seed = 0;
};

/** Largest coefficient magnitude the exact predicates are sized for. */
inline constexpr std::int64_t kMaxLineCoefficient = 1'000'000;

/**
 * Draws `count` random lines in general position. Degenerate candidates
 * (parallel to an earlier line, or passing through an earlier intersection
 * point) are rejected and redrawn; all checks use exact integer arithmetic,
 * so the same seed yields the same lines on every platform.
 */
LineArrangement random_lines(int count, std::uint64_t seed);

/** Throws GenerationError unless the lines are valid and in general position. */
void verify_general_position(const std::vector<Line>& lines);

/**
 * Dual graph of the arrangement's planar subdivision: one vertex per cell
 * (unbounded cells included), one edge per boundary segment shared by two
 * cells. Every edge lying on the same line gets that line's weight, a random
 * integer in [1, 1000] drawn from `seed`; the optional out-parameter receives
 * those per-line weights. Cells are numbered by sorted side-of-line signature,
 * so the graph is a pure function of (arrangement, seed).
 */
Graph dual_graph(const LineArrangement& arr, std::uint64_t seed,
                 std::vector<Weight>* line_weights = nullptr);

}  // namespace kforest

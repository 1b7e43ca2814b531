#pragma once

#include <vector>

#include "kforest/graph.hpp"
#include "kforest/similarity.hpp"

namespace kforest {

/**
 * Solution of (D - W) y = lambda D y for the smallest strictly positive
 * eigenvalue, where D is the diagonal of similarity row sums.
 *
 * y has unit Euclidean norm and its first nonzero entry is positive.
 * residual is ||(D - W) y - lambda D y||_inf / ||y||_inf; the solver
 * guarantees residual <= 1e-8 and |<y, D 1>| <= 1e-6 * ||y|| * ||D 1||,
 * and throws ConvergenceError when it cannot reach those bounds. The pair
 * is held in extended precision because the residual bound is absolute:
 * rounding lambda or y to double costs about maxD * 1e-16, which alone
 * would breach the bound on graphs whose row sums pass ~1e8.
 */
struct EigenSolution {
    long double lambda = 0.0L;
    std::vector<long double> y;
    double residual = 0.0;
    double d_orthogonality = 0.0;  // |<y, D 1>| / (||y|| * ||D 1||)
};

EigenSolution fiedler_generalized(const SimilarityModel& model);

/** Eigenvalues below this bound count as the trivial zero eigenvalue. */
double zero_eigenvalue_threshold(const SimilarityModel& model);

/** Running extremes over every eigensolver call, for test instrumentation. */
struct SolverStats {
    long invocations = 0;
    double worst_residual = 0.0;
    double worst_d_orthogonality = 0.0;
};

SolverStats solver_stats();
void reset_solver_stats();

/** One vertex moved while mending a block, with the path that reached it. */
struct Repair {
    Vertex vertex = 0;
    std::vector<Vertex> path;
};

/** A two-way split of a graph's vertices, both sides connected. */
struct Bisection {
    std::vector<Vertex> a;
    std::vector<Vertex> b;
    std::vector<Repair> repairs;
};

/**
 * Makes both blocks induce connected subgraphs. Every piece separated from
 * its block's largest component gets the interior of its shortest path back
 * to that component pulled into the block; when that would drain the other
 * block empty, the separated piece defects instead.
 */
void repair_blocks(const Graph& g, std::vector<Vertex>& a, std::vector<Vertex>& b,
                   std::vector<Repair>* repairs = nullptr);

/**
 * Splits a connected graph in two along the sign of the generalized
 * eigenvector: y_i > 0 goes to A, the rest to B. If either side comes out
 * empty the split falls back to the median of y (ties to A). Both blocks
 * are repaired to induce connected subgraphs before returning.
 */
Bisection bisect(const Graph& g, SimilarityDiagonal diagonal = SimilarityDiagonal::kLiteral);

struct SpectralOptions {
    SimilarityDiagonal diagonal = SimilarityDiagonal::kLiteral;
};

/**
 * Approximate minimum spanning k-forest via recursive bisection: log2(k)
 * levels of bisect, then a degree-aware MST inside each final block.
 * k must be a power of two and at most the vertex count.
 */
Forest spectral_k_forest(const Graph& g, int k, const SpectralOptions& options = {});

/**
 * Forests for k = 1, 2, 4, ..., max_k from a single recursion, one per
 * level. Block boundaries at a level do not depend on how much deeper the
 * recursion goes, so entry L equals spectral_k_forest(g, 2^L). When
 * `level_wall_us` is given it receives, per entry, the microseconds elapsed
 * from the start of the call until that entry's forest was finished.
 */
std::vector<Forest> spectral_forest_ladder(const Graph& g, int max_k,
                                           const SpectralOptions& options = {},
                                           std::vector<std::int64_t>* level_wall_us = nullptr);

}  // namespace kforest

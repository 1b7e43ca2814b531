#pragma once

#include <vector>

#include "kforest/graph.hpp"
#include "kforest/rational.hpp"

namespace kforest {

/** Dense all-pairs shortest path table for a connected graph. */
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(Vertex n, std::vector<Weight> cells) : n_(n), cells_(std::move(cells)) {}

    Vertex size() const { return n_; }
    Weight at(Vertex i, Vertex j) const {
        return cells_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                      static_cast<std::size_t>(j)];
    }
    const std::vector<Weight>& cells() const { return cells_; }
    /** Largest entry: the graph's weighted diameter. */
    Weight max_distance() const;

private:
    Vertex n_ = 0;
    std::vector<Weight> cells_;
};

/** Floyd-Warshall in exact integer arithmetic. Rejects disconnected input. */
DistanceMatrix floyd_warshall(const Graph& g);

/** How the similarity matrix fills its diagonal. */
enum class SimilarityDiagonal {
    kLiteral,  // distance to self is 0, so the diagonal holds the full scale L
    kZero,     // diagonal forced to 0
};

/**
 * Similarity weights derived from path distances: far apart means dissimilar.
 * Entries are L - distance(i, j) where L is the weighted diameter, so the
 * closest pairs score near L and the farthest score 0.
 */
struct SimilarityModel {
    Vertex n = 0;
    Weight scale = 0;               // L, the largest pairwise distance
    std::vector<Weight> w;          // dense n*n similarity, symmetric
    std::vector<Weight> row_sums;   // D_i = sum_j w(i, j)

    Weight at(Vertex i, Vertex j) const {
        return w[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(j)];
    }
};

SimilarityModel similarity_model(const DistanceMatrix& dm,
                                 SimilarityDiagonal diagonal = SimilarityDiagonal::kLiteral);

/** A two-way split of the model's vertex set; both sides sorted, disjoint. */
struct Split {
    std::vector<Vertex> a;
    std::vector<Vertex> b;
};

/**
 * Normalized cut of the split: cut(A,B)/assoc(A,V) + cut(A,B)/assoc(B,V),
 * in exact arithmetic. Throws DegenerateSimilarityError when either side's
 * association is zero.
 */
Rational normalized_cut(const SimilarityModel& model, const Split& split);

/** Normalized association; satisfies ncut + nassoc == 2 exactly. */
Rational normalized_association(const SimilarityModel& model, const Split& split);

}  // namespace kforest

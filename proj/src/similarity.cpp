#include "kforest/similarity.hpp"

#include <algorithm>
#include <limits>

namespace kforest {
namespace {

constexpr Weight kUnset = std::numeric_limits<Weight>::max() / 4;

void check_split(const SimilarityModel& model, const Split& split) {
    const std::size_t n = static_cast<std::size_t>(model.n);
    if (split.a.empty() || split.b.empty())
        throw Error("split: both sides must be non-empty");
    std::vector<char> side(n, 0);
    for (const Vertex v : split.a) {
        if (v < 0 || v >= model.n) throw Error("split: vertex out of range");
        side[static_cast<std::size_t>(v)] = 1;
    }
    for (const Vertex v : split.b) {
        if (v < 0 || v >= model.n) throw Error("split: vertex out of range");
        if (side[static_cast<std::size_t>(v)]) throw Error("split: sides overlap");
        side[static_cast<std::size_t>(v)] = 2;
    }
    if (split.a.size() + split.b.size() != n) throw Error("split: does not cover the vertex set");
}

struct SplitSums {
    Weight cut = 0;       // pairs crossing the split, counted once per unordered pair
    Weight assoc_a = 0;   // ordered pairs (u in A, t in V)
    Weight assoc_b = 0;
    Weight assoc_aa = 0;  // ordered pairs inside A
    Weight assoc_bb = 0;
};

SplitSums split_sums(const SimilarityModel& model, const Split& split) {
    check_split(model, split);
    std::vector<char> in_a(static_cast<std::size_t>(model.n), 0);
    for (const Vertex v : split.a) in_a[static_cast<std::size_t>(v)] = 1;

    SplitSums s;
    for (Vertex i = 0; i < model.n; ++i) {
        Weight row_a = 0;
        for (Vertex j = 0; j < model.n; ++j) {
            if (in_a[static_cast<std::size_t>(j)]) row_a += model.at(i, j);
        }
        const Weight row_total = model.row_sums[static_cast<std::size_t>(i)];
        if (in_a[static_cast<std::size_t>(i)]) {
            s.assoc_a += row_total;
            s.assoc_aa += row_a;
            s.cut += row_total - row_a;
        } else {
            s.assoc_b += row_total;
            s.assoc_bb += row_total - row_a;
        }
    }
    return s;
}

}  // namespace

Weight DistanceMatrix::max_distance() const {
    Weight best = 0;
    for (const Weight d : cells_) best = std::max(best, d);
    return best;
}

DistanceMatrix floyd_warshall(const Graph& g) {
    if (g.vertex_count() == 0) throw Error("floyd_warshall: empty graph");
    if (!is_connected(g)) throw DisconnectedError("floyd_warshall: graph is not connected");

    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    std::vector<Weight> dist(n * n, kUnset);
    for (std::size_t i = 0; i < n; ++i) dist[i * n + i] = 0;
    for (const Edge& e : g.edges()) {
        const std::size_t u = static_cast<std::size_t>(e.u);
        const std::size_t v = static_cast<std::size_t>(e.v);
        dist[u * n + v] = std::min(dist[u * n + v], e.w);
        dist[v * n + u] = dist[u * n + v];
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Weight* row_k = dist.data() + k * n;
        for (std::size_t i = 0; i < n; ++i) {
            const Weight d_ik = dist[i * n + k];
            if (d_ik == kUnset) continue;
            Weight* row_i = dist.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) {
                const Weight candidate = d_ik + row_k[j];
                if (candidate < row_i[j]) row_i[j] = candidate;
            }
        }
    }
    return DistanceMatrix(g.vertex_count(), std::move(dist));
}

SimilarityModel similarity_model(const DistanceMatrix& dm, SimilarityDiagonal diagonal) {
    const Vertex n = dm.size();
    SimilarityModel model;
    model.n = n;
    model.scale = dm.max_distance();
    model.w.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    model.row_sums.assign(static_cast<std::size_t>(n), 0);
    for (Vertex i = 0; i < n; ++i) {
        Weight sum = 0;
        for (Vertex j = 0; j < n; ++j) {
            Weight value = model.scale - dm.at(i, j);
            if (i == j && diagonal == SimilarityDiagonal::kZero) value = 0;
            model.w[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                    static_cast<std::size_t>(j)] = value;
            sum += value;
        }
        model.row_sums[static_cast<std::size_t>(i)] = sum;
    }
    return model;
}

Rational normalized_cut(const SimilarityModel& model, const Split& split) {
    const SplitSums s = split_sums(model, split);
    if (s.assoc_a == 0 || s.assoc_b == 0)
        throw DegenerateSimilarityError("normalized_cut: a side has zero association");
    return Rational(s.cut, s.assoc_a) + Rational(s.cut, s.assoc_b);
}

Rational normalized_association(const SimilarityModel& model, const Split& split) {
    const SplitSums s = split_sums(model, split);
    if (s.assoc_a == 0 || s.assoc_b == 0)
        throw DegenerateSimilarityError("normalized_association: a side has zero association");
    return Rational(s.assoc_aa, s.assoc_a) + Rational(s.assoc_bb, s.assoc_b);
}

}  // namespace kforest

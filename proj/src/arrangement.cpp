#include "kforest/arrangement.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>

namespace kforest {

namespace {

using Wide = __int128;

// weights draw from their own stream so one seed can drive both stages
constexpr std::uint64_t kWeightSalt = 0x6a09e667f3bcc909ULL;

int sign_of(Wide v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

/** Determinant that vanishes exactly when p and q are parallel. */
Wide pair_det(const Line& p, const Line& q) {
    return Wide(p.a) * q.b - Wide(q.a) * p.b;
}

/**
 * Numerator of r's line function at the p/q intersection point; the product
 * of its sign with the sign of pair_det(p, q) tells which side of r the
 * point lies on, and it vanishes exactly when the three lines are concurrent.
 */
Wide triple_num(const Line& p, const Line& q, const Line& r) {
    const Wide x_num = Wide(p.c) * q.b - Wide(q.c) * p.b;
    const Wide y_num = Wide(p.a) * q.c - Wide(q.a) * p.c;
    return Wide(r.a) * x_num + Wide(r.b) * y_num - Wide(r.c) * pair_det(p, q);
}

/** Unbiased draw in [0, bound); rejection sampling, stable across platforms. */
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t reject_below = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= reject_below) return r % bound;
    }
}

std::int64_t draw_coefficient(std::mt19937_64& rng) {
    const std::uint64_t span = 2 * static_cast<std::uint64_t>(kMaxLineCoefficient) + 1;
    return static_cast<std::int64_t>(bounded_draw(rng, span)) - kMaxLineCoefficient;
}

/** Crossing of another line, positioned along the host line as num/den. */
struct Crossing {
    int other = 0;
    std::int64_t num = 0;
    std::int64_t den = 0;  // always positive
};

/** Side of line `j` at the point where lines `i` and `k` cross. */
int point_side(const std::vector<Line>& lines, int i, int k, int j) {
    const std::size_t si = static_cast<std::size_t>(i);
    const std::size_t sk = static_cast<std::size_t>(k);
    const std::size_t sj = static_cast<std::size_t>(j);
    return sign_of(triple_num(lines[si], lines[sk], lines[sj])) *
           sign_of(pair_det(lines[si], lines[sk]));
}

/**
 * Side of line `j` over the open segment `r` of line `i`. The side is
 * constant there because crossings only happen at segment endpoints; an
 * endpoint lying on `j` itself is skipped in favor of the other one, and a
 * ray whose lone endpoint lies on `j` is resolved by the travel direction.
 */
int segment_side(const std::vector<Line>& lines, int i, const std::vector<Crossing>& crossings,
                 std::size_t r, int j) {
    if (r > 0 && crossings[r - 1].other != j)
        return point_side(lines, i, crossings[r - 1].other, j);
    if (r < crossings.size() && crossings[r].other != j)
        return point_side(lines, i, crossings[r].other, j);
    const int det = sign_of(
        pair_det(lines[static_cast<std::size_t>(i)], lines[static_cast<std::size_t>(j)]));
    return r == 0 ? det : -det;
}

}  // namespace

LineArrangement random_lines(int count, std::uint64_t seed) {
    if (count < 1) throw GenerationError("random_lines: need at least one line");
    std::mt19937_64 rng(seed);
    LineArrangement arr;
    arr.seed = seed;
    arr.lines.reserve(static_cast<std::size_t>(count));
    long budget = 1000L * count + 1000;
    while (arr.lines.size() < static_cast<std::size_t>(count)) {
        if (--budget < 0) throw GenerationError("random_lines: rejection budget exhausted");
        const Line cand{draw_coefficient(rng), draw_coefficient(rng), draw_coefficient(rng)};
        if (cand.a == 0 && cand.b == 0) continue;
        bool fresh = true;
        for (const Line& p : arr.lines)
            if (pair_det(p, cand) == 0) {
                fresh = false;
                break;
            }
        for (std::size_t i = 0; fresh && i < arr.lines.size(); ++i)
            for (std::size_t j = i + 1; j < arr.lines.size(); ++j)
                if (triple_num(arr.lines[i], arr.lines[j], cand) == 0) {
                    fresh = false;
                    break;
                }
        if (fresh) arr.lines.push_back(cand);
    }
    return arr;
}

void verify_general_position(const std::vector<Line>& lines) {
    for (const Line& l : lines) {
        if (l.a == 0 && l.b == 0) throw GenerationError("arrangement: degenerate line 0x+0y=c");
        if (std::max({std::abs(l.a), std::abs(l.b), std::abs(l.c)}) > kMaxLineCoefficient)
            throw GenerationError("arrangement: coefficient magnitude exceeds " +
                                  std::to_string(kMaxLineCoefficient));
    }
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            if (pair_det(lines[i], lines[j]) == 0)
                throw GenerationError("arrangement: lines " + std::to_string(i) + " and " +
                                      std::to_string(j) + " are parallel");
            for (std::size_t k = j + 1; k < lines.size(); ++k)
                if (triple_num(lines[i], lines[j], lines[k]) == 0)
                    throw GenerationError("arrangement: lines " + std::to_string(i) + ", " +
                                          std::to_string(j) + ", " + std::to_string(k) +
                                          " are concurrent");
        }
}

Graph dual_graph(const LineArrangement& arr, std::uint64_t seed,
                 std::vector<Weight>* line_weights) {
    const std::vector<Line>& lines = arr.lines;
    if (lines.empty()) throw GenerationError("dual_graph: empty arrangement");
    verify_general_position(lines);
    const int m = static_cast<int>(lines.size());

    std::mt19937_64 rng(seed ^ kWeightSalt);
    std::vector<Weight> weights(static_cast<std::size_t>(m));
    for (Weight& w : weights) w = static_cast<Weight>(bounded_draw(rng, 1000)) + 1;
    if (line_weights) *line_weights = weights;

    // Each cell is identified by its vector of sides, one '+'/'-' per line.
    // Each segment of each line is one wall between two cells that agree
    // everywhere except at the segment's own line.
    struct Wall {
        std::string plus_side;
        std::string minus_side;
        int line = 0;
    };
    std::vector<Wall> walls;
    walls.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    std::map<std::string, int> cell_ids;

    for (int i = 0; i < m; ++i) {
        std::vector<Crossing> crossings;
        crossings.reserve(static_cast<std::size_t>(m) - 1);
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            const Line& li = lines[static_cast<std::size_t>(i)];
            const Line& lj = lines[static_cast<std::size_t>(j)];
            // position along the host line: projection onto its direction
            Wide den = pair_det(li, lj);
            Wide num = Wide(li.b) * (Wide(li.c) * lj.b - Wide(lj.c) * li.b) -
                       Wide(li.a) * (Wide(li.a) * lj.c - Wide(lj.a) * li.c);
            if (den < 0) {
                den = -den;
                num = -num;
            }
            crossings.push_back(
                Crossing{j, static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)});
        }
        std::sort(crossings.begin(), crossings.end(), [](const Crossing& a, const Crossing& b) {
            return Wide(a.num) * b.den < Wide(b.num) * a.den;
        });

        for (std::size_t r = 0; r <= crossings.size(); ++r) {
            std::string sides(static_cast<std::size_t>(m), '?');
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                const int side = segment_side(lines, i, crossings, r, j);
                if (side == 0) throw GenerationError("dual_graph: sign predicate degenerated");
                sides[static_cast<std::size_t>(j)] = side > 0 ? '+' : '-';
            }
            Wall wall;
            sides[static_cast<std::size_t>(i)] = '+';
            wall.plus_side = sides;
            sides[static_cast<std::size_t>(i)] = '-';
            wall.minus_side = std::move(sides);
            wall.line = i;
            cell_ids.emplace(wall.plus_side, 0);
            cell_ids.emplace(wall.minus_side, 0);
            walls.push_back(std::move(wall));
        }
    }

    const std::size_t expected_cells =
        1 + static_cast<std::size_t>(m) + static_cast<std::size_t>(m) * (m - 1) / 2;
    if (cell_ids.size() != expected_cells)
        throw GenerationError("dual_graph: cell census mismatch, arrangement is degenerate");
    if (walls.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(m))
        throw GenerationError("dual_graph: wall census mismatch, arrangement is degenerate");

    int next_id = 0;
    for (auto& [sides, id] : cell_ids) id = next_id++;

    std::vector<Edge> edges;
    edges.reserve(walls.size());
    for (const Wall& wall : walls) {
        const Vertex u = static_cast<Vertex>(cell_ids.at(wall.plus_side));
        const Vertex v = static_cast<Vertex>(cell_ids.at(wall.minus_side));
        edges.push_back(Edge{std::min(u, v), std::max(u, v),
                             weights[static_cast<std::size_t>(wall.line)]});
    }
    return Graph(static_cast<Vertex>(expected_cells), std::move(edges));
}

}  // namespace kforest

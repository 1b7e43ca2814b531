#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "kforest/spectral.hpp"

// Solves (D - W) y = lambda D y for the smallest strictly positive lambda.
//
// The pair is reduced to an ordinary symmetric problem C z = lambda z with
// C = D^{-1/2} (D - W) D^{-1/2} and z = D^{1/2} y, then C is tridiagonalized
// by Householder reflections. The eigenvalue comes from Sturm-count
// bisection, the eigenvector from inverse iteration, both deterministic.
//
// Double precision alone cannot honor the residual bound once row sums grow
// past ~1e7: the bound is absolute while rounding error scales with D. The
// winning eigenpair is therefore polished in extended precision against the
// exact integer matrices (residual correction through the double-precision
// factorization), and lambda and y are kept in long double so the polish
// survives into the returned solution.

namespace kforest {
namespace {

struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples i and i+1
};

struct Reflector {
    std::size_t start = 0;        // first row the reflector touches
    double beta = 0.0;
    std::vector<double> v;        // v[0] == 1
};

// Householder tridiagonalization of a dense symmetric matrix, destroying a.
Tridiagonal tridiagonalize(std::vector<double>& a, std::size_t n,
                           std::vector<Reflector>& reflectors) {
    Tridiagonal t;
    t.diag.resize(n);
    t.off.assign(n >= 1 ? n - 1 : 0, 0.0);
    reflectors.clear();

    std::vector<double> v, p, w;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        v.assign(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) v[i] = a[(k + 1 + i) * n + k];

        double norm2 = 0.0;
        for (const double x : v) norm2 += x * x;
        const double norm = std::sqrt(norm2);
        double beta = 0.0;
        if (norm > 0.0) {
            const double alpha = v[0];
            const double sign = alpha >= 0.0 ? 1.0 : -1.0;
            const double u1 = alpha + sign * norm;
            for (std::size_t i = 1; i < m; ++i) v[i] /= u1;
            v[0] = 1.0;
            beta = sign * u1 / norm;
            t.off[k] = -sign * norm;
        } else {
            v[0] = 1.0;
            t.off[k] = 0.0;
        }

        if (beta != 0.0) {
            // Two-sided update of the trailing block: A <- H A H with
            // H = I - beta v v^T, via p = beta A v and w = p - (beta/2 p.v) v.
            p.assign(m, 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                const double* row = a.data() + (k + 1 + i) * n + (k + 1);
                double sum = 0.0;
                for (std::size_t j = 0; j < m; ++j) sum += row[j] * v[j];
                p[i] = beta * sum;
            }
            double pv = 0.0;
            for (std::size_t i = 0; i < m; ++i) pv += p[i] * v[i];
            const double half = 0.5 * beta * pv;
            w.assign(m, 0.0);
            for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - half * v[i];
            for (std::size_t i = 0; i < m; ++i) {
                double* row = a.data() + (k + 1 + i) * n + (k + 1);
                const double vi = v[i];
                const double wi = w[i];
                for (std::size_t j = 0; j < m; ++j) row[j] -= vi * w[j] + wi * v[j];
            }
        }
        t.diag[k] = a[k * n + k];
        reflectors.push_back(Reflector{k + 1, beta, v});
    }
    if (n >= 2) {
        t.diag[n - 2] = a[(n - 2) * n + (n - 2)];
        t.off[n - 2] = a[(n - 1) * n + (n - 2)];
    }
    if (n >= 1) t.diag[n - 1] = a[(n - 1) * n + (n - 1)];
    return t;
}

// Number of eigenvalues of the tridiagonal matrix strictly below x.
std::size_t count_below(const Tridiagonal& t, double x) {
    const std::size_t n = t.diag.size();
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double b2_over_q;
        if (i == 0) {
            b2_over_q = 0.0;
        } else if (q != 0.0) {
            b2_over_q = t.off[i - 1] * t.off[i - 1] / q;
        } else {
            b2_over_q = std::abs(t.off[i - 1]) / 2.3e-16;
        }
        q = t.diag[i] - x - b2_over_q;
        if (q < 0.0) ++count;
    }
    return count;
}

// k-th smallest eigenvalue (0-based) by bisection over a Gershgorin bracket.
double kth_eigenvalue(const Tridiagonal& t, std::size_t k) {
    const std::size_t n = t.diag.size();
    double lo = t.diag[0];
    double hi = t.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? std::abs(t.off[i - 1]) : 0.0;
        const double right = i + 1 < n ? std::abs(t.off[i]) : 0.0;
        lo = std::min(lo, t.diag[i] - left - right);
        hi = std::max(hi, t.diag[i] + left + right);
    }
    const double span = std::max({std::abs(lo), std::abs(hi), 1e-300});
    lo -= 1e-12 * span;
    hi += 1e-12 * span;
    for (int iter = 0; iter < 200 && hi - lo > 1e-16 * span; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(t, mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// One linear solve of (T - mu I) x = rhs with partial pivoting; rhs is
// overwritten. Returns false only for sizes the caller never passes.
void solve_shifted(const Tridiagonal& t, double mu, std::vector<double>& x) {
    const std::size_t n = t.diag.size();
    // Band storage with one fill-in diagonal above the superdiagonal.
    std::vector<double> d0(n), d1(n, 0.0), d2(n, 0.0), sub(n, 0.0);
    std::vector<char> swapped(n, 0);
    for (std::size_t i = 0; i < n; ++i) d0[i] = t.diag[i] - mu;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        d1[i] = t.off[i];
        sub[i] = t.off[i];
    }
    const double tiny = 1e-290;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i]) > std::abs(d0[i])) {
            std::swap(d0[i], sub[i]);
            std::swap(d1[i], d0[i + 1]);
            std::swap(d2[i], d1[i + 1]);
            std::swap(x[i], x[i + 1]);
            swapped[i] = 1;
        }
        if (std::abs(d0[i]) < tiny) d0[i] = d0[i] < 0.0 ? -tiny : tiny;
        const double mult = sub[i] / d0[i];
        d0[i + 1] -= mult * d1[i];
        d1[i + 1] -= mult * d2[i];
        x[i + 1] -= mult * x[i];
    }
    if (std::abs(d0[n - 1]) < tiny) d0[n - 1] = d0[n - 1] < 0.0 ? -tiny : tiny;
    // Back substitution.
    x[n - 1] /= d0[n - 1];
    if (n >= 2) {
        const std::size_t i = n - 2;
        x[i] = (x[i] - d1[i] * x[i + 1]) / d0[i];
    }
    for (std::size_t ip = n; ip >= 3; --ip) {
        const std::size_t i = ip - 3;
        x[i] = (x[i] - d1[i] * x[i + 1] - d2[i] * x[i + 2]) / d0[i];
    }
    (void)swapped;
}

// Eigenvector for a computed eigenvalue, by inverse iteration.
std::vector<double> tridiagonal_eigenvector(const Tridiagonal& t, double lambda) {
    const std::size_t n = t.diag.size();
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int iter = 0; iter < 4; ++iter) {
        solve_shifted(t, lambda, x);
        double biggest = 0.0;
        for (const double xi : x) biggest = std::max(biggest, std::abs(xi));
        if (biggest == 0.0) {
            x.assign(n, 0.0);
            x[static_cast<std::size_t>(iter) % n] = 1.0;
            continue;
        }
        for (double& xi : x) xi /= biggest;
        if (biggest > 1e12) break;  // already grown far past the other modes
    }
    double norm = 0.0;
    for (const double xi : x) norm += xi * xi;
    norm = std::sqrt(norm);
    for (double& xi : x) xi /= norm;
    return x;
}

void back_transform(const std::vector<Reflector>& reflectors, std::vector<double>& z) {
    for (auto it = reflectors.rbegin(); it != reflectors.rend(); ++it) {
        if (it->beta == 0.0) continue;
        const std::size_t m = it->v.size();
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += it->v[i] * z[it->start + i];
        const double scale = it->beta * dot;
        for (std::size_t i = 0; i < m; ++i) z[it->start + i] -= scale * it->v[i];
    }
}

// Adjoint of back_transform: same reflectors, opposite order.
void forward_transform(const std::vector<Reflector>& reflectors, std::vector<double>& z) {
    for (const Reflector& h : reflectors) {
        if (h.beta == 0.0) continue;
        const std::size_t m = h.v.size();
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += h.v[i] * z[h.start + i];
        const double scale = h.beta * dot;
        for (std::size_t i = 0; i < m; ++i) z[h.start + i] -= scale * h.v[i];
    }
}

void deflate_unit(std::vector<double>& x, const std::vector<double>& unit) {
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * unit[i];
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dot * unit[i];
}

// Dot products against the exact integer pair, accumulated in long double.
struct PairResidual {
    long double lambda_rayleigh;
    double residual;
    double d_orthogonality;
};

PairResidual measure(const SimilarityModel& model, const std::vector<long double>& y,
                     long double lambda, std::vector<long double>* residual_vec = nullptr) {
    const std::size_t n = static_cast<std::size_t>(model.n);
    // (D - W) y and D y, rows accumulated in long double.
    std::vector<long double> lap_y(n), d_y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Weight* row = model.w.data() + i * n;
        const Weight di = model.row_sums[i];
        long double sum = 0.0L;
        for (std::size_t j = 0; j < n; ++j) sum += static_cast<long double>(-row[j]) * y[j];
        sum += static_cast<long double>(di) * y[i];
        lap_y[i] = sum;
        d_y[i] = static_cast<long double>(di) * y[i];
    }
    long double num = 0.0L, den = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        num += lap_y[i] * y[i];
        den += d_y[i] * y[i];
    }
    const long double rayleigh = den != 0.0L ? num / den : lambda;

    long double worst = 0.0L, ynorm_inf = 0.0L;
    if (residual_vec) residual_vec->resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long double r = lap_y[i] - lambda * d_y[i];
        if (residual_vec) (*residual_vec)[i] = r;
        worst = std::max(worst, std::abs(r));
        ynorm_inf = std::max(ynorm_inf, std::abs(y[i]));
    }

    long double y_dot_d1 = 0.0L, y_norm2 = 0.0L, d1_norm2 = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double di = static_cast<long double>(model.row_sums[i]);
        y_dot_d1 += y[i] * di;
        y_norm2 += y[i] * y[i];
        d1_norm2 += di * di;
    }
    PairResidual out;
    out.lambda_rayleigh = rayleigh;
    out.residual = ynorm_inf > 0.0L ? static_cast<double>(worst / ynorm_inf) : 0.0;
    out.d_orthogonality = static_cast<double>(
        std::abs(y_dot_d1) / (std::sqrt(y_norm2) * std::sqrt(d1_norm2)));
    return out;
}

// Restores unit norm and D-orthogonality to the constant vector, in place.
void renormalize(const SimilarityModel& model, std::vector<long double>& y) {
    const std::size_t n = y.size();
    long double d_total = 0.0L, d_dot = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double di = static_cast<long double>(model.row_sums[i]);
        d_total += di;
        d_dot += di * y[i];
    }
    const long double shift = d_dot / d_total;
    long double norm2 = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] -= shift;
        norm2 += y[i] * y[i];
    }
    const long double norm = std::sqrt(norm2);
    if (norm > 0.0L)
        for (long double& x : y) x /= norm;
}

// Residual correction: solves (D - W - lambda D) c = r through the
// double-precision factorization and subtracts c from y. Each pass divides
// the eigenvector error by roughly the backend accuracy over the spectral
// gap, so one or two passes reach the extended-precision floor.
void polish(const SimilarityModel& model, const Tridiagonal& t,
            const std::vector<Reflector>& reflectors, const std::vector<double>& inv_sqrt_d,
            const std::vector<double>& z_t, EigenSolution& best) {
    const std::size_t n = static_cast<std::size_t>(model.n);
    std::vector<long double> y = best.y;
    long double lambda = best.lambda;
    std::vector<long double> residual_vec;
    for (int pass = 0; pass < 3 && best.residual > 1e-10; ++pass) {
        PairResidual before = measure(model, y, lambda, &residual_vec);
        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i)
            u[i] = static_cast<double>(residual_vec[i]) * inv_sqrt_d[i];
        forward_transform(reflectors, u);
        deflate_unit(u, z_t);
        solve_shifted(t, static_cast<double>(lambda), u);
        deflate_unit(u, z_t);
        back_transform(reflectors, u);

        std::vector<long double> candidate = y;
        for (std::size_t i = 0; i < n; ++i)
            candidate[i] -= static_cast<long double>(u[i]) * static_cast<long double>(inv_sqrt_d[i]);
        renormalize(model, candidate);
        PairResidual after = measure(model, candidate, lambda);
        // Let the sharpened Rayleigh quotient move lambda as well.
        PairResidual shifted = measure(model, candidate, after.lambda_rayleigh);
        long double next_lambda = lambda;
        if (shifted.residual < after.residual) {
            next_lambda = after.lambda_rayleigh;
            after = shifted;
        }
        if (after.residual >= before.residual) break;
        y = std::move(candidate);
        lambda = next_lambda;
        if (after.residual < best.residual) {
            best.y = y;
            best.lambda = lambda;
            best.residual = after.residual;
            best.d_orthogonality = after.d_orthogonality;
        }
    }
}

// Worker pools may run solves concurrently; the registry is the one piece
// of shared state, so it carries its own lock.
struct StatsRegistry {
    std::mutex guard;
    SolverStats stats;
};

StatsRegistry& registry() {
    static StatsRegistry r;
    return r;
}

}  // namespace

double zero_eigenvalue_threshold(const SimilarityModel& model) {
    Weight max_d = 0;
    for (const Weight d : model.row_sums) max_d = std::max(max_d, d);
    return 1e-10 * static_cast<double>(max_d);
}

SolverStats solver_stats() { return registry().stats; }

void reset_solver_stats() { registry().stats = SolverStats{}; }

EigenSolution fiedler_generalized(const SimilarityModel& model) {
    const std::size_t n = static_cast<std::size_t>(model.n);
    if (n < 2) throw Error("fiedler_generalized: need at least two vertices");
    for (const Weight d : model.row_sums)
        if (d <= 0)
            throw DegenerateSimilarityError(
                "fiedler_generalized: zero similarity row sum, matrix carries no signal");

    // Scaled symmetric matrix C = D^{-1/2} (D - W) D^{-1/2}.
    std::vector<double> inv_sqrt_d(n);
    for (std::size_t i = 0; i < n; ++i)
        inv_sqrt_d[i] = 1.0 / std::sqrt(static_cast<double>(model.row_sums[i]));
    std::vector<double> c(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const Weight* row = model.w.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            const double entry = i == j
                                     ? static_cast<double>(model.row_sums[i] - row[j])
                                     : static_cast<double>(-row[j]);
            c[i * n + j] = entry * inv_sqrt_d[i] * inv_sqrt_d[j];
        }
    }

    std::vector<Reflector> reflectors;
    Tridiagonal t = tridiagonalize(c, n, reflectors);
    c.clear();
    c.shrink_to_fit();

    const double threshold = zero_eigenvalue_threshold(model);
    const std::size_t zero_class = count_below(t, threshold);
    if (zero_class >= n)
        throw ConvergenceError("fiedler_generalized: no strictly positive eigenvalue");

    double lambda = kth_eigenvalue(t, zero_class);

    // Known null direction of C, used to clean the iterate.
    std::vector<double> z0(n);
    double z0_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        z0[i] = std::sqrt(static_cast<double>(model.row_sums[i]));
        z0_norm += z0[i] * z0[i];
    }
    z0_norm = std::sqrt(z0_norm);
    for (double& x : z0) x /= z0_norm;

    EigenSolution best;
    best.residual = std::numeric_limits<double>::infinity();
    std::vector<double> best_zt;
    double shift = lambda;
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<double> zt = tridiagonal_eigenvector(t, shift);
        std::vector<double> z = zt;
        back_transform(reflectors, z);

        double contamination = 0.0;
        for (std::size_t i = 0; i < n; ++i) contamination += z[i] * z0[i];
        for (std::size_t i = 0; i < n; ++i) z[i] -= contamination * z0[i];

        std::vector<long double> y(n);
        long double norm = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = static_cast<long double>(z[i]) * static_cast<long double>(inv_sqrt_d[i]);
            norm += y[i] * y[i];
        }
        norm = std::sqrt(norm);
        if (norm == 0.0L) {
            shift = lambda * (1.0 + 1e-10) + 1e-30;
            continue;
        }
        for (long double& x : y) x /= norm;

        PairResidual m = measure(model, y, lambda);
        // One Rayleigh pass usually lands the residual on its double floor.
        PairResidual m2 = measure(model, y, m.lambda_rayleigh);
        long double attempt_lambda = lambda;
        if (m2.residual < m.residual) {
            attempt_lambda = m.lambda_rayleigh;
            m = m2;
        }
        if (m.residual < best.residual) {
            best.lambda = attempt_lambda;
            best.y = std::move(y);
            best.residual = m.residual;
            best.d_orthogonality = m.d_orthogonality;
            best_zt = std::move(zt);
        }
        if (best.residual <= 1e-8 && best.d_orthogonality <= 1e-6) break;
        shift = static_cast<double>(attempt_lambda);
    }

    if (!best_zt.empty()) polish(model, t, reflectors, inv_sqrt_d, best_zt, best);

    for (std::size_t i = 0; i < n; ++i) {
        if (best.y[i] != 0.0L) {
            if (best.y[i] < 0.0L)
                for (long double& x : best.y) x = -x;
            break;
        }
    }

    if (!(best.residual <= 1e-8))
        throw ConvergenceError("fiedler_generalized: residual " + std::to_string(best.residual) +
                               " exceeds 1e-8");
    if (!(best.d_orthogonality <= 1e-6))
        throw ConvergenceError("fiedler_generalized: eigenvector not D-orthogonal to constants");

    auto& reg = registry().stats;
    ++reg.invocations;
    reg.worst_residual = std::max(reg.worst_residual, best.residual);
    reg.worst_d_orthogonality = std::max(reg.worst_d_orthogonality, best.d_orthogonality);
    return best;
}

}  // namespace kforest

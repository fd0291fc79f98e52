#include "subgrad/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace subgrad {

namespace {

// ln(4i^2 / (4i^2 - 1))
double log_wallis_ratio(std::size_t i) {
    const double d = 4.0 * static_cast<double>(i) * static_cast<double>(i);
    return -std::log1p(-1.0 / d);
}

void check_positive(double x, const char* what) {
    if (!(x > 0.0)) throw Error(std::string(what) + " must be positive");
}

}  // namespace

double wallis_factor(std::size_t k, std::size_t n) {
    if (k < 1 || k > n) throw BadIndices("wallis_factor: need 1 <= k <= N");
    const double kd = static_cast<double>(k);
    double s = std::log((2.0 * kd + 1.0) / (2.0 * kd));
    for (std::size_t i = k + 1; i <= n; ++i) s -= log_wallis_ratio(i);
    return std::exp(s);
}

SequencePack seq_a_stepweights(std::size_t n) {
    if (n < 1) throw Error("seq_a_stepweights: N must be >= 1");
    SequencePack pack;
    pack.n = n;
    pack.a.assign(n + 1, 1.0);
    pack.p.assign(n, 0.0);
    pack.q.assign(n, 0.0);
    pack.y.assign(n, 0.0);

    const double nd = static_cast<double>(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        double log_a = 0.0, log_y = 0.0;
        for (std::size_t i = n + 1 - k; i <= n; ++i) {
            const double id = static_cast<double>(i);
            const double expo = nd + 1.0 - id - kd;  // N+1-i-k
            log_a += std::log((2.0 * id + 1.0) / (2.0 * id)) + expo * log_wallis_ratio(i);
            log_y += -expo * log_wallis_ratio(i);
        }
        pack.a[k] = std::exp(log_a);
        pack.y[k - 1] = std::exp(log_y);
    }
    double p = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double m = static_cast<double>(n + 1 - k);
        p *= (2.0 * m + 1.0) / (2.0 * m);
        pack.p[k - 1] = p;
    }
    double q = 1.0;
    pack.q[0] = 1.0;
    for (std::size_t k = 2; k <= n; ++k) {
        const double m = static_cast<double>(n + 2 - k);
        q *= (2.0 * m) / (2.0 * m - 1.0);
        pack.q[k - 1] = q;
    }
    return pack;
}

SymMatrix matrix_Q_polyak(std::size_t n) {
    const SequencePack s = seq_a_stepweights(n);
    SymMatrix q(n);
    for (std::size_t i = 1; i <= n; ++i) {
        q.set(i - 1, i - 1, 2.0 * s.a[i] * s.a[i - 1] - s.a[i] * s.a[i]);
        for (std::size_t j = i + 1; j <= n; ++j) {
            q.set(i - 1, j - 1, (s.a[i - 1] - s.a[i]) * s.a[j]);
        }
    }
    return q;
}

SymMatrix matrix_A_adaptive(std::size_t n) {
    if (n < 1) throw Error("matrix_A_adaptive: N must be >= 1");
    // a_k = 1/(N+1-k), k = 0..N; only a_0..a_N enter the entries.
    Vector a(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        a[k] = 1.0 / static_cast<double>(n + 1 - k);
    }
    SymMatrix m(n + 1);
    for (std::size_t i = 1; i <= n + 1; ++i) {
        m.set(i - 1, i - 1, 2.0 * a[i - 1] - a[0]);
        for (std::size_t j = i + 1; j <= n + 1; ++j) {
            m.set(i - 1, j - 1, a[i - 1] - a[i]);
        }
    }
    m.set(n, n, m(n, n) - 1.0);  // A = Q - e_{N+1} e_{N+1}^T
    return m;
}

GramParts matrix_A_gram(std::size_t n) {
    if (n < 1) throw Error("matrix_A_gram: N must be >= 1");
    Vector a(n);
    double prod = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t i = n + 1 - k;
        const double d = 4.0 * static_cast<double>(i) * static_cast<double>(i);
        prod *= d / (d - 1.0);
        a[k - 1] = prod;
    }

    SymMatrix q(n + 1);
    for (std::size_t i = 1; i <= n + 1; ++i) {
        q.set(i - 1, i - 1, 1.0);
        for (std::size_t j = i + 1; j <= n + 1; ++j) {
            q.set(i - 1, j - 1, 1.0 - a[std::min(i, j) - 1]);
        }
    }

    const double c = 1.0 / std::sqrt(2.0 * static_cast<double>(n) + 1.0);
    SymMatrix bordered(n + 2);
    bordered.set(0, 0, 1.0);
    for (std::size_t j = 1; j <= n + 1; ++j) bordered.set(0, j, c);
    for (std::size_t i = 1; i <= n + 1; ++i)
        for (std::size_t j = i; j <= n + 1; ++j) bordered.set(i, j, q(i - 1, j - 1));

    return GramParts{std::move(bordered), std::move(q), std::move(a), c};
}

double rate_polyak(std::size_t n, double bound_b, double radius) {
    check_positive(bound_b, "rate_polyak: B");
    check_positive(radius, "rate_polyak: R");
    std::vector<LogTerm> terms;
    terms.reserve(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        const double d = 4.0 * static_cast<double>(i) * static_cast<double>(i);
        terms.push_back({d / (d - 1.0), static_cast<double>(i)});
    }
    terms.push_back({2.0 * static_cast<double>(n) + 1.0, -0.5});
    return bound_b * radius * std::exp(log_product(terms));
}

double rate_optimal(std::size_t n, double bound_b, double radius) {
    check_positive(bound_b, "rate_optimal: B");
    check_positive(radius, "rate_optimal: R");
    return bound_b * radius / std::sqrt(static_cast<double>(n) + 1.0);
}

double rate_altproj(std::size_t n, double radius) {
    if (n < 1) throw BadIndices("rate_altproj: N must be >= 1");
    check_positive(radius, "rate_altproj: R");
    // ratio form (2N/(2N+1))^N / sqrt(2N+1): the two log terms stay small,
    // unlike (2N)^{2N}/(2N+1)^{2N+1} whose logs cancel at ~N log N
    const double nd = static_cast<double>(n);
    const std::vector<LogTerm> terms{{2.0 * nd / (2.0 * nd + 1.0), nd},
                                     {2.0 * nd + 1.0, -0.5}};
    return radius * std::exp(log_product(terms));
}

double growth_log(std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 1; i <= n; ++i) s += static_cast<double>(i) * log_wallis_ratio(i);
    return s;
}

double growth_ratio_check(std::size_t n) {
    if (n < 10) throw Error("growth_ratio_check: N must be >= 10");
    return std::exp(growth_log(4 * n) - growth_log(n));
}

TightInstance build_polyak_tight_instance(std::size_t n) {
    if (n < 1) throw Error("build_polyak_tight_instance: N must be >= 1");
    const GramParts gram = matrix_A_gram(n);
    const UpperTriangular r = cholesky_upper(gram.q);
    const Vector x1 = solve_upper_transposed(r, Vector(n + 1, gram.c));

    // Columns of R are the subgradients; each supporting piece passes
    // through the origin at value 0, so every offset vanishes.
    std::vector<Piece> pieces;
    pieces.reserve(n + 2);
    for (std::size_t j = 0; j <= n; ++j) pieces.push_back({r.column(j), 0.0});
    pieces.push_back({zeros(n + 1), 0.0});

    // Gram check: [x1 R]^T [x1 R] must reproduce the bordered matrix.
    double gram_err = std::abs(norm_sq(x1) - 1.0);
    for (std::size_t j = 0; j <= n; ++j) {
        gram_err = std::max(gram_err, std::abs(dot(x1, pieces[j].slope) - gram.c));
        for (std::size_t i = 0; i <= j; ++i) {
            gram_err = std::max(gram_err,
                                std::abs(dot(pieces[i].slope, pieces[j].slope) - gram.q(i, j)));
        }
    }
    if (gram_err > 1e-10) {
        throw Error("build_polyak_tight_instance: Gram factor residual " +
                    std::to_string(gram_err));
    }

    TightInstance inst{PiecewiseAffine(n + 1, std::move(pieces)), x1, zeros(n + 1), 0.0,
                       rate_polyak(n, 1.0, 1.0)};
    if (std::abs(dist(inst.x1, inst.x_star) - 1.0) > 1e-10) {
        throw Error("build_polyak_tight_instance: ||x1 - x*|| != 1");
    }
    if (std::abs(pa_eval(inst.function, inst.x_star).value - inst.f_star) > 1e-10) {
        throw Error("build_polyak_tight_instance: f(x*) != f*");
    }
    return inst;
}

AltprojTightInstance build_altproj_tight_instance(std::size_t n) {
    if (n < 1) throw Error("build_altproj_tight_instance: N must be >= 1");
    const double root = std::sqrt(2.0 * static_cast<double>(n));
    return AltprojTightInstance{
        ProjectableSet::hyperplane({-1.0 / root, 1.0}, 0.0),  // x2 = x1/sqrt(2N)
        ProjectableSet::hyperplane({0.0, 1.0}, 0.0),          // x2 = 0
        {1.0, 0.0},
        rate_altproj(n, 1.0)};
}

FeasibilityInstance build_feasibility_resisting_instance(std::size_t n, double radius) {
    if (n < 1) throw Error("build_feasibility_resisting_instance: N must be >= 1");
    check_positive(radius, "build_feasibility_resisting_instance: R");
    const std::size_t dim = n + 1;
    const double level = radius / std::sqrt(static_cast<double>(dim));

    FeasibilityInstance inst;
    inst.sets.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        inst.sets.push_back(ProjectableSet::hyperplane(unit(dim, i), level));
    }
    inst.x1 = zeros(dim);
    inst.known_solution = Vector(dim, level);
    inst.radius_bound = radius;
    inst.validate();
    return inst;
}

Certificate certificate_lemma1(const SubgradientOracle& oracle, const RunTrace& trace,
                               const Vector& v, double h_last, const Vector& x_star,
                               double f_star) {
    const std::size_t n = trace.steps.size();
    if (n < 1) throw Error("certificate_lemma1: empty trace");
    if (v.size() != n + 2) {
        throw LengthMismatch("certificate_lemma1: need N+2 multipliers, got " +
                             std::to_string(v.size()));
    }
    check_finite(v, "certificate_lemma1 multipliers");
    if (!(v[0] > 0.0)) throw BadMultipliers("certificate_lemma1: v_0 must be positive");
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] < v[i - 1]) {
            throw BadMultipliers("certificate_lemma1: multipliers not nondecreasing");
        }
    }
    if (!(h_last > 0.0)) throw BadMultipliers("certificate_lemma1: h_last must be positive");
    check_finite(x_star, "certificate_lemma1 x_star");
    check_same_dim(x_star.size(), trace.x_final.size(), "certificate_lemma1 x_star");

    // Per-iteration data for k = 1..N+1; the final slot comes from the oracle.
    Vector h(n + 1), f(n + 1), g_sq(n + 1);
    for (std::size_t k = 0; k < n; ++k) {
        h[k] = trace.steps[k].h;
        f[k] = trace.steps[k].f;
        g_sq[k] = norm_sq(trace.steps[k].g);
    }
    const auto last = oracle(trace.x_final);
    h[n] = h_last;
    f[n] = last.value;
    g_sq[n] = norm_sq(last.subgradient);

    // suffix[k] = sum_{i=k}^{N+1} h_i v_i, with 1-based k.
    Vector suffix(n + 3, 0.0);
    for (std::size_t k = n + 1; k >= 1; --k) {
        suffix[k] = suffix[k + 1] + h[k - 1] * v[k];
    }

    double lhs = 0.0;
    for (std::size_t k = 1; k <= n + 1; ++k) {
        const double coeff = h[k - 1] * v[k] * v[k - 1] - (v[k] - v[k - 1]) * suffix[k + 1];
        lhs += coeff * f[k - 1];
    }
    lhs -= v[0] * suffix[1] * f_star;

    double rhs = 0.5 * v[0] * v[0] * norm_sq(sub(trace.steps[0].x, x_star));
    for (std::size_t k = 1; k <= n + 1; ++k) {
        rhs += 0.5 * h[k - 1] * h[k - 1] * v[k] * v[k] * g_sq[k - 1];
    }

    return Certificate{v, h_last, rhs - lhs};
}

CertificateMultipliers polyak_certificate_multipliers(std::size_t n, double bound_b,
                                              double radius) {
    if (n < 1) throw Error("polyak_certificate_multipliers: N must be >= 1");
    check_positive(bound_b, "polyak_certificate_multipliers: B");
    check_positive(radius, "polyak_certificate_multipliers: R");

    const double log_v0 = 0.5 * std::log(bound_b) -
                          0.25 * std::log(radius * radius *
                                          (2.0 * static_cast<double>(n) + 1.0)) +
                          0.5 * growth_log(n);
    const double v0 = std::exp(log_v0);

    const SequencePack s = seq_a_stepweights(n);
    CertificateMultipliers out;
    out.v.assign(n + 2, v0);
    for (std::size_t k = 1; k <= n; ++k) out.v[k] = v0 * s.a[k];
    out.v[n + 1] = out.v[n];
    out.h_last = 1.0 / (out.v[n] * out.v[n]);
    return out;
}

}  // namespace subgrad

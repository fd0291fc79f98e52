#include "subgrad/solvers.hpp"

#include <cmath>
#include <string>

namespace subgrad {

namespace {

constexpr double kZeroGradSq = 1e-24;

double optimality_gap_tol(double f_star) { return 1e-15 * (1.0 + std::abs(f_star)); }

void validate_schedule(const StepSchedule& s) {
    if (const auto* f = std::get_if<Fixed>(&s)) {
        if (!(f->h > 0.0)) throw Error("Fixed schedule: h must be positive");
    } else if (const auto* t = std::get_if<PolyakT>(&s)) {
        if (!(t->t > 0.0 && t->t < 2.0)) throw Error("PolyakT: t must lie in (0,2)");
    } else if (const auto* p = std::get_if<PreSizedOptimal>(&s)) {
        if (!(p->radius > 0.0)) throw Error("PreSizedOptimal: R must be positive");
    }
}

}  // namespace

bool schedule_needs_f_star(const StepSchedule& s) {
    return std::holds_alternative<PolyakT>(s) || std::holds_alternative<Polyak>(s) ||
           std::holds_alternative<AdaptivePolyak>(s);
}

bool schedule_needs_g_norm(const StepSchedule& s) {
    return schedule_needs_f_star(s) || std::holds_alternative<PreSizedOptimal>(s);
}

double step_size(const StepSchedule& s, std::size_t k, std::size_t total_n, double f_k,
                 double f_star, double g_norm_sq) {
    if (k < 1 || k > total_n) throw Error("step_size: iteration index out of range");
    if (schedule_needs_g_norm(s) && g_norm_sq <= kZeroGradSq) {
        // A zero subgradient at a non-minimizer contradicts convexity with a
        // known optimal value.
        throw ZeroSubgradient("step_size: zero subgradient with f(x) > f*");
    }

    return std::visit(
        [&](const auto& sched) -> double {
            using T = std::decay_t<decltype(sched)>;
            if constexpr (std::is_same_v<T, Fixed>) {
                return sched.h;
            } else if constexpr (std::is_same_v<T, FixedList>) {
                if (sched.h.size() < total_n) {
                    throw LengthMismatch("FixedList: fewer steps than iterations");
                }
                return sched.h[k - 1];
            } else if constexpr (std::is_same_v<T, PolyakT>) {
                return sched.t * (f_k - f_star) / g_norm_sq;
            } else if constexpr (std::is_same_v<T, Polyak>) {
                return (f_k - f_star) / g_norm_sq;
            } else if constexpr (std::is_same_v<T, AdaptivePolyak>) {
                const double n1 = static_cast<double>(total_n) + 1.0;
                return (n1 - static_cast<double>(k)) * (f_k - f_star) / (n1 * g_norm_sq);
            } else {
                const double n1 = static_cast<double>(total_n) + 1.0;
                return sched.radius * (n1 - static_cast<double>(k)) /
                       (std::sqrt(g_norm_sq) * std::sqrt(n1 * n1 * n1));
            }
        },
        s);
}

RunTrace subgradient_method(const SubgradientOracle& oracle, const ProjectableSet& X,
                            const Vector& x1, std::size_t n_iters,
                            const StepSchedule& schedule) {
    if (n_iters < 1) throw Error("subgradient_method: N must be >= 1");
    validate_schedule(schedule);
    check_finite(x1, "subgradient_method x1");
    if (distance(X, x1) > 1e-10) {
        throw InfeasibleStart("subgradient_method: x1 is not in X");
    }
    if (schedule_needs_f_star(schedule) && !oracle.f_star()) {
        throw MissingOptimalValue("subgradient_method: schedule needs f_star");
    }

    RunTrace trace;
    trace.steps.reserve(n_iters);
    Vector x = x1;
    bool frozen = false;
    for (std::size_t k = 1; k <= n_iters; ++k) {
        const auto eval = oracle(x);
        double h = 0.0;
        if (!frozen && oracle.f_star() &&
            eval.value - *oracle.f_star() <= optimality_gap_tol(*oracle.f_star())) {
            frozen = true;  // minimizer reached; remaining iterates stay put
        }
        if (!frozen) {
            h = step_size(schedule, k, n_iters, eval.value,
                          oracle.f_star().value_or(0.0), norm_sq(eval.subgradient));
        }
        trace.steps.push_back({k, x, eval.value, eval.subgradient, h, {}});
        if (!frozen) {
            x = project(X, add_scaled(x, -h, eval.subgradient));
        }
    }
    trace.x_final = x;
    trace.f_final = oracle(x).value;
    return trace;
}

RunTrace momentum_polyak_method(const SubgradientOracle& oracle, const ProjectableSet& X,
                                const Vector& x1, std::size_t n_iters) {
    if (n_iters < 1) throw Error("momentum_polyak_method: N must be >= 1");
    check_finite(x1, "momentum_polyak_method x1");
    if (!oracle.f_star()) {
        throw MissingOptimalValue("momentum_polyak_method: oracle lacks f_star");
    }
    if (!oracle.subgradient_bound() || !(*oracle.subgradient_bound() > 0.0)) {
        throw MissingSubgradientBound("momentum_polyak_method: oracle lacks B > 0");
    }
    if (distance(X, x1) > 1e-10) {
        throw InfeasibleStart("momentum_polyak_method: x1 is not in X");
    }

    const double f_star = *oracle.f_star();
    const double b_sq = *oracle.subgradient_bound() * *oracle.subgradient_bound();

    RunTrace trace;
    trace.steps.reserve(n_iters);
    Vector x_prev = x1;  // x^0 = x^1
    Vector x = x1;
    for (std::size_t k = 1; k <= n_iters; ++k) {
        const auto eval = oracle(x);
        const double kd = static_cast<double>(k);
        const double h = (eval.value - f_star) / ((kd + 1.0) * b_sq);
        Vector momentum(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            momentum[i] = (kd - 1.0) / (kd + 1.0) * (x[i] - x_prev[i]);
        }
        Vector next(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            next[i] = x[i] - h * eval.subgradient[i] + momentum[i];
        }
        next = project(X, next);
        trace.steps.push_back({k, x, eval.value, eval.subgradient, h, momentum});
        x_prev = x;
        x = std::move(next);
    }
    trace.x_final = x;
    trace.f_final = oracle(x).value;
    return trace;
}

}  // namespace subgrad

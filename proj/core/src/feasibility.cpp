#include "subgrad/feasibility.hpp"

#include <cmath>
#include <string>

namespace subgrad {

void FeasibilityInstance::validate() const {
    if (sets.empty()) throw EmptySetList("FeasibilityInstance: no sets");
    check_finite(x1, "FeasibilityInstance x1");
    if (known_solution) {
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (distance(sets[i], *known_solution) > 1e-10) {
                throw Error("FeasibilityInstance: known_solution violates set " +
                            std::to_string(i));
            }
        }
    }
}

FeasTrace greedy_method(const FeasibilityInstance& inst, std::size_t n_iters,
                        GreedyVariant variant) {
    if (n_iters < 1) throw Error("greedy_method: N must be >= 1");
    inst.validate();

    FeasTrace trace;
    trace.steps.reserve(n_iters);
    Vector x_prev = inst.x1;  // x^0 = x^1, used by Momentum only
    Vector x = inst.x1;
    const double n1 = static_cast<double>(n_iters) + 1.0;

    for (std::size_t k = 1; k <= n_iters; ++k) {
        const auto [idx, d] = max_distance_set(inst.sets, x);
        trace.steps.push_back({k, x, idx, d, {}});

        const Vector proj = project(inst.sets[idx], x);
        const double kd = static_cast<double>(k);
        Vector next(x.size());
        switch (variant) {
            case GreedyVariant::Plain:
                next = proj;
                break;
            case GreedyVariant::Adaptive: {
                const double damping = (n1 - kd) / n1;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    next[i] = x[i] - damping * (x[i] - proj[i]);
                }
                break;
            }
            case GreedyVariant::Momentum: {
                const double step = 1.0 / (kd + 1.0);
                const double mom = (kd - 1.0) / (kd + 1.0);
                for (std::size_t i = 0; i < x.size(); ++i) {
                    next[i] = x[i] - step * (x[i] - proj[i]) + mom * (x[i] - x_prev[i]);
                }
                break;
            }
        }
        x_prev = x;
        x = std::move(next);
    }
    trace.x_final = x;
    trace.final_distance = max_distance_set(inst.sets, x).second;
    return trace;
}

FeasTrace alternating_projection(const ProjectableSet& c1, const ProjectableSet& c2,
                                 const Vector& x1, std::size_t n_iters) {
    if (n_iters < 1) throw Error("alternating_projection: N must be >= 1");
    check_finite(x1, "alternating_projection x1");
    if (distance(c2, x1) > 1e-10) {
        throw InfeasibleStart("alternating_projection: x1 is not in C2");
    }

    FeasTrace trace;
    trace.steps.reserve(n_iters);
    Vector x = x1;
    for (std::size_t k = 1; k <= n_iters; ++k) {
        const double d1 = distance(c1, x);
        Vector y = project(c1, x);
        Vector next = project(c2, y);
        trace.steps.push_back({k, x, 0, d1, std::move(y)});
        x = std::move(next);
    }
    trace.x_final = x;
    trace.final_distance = distance(c1, x);
    return trace;
}

}  // namespace subgrad

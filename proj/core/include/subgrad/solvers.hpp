#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "subgrad/oracles.hpp"
#include "subgrad/vec.hpp"

namespace subgrad {

// Step-size schedules for the projected subgradient method.

struct Fixed {
    double h = 0.0;  // > 0
};

/// Explicit per-iteration steps, mainly for replaying recorded traces.
struct FixedList {
    std::vector<double> h;
};

/// h_k = t * (f(x^k) - f*) / ||g^k||^2 with t in (0,2).
struct PolyakT {
    double t = 1.0;
};

/// PolyakT with t = 1.
struct Polyak {};

/// h_k = (N+1-k) * (f(x^k) - f*) / ((N+1) * ||g^k||^2).
struct AdaptivePolyak {};

/// h_k = R * (N+1-k) / (||g^k|| * sqrt((N+1)^3)). Needs the distance bound R.
struct PreSizedOptimal {
    double radius = 0.0;  // R > 0
};

using StepSchedule =
    std::variant<Fixed, FixedList, PolyakT, Polyak, AdaptivePolyak, PreSizedOptimal>;

bool schedule_needs_f_star(const StepSchedule& s);
bool schedule_needs_g_norm(const StepSchedule& s);

/// Step size for iteration k (1-based) of total_n iterations.
/// f_star is ignored by schedules that do not need it.
/// Throws ZeroSubgradient when g_norm_sq <= 1e-24 but f_k > f_star for a
/// schedule that divides by the subgradient norm.
double step_size(const StepSchedule& s, std::size_t k, std::size_t total_n, double f_k,
                 double f_star, double g_norm_sq);

struct StepRecord {
    std::size_t k = 0;  // 1-based iteration index
    Vector x;           // iterate x^k
    double f = 0.0;     // f(x^k)
    Vector g;           // chosen subgradient at x^k
    double h = 0.0;     // step size used
    Vector momentum;    // displacement ((k-1)/(k+1))(x^k - x^{k-1}); empty otherwise
};

struct RunTrace {
    std::vector<StepRecord> steps;  // one per iteration, k = 1..N
    Vector x_final;                 // x^{N+1}
    double f_final = 0.0;           // f(x^{N+1})
};

/// Projected subgradient method: N steps of x^{k+1} = Pi_X(x^k - h_k g^k).
/// Once f(x^k) - f* <= 1e-15 * (1 + |f*|) the remaining iterates stay put.
RunTrace subgradient_method(const SubgradientOracle& oracle, const ProjectableSet& X,
                            const Vector& x1, std::size_t n_iters,
                            const StepSchedule& schedule);

/// Polyak step over a growing horizon plus a momentum term:
///   x^{k+1} = Pi_X(x^k - (f(x^k)-f*)/((k+1) B^2) g^k + (k-1)/(k+1) (x^k - x^{k-1}))
/// with x^0 = x^1. Requires the oracle to declare both f* and B.
RunTrace momentum_polyak_method(const SubgradientOracle& oracle, const ProjectableSet& X,
                                const Vector& x1, std::size_t n_iters);

}  // namespace subgrad

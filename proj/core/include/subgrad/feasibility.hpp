#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "subgrad/oracles.hpp"
#include "subgrad/vec.hpp"

namespace subgrad {

/// Find a point in the intersection of the sets, starting from x1.
struct FeasibilityInstance {
    std::vector<ProjectableSet> sets;
    Vector x1;
    std::optional<Vector> known_solution;  // a point of the intersection
    std::optional<double> radius_bound;    // R >= ||x1 - solution||

    /// Throws unless the known solution (when present) lies in every set.
    void validate() const;
};

enum class GreedyVariant { Plain, Adaptive, Momentum };

struct FeasRecord {
    std::size_t k = 0;         // 1-based iteration index
    Vector x;                  // iterate x^k
    std::size_t set_index = 0; // 0-based argmax index i_k
    double max_distance = 0.0; // max_i d_{C_i}(x^k)
    Vector mid;                // Pi_{C_1}(x^k) for alternating projection; empty otherwise
};

struct FeasTrace {
    std::vector<FeasRecord> steps;  // one per iteration, k = 1..N
    Vector x_final;                 // x^{N+1}
    double final_distance = 0.0;    // max_i d_{C_i}(x^{N+1}); d_{C_1} for altproj
};

/// Greedy projection method: pick the farthest set, move toward its
/// projection. Plain uses damping 1, Adaptive uses (N+1-k)/(N+1), Momentum
/// uses 1/(k+1) plus the displacement term (k-1)/(k+1) (x^k - x^{k-1}).
FeasTrace greedy_method(const FeasibilityInstance& inst, std::size_t n_iters,
                        GreedyVariant variant);

/// Alternating projection x^{k+1} = Pi_{C2}(Pi_{C1}(x^k)); x1 must lie in C2.
FeasTrace alternating_projection(const ProjectableSet& c1, const ProjectableSet& c2,
                                 const Vector& x1, std::size_t n_iters);

}  // namespace subgrad

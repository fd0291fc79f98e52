#include <doctest.h>

#include <cmath>
#include <random>

#include "subgrad/feasibility.hpp"
#include "subgrad/solvers.hpp"
#include "subgrad/theory.hpp"
#include "support/generators.hpp"

using namespace subgrad;

TEST_CASE("greedy stays put at a feasible start") {
    FeasibilityInstance inst;
    inst.sets = {ProjectableSet::hyperplane({1.0, 0.0}, 1.0),
                 ProjectableSet::halfspace({0.0, 1.0}, 2.0)};
    inst.x1 = {1.0, 0.0};
    for (auto variant :
         {GreedyVariant::Plain, GreedyVariant::Adaptive, GreedyVariant::Momentum}) {
        const auto trace = greedy_method(inst, 3, variant);
        CHECK(trace.x_final == inst.x1);
        CHECK(trace.final_distance == 0.0);
        for (const auto& rec : trace.steps) CHECK(rec.max_distance == 0.0);
    }
}

TEST_CASE("adaptive greedy on the N=1 resisting instance") {
    const auto inst = build_feasibility_resisting_instance(1, 1.0);
    const auto trace = greedy_method(inst, 1, GreedyVariant::Adaptive);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].set_index == 0);  // tie broken by smallest index
    CHECK(trace.x_final[0] == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-14));
    CHECK(trace.x_final[1] == 0.0);
    CHECK(trace.final_distance == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(trace.final_distance ==
          doctest::Approx(rate_optimal(1, 1.0, 1.0)).epsilon(1e-13));
}

TEST_CASE("plain greedy solves two axis planes in two steps") {
    FeasibilityInstance inst;
    inst.sets = {ProjectableSet::hyperplane({1.0, 0.0}, 0.0),
                 ProjectableSet::hyperplane({0.0, 1.0}, 0.0)};
    inst.x1 = {1.0, 1.0};
    const auto trace = greedy_method(inst, 2, GreedyVariant::Plain);
    CHECK(trace.steps[0].set_index == 0);
    CHECK(trace.steps[1].x == Vector{0.0, 1.0});
    CHECK(trace.x_final == Vector{0.0, 0.0});
    CHECK(trace.final_distance == 0.0);
}

TEST_CASE("greedy rejects an empty set list") {
    FeasibilityInstance inst;
    inst.x1 = {0.0};
    CHECK_THROWS_AS(greedy_method(inst, 1, GreedyVariant::Plain), EmptySetList);
}

TEST_CASE("alternating projection with identical sets") {
    const auto c = ProjectableSet::hyperplane({0.0, 1.0}, 0.0);
    const auto trace = alternating_projection(c, c, {3.0, 0.0}, 1);
    CHECK(trace.x_final == Vector{3.0, 0.0});
    CHECK(trace.final_distance == 0.0);
}

TEST_CASE("alternating projection on the tight two-line instances") {
    const auto one = build_altproj_tight_instance(1);
    const auto t1 = alternating_projection(one.c1, one.c2, one.x1, 1);
    CHECK(t1.x_final[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(t1.x_final[1] == 0.0);
    CHECK(t1.final_distance ==
          doctest::Approx(2.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-13));

    const auto two = build_altproj_tight_instance(2);
    const auto t2 = alternating_projection(two.c1, two.c2, two.x1, 2);
    CHECK(t2.x_final[0] == doctest::Approx(16.0 / 25.0).epsilon(1e-14));
    CHECK(t2.final_distance ==
          doctest::Approx((16.0 / 25.0) / std::sqrt(5.0)).epsilon(1e-13));
    CHECK(t2.final_distance == doctest::Approx(two.predicted).epsilon(1e-12));
}

TEST_CASE("alternating projection needs a feasible start") {
    const auto inst = build_altproj_tight_instance(1);
    CHECK_THROWS_AS(alternating_projection(inst.c1, inst.c2, {1.0, 1.0}, 1),
                    InfeasibleStart);
}

TEST_CASE("adaptive greedy equals the adaptive polyak method on max distance") {
    auto rng = testgen::make_rng(30);
    for (int rep = 0; rep < 30; ++rep) {
        const auto inst = testgen::random_feasibility_instance(rng);
        const std::size_t n = 1 + rep % 12;

        // oracle for F(x) = max_i d_{C_i}(x) with the same argmax tie-break
        auto fn = [sets = inst.sets](const Vector& x) {
            const auto [idx, d] = max_distance_set(sets, x);
            if (d <= 0.0) {
                return SubgradientOracle::Evaluation{0.0, zeros(x.size())};
            }
            const Vector p = project(sets[idx], x);
            Vector g(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) g[i] = (x[i] - p[i]) / d;
            return SubgradientOracle::Evaluation{d, g};
        };
        const SubgradientOracle oracle(fn, 0.0, 1.0);

        const auto greedy = greedy_method(inst, n, GreedyVariant::Adaptive);
        const auto solver = subgradient_method(oracle, ProjectableSet::whole_space(),
                                               inst.x1, n, AdaptivePolyak{});
        REQUIRE(greedy.steps.size() == solver.steps.size());
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(dist(greedy.steps[k].x, solver.steps[k].x) <= 1e-12);
        }
        CHECK(dist(greedy.x_final, solver.x_final) <= 1e-12);
    }
}

TEST_CASE("proposition bound for adaptive and momentum greedy") {
    auto rng = testgen::make_rng(31);
    for (int rep = 0; rep < 40; ++rep) {
        const auto inst = testgen::random_feasibility_instance(rng);
        const std::size_t n = 1 + rep % 15;
        const double bound = *inst.radius_bound / std::sqrt(static_cast<double>(n) + 1.0);
        for (auto variant : {GreedyVariant::Adaptive, GreedyVariant::Momentum}) {
            const auto trace = greedy_method(inst, n, variant);
            CHECK(trace.final_distance <= bound + 1e-10);
        }
    }
}

TEST_CASE("alternating projection bound on random pairs") {
    auto rng = testgen::make_rng(32);
    for (int rep = 0; rep < 40; ++rep) {
        auto inst = testgen::random_feasibility_instance(rng);
        if (inst.sets.size() < 2) continue;
        const auto& c1 = inst.sets[0];
        const auto& c2 = inst.sets[1];
        const Vector x1 = project(c2, inst.x1);
        const double radius = dist(x1, *inst.known_solution);
        if (radius == 0.0) continue;
        const std::size_t n = 1 + rep % 20;
        const auto trace = alternating_projection(c1, c2, x1, n);
        CHECK(trace.final_distance <= rate_altproj(n, radius) + 1e-10);

        // Fejer monotonicity toward the known common point
        double prev = dist(x1, *inst.known_solution);
        for (std::size_t k = 1; k < trace.steps.size(); ++k) {
            const double cur = dist(trace.steps[k].x, *inst.known_solution);
            CHECK(cur <= prev + 1e-10);
            prev = cur;
        }
    }
}

TEST_CASE("recorded indices are argmax indices") {
    auto rng = testgen::make_rng(33);
    for (int rep = 0; rep < 20; ++rep) {
        const auto inst = testgen::random_feasibility_instance(rng);
        for (auto variant :
             {GreedyVariant::Plain, GreedyVariant::Adaptive, GreedyVariant::Momentum}) {
            const auto trace = greedy_method(inst, 1 + rep % 8, variant);
            for (const auto& rec : trace.steps) {
                const auto [idx, d] = max_distance_set(inst.sets, rec.x);
                CHECK(rec.set_index == idx);
                CHECK(rec.max_distance == d);
            }
        }
    }
}

TEST_CASE("support growth witness on the resisting instance") {
    const double radius = 2.0;
    for (std::size_t n : {1, 3, 7}) {
        const auto inst = build_feasibility_resisting_instance(n, radius);
        const double floor = radius / std::sqrt(static_cast<double>(n) + 1.0);
        for (auto variant :
             {GreedyVariant::Plain, GreedyVariant::Adaptive, GreedyVariant::Momentum}) {
            const auto trace = greedy_method(inst, n, variant);
            for (const auto& rec : trace.steps) {
                std::size_t nonzero = 0;
                for (double x : rec.x) nonzero += std::abs(x) > 1e-12 ? 1 : 0;
                CHECK(nonzero <= rec.k - 1);
                CHECK(rec.max_distance >= floor - 1e-10);
            }
        }
        const auto adaptive = greedy_method(inst, n, GreedyVariant::Adaptive);
        CHECK(adaptive.final_distance == doctest::Approx(floor).epsilon(1e-12));
    }
}

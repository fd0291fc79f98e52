#include <doctest.h>

#include <cmath>
#include <random>

#include "subgrad/oracles.hpp"
#include "subgrad/theory.hpp"
#include "support/generators.hpp"

using namespace subgrad;

namespace {

PiecewiseAffine abs_function() {
    return PiecewiseAffine(1, {{{1.0}, 0.0}, {{-1.0}, 0.0}});
}

}  // namespace

TEST_CASE("pa_eval ties and active sets") {
    const auto f = abs_function();
    const auto at_zero = pa_eval(f, {0.0});
    CHECK(at_zero.value == 0.0);
    CHECK(at_zero.active == std::vector<std::size_t>{0, 1});

    const auto left = pa_eval(f, {-2.0});
    CHECK(left.value == 2.0);
    CHECK(left.active == std::vector<std::size_t>{1});
}

TEST_CASE("pa_eval on the N=1 tight instance") {
    const auto inst = build_polyak_tight_instance(1);
    const double c = 1.0 / std::sqrt(3.0);

    const auto at_x1 = pa_eval(inst.function, inst.x1);
    CHECK(at_x1.value == doctest::Approx(c).epsilon(1e-13));
    CHECK(at_x1.active == std::vector<std::size_t>{0, 1});

    const auto at_x2 = pa_eval(inst.function, {0.0, 2.0 / std::sqrt(6.0)});
    CHECK(at_x2.value == doctest::Approx(4.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-13));
    CHECK(at_x2.active == std::vector<std::size_t>{1});
}

TEST_CASE("pa_eval dimension mismatch") {
    CHECK_THROWS_AS(pa_eval(abs_function(), {1.0, 2.0}), DimensionMismatch);
}

TEST_CASE("pa_subgradient picks the lowest active index") {
    const auto f = abs_function();
    CHECK(pa_subgradient(f, {0.0}) == Vector{1.0});
    CHECK(pa_subgradient(f, {-2.0}) == Vector{-1.0});

    const auto inst = build_polyak_tight_instance(1);
    const Vector g1 = pa_subgradient(inst.function, inst.x1);
    CHECK(g1[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(g1[1]) <= 1e-13);
}

TEST_CASE("subgradient inequality holds for random instances") {
    auto rng = testgen::make_rng(10);
    for (int rep = 0; rep < 100; ++rep) {
        const auto inst = testgen::random_pa_instance(rng);
        const std::size_t dim = inst.function.dimension();
        const Vector x = testgen::random_vector(rng, dim, 5.0);
        const Vector y = testgen::random_vector(rng, dim, 5.0);
        const Vector g = pa_subgradient(inst.function, x);
        const double fx = pa_eval(inst.function, x).value;
        const double fy = pa_eval(inst.function, y).value;
        CHECK(fy >= fx + dot(g, sub(y, x)) - 1e-9);
    }
}

TEST_CASE("oracle enforces a declared subgradient bound") {
    auto oracle = make_pa_oracle(abs_function(), 0.0, 1.0);
    const auto eval = oracle({2.0});
    CHECK(eval.value == 2.0);
    CHECK(eval.subgradient == Vector{1.0});

    auto tight = make_pa_oracle(abs_function(), 0.0, 0.5);
    CHECK_THROWS_AS(tight({2.0}), Error);
}

TEST_CASE("projection closed forms") {
    const auto h = ProjectableSet::hyperplane({1.0, 0.0}, 0.0);
    CHECK(project(h, {3.0, 4.0}) == Vector{0.0, 4.0});

    // the tight alternating-projection line at N=1
    const auto c1 = ProjectableSet::hyperplane({-1.0 / std::sqrt(2.0), 1.0}, 0.0);
    const Vector p = project(c1, {1.0, 0.0});
    CHECK(p[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-14));

    const auto b = ProjectableSet::ball(zeros(2), 1.0);
    CHECK(project(b, {0.0, 2.0}) == Vector{0.0, 1.0});
    CHECK(project(b, {0.1, -0.2}) == Vector{0.1, -0.2});

    const auto hs = ProjectableSet::halfspace({1.0, 0.0}, 1.0);
    CHECK(project(hs, {0.5, 3.0}) == Vector{0.5, 3.0});
    CHECK(project(hs, {2.0, 3.0}) == Vector{1.0, 3.0});
}

TEST_CASE("distance closed forms") {
    const auto h = ProjectableSet::hyperplane({0.0, 1.0}, 0.0);
    CHECK(distance(h, {5.0, 0.0}) == 0.0);

    const auto c1 = ProjectableSet::hyperplane({-1.0 / std::sqrt(2.0), 1.0}, 0.0);
    CHECK(distance(c1, {2.0 / 3.0, 0.0}) ==
          doctest::Approx((2.0 / 3.0) / std::sqrt(3.0)).epsilon(1e-13));

    const auto resisting = ProjectableSet::hyperplane({1.0, 0.0}, 1.0 / std::sqrt(2.0));
    CHECK(distance(resisting, {0.0, 0.0}) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("max_distance_set breaks ties by index") {
    const auto inst = build_feasibility_resisting_instance(1, 1.0);
    const auto [idx, d] = max_distance_set(inst.sets, inst.x1);
    CHECK(idx == 0);
    CHECK(d == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    std::vector<ProjectableSet> sets{ProjectableSet::hyperplane({1.0, 0.0}, 1.0),
                                     ProjectableSet::hyperplane({0.0, 1.0}, 5.0)};
    const auto [i2, d2] = max_distance_set(sets, {0.0, 0.0});
    CHECK(i2 == 1);
    CHECK(d2 == doctest::Approx(5.0).epsilon(1e-14));

    std::vector<ProjectableSet> single{ProjectableSet::hyperplane({1.0}, 2.0)};
    const auto [i3, d3] = max_distance_set(single, {0.0});
    CHECK(i3 == 0);
    CHECK(d3 == doctest::Approx(2.0).epsilon(1e-14));

    CHECK_THROWS_AS(max_distance_set(std::span<const ProjectableSet>{}, {0.0}),
                    EmptySetList);
}

TEST_CASE("projections are nonexpansive and idempotent") {
    auto rng = testgen::make_rng(11);
    std::vector<ProjectableSet> sets{
        ProjectableSet::whole_space(),
        ProjectableSet::hyperplane({1.0, -2.0, 0.5}, 0.7),
        ProjectableSet::halfspace({-1.0, 1.0, 2.0}, -0.3),
        ProjectableSet::ball({0.5, -0.5, 1.0}, 1.5)};
    for (const auto& s : sets) {
        for (int rep = 0; rep < 50; ++rep) {
            const Vector x = testgen::random_vector(rng, 3, 5.0);
            const Vector y = testgen::random_vector(rng, 3, 5.0);
            CHECK(dist(project(s, x), project(s, y)) <= dist(x, y) + 1e-12);
            CHECK(dist(project(s, project(s, x)), project(s, x)) <= 1e-12);
            CHECK(distance(s, project(s, x)) <= 1e-12);
        }
    }
}

TEST_CASE("tight instance pieces have unit slopes plus a zero piece") {
    for (std::size_t n : {1, 2, 5, 12}) {
        const auto inst = build_polyak_tight_instance(n);
        const auto& pieces = inst.function.pieces();
        REQUIRE(pieces.size() == n + 2);
        for (std::size_t k = 0; k <= n; ++k) {
            CHECK(norm(pieces[k].slope) == doctest::Approx(1.0).epsilon(1e-10));
        }
        CHECK(norm(pieces[n + 1].slope) == 0.0);
        for (const auto& piece : pieces) CHECK(piece.offset == 0.0);
    }
}

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "subgrad/vec.hpp"

namespace subgrad {

/// One affine piece: x -> offset + <slope, x>.
struct Piece {
    Vector slope;
    double offset = 0.0;
};

/// Max of finitely many affine pieces. Convex by construction.
class PiecewiseAffine {
public:
    PiecewiseAffine(std::size_t dimension, std::vector<Piece> pieces);

    std::size_t dimension() const { return dimension_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

private:
    std::size_t dimension_;
    std::vector<Piece> pieces_;
};

struct PaEvaluation {
    double value = 0.0;
    std::vector<std::size_t> active;  // 0-based piece indices, ascending
};

/// Value and all active pieces at x. A piece is active when its value is
/// within 1e-12 * (1 + |value|) of the max.
PaEvaluation pa_eval(const PiecewiseAffine& f, const Vector& x);

/// Slope of the active piece with the smallest index.
Vector pa_subgradient(const PiecewiseAffine& f, const Vector& x);

/// First-order oracle: returns f(x) and one subgradient, with optional
/// known optimal value and subgradient norm bound.
class SubgradientOracle {
public:
    struct Evaluation {
        double value = 0.0;
        Vector subgradient;
    };
    using Fn = std::function<Evaluation(const Vector&)>;

    SubgradientOracle(Fn evaluator, std::optional<double> f_star,
                      std::optional<double> subgradient_bound);

    /// Evaluates the underlying function; enforces ||g|| <= B + 1e-12 when
    /// a bound was declared.
    Evaluation operator()(const Vector& x) const;

    std::optional<double> f_star() const { return f_star_; }
    std::optional<double> subgradient_bound() const { return subgradient_bound_; }

private:
    Fn evaluator_;
    std::optional<double> f_star_;
    std::optional<double> subgradient_bound_;
};

/// Oracle for a PiecewiseAffine with the lowest-active-index subgradient rule.
SubgradientOracle make_pa_oracle(PiecewiseAffine f, std::optional<double> f_star,
                                 std::optional<double> subgradient_bound);

// Convex sets with closed-form Euclidean projections.

struct WholeSpace {};

/// {x : <normal, x> = offset}
struct Hyperplane {
    Vector normal;
    double offset = 0.0;
};

/// {x : <normal, x> <= offset}
struct Halfspace {
    Vector normal;
    double offset = 0.0;
};

/// {x : ||x - center|| <= radius}
struct Ball {
    Vector center;
    double radius = 0.0;
};

class ProjectableSet {
public:
    using Kind = std::variant<WholeSpace, Hyperplane, Halfspace, Ball>;

    static ProjectableSet whole_space();
    static ProjectableSet hyperplane(Vector normal, double offset);
    static ProjectableSet halfspace(Vector normal, double offset);
    static ProjectableSet ball(Vector center, double radius);

    const Kind& kind() const { return kind_; }

    /// 0 for WholeSpace (compatible with any dimension).
    std::size_t dimension() const;

private:
    explicit ProjectableSet(Kind kind) : kind_(std::move(kind)) {}
    Kind kind_;
};

/// Exact Euclidean projection of x onto S.
Vector project(const ProjectableSet& s, const Vector& x);

/// ||x - project(S, x)||; zero for members.
double distance(const ProjectableSet& s, const Vector& x);

/// Index of the set farthest from x (ties broken by smallest index) and
/// that distance.
std::pair<std::size_t, double> max_distance_set(std::span<const ProjectableSet> sets,
                                                const Vector& x);

}  // namespace subgrad

#include "subgrad/oracles.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace subgrad {

PiecewiseAffine::PiecewiseAffine(std::size_t dimension, std::vector<Piece> pieces)
    : dimension_(dimension), pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw Error("PiecewiseAffine: needs at least one piece");
    for (const Piece& p : pieces_) {
        check_same_dim(p.slope.size(), dimension_, "PiecewiseAffine slope");
        check_finite(p.slope, "PiecewiseAffine slope");
        if (!std::isfinite(p.offset)) throw Error("PiecewiseAffine: non-finite offset");
    }
}

PaEvaluation pa_eval(const PiecewiseAffine& f, const Vector& x) {
    check_same_dim(x.size(), f.dimension(), "pa_eval");
    const auto& pieces = f.pieces();

    std::vector<double> values(pieces.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        values[i] = pieces[i].offset + dot(pieces[i].slope, x);
        if (values[i] > best) best = values[i];
    }

    const double tol = 1e-12 * (1.0 + std::abs(best));
    PaEvaluation out;
    out.value = best;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (values[i] >= best - tol) out.active.push_back(i);
    }
    return out;
}

Vector pa_subgradient(const PiecewiseAffine& f, const Vector& x) {
    const PaEvaluation e = pa_eval(f, x);
    return f.pieces()[e.active.front()].slope;
}

SubgradientOracle::SubgradientOracle(Fn evaluator, std::optional<double> f_star,
                                     std::optional<double> subgradient_bound)
    : evaluator_(std::move(evaluator)),
      f_star_(f_star),
      subgradient_bound_(subgradient_bound) {
    if (!evaluator_) throw Error("SubgradientOracle: empty evaluator");
    if (subgradient_bound_ && *subgradient_bound_ < 0.0) {
        throw Error("SubgradientOracle: negative subgradient bound");
    }
}

SubgradientOracle::Evaluation SubgradientOracle::operator()(const Vector& x) const {
    check_finite(x, "SubgradientOracle input");
    Evaluation e = evaluator_(x);
    check_finite(e.subgradient, "SubgradientOracle subgradient");
    if (!std::isfinite(e.value)) throw Error("SubgradientOracle: non-finite value");
    if (subgradient_bound_ && norm(e.subgradient) > *subgradient_bound_ + 1e-12) {
        throw Error("SubgradientOracle: subgradient norm exceeds declared bound");
    }
    return e;
}

SubgradientOracle make_pa_oracle(PiecewiseAffine f, std::optional<double> f_star,
                                 std::optional<double> subgradient_bound) {
    auto fn = [f = std::move(f)](const Vector& x) {
        const PaEvaluation e = pa_eval(f, x);
        return SubgradientOracle::Evaluation{e.value, f.pieces()[e.active.front()].slope};
    };
    return SubgradientOracle(std::move(fn), f_star, subgradient_bound);
}

ProjectableSet ProjectableSet::whole_space() { return ProjectableSet(Kind{WholeSpace{}}); }

ProjectableSet ProjectableSet::hyperplane(Vector normal, double offset) {
    check_finite(normal, "Hyperplane normal");
    if (norm(normal) == 0.0) throw Error("Hyperplane: zero normal");
    if (!std::isfinite(offset)) throw Error("Hyperplane: non-finite offset");
    return ProjectableSet(Kind{Hyperplane{std::move(normal), offset}});
}

ProjectableSet ProjectableSet::halfspace(Vector normal, double offset) {
    check_finite(normal, "Halfspace normal");
    if (norm(normal) == 0.0) throw Error("Halfspace: zero normal");
    if (!std::isfinite(offset)) throw Error("Halfspace: non-finite offset");
    return ProjectableSet(Kind{Halfspace{std::move(normal), offset}});
}

ProjectableSet ProjectableSet::ball(Vector center, double radius) {
    check_finite(center, "Ball center");
    if (!(radius >= 0.0)) throw Error("Ball: negative radius");
    return ProjectableSet(Kind{Ball{std::move(center), radius}});
}

std::size_t ProjectableSet::dimension() const {
    return std::visit(
        [](const auto& k) -> std::size_t {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, WholeSpace>) return 0;
            else if constexpr (std::is_same_v<T, Ball>) return k.center.size();
            else return k.normal.size();
        },
        kind_);
}

namespace {

void check_set_dim(const ProjectableSet& s, const Vector& x) {
    const std::size_t d = s.dimension();
    if (d != 0) check_same_dim(x.size(), d, "ProjectableSet");
}

}  // namespace

Vector project(const ProjectableSet& s, const Vector& x) {
    check_set_dim(s, x);
    return std::visit(
        [&](const auto& k) -> Vector {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, WholeSpace>) {
                return x;
            } else if constexpr (std::is_same_v<T, Hyperplane>) {
                const double c = (dot(k.normal, x) - k.offset) / norm_sq(k.normal);
                return add_scaled(x, -c, k.normal);
            } else if constexpr (std::is_same_v<T, Halfspace>) {
                const double viol = dot(k.normal, x) - k.offset;
                if (viol <= 0.0) return x;
                return add_scaled(x, -viol / norm_sq(k.normal), k.normal);
            } else {
                const double d = dist(x, k.center);
                if (d <= k.radius) return x;
                return add_scaled(k.center, k.radius / d, sub(x, k.center));
            }
        },
        s.kind());
}

double distance(const ProjectableSet& s, const Vector& x) {
    return dist(x, project(s, x));
}

std::pair<std::size_t, double> max_distance_set(std::span<const ProjectableSet> sets,
                                                const Vector& x) {
    if (sets.empty()) throw EmptySetList("max_distance_set: no sets");
    std::size_t best = 0;
    double best_d = distance(sets[0], x);
    for (std::size_t i = 1; i < sets.size(); ++i) {
        const double d = distance(sets[i], x);
        if (d > best_d) {
            best = i;
            best_d = d;
        }
    }
    return {best, best_d};
}

}  // namespace subgrad

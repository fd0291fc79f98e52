#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subgrad/errors.hpp"
#include "subgrad/feasibility.hpp"
#include "subgrad/oracles.hpp"
#include "subgrad/solvers.hpp"
#include "subgrad/vec.hpp"

namespace subgrad::cli {

/// Malformed file content or unusable flag values (exit code 2).
class ParseFailure : public Error {
public:
    using Error::Error;
};

/// On-disk instance: a piecewise-affine objective or a list of convex sets,
/// plus the starting point and whatever problem data is known.
struct InstanceFile {
    std::string kind;  // "piecewise_affine" | "feasibility"
    std::size_t dimension = 0;
    std::vector<Piece> pieces;          // piecewise_affine only
    std::vector<ProjectableSet> sets;   // feasibility only
    Vector x1;
    std::optional<double> f_star;
    std::optional<double> bound_b;
    std::optional<Vector> x_star;
    std::optional<double> radius;
};

/// Doubles are written with 17 significant digits so that parsing returns
/// the identical bit pattern.
std::string format_double(double v);

InstanceFile load_instance(const std::string& path);
void save_instance(const InstanceFile& inst, const std::string& path);

/// JSON-lines trace: one record per iteration, then the final iterate.
void save_run_trace(const RunTrace& trace, const std::string& path);
RunTrace load_run_trace(const std::string& path);

void save_feas_trace(const FeasTrace& trace, const std::string& path);

struct Report {
    double predicted = 0.0;
    double achieved = 0.0;
    double relative_gap = 0.0;
};

void save_report(const Report& report, const std::string& path);
Report load_report(const std::string& path);

/// Multiplier file for certify: a JSON array of N+2 values.
Vector load_multipliers(const std::string& path);
void save_multipliers(const Vector& v, const std::string& path);

}  // namespace subgrad::cli

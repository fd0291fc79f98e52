#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"
#include "subgrad/theory.hpp"

namespace subgrad::cli {

namespace {

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double parse_double(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty()) {
        throw ParseFailure(what + ": cannot parse \"" + text + "\"");
    }
    return v;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string piece =
            text.substr(start, comma == std::string::npos ? std::string::npos
                                                          : comma - start);
        values.push_back(parse_double(piece, what));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

struct SolverSpec {
    enum class Kind { Polyak, PolyakT, Adaptive, Momentum, PreSized, Fixed };
    Kind kind = Kind::Polyak;
    double value = 0.0;  // t, R or h, depending on the kind
};

SolverSpec parse_solver_spec(const std::string& spec) {
    const std::size_t eq = spec.find('=');
    const std::string name = spec.substr(0, eq);
    const bool has_value = eq != std::string::npos;
    const std::string value = has_value ? spec.substr(eq + 1) : "";

    if (name == "polyak" && !has_value) return {SolverSpec::Kind::Polyak, 0.0};
    if (name == "adaptive-polyak" && !has_value) return {SolverSpec::Kind::Adaptive, 0.0};
    if (name == "momentum-polyak" && !has_value) return {SolverSpec::Kind::Momentum, 0.0};
    if (name == "polyak-t" && has_value) {
        return {SolverSpec::Kind::PolyakT, parse_double(value, "--solver polyak-t")};
    }
    if (name == "presized" && has_value) {
        return {SolverSpec::Kind::PreSized, parse_double(value, "--solver presized")};
    }
    if (name == "fixed" && has_value) {
        return {SolverSpec::Kind::Fixed, parse_double(value, "--solver fixed")};
    }
    throw ParseFailure("unknown solver \"" + spec + "\"");
}

ProjectableSet parse_project_spec(const std::string& spec, std::size_t dim) {
    if (spec == "none") return ProjectableSet::whole_space();
    const std::size_t eq = spec.find('=');
    const std::string name = spec.substr(0, eq);
    if (eq == std::string::npos || eq + 1 >= spec.size()) {
        throw ParseFailure("--project: expected none, ball=... or halfspace=...");
    }
    const std::vector<double> values = parse_double_list(spec.substr(eq + 1), "--project");
    if (values.size() != dim + 1) {
        throw ParseFailure("--project " + name + ": need " + std::to_string(dim + 1) +
                           " comma-separated numbers (got " +
                           std::to_string(values.size()) + ")");
    }
    const Vector head(values.begin(), values.end() - 1);
    if (name == "ball") return ProjectableSet::ball(head, values.back());
    if (name == "halfspace") return ProjectableSet::halfspace(head, values.back());
    throw ParseFailure("--project: unknown set \"" + name + "\"");
}

SubgradientOracle oracle_from_instance(const InstanceFile& inst) {
    if (inst.kind != "piecewise_affine") {
        throw ParseFailure("expected a piecewise_affine instance");
    }
    return make_pa_oracle(PiecewiseAffine(inst.dimension, inst.pieces), inst.f_star,
                          inst.bound_b);
}

std::optional<double> known_radius(const InstanceFile& inst) {
    if (inst.radius) return inst.radius;
    if (inst.x_star) return dist(inst.x1, *inst.x_star);
    return std::nullopt;
}

void print_summary(double last_f, std::optional<double> bound) {
    if (bound) {
        std::cout << "last_f=" << fmt12(last_f) << " bound=" << fmt12(*bound)
                  << " gap=" << fmt12(*bound - last_f) << "\n";
    } else {
        std::cout << "last_f=" << fmt12(last_f) << "\n";
    }
}

int cmd_run(const std::string& instance_path, const std::string& solver,
            std::size_t iters, const std::string& project,
            const std::string& trace_path) {
    if (iters < 1) throw ParseFailure("--iters must be at least 1");
    const InstanceFile inst = load_instance(instance_path);
    const SolverSpec spec = parse_solver_spec(solver);
    const SubgradientOracle oracle = oracle_from_instance(inst);
    const ProjectableSet x_set = parse_project_spec(project, inst.dimension);

    RunTrace trace;
    switch (spec.kind) {
        case SolverSpec::Kind::Polyak:
            trace = subgradient_method(oracle, x_set, inst.x1, iters, Polyak{});
            break;
        case SolverSpec::Kind::PolyakT:
            trace = subgradient_method(oracle, x_set, inst.x1, iters, PolyakT{spec.value});
            break;
        case SolverSpec::Kind::Adaptive:
            trace = subgradient_method(oracle, x_set, inst.x1, iters, AdaptivePolyak{});
            break;
        case SolverSpec::Kind::PreSized:
            trace = subgradient_method(oracle, x_set, inst.x1, iters,
                                       PreSizedOptimal{spec.value});
            break;
        case SolverSpec::Kind::Fixed:
            trace = subgradient_method(oracle, x_set, inst.x1, iters, Fixed{spec.value});
            break;
        case SolverSpec::Kind::Momentum:
            trace = momentum_polyak_method(oracle, x_set, inst.x1, iters);
            break;
    }
    if (!trace_path.empty()) save_run_trace(trace, trace_path);

    std::optional<double> bound;
    const std::optional<double> radius = known_radius(inst);
    if (inst.bound_b) {
        switch (spec.kind) {
            case SolverSpec::Kind::Polyak:
                if (radius) bound = rate_polyak(iters, *inst.bound_b, *radius);
                break;
            case SolverSpec::Kind::Adaptive:
            case SolverSpec::Kind::Momentum:
                if (radius) bound = rate_optimal(iters, *inst.bound_b, *radius);
                break;
            case SolverSpec::Kind::PreSized:
                bound = rate_optimal(iters, *inst.bound_b, spec.value);
                break;
            default:
                break;  // no last-iterate bound for fixed or t != 1 steps
        }
    }
    print_summary(trace.f_final, bound);
    return 0;
}

int cmd_feas(const std::string& instance_path, const std::string& method,
             std::size_t iters, const std::string& trace_path) {
    if (iters < 1) throw ParseFailure("--iters must be at least 1");
    const InstanceFile file = load_instance(instance_path);
    if (file.kind != "feasibility") {
        throw ParseFailure("expected a feasibility instance");
    }

    FeasibilityInstance inst;
    inst.sets = file.sets;
    inst.x1 = file.x1;
    inst.known_solution = file.x_star;
    inst.radius_bound = file.radius;

    FeasTrace trace;
    bool is_altproj = false;
    if (method == "greedy") {
        trace = greedy_method(inst, iters, GreedyVariant::Plain);
    } else if (method == "adaptive-greedy") {
        trace = greedy_method(inst, iters, GreedyVariant::Adaptive);
    } else if (method == "momentum-greedy") {
        trace = greedy_method(inst, iters, GreedyVariant::Momentum);
    } else if (method == "altproj") {
        if (inst.sets.size() != 2) {
            throw ParseFailure("altproj needs exactly two sets, got " +
                               std::to_string(inst.sets.size()));
        }
        trace = alternating_projection(inst.sets[0], inst.sets[1], inst.x1, iters);
        is_altproj = true;
    } else {
        throw ParseFailure("unknown method \"" + method + "\"");
    }
    if (!trace_path.empty()) save_feas_trace(trace, trace_path);

    std::optional<double> bound;
    std::optional<double> radius = file.radius;
    if (!radius && file.x_star) radius = dist(file.x1, *file.x_star);
    if (radius && *radius > 0.0) {
        if (is_altproj) {
            bound = rate_altproj(iters, *radius);
        } else if (method != "greedy") {
            bound = rate_optimal(iters, 1.0, *radius);  // distance is 1-Lipschitz
        }
    }
    if (bound) {
        std::cout << "last_d=" << fmt12(trace.final_distance) << " bound="
                  << fmt12(*bound) << " gap=" << fmt12(*bound - trace.final_distance)
                  << "\n";
    } else {
        std::cout << "last_d=" << fmt12(trace.final_distance) << "\n";
    }
    return 0;
}

int cmd_bound(const std::string& which, long long n, double b, double r) {
    if (n < 0) throw ParseFailure("--N must be nonnegative");
    double value = 0.0;
    if (which == "polyak") {
        value = rate_polyak(static_cast<std::size_t>(n), b, r);
    } else if (which == "optimal") {
        value = rate_optimal(static_cast<std::size_t>(n), b, r);
    } else if (which == "altproj") {
        if (n < 1) throw ParseFailure("altproj bound needs N >= 1");
        value = rate_altproj(static_cast<std::size_t>(n), r);
    } else {
        throw ParseFailure("unknown bound \"" + which + "\"");
    }
    std::cout << fmt12(value) << "\n";
    return 0;
}

int cmd_worstcase(const std::string& which, std::size_t n, const std::string& out_dir) {
    if (n < 1) throw ParseFailure("--N must be at least 1");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);

    const std::string instance_path = out_dir + "/instance.json";
    const std::string trace_path = out_dir + "/trace.jsonl";
    const std::string report_path = out_dir + "/report.json";

    Report report;
    if (which == "polyak") {
        const TightInstance tight = build_polyak_tight_instance(n);
        InstanceFile file;
        file.kind = "piecewise_affine";
        file.dimension = n + 1;
        file.pieces = tight.function.pieces();
        file.x1 = tight.x1;
        file.f_star = tight.f_star;
        file.bound_b = 1.0;
        file.x_star = tight.x_star;
        file.radius = 1.0;
        save_instance(file, instance_path);

        const auto oracle = make_pa_oracle(tight.function, tight.f_star, 1.0);
        const auto trace = subgradient_method(oracle, ProjectableSet::whole_space(),
                                              tight.x1, n, Polyak{});
        save_run_trace(trace, trace_path);
        report.predicted = tight.predicted_last_value;
        report.achieved = trace.f_final;
    } else if (which == "altproj") {
        const AltprojTightInstance tight = build_altproj_tight_instance(n);
        InstanceFile file;
        file.kind = "feasibility";
        file.dimension = 2;
        file.sets = {tight.c1, tight.c2};
        file.x1 = tight.x1;
        file.x_star = zeros(2);
        file.radius = 1.0;
        save_instance(file, instance_path);

        const auto trace = alternating_projection(tight.c1, tight.c2, tight.x1, n);
        save_feas_trace(trace, trace_path);
        report.predicted = tight.predicted;
        report.achieved = trace.final_distance;
    } else if (which == "feasibility") {
        const FeasibilityInstance inst = build_feasibility_resisting_instance(n, 1.0);
        InstanceFile file;
        file.kind = "feasibility";
        file.dimension = n + 1;
        file.sets = inst.sets;
        file.x1 = inst.x1;
        file.x_star = inst.known_solution;
        file.radius = inst.radius_bound;
        save_instance(file, instance_path);

        const auto trace = greedy_method(inst, n, GreedyVariant::Adaptive);
        save_feas_trace(trace, trace_path);
        report.predicted = rate_optimal(n, 1.0, 1.0);
        report.achieved = trace.final_distance;
    } else {
        throw ParseFailure("unknown worst case \"" + which + "\"");
    }

    report.relative_gap = std::abs(report.achieved - report.predicted) / report.predicted;
    save_report(report, report_path);
    std::cout << "predicted=" << fmt12(report.predicted)
              << " achieved=" << fmt12(report.achieved)
              << " relative_gap=" << fmt12(report.relative_gap) << "\n";
    return 0;
}

int cmd_certify(const std::string& trace_path, const std::string& instance_path,
                const std::string& v_spec, double h_last) {
    const RunTrace trace = load_run_trace(trace_path);
    const InstanceFile inst = load_instance(instance_path);
    const SubgradientOracle oracle = oracle_from_instance(inst);
    if (!inst.f_star) throw MissingOptimalValue("certify: instance lacks f_star");
    if (!inst.x_star) throw MissingOptimalValue("certify: instance lacks x_star");

    Vector v;
    if (v_spec == "auto-constant") {
        v.assign(trace.steps.size() + 2, 1.0);
    } else {
        v = load_multipliers(v_spec);
    }
    const Certificate cert =
        certificate_lemma1(oracle, trace, v, h_last, *inst.x_star, *inst.f_star);
    std::cout << "slack=" << fmt12(cert.slack) << "\n";
    return cert.slack >= -1e-9 ? 0 : 1;
}

int cmd_sweep(const std::string& which, std::size_t n_min, std::size_t n_max,
              const std::string& csv_path) {
    if (n_min < 1 || n_min > n_max) {
        throw ParseFailure("need 1 <= n-min <= n-max");
    }

    std::string csv = "N,predicted,achieved,gap\n";
    for (std::size_t n = n_min; n <= n_max; ++n) {
        double predicted = 0.0, achieved = 0.0;
        if (which == "polyak-exact") {
            const TightInstance tight = build_polyak_tight_instance(n);
            const auto oracle = make_pa_oracle(tight.function, tight.f_star, 1.0);
            const auto trace = subgradient_method(oracle, ProjectableSet::whole_space(),
                                                  tight.x1, n, Polyak{});
            predicted = tight.predicted_last_value;
            achieved = trace.f_final;
        } else if (which == "altproj-exact") {
            const AltprojTightInstance tight = build_altproj_tight_instance(n);
            const auto trace = alternating_projection(tight.c1, tight.c2, tight.x1, n);
            predicted = tight.predicted;
            achieved = trace.final_distance;
        } else if (which == "adaptive-bound") {
            const FeasibilityInstance inst = build_feasibility_resisting_instance(n, 1.0);
            const auto trace = greedy_method(inst, n, GreedyVariant::Adaptive);
            predicted = rate_optimal(n, 1.0, 1.0);
            achieved = trace.final_distance;
        } else {
            throw ParseFailure("unknown sweep \"" + which + "\"");
        }
        csv += std::to_string(n) + "," + format_double(predicted) + "," +
               format_double(achieved) + "," + format_double(predicted - achieved) + "\n";
    }

    std::filesystem::path p(csv_path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw ParseFailure("cannot open for writing: " + csv_path);
    out << csv;
    return 0;
}

}  // namespace

int run_main(int argc, const char* const* argv) {
    CLI::App app{
        "subgrad: subgradient methods with Polyak-type step sizes, projection\n"
        "methods for convex feasibility, exact worst-case rates and the\n"
        "instances that attain them"};
    app.require_subcommand(1);
    app.footer("SUBGRAD_SEED seeds randomized instance generation in the test suite;\n"
               "the subcommands above are fully deterministic.");

    std::string instance_path, solver, project = "none", trace_path, method, which;
    std::string v_spec = "auto-constant", csv_path, out_dir;
    std::size_t iters = 0, n_min = 0, n_max = 0, n_size = 0;
    long long n_signed = 0;
    double bound_b = 1.0, radius = 1.0, h_last = 1.0;

    auto* run = app.add_subcommand("run", "Run a subgradient method on an instance file");
    run->add_option("--instance", instance_path, "Instance JSON path")->required();
    run->add_option("--solver", solver,
                    "polyak | polyak-t=T | adaptive-polyak | momentum-polyak | "
                    "presized=R | fixed=H")
        ->required();
    run->add_option("--iters", iters, "Number of iterations N")->required();
    run->add_option("--project", project,
                    "Feasible set X: none | ball=c1,..,cn,r | halfspace=a1,..,an,b");
    run->add_option("--trace", trace_path, "Write the run trace to this path");

    auto* feas = app.add_subcommand("feas", "Run a projection method on a feasibility "
                                            "instance file");
    feas->add_option("--instance", instance_path, "Instance JSON path")->required();
    feas->add_option("--method", method,
                     "greedy | adaptive-greedy | momentum-greedy | altproj")
        ->required();
    feas->add_option("--iters", iters, "Number of iterations N")->required();
    feas->add_option("--trace", trace_path, "Write the run trace to this path");

    auto* bound = app.add_subcommand("bound", "Print a worst-case bound");
    bound->add_option("--which", which, "polyak | optimal | altproj")->required();
    bound->add_option("--N", n_signed, "Iteration count")->required();
    bound->add_option("--B", bound_b, "Subgradient bound (default 1)");
    bound->add_option("--R", radius, "Distance bound (default 1)");

    auto* worst = app.add_subcommand("worstcase",
                                     "Build a tight instance, run the matching method "
                                     "and report predicted vs achieved");
    worst->add_option("--which", which, "polyak | altproj | feasibility")->required();
    worst->add_option("--N", n_size, "Iteration count")->required();
    worst->add_option("--out", out_dir, "Output directory")->required();

    auto* certify = app.add_subcommand("certify", "Check the multiplier certificate on "
                                                  "a recorded trace");
    certify->add_option("--trace", trace_path, "Trace JSONL path")->required();
    certify->add_option("--instance", instance_path, "Instance JSON path")->required();
    certify->add_option("--v", v_spec, "auto-constant or a JSON file of multipliers");
    certify->add_option("--h-last", h_last, "Final step size h_{N+1} > 0");

    auto* sweep = app.add_subcommand("sweep", "Write predicted vs achieved curves as CSV");
    sweep->add_option("--which", which, "polyak-exact | altproj-exact | adaptive-bound")
        ->required();
    sweep->add_option("--n-min", n_min, "Smallest N")->required();
    sweep->add_option("--n-max", n_max, "Largest N")->required();
    sweep->add_option("--csv", csv_path, "Output CSV path")->required();

    int rc = 0;
    run->callback([&] { rc = cmd_run(instance_path, solver, iters, project, trace_path); });
    feas->callback([&] { rc = cmd_feas(instance_path, method, iters, trace_path); });
    bound->callback([&] { rc = cmd_bound(which, n_signed, bound_b, radius); });
    worst->callback([&] { rc = cmd_worstcase(which, n_size, out_dir); });
    certify->callback(
        [&] { rc = cmd_certify(trace_path, instance_path, v_spec, h_last); });
    sweep->callback([&] { rc = cmd_sweep(which, n_min, n_max, csv_path); });

    try {
        app.parse(argc, argv);
        return rc;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InfeasibleStart& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const MissingOptimalValue& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const MissingSubgradientBound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ZeroSubgradient& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotPositiveDefinite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SingularMatrix& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace subgrad::cli

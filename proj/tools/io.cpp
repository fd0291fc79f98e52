#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace subgrad::cli {

namespace {

using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseFailure("cannot open for writing: " + path);
    out << content;
    if (!out) throw ParseFailure("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseFailure("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_json(const std::string& text, const std::string& where) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseFailure("invalid JSON in " + where);
    return j;
}

double require_number(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number()) {
        throw ParseFailure("missing numeric field \"" + field + "\"");
    }
    return j[field].get<double>();
}

Vector require_vector(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_array()) {
        throw ParseFailure("missing array field \"" + field + "\"");
    }
    Vector v;
    for (const auto& e : j[field]) {
        if (!e.is_number()) throw ParseFailure("non-numeric entry in \"" + field + "\"");
        v.push_back(e.get<double>());
    }
    return v;
}

void append_vector(std::string& out, const Vector& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    out += ']';
}

ProjectableSet parse_set(const json& j) {
    if (!j.contains("type") || !j["type"].is_string()) {
        throw ParseFailure("set entry lacks a \"type\"");
    }
    const std::string type = j["type"].get<std::string>();
    if (type == "hyperplane") {
        return ProjectableSet::hyperplane(require_vector(j, "a"), require_number(j, "b"));
    }
    if (type == "halfspace") {
        return ProjectableSet::halfspace(require_vector(j, "a"), require_number(j, "b"));
    }
    if (type == "ball") {
        return ProjectableSet::ball(require_vector(j, "center"),
                                    require_number(j, "radius"));
    }
    throw ParseFailure("unknown set type \"" + type + "\"");
}

void append_set(std::string& out, const ProjectableSet& s) {
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Hyperplane>) {
                out += "{\"type\":\"hyperplane\",\"a\":";
                append_vector(out, k.normal);
                out += ",\"b\":" + format_double(k.offset) + "}";
            } else if constexpr (std::is_same_v<T, Halfspace>) {
                out += "{\"type\":\"halfspace\",\"a\":";
                append_vector(out, k.normal);
                out += ",\"b\":" + format_double(k.offset) + "}";
            } else if constexpr (std::is_same_v<T, Ball>) {
                out += "{\"type\":\"ball\",\"center\":";
                append_vector(out, k.center);
                out += ",\"radius\":" + format_double(k.radius) + "}";
            } else {
                throw ParseFailure("whole-space sets have no file representation");
            }
        },
        s.kind());
}

}  // namespace

std::string format_double(double v) {
    // "-0" would parse back as the integer 0 and lose the sign bit
    if (v == 0.0 && std::signbit(v)) return "-0.0";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

InstanceFile load_instance(const std::string& path) {
    const json j = parse_json(read_file(path), path);
    InstanceFile inst;
    if (!j.contains("kind") || !j["kind"].is_string()) {
        throw ParseFailure(path + ": missing \"kind\"");
    }
    inst.kind = j["kind"].get<std::string>();
    if (inst.kind != "piecewise_affine" && inst.kind != "feasibility") {
        throw ParseFailure(path + ": unknown kind \"" + inst.kind + "\"");
    }
    const double dim = require_number(j, "dimension");
    if (dim < 1 || dim != static_cast<double>(static_cast<std::size_t>(dim))) {
        throw ParseFailure(path + ": bad dimension");
    }
    inst.dimension = static_cast<std::size_t>(dim);
    inst.x1 = require_vector(j, "x1");
    if (inst.x1.size() != inst.dimension) {
        throw ParseFailure(path + ": x1 has the wrong dimension");
    }

    if (inst.kind == "piecewise_affine") {
        if (!j.contains("pieces") || !j["pieces"].is_array() || j["pieces"].empty()) {
            throw ParseFailure(path + ": needs a nonempty \"pieces\" array");
        }
        for (const auto& p : j["pieces"]) {
            Piece piece{require_vector(p, "slope"), require_number(p, "offset")};
            if (piece.slope.size() != inst.dimension) {
                throw ParseFailure(path + ": piece slope has the wrong dimension");
            }
            inst.pieces.push_back(std::move(piece));
        }
    } else {
        if (!j.contains("sets") || !j["sets"].is_array() || j["sets"].empty()) {
            throw ParseFailure(path + ": needs a nonempty \"sets\" array");
        }
        for (const auto& s : j["sets"]) {
            ProjectableSet set = parse_set(s);
            if (set.dimension() != inst.dimension) {
                throw ParseFailure(path + ": set has the wrong dimension");
            }
            inst.sets.push_back(std::move(set));
        }
    }

    if (j.contains("f_star")) inst.f_star = require_number(j, "f_star");
    if (j.contains("B")) inst.bound_b = require_number(j, "B");
    if (j.contains("R")) inst.radius = require_number(j, "R");
    if (j.contains("x_star")) {
        inst.x_star = require_vector(j, "x_star");
        if (inst.x_star->size() != inst.dimension) {
            throw ParseFailure(path + ": x_star has the wrong dimension");
        }
    }
    return inst;
}

void save_instance(const InstanceFile& inst, const std::string& path) {
    std::string out = "{\"kind\":\"" + inst.kind + "\",";
    out += "\"dimension\":" + std::to_string(inst.dimension) + ",";
    if (inst.kind == "piecewise_affine") {
        out += "\"pieces\":[";
        for (std::size_t i = 0; i < inst.pieces.size(); ++i) {
            if (i) out += ',';
            out += "{\"slope\":";
            append_vector(out, inst.pieces[i].slope);
            out += ",\"offset\":" + format_double(inst.pieces[i].offset) + "}";
        }
        out += "],";
    } else {
        out += "\"sets\":[";
        for (std::size_t i = 0; i < inst.sets.size(); ++i) {
            if (i) out += ',';
            append_set(out, inst.sets[i]);
        }
        out += "],";
    }
    out += "\"x1\":";
    append_vector(out, inst.x1);
    if (inst.f_star) out += ",\"f_star\":" + format_double(*inst.f_star);
    if (inst.bound_b) out += ",\"B\":" + format_double(*inst.bound_b);
    if (inst.x_star) {
        out += ",\"x_star\":";
        append_vector(out, *inst.x_star);
    }
    if (inst.radius) out += ",\"R\":" + format_double(*inst.radius);
    out += "}\n";
    write_file(path, out);
}

void save_run_trace(const RunTrace& trace, const std::string& path) {
    std::string out;
    for (const auto& rec : trace.steps) {
        out += "{\"k\":" + std::to_string(rec.k) + ",\"x\":";
        append_vector(out, rec.x);
        out += ",\"f\":" + format_double(rec.f) + ",\"g\":";
        append_vector(out, rec.g);
        out += ",\"h\":" + format_double(rec.h) + "}\n";
    }
    out += "{\"k\":" + std::to_string(trace.steps.size() + 1) + ",\"x\":";
    append_vector(out, trace.x_final);
    out += ",\"f\":" + format_double(trace.f_final) + "}\n";
    write_file(path, out);
}

RunTrace load_run_trace(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::vector<json> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(parse_json(line, path));
    }
    if (rows.size() < 2) throw ParseFailure(path + ": trace needs at least two lines");

    RunTrace trace;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const json& j = rows[i];
        StepRecord rec;
        rec.k = static_cast<std::size_t>(require_number(j, "k"));
        if (rec.k != i + 1) throw ParseFailure(path + ": iteration numbers not contiguous");
        rec.x = require_vector(j, "x");
        rec.f = require_number(j, "f");
        rec.g = require_vector(j, "g");
        rec.h = require_number(j, "h");
        trace.steps.push_back(std::move(rec));
    }
    const json& last = rows.back();
    if (static_cast<std::size_t>(require_number(last, "k")) != rows.size()) {
        throw ParseFailure(path + ": final iteration number is wrong");
    }
    trace.x_final = require_vector(last, "x");
    trace.f_final = require_number(last, "f");
    return trace;
}

void save_feas_trace(const FeasTrace& trace, const std::string& path) {
    std::string out;
    for (const auto& rec : trace.steps) {
        out += "{\"k\":" + std::to_string(rec.k) + ",\"x\":";
        append_vector(out, rec.x);
        out += ",\"i\":" + std::to_string(rec.set_index + 1);
        out += ",\"d\":" + format_double(rec.max_distance) + "}\n";
    }
    out += "{\"k\":" + std::to_string(trace.steps.size() + 1) + ",\"x\":";
    append_vector(out, trace.x_final);
    out += ",\"d\":" + format_double(trace.final_distance) + "}\n";
    write_file(path, out);
}

void save_report(const Report& report, const std::string& path) {
    std::string out = "{\"predicted\":" + format_double(report.predicted) +
                      ",\"achieved\":" + format_double(report.achieved) +
                      ",\"relative_gap\":" + format_double(report.relative_gap) + "}\n";
    write_file(path, out);
}

Report load_report(const std::string& path) {
    const json j = parse_json(read_file(path), path);
    return Report{require_number(j, "predicted"), require_number(j, "achieved"),
                  require_number(j, "relative_gap")};
}

Vector load_multipliers(const std::string& path) {
    const json j = parse_json(read_file(path), path);
    if (!j.is_array() || j.empty()) {
        throw ParseFailure(path + ": expected a JSON array of multipliers");
    }
    Vector v;
    for (const auto& e : j) {
        if (!e.is_number()) throw ParseFailure(path + ": non-numeric multiplier");
        v.push_back(e.get<double>());
    }
    return v;
}

void save_multipliers(const Vector& v, const std::string& path) {
    std::string out;
    append_vector(out, v);
    out += "\n";
    write_file(path, out);
}

}  // namespace subgrad::cli

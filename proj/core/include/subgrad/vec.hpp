#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "subgrad/errors.hpp"

namespace subgrad {

/// Dense real vector. All public boundaries require finite entries.
using Vector = std::vector<double>;

inline void check_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw Error(std::string(what) + ": non-finite entry");
        }
    }
}

inline void check_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                                " vs " + std::to_string(b));
    }
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    check_same_dim(a.size(), b.size(), "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(std::span<const double> a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(norm_sq(a)); }

inline double dist(std::span<const double> a, std::span<const double> b) {
    check_same_dim(a.size(), b.size(), "dist");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

/// a + c*b
inline Vector add_scaled(std::span<const double> a, double c, std::span<const double> b) {
    check_same_dim(a.size(), b.size(), "add_scaled");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + c * b[i];
    return r;
}

inline Vector sub(std::span<const double> a, std::span<const double> b) {
    return add_scaled(a, -1.0, b);
}

inline Vector zeros(std::size_t n) { return Vector(n, 0.0); }

inline Vector ones(std::size_t n) { return Vector(n, 1.0); }

inline Vector unit(std::size_t n, std::size_t i) {
    Vector r(n, 0.0);
    r.at(i) = 1.0;
    return r;
}

}  // namespace subgrad

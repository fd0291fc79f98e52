#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "subgrad/vec.hpp"

namespace subgrad {

/// Dense symmetric matrix. Only the upper triangle is stored, so
/// entry(i,j) == entry(j,i) holds exactly by construction.
class SymMatrix {
public:
    explicit SymMatrix(std::size_t order)
        : n_(order), upper_(order * (order + 1) / 2, 0.0) {}

    static SymMatrix identity(std::size_t order) {
        SymMatrix m(order);
        for (std::size_t i = 0; i < order; ++i) m.set(i, i, 1.0);
        return m;
    }

    std::size_t order() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const {
        return upper_[index(i, j)];
    }

    void set(std::size_t i, std::size_t j, double v) { upper_[index(i, j)] = v; }

    double max_abs() const {
        double m = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j) {
                const double a = std::abs((*this)(i, j));
                if (a > m) m = a;
            }
        return m;
    }

    double max_diagonal() const {
        double m = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            if ((*this)(i, i) > m) m = (*this)(i, i);
        return m;
    }

    /// y = S x
    Vector apply(std::span<const double> x) const;

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        return i * n_ - i * (i - 1) / 2 + (j - i);
    }

    std::size_t n_;
    std::vector<double> upper_;
};

/// Upper-triangular matrix; the strict lower part is identically zero.
class UpperTriangular {
public:
    explicit UpperTriangular(std::size_t order)
        : n_(order), upper_(order * (order + 1) / 2, 0.0) {}

    static UpperTriangular identity(std::size_t order) {
        UpperTriangular m(order);
        for (std::size_t i = 0; i < order; ++i) m.set(i, i, 1.0);
        return m;
    }

    std::size_t order() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const {
        return i > j ? 0.0 : upper_[index(i, j)];
    }

    void set(std::size_t i, std::size_t j, double v);

    /// Column j as a dense vector of length order().
    Vector column(std::size_t j) const;

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        return i * n_ - i * (i - 1) / 2 + (j - i);
    }

    std::size_t n_;
    std::vector<double> upper_;
};

/// Factor a symmetric positive definite S as R^T R with R upper triangular.
/// Throws NotPositiveDefinite when a pivot falls at or below
/// 1e-13 * max diagonal of S.
UpperTriangular cholesky_upper(const SymMatrix& s);

/// Solve R^T x = b by forward substitution. Throws SingularMatrix on a
/// zero diagonal entry.
Vector solve_upper_transposed(const UpperTriangular& r, const Vector& b);

/// Smallest eigenvalue of S by cyclic Jacobi rotations, iterated until the
/// off-diagonal Frobenius mass drops below tol (absolute accuracy <= tol).
/// Throws NoConvergence if the sweep budget is exhausted.
double min_eigenvalue(const SymMatrix& s, double tol, int max_sweeps = 100);

/// A single factor base^exponent of a product evaluated in log space.
struct LogTerm {
    double base;      // must be > 0
    double exponent;
};

/// Sum of exponent*ln(base) over all terms; 0 for an empty product.
/// Throws NonPositiveBase when any base is <= 0.
double log_product(std::span<const LogTerm> terms);

}  // namespace subgrad

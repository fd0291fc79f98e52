#include "subgrad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace subgrad {

Vector SymMatrix::apply(std::span<const double> x) const {
    check_same_dim(x.size(), n_, "SymMatrix::apply");
    Vector y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

void UpperTriangular::set(std::size_t i, std::size_t j, double v) {
    if (i > j) throw Error("UpperTriangular::set: below the diagonal");
    upper_[index(i, j)] = v;
}

Vector UpperTriangular::column(std::size_t j) const {
    Vector c(n_, 0.0);
    for (std::size_t i = 0; i <= j; ++i) c[i] = (*this)(i, j);
    return c;
}

UpperTriangular cholesky_upper(const SymMatrix& s) {
    const std::size_t n = s.order();
    if (n == 0) throw Error("cholesky_upper: empty matrix");
    const double pivot_floor = 1e-13 * s.max_diagonal();

    UpperTriangular r(n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = s(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= r(k, j) * r(k, j);
        if (d <= pivot_floor) {
            throw NotPositiveDefinite("cholesky_upper: pivot " + std::to_string(d) +
                                      " at column " + std::to_string(j));
        }
        const double rjj = std::sqrt(d);
        r.set(j, j, rjj);
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = s(j, i);
            for (std::size_t k = 0; k < j; ++k) v -= r(k, j) * r(k, i);
            r.set(j, i, v / rjj);
        }
    }
    return r;
}

Vector solve_upper_transposed(const UpperTriangular& r, const Vector& b) {
    const std::size_t n = r.order();
    check_same_dim(b.size(), n, "solve_upper_transposed");
    Vector x(n, 0.0);
    // R^T is lower triangular with (R^T)(i,j) = R(j,i).
    for (std::size_t i = 0; i < n; ++i) {
        const double diag = r(i, i);
        if (diag == 0.0) {
            throw SingularMatrix("solve_upper_transposed: zero diagonal at " +
                                 std::to_string(i));
        }
        double v = b[i];
        for (std::size_t j = 0; j < i; ++j) v -= r(j, i) * x[j];
        x[i] = v / diag;
    }
    return x;
}

namespace {

double off_diagonal_mass(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(2.0 * s);
}

}  // namespace

double min_eigenvalue(const SymMatrix& s, double tol, int max_sweeps) {
    if (tol <= 0.0) throw Error("min_eigenvalue: tol must be positive");
    const std::size_t n = s.order();
    if (n == 0) throw Error("min_eigenvalue: empty matrix");
    if (n == 1) return s(0, 0);

    // Dense working copy; rotations are applied to both triangles.
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = s(i, j);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_mass(a, n) < tol) {
            double m = a[0];
            for (std::size_t i = 1; i < n; ++i) m = std::min(m, a[i * n + i]);
            return m;
        }
        for (std::size_t p = 0; p < n - 1; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - sn * akq;
                    a[k * n + q] = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - sn * aqk;
                    a[q * n + k] = sn * apk + c * aqk;
                }
            }
        }
    }
    if (off_diagonal_mass(a, n) < tol) {
        double m = a[0];
        for (std::size_t i = 1; i < n; ++i) m = std::min(m, a[i * n + i]);
        return m;
    }
    throw NoConvergence("min_eigenvalue: sweep budget exhausted");
}

double log_product(std::span<const LogTerm> terms) {
    double s = 0.0;
    for (const LogTerm& t : terms) {
        if (!(t.base > 0.0)) {
            throw NonPositiveBase("log_product: base " + std::to_string(t.base));
        }
        s += t.exponent * std::log(t.base);
    }
    return s;
}

}  // namespace subgrad

#pragma once

#include <cstddef>
#include <vector>

#include "subgrad/feasibility.hpp"
#include "subgrad/linalg.hpp"
#include "subgrad/oracles.hpp"
#include "subgrad/solvers.hpp"
#include "subgrad/vec.hpp"

namespace subgrad {

/// (2k+1)/(2k) * prod_{i=k+1}^{N} (4i^2-1)/(4i^2), evaluated in log space.
/// Lies strictly between 1 and 2 for 1 <= k < N.
double wallis_factor(std::size_t k, std::size_t n);

/// The coupled sequences behind the Polyak-step positive-definiteness
/// argument:
///   a_k = prod_{i=N+1-k}^{N} ((2i+1)/(2i)) (4i^2/(4i^2-1))^{N+1-i-k}, a_0 = 1
///   p_k = prod_{i=N+1-k}^{N} (2i+1)/(2i)
///   q_k = prod_{i=N+2-k}^{N} (2i)/(2i-1), q_1 = 1
///   y_k = prod_{i=N+1-k}^{N} (4i^2/(4i^2-1))^{i+k-N-1}
/// They satisfy p_k = a_k y_k and q_k = a_{k-1} y_k.
struct SequencePack {
    std::size_t n = 0;
    Vector a;  // a[k] = a_k for k = 0..N
    Vector p;  // p[k-1] = p_k for k = 1..N
    Vector q;  // q[k-1] = q_k for k = 1..N
    Vector y;  // y[k-1] = y_k for k = 1..N
};

SequencePack seq_a_stepweights(std::size_t n);

/// N x N matrix Q with Q_kk = 2 a_k a_{k-1} - a_k^2 and
/// Q_kj = (a_{min-1} - a_min) a_max off the diagonal; positive definite.
/// Satisfies Q y = (a_k - a_{k-1}) p_N componentwise.
SymMatrix matrix_Q_polyak(std::size_t n);

/// (N+1) x (N+1) matrix A = Q - e_{N+1} e_{N+1}^T built from a_k = 1/(N+1-k);
/// diagonally dominant, positive semi-definite with one zero eigenvalue.
SymMatrix matrix_A_adaptive(std::size_t n);

/// Gram data of the worst-case geometry: Q_kk = 1, Q_kj = 1 - a_min off the
/// diagonal with a_k = prod_{i=N+1-k}^{N} 4i^2/(4i^2-1), c = 1/sqrt(2N+1),
/// and the bordered matrix A = [[1, c e^T], [c e, Q]].
struct GramParts {
    SymMatrix bordered;  // A, order N+2
    SymMatrix q;         // order N+1
    Vector a;            // a[k-1] = a_k for k = 1..N
    double c = 0.0;
};

GramParts matrix_A_gram(std::size_t n);

/// Worst-case last-iterate bound for the Polyak step:
/// B R / sqrt(2N+1) * prod_{i=1}^{N} (4i^2/(4i^2-1))^i.
double rate_polyak(std::size_t n, double bound_b, double radius);

/// Optimal last-iterate bound B R / sqrt(N+1), matching the black-box
/// lower bound.
double rate_optimal(std::size_t n, double bound_b, double radius);

/// Alternating-projection last-iterate bound
/// R sqrt((2N)^{2N} / (2N+1)^{2N+1}) = R (2N/(2N+1))^N / sqrt(2N+1),
/// evaluated in log space. The decay factor (2N/(2N+1))^N falls from 2/3
/// at N=1 toward 1/e, so replacing it with a constant like 4/9 understates
/// the bound at small N; only the exact product is exposed.
double rate_altproj(std::size_t n, double radius);

/// ln of prod_{i=1}^{N} (4i^2/(4i^2-1))^i.
double growth_log(std::size_t n);

/// Ratio a_{4N}/a_N of the product above; tends to 2^{1/2} as N grows.
double growth_ratio_check(std::size_t n);

/// Worst-case instance for the Polyak step: running N Polyak iterations
/// from x1 attains predicted_last_value = rate_polyak(N, 1, 1) exactly.
struct TightInstance {
    PiecewiseAffine function;
    Vector x1;
    Vector x_star;
    double f_star = 0.0;
    double predicted_last_value = 0.0;
};

TightInstance build_polyak_tight_instance(std::size_t n);

/// Two lines through the origin on which alternating projection attains
/// rate_altproj(N, 1) exactly after N iterations from (1, 0).
struct AltprojTightInstance {
    ProjectableSet c1;
    ProjectableSet c2;
    Vector x1;
    double predicted = 0.0;
};

AltprojTightInstance build_altproj_tight_instance(std::size_t n);

/// N+1 axis-aligned hyperplanes in R^{N+1} forcing every projection-span
/// method to keep max_i d_{C_i}(x^k) >= R/sqrt(N+1) through iteration N+1.
FeasibilityInstance build_feasibility_resisting_instance(std::size_t n, double radius);

/// Multiplier certificate for a recorded run: nonnegative slack witnesses
/// the master inequality behind all rate proofs.
struct Certificate {
    Vector v;            // v_0..v_{N+1}, positive and nondecreasing
    double h_last = 0.0; // h_{N+1} > 0
    double slack = 0.0;  // RHS - LHS
};

/// Evaluates the master inequality on a trace. The k = N+1 terms use f and
/// a subgradient obtained from the oracle at the final iterate, with
/// h_{N+1} = h_last supplied by the caller.
Certificate certificate_lemma1(const SubgradientOracle& oracle, const RunTrace& trace,
                               const Vector& v, double h_last, const Vector& x_star,
                               double f_star);

/// The multiplier sequence that makes the Polyak-step certificate tight:
/// v_0 = sqrt(B) / (R^2 (2N+1))^{1/4} * prod (4i^2/(4i^2-1))^{i/2},
/// v_k = v_0 a_k with the step-weight sequence, v_{N+1} = v_N,
/// h_last = 1/v_N^2.
struct CertificateMultipliers {
    Vector v;
    double h_last = 0.0;
};

CertificateMultipliers polyak_certificate_multipliers(std::size_t n, double bound_b,
                                              double radius);

}  // namespace subgrad

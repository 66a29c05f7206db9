#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "groupwalk/distribution.hpp"

namespace groupwalk {

/// Transition matrix of the right-multiplication walk: T[x][y] = p(x^-1 y).
/// Every row is a translate of p, so T is doubly stochastic.
struct TransitionOperator {
  GroupPtr group;
  Eigen::MatrixXd matrix;
  Distribution step;
};

struct SpectralSummary {
  /// Full spectrum, ordered by modulus descending, then argument ascending.
  std::vector<std::complex<double>> eigenvalues;
  /// Eigenvalues with |lambda| >= 1 - tol.
  int unit_circle_count = 0;
  /// Largest modulus after removing one eigenvalue 1 per connected component
  /// of the walk (one per left coset of the support closure).
  double second_modulus = 0.0;
  double tol = 0.0;
};

enum class SpectralVerdict { Converges, Diverges, Indeterminate };

const char* to_string(SpectralVerdict v);

TransitionOperator transition_operator(const Distribution& p);

/// Dense nonsymmetric eigendecomposition; order capped at `eig_cap`.
SpectralSummary spectrum(const TransitionOperator& op, double tol = 1e-9, int eig_cap = 512);

/// Verdict from the spectrum of the operator restricted to the support
/// closure block: Converges when the unit eigenvalue is simple there and
/// everything else is below 1 - tol; Diverges when a second eigenvalue sits
/// numerically on the unit circle. Indeterminate flags moduli inside
/// (1 - tol, 1) that are not numerically unit: the exact detector is the
/// source of truth in that band.
SpectralVerdict spectral_verdict(const Distribution& p, double tol = 1e-9, int eig_cap = 512);

/// Power-iteration estimate of second_modulus for orders above the dense
/// cap. Flagged as an estimate in reports.
double second_modulus_estimate(const TransitionOperator& op, int iterations = 200,
                               unsigned long long seed = 1);

/// Geometric-mean ratio of the last `window` steps of a decay trace.
/// Returns 0 if the trace hits exact zero.
double decay_rate_fit(const std::vector<std::pair<int, double>>& trace, int window);

/// (J_m(lambda))^n in closed form: entry (i, i+k) = C(n,k) lambda^{n-k}.
Eigen::MatrixXcd jordan_power(int m, std::complex<double> lambda, long long n);

}  // namespace groupwalk

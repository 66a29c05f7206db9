#include "groupwalk/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace groupwalk {

namespace {

// Numerical-equality margin for |lambda| = 1; well above the backward error
// of the dense solver at the supported orders, well below any honest gap.
constexpr double kUnitEps = 1e-12;

std::vector<std::complex<double>> sorted_eigenvalues(const Eigen::VectorXcd& raw) {
  std::vector<std::complex<double>> values(raw.data(), raw.data() + raw.size());
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    return std::arg(a) < std::arg(b);
  });
  return values;
}

std::vector<std::complex<double>> dense_eigenvalues(const Eigen::MatrixXd& m, int eig_cap) {
  if (m.rows() > eig_cap)
    throw Error(ErrorKind::CapExceeded, "order " + std::to_string(m.rows()) +
                                            " exceeds dense eigensolver cap " +
                                            std::to_string(eig_cap));
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::EigensolverFailure, "dense eigensolver did not converge");
  return sorted_eigenvalues(solver.eigenvalues());
}

}  // namespace

const char* to_string(SpectralVerdict v) {
  switch (v) {
    case SpectralVerdict::Converges: return "converges";
    case SpectralVerdict::Diverges: return "diverges";
    case SpectralVerdict::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

TransitionOperator transition_operator(const Distribution& p) {
  const auto& g = *p.group();
  const int n = g.order();
  Eigen::MatrixXd m(n, n);
  for (element_t x = 0; x < n; ++x)
    for (element_t y = 0; y < n; ++y) m(x, y) = p.prob(g.mul(g.inv(x), y));
  return TransitionOperator{p.group(), std::move(m), p};
}

SpectralSummary spectrum(const TransitionOperator& op, double tol, int eig_cap) {
  SpectralSummary summary;
  summary.tol = tol;
  summary.eigenvalues = dense_eigenvalues(op.matrix, eig_cap);

  for (const auto& v : summary.eigenvalues)
    if (std::abs(v) >= 1.0 - tol) ++summary.unit_circle_count;

  // One eigenvalue 1 per left coset of the support closure (the walk's
  // connected components); drop the copies nearest to 1 and take the max of
  // what remains.
  int components = op.group->order() / support_subgroup(op.step).size();
  std::vector<std::complex<double>> rest = summary.eigenvalues;
  std::sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) {
    return std::abs(a - 1.0) < std::abs(b - 1.0);
  });
  double second = 0.0;
  for (size_t i = size_t(components); i < rest.size(); ++i)
    second = std::max(second, std::abs(rest[i]));
  summary.second_modulus = second;
  return summary;
}

SpectralVerdict spectral_verdict(const Distribution& p, double tol, int eig_cap) {
  const Subgroup support = support_subgroup(p);
  const auto& members = support.members();
  const int k = int(members.size());

  const auto& g = *p.group();
  Eigen::MatrixXd block(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) block(i, j) = p.prob(g.mul(g.inv(members[i]), members[j]));

  auto values = dense_eigenvalues(block, eig_cap);
  int unit_count = 0;
  for (const auto& v : values)
    if (std::abs(v) >= 1.0 - kUnitEps) ++unit_count;
  if (unit_count >= 2) return SpectralVerdict::Diverges;

  // values[0] is the simple unit eigenvalue; the rest must clear the margin.
  double second = values.size() > 1 ? std::abs(values[1]) : 0.0;
  if (second < 1.0 - tol) return SpectralVerdict::Converges;
  return SpectralVerdict::Indeterminate;
}

double second_modulus_estimate(const TransitionOperator& op, int iterations,
                               unsigned long long seed) {
  const auto& g = *op.group;
  const int n = g.order();
  auto cosets = left_cosets(op.group, support_subgroup(op.step));

  // Project out the known Perron directions: subtract the mean over each
  // coset block, then track the norm growth rate.
  auto deflate = [&](Eigen::VectorXd& x) {
    for (const auto& coset : cosets) {
      auto elems = coset.elements();
      double mean = 0.0;
      for (element_t e : elems) mean += x[e];
      mean /= double(elems.size());
      for (element_t e : elems) x[e] -= mean;
    }
  };

  std::mt19937_64 rng(seed);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i)
    x[i] = double(rng() >> 11) * 0x1.0p-53 - 0.5;
  deflate(x);
  if (x.norm() == 0.0) return 0.0;
  x.normalize();

  double rate = 0.0;
  int settled = 0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd y = op.matrix.transpose() * x;
    deflate(y);
    double norm = y.norm();
    if (norm < 1e-300) return 0.0;
    // geometric smoothing over the tail
    if (it >= iterations / 2) {
      rate += std::log(norm);
      ++settled;
    }
    x = y / norm;
  }
  return settled > 0 ? std::exp(rate / settled) : 0.0;
}

double decay_rate_fit(const std::vector<std::pair<int, double>>& trace, int window) {
  if (window < 1) throw Error(ErrorKind::InsufficientData, "window must be >= 1");
  for (const auto& [n, d] : trace)
    if (d == 0.0) return 0.0;
  if (int(trace.size()) < window + 5)
    throw Error(ErrorKind::InsufficientData,
                "trace has " + std::to_string(trace.size()) + " positive entries, need " +
                    std::to_string(window + 5));
  double last = trace.back().second;
  double first = trace[trace.size() - 1 - window].second;
  return std::pow(last / first, 1.0 / window);
}

Eigen::MatrixXcd jordan_power(int m, std::complex<double> lambda, long long n) {
  if (m < 1) throw Error(ErrorKind::InvalidDistribution, "jordan_power needs m >= 1");
  if (n < 0) throw Error(ErrorKind::InvalidDistribution, "jordan_power needs n >= 0");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m, m);
  // Band k of (J_m(lambda))^n is C(n,k) lambda^{n-k}; bands with k > n vanish.
  std::complex<double> coeff = std::pow(lambda, double(n));
  if (n == 0) coeff = 1.0;  // covers lambda = 0, 0^0 = 1
  double binom = 1.0;
  for (int k = 0; k < m && k <= n; ++k) {
    if (k > 0) {
      binom *= double(n - k + 1) / double(k);
      if (lambda == std::complex<double>(0.0)) {
        coeff = (n == k) ? std::complex<double>(1.0) : std::complex<double>(0.0);
      } else {
        coeff /= lambda;
      }
    }
    for (int i = 0; i + k < m; ++i) out(i, i + k) = binom * coeff;
  }
  return out;
}

}  // namespace groupwalk

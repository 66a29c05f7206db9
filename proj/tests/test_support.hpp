#pragma once

// Test-only oracles, kept independent of the library paths they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "groupwalk/distribution.hpp"

namespace testsupport {

using namespace groupwalk;

// Naive fixpoint closure: repeated full-pass products until stable.
inline std::vector<element_t> closure_oracle(const GroupPtr& group,
                                             std::vector<element_t> seed) {
  std::set<element_t> members(seed.begin(), seed.end());
  members.insert(group->identity());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<element_t> snapshot(members.begin(), members.end());
    for (element_t a : snapshot) {
      if (members.insert(group->inv(a)).second) changed = true;
      for (element_t b : snapshot)
        if (members.insert(group->mul(a, b)).second) changed = true;
    }
  }
  return {members.begin(), members.end()};
}

// Convolution straight from the definition, no skipping.
template <class Scalar>
std::vector<Scalar> convolve_oracle(const GroupPtr& group, const std::vector<Scalar>& p,
                                    const std::vector<Scalar>& q) {
  const int n = group->order();
  std::vector<Scalar> out(n, Scalar(0));
  for (element_t g = 0; g < n; ++g)
    for (element_t a = 0; a < n; ++a)
      out[g] += p[a] * q[group->mul(group->inv(a), g)];
  return out;
}

// Brute-force isomorphism search by backtracking on images; usable to order
// ~12 or so.
inline bool isomorphic_oracle(const GroupPtr& a, const GroupPtr& b) {
  const int n = a->order();
  if (n != b->order()) return false;
  std::vector<int> image(n, -1), used(n, 0);
  // order profile must match pointwise under any isomorphism
  auto order_of = [](const GroupPtr& g, element_t x) { return g->element_order(x); };

  std::function<bool(int)> place = [&](int x) -> bool {
    if (x == n) return true;
    for (int y = 0; y < n; ++y) {
      if (used[y] || order_of(a, x) != order_of(b, y)) continue;
      // check homomorphism property against already-placed elements
      bool ok = true;
      for (int z = 0; z < x && ok; ++z) {
        if (image[a->mul(x, z)] != -1 && image[a->mul(x, z)] != b->mul(y, image[z])) ok = false;
        if (image[a->mul(z, x)] != -1 && image[a->mul(z, x)] != b->mul(image[z], y)) ok = false;
      }
      if (!ok) continue;
      image[x] = y;
      used[y] = 1;
      bool consistent = true;
      for (int u = 0; u < x && consistent; ++u)
        for (int v = 0; v < x && consistent; ++v)
          if (image[a->mul(u, v)] != -1 && image[a->mul(u, v)] != b->mul(image[u], image[v]))
            consistent = false;
      if (consistent && place(x + 1)) return true;
      image[x] = -1;
      used[y] = 0;
    }
    return false;
  };
  return place(0);
}

// Deviation trace d(n) = tv(p^{*n}, R(closure)) computed by iterating the
// signed deviation e_n = p^{*n} - u (convolution is linear and u is a fixed
// point, so e_{n+1} = e_n * p) with rescaling. Unlike the plain trace this
// has no additive noise floor, so deep geometric tails stay measurable.
inline std::vector<std::pair<int, double>> deviation_trace(const Distribution& p, int n_max) {
  const auto& g = *p.group();
  const int order = g.order();
  auto closure = support_subgroup(p);
  auto u = uniform_on<double>(closure);
  std::vector<double> e(order);
  for (element_t i = 0; i < order; ++i) e[i] = p.prob(i) - u.prob(i);

  // Rounding reintroduces a component along the invariant (constant on the
  // closure) direction, which has eigenvalue 1 and would floor the trace;
  // deflate it every step.
  auto deflate = [&] {
    double mean = 0.0;
    for (element_t m : closure.members()) mean += e[m];
    mean /= double(closure.size());
    for (element_t m : closure.members()) e[m] -= mean;
  };
  deflate();

  std::vector<std::pair<int, double>> trace;
  double log_scale = 0.0;
  bool dead = false;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1 && !dead) {
      std::vector<double> next(order, 0.0);
      for (element_t a = 0; a < order; ++a) {
        if (e[a] == 0.0) continue;
        for (element_t b = 0; b < order; ++b)
          if (p.prob(b) != 0.0) next[g.mul(a, b)] += e[a] * p.prob(b);
      }
      e = std::move(next);
      deflate();
    }
    double norm1 = 0.0;
    for (double v : e) norm1 += std::abs(v);
    if (norm1 == 0.0) dead = true;
    if (dead) {
      trace.emplace_back(n, 0.0);
      continue;
    }
    trace.emplace_back(n, 0.5 * norm1 * std::exp(log_scale));
    log_scale += std::log(norm1);
    for (double& v : e) v /= norm1;
  }
  return trace;
}

// Random distribution with exact dyadic-free masses k_i / K: sums to 1
// exactly in the rational backend, and its double view drifts by at most a
// few ulps. Mass ratios stay bounded (k in 1..8) so converging walks mix
// within the acceptance horizon.
inline RationalDistribution random_rational_distribution(const GroupPtr& group,
                                                         std::mt19937_64& rng,
                                                         int support_size = 0) {
  const int n = group->order();
  if (support_size <= 0) support_size = 1 + int(rng() % std::uint64_t(n));
  std::vector<element_t> elements(n);
  for (int i = 0; i < n; ++i) elements[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(elements[i], elements[rng() % std::uint64_t(i + 1)]);
  elements.resize(support_size);

  std::vector<long long> weights(support_size);
  long long total = 0;
  for (auto& w : weights) {
    w = 1 + int(rng() % 8);
    total += w;
  }
  std::vector<Rational> probs(n, Rational(0));
  for (int i = 0; i < support_size; ++i) probs[elements[i]] = Rational(weights[i], total);
  return RationalDistribution::make(group, std::move(probs));
}

}  // namespace testsupport

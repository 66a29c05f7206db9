#pragma once

#include <cmath>
#include <type_traits>
#include <utility>
#include <vector>

#include "groupwalk/rational.hpp"
#include "groupwalk/subgroup.hpp"

namespace groupwalk {

/// Probability vector over the elements of a finite group: the step law of
/// the walk. Scalar is double (default) or Rational (exact backend).
template <class Scalar>
class BasicDistribution {
 public:
  static BasicDistribution make(GroupPtr group, std::vector<Scalar> probs) {
    const int n = group->order();
    if (int(probs.size()) != n)
      throw Error(ErrorKind::InvalidDistribution,
                  "probability vector length " + std::to_string(probs.size()) +
                      " does not match group order " + std::to_string(n));
    Scalar sum(0);
    for (int i = 0; i < n; ++i) {
      if (probs[i] < Scalar(0))
        throw Error(ErrorKind::InvalidDistribution,
                    "negative probability at element " + std::to_string(i));
      sum += probs[i];
    }
    if constexpr (std::is_floating_point_v<Scalar>) {
      if (std::abs(sum - Scalar(1)) > 1e-12)
        throw Error(ErrorKind::InvalidDistribution,
                    "probabilities sum to " + std::to_string(double(sum)) + ", expected 1");
    } else {
      if (sum != Scalar(1))
        throw Error(ErrorKind::InvalidDistribution,
                    "probabilities must sum to exactly 1 in the rational backend");
    }
    return BasicDistribution(std::move(group), std::move(probs));
  }

  const GroupPtr& group() const { return group_; }
  const std::vector<Scalar>& probs() const { return probs_; }
  const Scalar& prob(element_t g) const { return probs_[g]; }

 private:
  BasicDistribution(GroupPtr group, std::vector<Scalar> probs)
      : group_(std::move(group)), probs_(std::move(probs)) {}

  GroupPtr group_;
  std::vector<Scalar> probs_;
};

using Distribution = BasicDistribution<double>;
using RationalDistribution = BasicDistribution<Rational>;

template <class Scalar>
BasicDistribution<Scalar> point_mass(const GroupPtr& group, element_t g) {
  std::vector<Scalar> probs(group->order(), Scalar(0));
  probs[g] = Scalar(1);
  return BasicDistribution<Scalar>::make(group, std::move(probs));
}

/// The law R(H): mass 1/|H| on each member of H, zero elsewhere. This is the
/// Haar measure of H viewed inside the parent group.
template <class Scalar = double>
BasicDistribution<Scalar> uniform_on(const Subgroup& subgroup) {
  std::vector<Scalar> probs(subgroup.parent()->order(), Scalar(0));
  Scalar mass = Scalar(1) / Scalar(subgroup.size());
  for (element_t h : subgroup.members()) probs[h] = mass;
  return BasicDistribution<Scalar>::make(subgroup.parent(), std::move(probs));
}

/// (p*q)(g) = sum_a p(a) q(a^-1 g): the law of xi*eta with xi~p, eta~q
/// independent, products read left to right.
template <class Scalar>
BasicDistribution<Scalar> convolve(const BasicDistribution<Scalar>& p,
                                   const BasicDistribution<Scalar>& q) {
  if (p.group().get() != q.group().get())
    throw Error(ErrorKind::GroupMismatch, "convolve arguments live on different groups");
  const auto& g = *p.group();
  const int n = g.order();
  std::vector<Scalar> out(n, Scalar(0));
  for (element_t a = 0; a < n; ++a) {
    const Scalar& pa = p.prob(a);
    if (pa == Scalar(0)) continue;
    for (element_t b = 0; b < n; ++b) {
      const Scalar& qb = q.prob(b);
      if (qb == Scalar(0)) continue;
      out[g.mul(a, b)] += pa * qb;
    }
  }
  return BasicDistribution<Scalar>::make(p.group(), std::move(out));
}

/// p^{*n} by binary exponentiation.
template <class Scalar>
BasicDistribution<Scalar> convolution_power(const BasicDistribution<Scalar>& p, long long n) {
  if (n < 1) throw Error(ErrorKind::InvalidDistribution, "convolution power needs n >= 1");
  BasicDistribution<Scalar> acc = point_mass<Scalar>(p.group(), p.group()->identity());
  BasicDistribution<Scalar> base = p;
  while (n > 0) {
    if (n & 1) acc = convolve(acc, base);
    n >>= 1;
    if (n > 0) base = convolve(base, base);
  }
  return acc;
}

template <class Scalar>
std::vector<element_t> support_elements(const BasicDistribution<Scalar>& p,
                                        const Scalar& atom_threshold = Scalar(0)) {
  std::vector<element_t> out;
  for (element_t g = 0; g < p.group()->order(); ++g)
    if (p.prob(g) > atom_threshold) out.push_back(g);
  return out;
}

/// The support subgroup: smallest subgroup carrying the step a.s., i.e. the
/// closure of the positive-mass elements.
template <class Scalar>
Subgroup support_subgroup(const BasicDistribution<Scalar>& p,
                          const Scalar& atom_threshold = Scalar(0)) {
  return subgroup_generated(p.group(), support_elements(p, atom_threshold));
}

template <class Scalar>
Scalar tv_distance(const BasicDistribution<Scalar>& p, const BasicDistribution<Scalar>& q) {
  if (p.group().get() != q.group().get())
    throw Error(ErrorKind::GroupMismatch, "tv_distance arguments live on different groups");
  using std::abs;
  Scalar sum(0);
  for (element_t g = 0; g < p.group()->order(); ++g) sum += abs(p.prob(g) - q.prob(g));
  return sum / Scalar(2);
}

/// d(n) = tv(p^{*n}, R(support)) for n = 1..n_max, by cumulative convolution.
/// Non-increasing in n. The threshold picks the same support closure the
/// verdict uses.
template <class Scalar>
std::vector<std::pair<int, Scalar>> decay_trace(const BasicDistribution<Scalar>& p, int n_max,
                                                const Scalar& atom_threshold = Scalar(0)) {
  if (n_max < 1) throw Error(ErrorKind::InvalidDistribution, "decay_trace needs n_max >= 1");
  auto limit = uniform_on<Scalar>(support_subgroup(p, atom_threshold));
  std::vector<std::pair<int, Scalar>> trace;
  trace.reserve(n_max);
  BasicDistribution<Scalar> walk = p;
  trace.emplace_back(1, tv_distance(walk, limit));
  for (int n = 2; n <= n_max; ++n) {
    walk = convolve(walk, p);
    trace.emplace_back(n, tv_distance(walk, limit));
  }
  return trace;
}

inline Distribution to_double_distribution(const RationalDistribution& p) {
  std::vector<double> probs;
  probs.reserve(p.probs().size());
  for (const auto& r : p.probs()) probs.push_back(to_double(r));
  return Distribution::make(p.group(), std::move(probs));
}

}  // namespace groupwalk

#pragma once

#include <optional>

#include "groupwalk/distribution.hpp"

namespace groupwalk {

/// Witness that the walk cannot converge: the support lies in the coset
/// coset_rep * subgroup of a proper subgroup H* normal in the support
/// closure. The walk's support then cycles through `period` cosets.
struct Obstruction {
  Subgroup subgroup;      // H*, the minimal witness
  element_t coset_rep;    // b with supp <= b H*, b not in H*
  int period;             // |support closure| / |H*|, always >= 2
};

struct ConvergenceVerdict {
  Subgroup support;  // closure of the positive-mass elements
  std::optional<Obstruction> obstruction;

  bool converges() const { return !obstruction.has_value(); }

  /// The limit law when the walk converges: R(support).
  Distribution limit() const { return uniform_on<double>(support); }
};

/// Fast detector. With S the support, s0 its least element and G1 = <S>,
/// computes H* = normal closure of {s0^-1 s : s in S} inside G1. Any
/// obstructing subgroup must contain every difference and be normal in G1,
/// so H* != G1 is both necessary and sufficient, and H* is the minimal
/// witness (see docs/design-notes.md for the argument).
std::optional<Obstruction> detect_obstruction_from_support(const GroupPtr& group,
                                                           const std::vector<element_t>& support);

/// Literal enumeration oracle: walks every subgroup H of the support
/// closure, every coset b H with b in N(H) \ H, and returns the smallest
/// witness. Independent of the fast detector; used to cross-check it.
std::optional<Obstruction> brute_force_obstruction_from_support(
    const GroupPtr& group, const std::vector<element_t>& support, int lattice_cap = 48);

template <class Scalar>
std::optional<Obstruction> detect_obstruction(const BasicDistribution<Scalar>& p,
                                              const Scalar& atom_threshold = Scalar(0)) {
  return detect_obstruction_from_support(p.group(), support_elements(p, atom_threshold));
}

template <class Scalar>
std::optional<Obstruction> brute_force_obstruction(const BasicDistribution<Scalar>& p,
                                                   int lattice_cap = 48,
                                                   const Scalar& atom_threshold = Scalar(0)) {
  return brute_force_obstruction_from_support(p.group(), support_elements(p, atom_threshold),
                                              lattice_cap);
}

/// Converges iff no obstruction exists; the limit is uniform on the support
/// closure.
template <class Scalar>
ConvergenceVerdict verdict(const BasicDistribution<Scalar>& p,
                           const Scalar& atom_threshold = Scalar(0)) {
  auto support = support_elements(p, atom_threshold);
  return ConvergenceVerdict{subgroup_generated(p.group(), support),
                            detect_obstruction_from_support(p.group(), support)};
}

}  // namespace groupwalk

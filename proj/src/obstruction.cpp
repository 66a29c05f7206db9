#include "groupwalk/obstruction.hpp"

#include <algorithm>
#include <cassert>

namespace groupwalk {

std::optional<Obstruction> detect_obstruction_from_support(
    const GroupPtr& group, const std::vector<element_t>& support) {
  if (support.empty()) throw Error(ErrorKind::EmptySupport, "distribution has empty support");
  const auto& g = *group;
  element_t s0 = *std::min_element(support.begin(), support.end());

  Subgroup closure = subgroup_generated(group, support);
  std::vector<element_t> differences;
  differences.reserve(support.size());
  for (element_t s : support) differences.push_back(g.mul(g.inv(s0), s));

  Subgroup witness = normal_closure(group, closure, differences);
  if (witness.size() == closure.size()) return std::nullopt;

  assert(!witness.contains(s0));
  assert(is_normal_in(witness, closure));
  int period = closure.size() / witness.size();
  return Obstruction{std::move(witness), s0, period};
}

std::optional<Obstruction> brute_force_obstruction_from_support(
    const GroupPtr& group, const std::vector<element_t>& support, int lattice_cap) {
  if (support.empty()) throw Error(ErrorKind::EmptySupport, "distribution has empty support");
  Subgroup closure = subgroup_generated(group, support);

  // Subgroups arrive sorted by (size, members); the first witness is the
  // minimal one.
  for (const Subgroup& h : enumerate_subgroups(closure, lattice_cap)) {
    if (h.size() == closure.size()) continue;
    Subgroup norm = normalizer_in(closure, h);
    for (element_t b : norm.members()) {
      if (h.contains(b)) continue;
      Coset coset{h, b, CosetSide::Left};
      bool covers = true;
      for (element_t s : support) {
        if (!coset.contains(s)) {
          covers = false;
          break;
        }
      }
      if (covers) {
        auto elems = coset.elements();
        return Obstruction{h, elems.front(), closure.size() / h.size()};
      }
    }
  }
  return std::nullopt;
}

}  // namespace groupwalk

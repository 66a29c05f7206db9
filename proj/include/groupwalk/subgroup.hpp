#pragma once

#include <vector>

#include "groupwalk/group.hpp"

namespace groupwalk {

/// A subset of a FiniteGroup closed under product and inverse. Members are
/// kept sorted by element index so value equality is set equality.
class Subgroup {
 public:
  /// Validates closure, identity membership and Lagrange divisibility.
  static Subgroup make(GroupPtr parent, std::vector<element_t> members);

  static Subgroup trivial(GroupPtr parent);
  static Subgroup whole(GroupPtr parent);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<element_t>& members() const { return members_; }
  int size() const { return int(members_.size()); }
  bool contains(element_t g) const;

  bool operator==(const Subgroup& other) const;

 private:
  Subgroup(GroupPtr parent, std::vector<element_t> members)
      : parent_(std::move(parent)), members_(std::move(members)) {}

  GroupPtr parent_;
  std::vector<element_t> members_;  // sorted
};

enum class CosetSide { Left, Right };

struct Coset {
  Subgroup subgroup;
  element_t representative;  // least element of the coset
  CosetSide side;

  std::vector<element_t> elements() const;
  bool contains(element_t g) const;
};

/// Smallest subgroup containing the seed. Empty seed yields the trivial one.
Subgroup subgroup_generated(const GroupPtr& group, const std::vector<element_t>& seed);

/// Smallest subgroup containing the seed that is invariant under conjugation
/// by every element of the ambient subgroup. Seed must lie inside ambient.
Subgroup normal_closure(const GroupPtr& group, const Subgroup& ambient,
                        const std::vector<element_t>& seed);

/// {g in G : g H g^-1 = H}.
Subgroup normalizer(const GroupPtr& group, const Subgroup& subgroup);

/// Normalizer computed inside an ambient subgroup.
Subgroup normalizer_in(const Subgroup& ambient, const Subgroup& subgroup);

/// All subgroups of `group`, each once, ordered by (size, member list).
/// Breadth-first extend-and-close over the lattice; this is the oracle path,
/// capped at `order_cap` elements.
std::vector<Subgroup> enumerate_subgroups(const GroupPtr& group, int order_cap = 48);

/// All subgroups of `ambient` (as subgroups of the parent group).
std::vector<Subgroup> enumerate_subgroups(const Subgroup& ambient, int order_cap = 48);

/// Partition of the group into left cosets gH; the first cell is H itself.
std::vector<Coset> left_cosets(const GroupPtr& group, const Subgroup& subgroup);

bool is_normal_in(const Subgroup& subgroup, const Subgroup& ambient);

}  // namespace groupwalk

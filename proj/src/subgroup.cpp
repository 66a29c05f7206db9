#include "groupwalk/subgroup.hpp"

#include <algorithm>
#include <set>

namespace groupwalk {

namespace {

// Worklist set over element indices with O(1) membership.
struct ElementSet {
  std::vector<char> in;
  std::vector<element_t> list;

  explicit ElementSet(int n) : in(n, 0) {}

  bool add(element_t g) {
    if (in[g]) return false;
    in[g] = 1;
    list.push_back(g);
    return true;
  }
};

std::vector<element_t> sorted(std::vector<element_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

Subgroup Subgroup::make(GroupPtr parent, std::vector<element_t> members) {
  members = sorted(std::move(members));
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const auto& g = *parent;
  bool has_identity = std::binary_search(members.begin(), members.end(), g.identity());
  if (!has_identity)
    throw Error(ErrorKind::ConfigError, "subgroup does not contain the identity");
  for (element_t a : members) {
    if (a < 0 || a >= g.order())
      throw Error(ErrorKind::ConfigError, "member " + std::to_string(a) + " out of range");
    if (!std::binary_search(members.begin(), members.end(), g.inv(a)))
      throw Error(ErrorKind::ConfigError,
                  "subgroup not closed under inverse at " + std::to_string(a));
    for (element_t b : members)
      if (!std::binary_search(members.begin(), members.end(), g.mul(a, b)))
        throw Error(ErrorKind::ConfigError, "subgroup not closed under product at " +
                                                std::to_string(a) + "*" + std::to_string(b));
  }
  if (g.order() % int(members.size()) != 0)
    throw Error(ErrorKind::ConfigError, "subgroup size does not divide group order");
  return Subgroup(std::move(parent), std::move(members));
}

Subgroup Subgroup::trivial(GroupPtr parent) {
  element_t e = parent->identity();
  return Subgroup(std::move(parent), {e});
}

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<element_t> all(parent->order());
  for (int i = 0; i < int(all.size()); ++i) all[i] = i;
  return Subgroup(std::move(parent), std::move(all));
}

bool Subgroup::contains(element_t g) const {
  return std::binary_search(members_.begin(), members_.end(), g);
}

bool Subgroup::operator==(const Subgroup& other) const {
  return parent_.get() == other.parent_.get() && members_ == other.members_;
}

std::vector<element_t> Coset::elements() const {
  const auto& g = *subgroup.parent();
  std::vector<element_t> out;
  out.reserve(subgroup.size());
  for (element_t h : subgroup.members())
    out.push_back(side == CosetSide::Left ? g.mul(representative, h) : g.mul(h, representative));
  return sorted(std::move(out));
}

bool Coset::contains(element_t x) const {
  const auto& g = *subgroup.parent();
  element_t r = representative;
  // x in rH  <=>  r^-1 x in H
  return side == CosetSide::Left ? subgroup.contains(g.mul(g.inv(r), x))
                                 : subgroup.contains(g.mul(x, g.inv(r)));
}

Subgroup subgroup_generated(const GroupPtr& group, const std::vector<element_t>& seed) {
  const auto& g = *group;
  ElementSet set(g.order());
  set.add(g.identity());
  for (element_t s : seed) {
    if (s < 0 || s >= g.order())
      throw Error(ErrorKind::ConfigError, "seed element " + std::to_string(s) + " out of range");
    set.add(s);
  }
  for (size_t head = 0; head < set.list.size(); ++head) {
    element_t x = set.list[head];
    set.add(g.inv(x));
    for (size_t j = 0; j < set.list.size(); ++j) {
      element_t y = set.list[j];
      set.add(g.mul(x, y));
      set.add(g.mul(y, x));
    }
  }
  return Subgroup::make(group, std::move(set.list));
}

Subgroup normal_closure(const GroupPtr& group, const Subgroup& ambient,
                        const std::vector<element_t>& seed) {
  const auto& g = *group;
  for (element_t s : seed)
    if (!ambient.contains(s))
      throw Error(ErrorKind::SeedOutsideAmbient,
                  "seed element " + std::to_string(s) + " not in ambient subgroup");
  ElementSet set(g.order());
  set.add(g.identity());
  for (element_t s : seed) set.add(s);
  for (size_t head = 0; head < set.list.size(); ++head) {
    element_t x = set.list[head];
    set.add(g.inv(x));
    for (size_t j = 0; j < set.list.size(); ++j) {
      element_t y = set.list[j];
      set.add(g.mul(x, y));
      set.add(g.mul(y, x));
    }
    for (element_t c : ambient.members()) set.add(g.mul(g.mul(c, x), g.inv(c)));
  }
  return Subgroup::make(group, std::move(set.list));
}

Subgroup normalizer(const GroupPtr& group, const Subgroup& subgroup) {
  return normalizer_in(Subgroup::whole(group), subgroup);
}

Subgroup normalizer_in(const Subgroup& ambient, const Subgroup& subgroup) {
  const auto& g = *ambient.parent();
  std::vector<element_t> result;
  for (element_t c : ambient.members()) {
    bool normalizes = true;
    for (element_t h : subgroup.members()) {
      if (!subgroup.contains(g.mul(g.mul(c, h), g.inv(c)))) {
        normalizes = false;
        break;
      }
    }
    if (normalizes) result.push_back(c);
  }
  return Subgroup::make(ambient.parent(), std::move(result));
}

std::vector<Subgroup> enumerate_subgroups(const GroupPtr& group, int order_cap) {
  return enumerate_subgroups(Subgroup::whole(group), order_cap);
}

std::vector<Subgroup> enumerate_subgroups(const Subgroup& ambient, int order_cap) {
  if (ambient.size() > order_cap)
    throw Error(ErrorKind::OrderCapExceeded, "subgroup enumeration cap " +
                                                 std::to_string(order_cap) + " exceeded by order " +
                                                 std::to_string(ambient.size()));
  const GroupPtr& group = ambient.parent();
  std::set<std::vector<element_t>> known;
  std::vector<std::vector<element_t>> queue;
  queue.push_back(Subgroup::trivial(group).members());
  known.insert(queue.back());
  for (size_t head = 0; head < queue.size(); ++head) {
    std::vector<element_t> base = queue[head];
    for (element_t g : ambient.members()) {
      if (std::binary_search(base.begin(), base.end(), g)) continue;
      std::vector<element_t> seed = base;
      seed.push_back(g);
      auto extended = subgroup_generated(group, seed).members();
      if (known.insert(extended).second) queue.push_back(std::move(extended));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(known.size());
  for (const auto& members : known) out.push_back(Subgroup::make(group, members));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return out;
}

std::vector<Coset> left_cosets(const GroupPtr& group, const Subgroup& subgroup) {
  const auto& g = *group;
  std::vector<char> assigned(g.order(), 0);
  std::vector<Coset> out;

  auto emit = [&](element_t rep) {
    Coset coset{subgroup, rep, CosetSide::Left};
    auto elems = coset.elements();
    coset.representative = elems.front();  // canonical: least element
    for (element_t x : elems) assigned[x] = 1;
    out.push_back(std::move(coset));
  };

  emit(g.identity());  // first cell is H itself
  for (element_t x = 0; x < g.order(); ++x)
    if (!assigned[x]) emit(x);
  return out;
}

bool is_normal_in(const Subgroup& subgroup, const Subgroup& ambient) {
  const auto& g = *ambient.parent();
  for (element_t c : ambient.members())
    for (element_t h : subgroup.members())
      if (!subgroup.contains(g.mul(g.mul(c, h), g.inv(c)))) return false;
  return true;
}

}  // namespace groupwalk

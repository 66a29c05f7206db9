#include <doctest.h>

#include <set>

#include "groupwalk/subgroup.hpp"
#include "test_support.hpp"

using namespace groupwalk;

namespace {

// S3 built from {(0 1), (0 1 2)}; BFS ordering gives
//   0:e  1:(0 1)  2:(0 1 2)  3:(0 2)  4:(1 2)  5:(0 2 1)
GroupPtr s3() {
  return FiniteGroup::from_permutations({parse_cycles("(0 1)"), parse_cycles("(0 1 2)")});
}

}  // namespace

TEST_CASE("subgroup_generated matches the closure oracle") {
  auto z6 = FiniteGroup::preset("cyclic(6)");
  auto h = subgroup_generated(z6, {2});
  CHECK(h.members() == std::vector<element_t>{0, 2, 4});
  CHECK(h.members() == testsupport::closure_oracle(z6, {2}));

  CHECK(subgroup_generated(z6, {}).members() == std::vector<element_t>{0});
  CHECK(subgroup_generated(z6, {0, 1, 2, 3, 4, 5}).size() == 6);
}

TEST_CASE("subgroup_generated is idempotent and monotone") {
  auto g = FiniteGroup::preset("dihedral(4)");
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<element_t> seed;
    for (int i = 0; i < 3; ++i) seed.push_back(element_t(rng() % 8));
    auto h = subgroup_generated(g, seed);
    CHECK(subgroup_generated(g, h.members()).members() == h.members());
    std::vector<element_t> larger = seed;
    larger.push_back(element_t(rng() % 8));
    auto h2 = subgroup_generated(g, larger);
    for (element_t m : h.members()) CHECK(h2.contains(m));
  }
}

TEST_CASE("normal_closure of a 3-cycle in S3 is the alternating subgroup") {
  auto g = s3();
  auto whole = Subgroup::whole(g);
  auto h = normal_closure(g, whole, {2});
  CHECK(h.members() == std::vector<element_t>{0, 2, 5});
  CHECK(is_normal_in(h, whole));

  CHECK(normal_closure(g, whole, {}).members() == std::vector<element_t>{0});

  // abelian ambient: normal closure degenerates to plain closure
  auto z6 = FiniteGroup::preset("cyclic(6)");
  CHECK(normal_closure(z6, Subgroup::whole(z6), {2}).members() ==
        subgroup_generated(z6, {2}).members());

  try {
    normal_closure(g, subgroup_generated(g, {2}), {1});
    FAIL("expected SeedOutsideAmbient");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SeedOutsideAmbient);
  }
}

TEST_CASE("normal_closure output is conjugation invariant") {
  auto g = FiniteGroup::preset("symmetric(4)");
  auto whole = Subgroup::whole(g);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<element_t> seed{element_t(rng() % 24)};
    auto h = normal_closure(g, whole, seed);
    CHECK(is_normal_in(h, whole));
    for (element_t s : seed) CHECK(h.contains(s));
  }
}

TEST_CASE("normal_closure is the smallest normal subgroup containing the seed") {
  std::mt19937_64 rng(13);
  for (const char* name : {"symmetric(4)", "dihedral(6)", "quaternion8"}) {
    auto g = FiniteGroup::preset(name);
    auto whole = Subgroup::whole(g);
    auto lattice = enumerate_subgroups(g);
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<element_t> seed{element_t(rng() % g->order())};
      if (trial % 2) seed.push_back(element_t(rng() % g->order()));
      auto h = normal_closure(g, whole, seed);

      // oracle: scan the full lattice for the smallest normal subgroup
      // containing the seed
      const Subgroup* best = nullptr;
      for (const auto& candidate : lattice) {
        bool contains_seed = true;
        for (element_t s : seed) contains_seed = contains_seed && candidate.contains(s);
        if (!contains_seed || !is_normal_in(candidate, whole)) continue;
        if (!best || candidate.size() < best->size()) best = &candidate;
      }
      REQUIRE(best != nullptr);
      CHECK(h.members() == best->members());
    }
  }
}

TEST_CASE("every generated subgroup appears in the lattice enumeration") {
  std::mt19937_64 rng(19);
  for (const char* name : {"symmetric(4)", "dihedral(5)"}) {
    auto g = FiniteGroup::preset(name);
    auto lattice = enumerate_subgroups(g);
    std::set<std::vector<element_t>> members;
    for (const auto& h : lattice) members.insert(h.members());
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<element_t> seed{element_t(rng() % g->order()), element_t(rng() % g->order())};
      CHECK(members.count(subgroup_generated(g, seed).members()) == 1);
    }
  }
}

TEST_CASE("normalizer") {
  auto g = s3();
  auto transposition = subgroup_generated(g, {1});
  CHECK(normalizer(g, transposition).members() == std::vector<element_t>{0, 1});

  auto a3 = subgroup_generated(g, {2});
  CHECK(normalizer(g, a3).size() == 6);  // normal subgroup

  CHECK(normalizer(g, Subgroup::trivial(g)).size() == 6);

  // always contains the subgroup itself
  for (const auto& h : enumerate_subgroups(g)) {
    auto n = normalizer(g, h);
    for (element_t m : h.members()) CHECK(n.contains(m));
  }
}

TEST_CASE("enumerate_subgroups counts") {
  // cyclic(n): one subgroup per divisor
  auto divisors = [](int n) {
    int count = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) ++count;
    return count;
  };
  for (int n = 1; n <= 12; ++n) {
    auto g = FiniteGroup::preset("cyclic(" + std::to_string(n) + ")");
    CHECK(int(enumerate_subgroups(g).size()) == divisors(n));
  }
  CHECK(enumerate_subgroups(s3()).size() == 6);
  CHECK(enumerate_subgroups(FiniteGroup::preset("dihedral(4)")).size() == 10);
  CHECK(enumerate_subgroups(FiniteGroup::preset("quaternion8")).size() == 6);
  CHECK(enumerate_subgroups(FiniteGroup::preset("cyclic(1)")).size() == 1);

  // deterministic order: by size, then member list
  auto subs = enumerate_subgroups(s3());
  for (size_t i = 1; i < subs.size(); ++i) {
    bool ordered = subs[i - 1].size() < subs[i].size() ||
                   (subs[i - 1].size() == subs[i].size() &&
                    subs[i - 1].members() < subs[i].members());
    CHECK(ordered);
  }

  try {
    enumerate_subgroups(FiniteGroup::preset("symmetric(4)"), 10);
    FAIL("expected OrderCapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderCapExceeded);
  }
}

TEST_CASE("left cosets partition the group") {
  auto z4 = FiniteGroup::preset("cyclic(4)");
  auto h = subgroup_generated(z4, {2});
  auto cosets = left_cosets(z4, h);
  REQUIRE(cosets.size() == 2);
  CHECK(cosets[0].elements() == std::vector<element_t>{0, 2});  // first cell is H
  CHECK(cosets[1].elements() == std::vector<element_t>{1, 3});

  for (const char* name : {"symmetric(3)", "dihedral(4)", "quaternion8"}) {
    auto g = FiniteGroup::preset(name);
    for (const auto& h2 : enumerate_subgroups(g)) {
      auto cells = left_cosets(g, h2);
      CHECK(int(cells.size()) == g->order() / h2.size());
      std::vector<char> hit(g->order(), 0);
      for (const auto& cell : cells) {
        auto elems = cell.elements();
        CHECK(int(elems.size()) == h2.size());
        for (element_t e : elems) {
          CHECK(!hit[e]);
          hit[e] = 1;
        }
      }
    }
  }

  CHECK(left_cosets(z4, Subgroup::whole(z4)).size() == 1);
  CHECK(left_cosets(z4, Subgroup::trivial(z4)).size() == 4);
}

#include <doctest.h>

#include "groupwalk/distribution.hpp"
#include "test_support.hpp"

using namespace groupwalk;

TEST_CASE("uniform_on") {
  auto z2 = FiniteGroup::preset("cyclic(2)");
  auto u = uniform_on<double>(Subgroup::whole(z2));
  CHECK(u.probs() == std::vector<double>{0.5, 0.5});

  auto e = uniform_on<double>(Subgroup::trivial(z2));
  CHECK(e.probs() == std::vector<double>{1.0, 0.0});

  auto z4 = FiniteGroup::preset("cyclic(4)");
  auto h = uniform_on<double>(subgroup_generated(z4, {2}));
  CHECK(h.probs() == std::vector<double>{0.5, 0.0, 0.5, 0.0});

  auto r = uniform_on<Rational>(subgroup_generated(z4, {2}));
  CHECK(r.prob(0) == Rational(1, 2));
  CHECK(r.prob(1) == Rational(0));
}

TEST_CASE("distribution validation") {
  auto z2 = FiniteGroup::preset("cyclic(2)");
  try {
    Distribution::make(z2, {0.6, 0.6});
    FAIL("expected InvalidDistribution");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDistribution);
  }
  try {
    Distribution::make(z2, {1.5, -0.5});
    FAIL("expected InvalidDistribution");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDistribution);
  }
  try {
    RationalDistribution::make(z2, {Rational(1, 3), Rational(1, 3)});
    FAIL("expected InvalidDistribution");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDistribution);
  }
}

TEST_CASE("convolve point masses and uniform absorption") {
  auto g = FiniteGroup::preset("dihedral(3)");
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    element_t a = element_t(rng() % 6), b = element_t(rng() % 6);
    auto pa = point_mass<double>(g, a);
    auto pb = point_mass<double>(g, b);
    auto prod = convolve(pa, pb);
    CHECK(prod.prob(g->mul(a, b)) == 1.0);
  }

  // p * R(G) = R(G) for any p
  auto u = uniform_on<Rational>(Subgroup::whole(g));
  auto p = testsupport::random_rational_distribution(g, rng);
  CHECK(convolve(p, u).probs() == u.probs());
  CHECK(convolve(u, p).probs() == u.probs());
}

TEST_CASE("cyclic(3) worked convolution") {
  auto z3 = FiniteGroup::preset("cyclic(3)");
  auto p = RationalDistribution::make(z3, {Rational(0), Rational(1, 2), Rational(1, 2)});
  auto p2 = convolve(p, p);
  CHECK(p2.prob(0) == Rational(1, 2));
  CHECK(p2.prob(1) == Rational(1, 4));
  CHECK(p2.prob(2) == Rational(1, 4));

  CHECK(convolution_power(p, 2).probs() == p2.probs());
  CHECK(convolution_power(p, 1).probs() == p.probs());

  auto oracle = testsupport::convolve_oracle(z3, p.probs(), p.probs());
  CHECK(p2.probs() == oracle);
}

TEST_CASE("convolution is associative") {
  auto g = FiniteGroup::preset("quaternion8");
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    auto p = testsupport::random_rational_distribution(g, rng);
    auto q = testsupport::random_rational_distribution(g, rng);
    auto r = testsupport::random_rational_distribution(g, rng);
    CHECK(convolve(convolve(p, q), r).probs() == convolve(p, convolve(q, r)).probs());

    auto pd = to_double_distribution(p), qd = to_double_distribution(q),
         rd = to_double_distribution(r);
    auto left = convolve(convolve(pd, qd), rd);
    auto right = convolve(pd, convolve(qd, rd));
    for (element_t x = 0; x < g->order(); ++x)
      CHECK(std::abs(left.prob(x) - right.prob(x)) <= 1e-12);
  }
}

TEST_CASE("convolution_power equals sequential convolution") {
  auto g = FiniteGroup::preset("dihedral(4)");
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = testsupport::random_rational_distribution(g, rng);
    auto sequential = p;
    for (int n = 2; n <= 16; ++n) {
      sequential = convolve(sequential, p);
      CHECK(convolution_power(p, n).probs() == sequential.probs());
    }
  }
}

TEST_CASE("point mass powers") {
  auto g = FiniteGroup::preset("quaternion8");
  element_t i = g->find_label("i");
  auto p = point_mass<Rational>(g, i);
  for (int n = 1; n <= 8; ++n) CHECK(convolution_power(p, n).prob(g->pow(i, n)) == Rational(1));
}

TEST_CASE("support_subgroup") {
  auto z4 = FiniteGroup::preset("cyclic(4)");
  auto p = Distribution::make(z4, {0.0, 0.0, 1.0, 0.0});
  CHECK(support_subgroup(p).members() == std::vector<element_t>{0, 2});

  CHECK(support_subgroup(point_mass<double>(z4, 0)).members() == std::vector<element_t>{0});

  auto q = Distribution::make(z4, {0.0, 0.5, 0.5, 0.0});
  CHECK(support_subgroup(q).size() == 4);

  // support of powers never grows beyond the support closure
  auto g = FiniteGroup::preset("symmetric(4)");
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    auto p2 = testsupport::random_rational_distribution(g, rng);
    auto closure = support_subgroup(p2);
    auto walk = p2;
    for (int n = 1; n <= 6; ++n) {
      for (element_t s : support_elements(walk)) CHECK(closure.contains(s));
      walk = convolve(walk, p2);
    }
  }
}

TEST_CASE("atom threshold") {
  auto z4 = FiniteGroup::preset("cyclic(4)");
  auto p = Distribution::make(z4, {0.9999, 0.0, 1e-4, 0.0});
  CHECK(support_subgroup(p).size() == 2);
  CHECK(support_subgroup(p, 1e-3).size() == 1);
}

TEST_CASE("tv_distance") {
  auto z2 = FiniteGroup::preset("cyclic(2)");
  auto p = Distribution::make(z2, {1.0, 0.0});
  auto q = Distribution::make(z2, {0.5, 0.5});
  CHECK(tv_distance(p, p) == 0.0);
  CHECK(tv_distance(p, q) == 0.5);

  auto z4 = FiniteGroup::preset("cyclic(4)");
  auto a = Distribution::make(z4, {0.5, 0.5, 0.0, 0.0});
  auto b = Distribution::make(z4, {0.0, 0.0, 0.5, 0.5});
  CHECK(tv_distance(a, b) == 1.0);

  try {
    tv_distance(p, a);
    FAIL("expected GroupMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GroupMismatch);
  }
}

TEST_CASE("decay_trace worked values and monotonicity") {
  // alternating walk on Z2: d(n) = 1/2 forever
  auto z2 = FiniteGroup::preset("cyclic(2)");
  auto flip = point_mass<Rational>(z2, 1);
  for (const auto& [n, tv] : decay_trace(flip, 12)) CHECK(tv == Rational(1, 2));

  // uniform start: identically zero
  auto z3 = FiniteGroup::preset("cyclic(3)");
  auto u = uniform_on<Rational>(Subgroup::whole(z3));
  for (const auto& [n, tv] : decay_trace(u, 6)) CHECK(tv == Rational(0));

  // cyclic(3), p = (0, 1/2, 1/2): exact halving, d(1) = 1/3
  auto p = RationalDistribution::make(z3, {Rational(0), Rational(1, 2), Rational(1, 2)});
  auto trace = decay_trace(p, 10);
  CHECK(trace[0].second == Rational(1, 3));
  CHECK(trace[1].second == Rational(1, 6));
  for (size_t i = 1; i < trace.size(); ++i)
    CHECK(trace[i].second * 2 == trace[i - 1].second);

  // non-increasing on random inputs
  auto g = FiniteGroup::preset("dihedral(5)");
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    auto q = testsupport::random_rational_distribution(g, rng);
    auto t = decay_trace(q, 20);
    for (size_t i = 1; i < t.size(); ++i) CHECK(t[i].second <= t[i - 1].second);
  }
}

TEST_CASE("uniform on support closure is a two-sided fixed point") {
  auto g = FiniteGroup::preset("symmetric(3)");
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = testsupport::random_rational_distribution(g, rng);
    auto u = uniform_on<Rational>(support_subgroup(p));
    CHECK(convolve(p, u).probs() == u.probs());
    CHECK(convolve(u, p).probs() == u.probs());
  }
}

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "enclose/decomposition.hpp"
#include "support.hpp"

using enclose::ClassKind;
using enclose::classify_class;
using enclose::complete_multigraph;
using enclose::Multigraph;
using enclose::profile;
using enclose::validate;
using testsupport::decomposition_of;
using testsupport::graph_of;

TEST_CASE("classify_class picks the most specific kind") {
  CHECK(classify_class(graph_of(3, {{0, 1}})) == ClassKind::PathForest);
  CHECK(classify_class(graph_of(3, {{0, 1}, {1, 2}, {2, 0}})) ==
        ClassKind::HamiltonianCycle);

  // double edge plus isolated vertices: a 2-cycle
  Multigraph two_cycle(4);
  two_cycle.add_edges(0, 1, 2);
  CHECK(classify_class(two_cycle) == ClassKind::PathsAndCycles);

  // triangle inside K_4 is not spanning-2-regular
  CHECK(classify_class(graph_of(4, {{0, 1}, {1, 2}, {2, 0}})) ==
        ClassKind::PathsAndCycles);

  // two disjoint 2-cycles on 4 vertices form a 2-factor
  Multigraph tf(4);
  tf.add_edges(0, 1, 2);
  tf.add_edges(2, 3, 2);
  CHECK(classify_class(tf) == ClassKind::TwoFactor);

  CHECK(classify_class(graph_of(4, {{0, 1}, {0, 2}, {0, 3}})) ==
        ClassKind::Invalid);

  CHECK(classify_class(Multigraph(3)) == ClassKind::PathForest);
}

TEST_CASE("validate flags the first offending class") {
  const auto ok =
      decomposition_of(3, {{{0, 1}}, {{1, 2}}, {{2, 0}}});
  CHECK(validate(ok, true).ok);

  const auto triangle =
      decomposition_of(3, {{{0, 1}, {1, 2}, {2, 0}}, {}, {}});
  CHECK(validate(triangle, false).ok);
  const auto strong = validate(triangle, true);
  CHECK_FALSE(strong.ok);
  CHECK(strong.offending_class == 0);

  const auto star = decomposition_of(4, {{{0, 1}, {0, 2}, {0, 3}}, {}});
  CHECK_FALSE(validate(star, false).ok);
}

TEST_CASE("profile counts classes by size") {
  const auto singles = decomposition_of(3, {{{0, 1}}, {{1, 2}}, {{2, 0}}});
  auto p = profile(singles);
  CHECK(p.s_at(1) == 3);
  CHECK(p.s_at(0) == 0);
  CHECK(p.s1(0, 1) == 1);
  CHECK(p.s1(1, 2) == 1);
  CHECK(p.s1(0, 2) == 1);
  CHECK(p.two_factor_count == 0);
  CHECK(p.cycle_free_count == 3);

  const auto triangle =
      decomposition_of(3, {{{0, 1}, {1, 2}, {2, 0}}, {}, {}});
  p = profile(triangle);
  CHECK(p.s_at(0) == 2);
  CHECK(p.s_at(3) == 1);
  CHECK(p.two_factor_count == 1);

  // 2K_3 into three 2-paths
  const auto two_paths = decomposition_of(
      3, {{{0, 1}, {1, 2}}, {{1, 2}, {2, 0}}, {{2, 0}, {0, 1}}});
  REQUIRE(two_paths.base == complete_multigraph(3, 2));
  p = profile(two_paths);
  CHECK(p.s_at(2) == 3);
  CHECK(p.two_factor_count == 0);

  const auto invalid = decomposition_of(4, {{{0, 1}, {0, 2}, {0, 3}}});
  CHECK_THROWS_AS(profile(invalid), std::invalid_argument);
}

TEST_CASE("profile is invariant under class permutation") {
  auto d = decomposition_of(
      4, {{{0, 1}, {1, 2}}, {{2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}}, {}});
  const auto before = profile(d);
  std::reverse(d.classes.begin(), d.classes.end());
  const auto after = profile(d);
  CHECK(before.s == after.s);
  CHECK(before.two_factor_count == after.two_factor_count);
  CHECK(before.cycle_free_count == after.cycle_free_count);

  long long total = 0;
  for (size_t i = 0; i < before.s.size(); ++i) total += before.s[i];
  CHECK(total == before.k);
  long long pair_sum = 0;
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) pair_sum += before.s1(u, v);
  }
  CHECK(pair_sum == before.s_at(1));
}

TEST_CASE("class edge counts sum to the base") {
  const auto d = decomposition_of(
      4, {{{0, 1}, {1, 2}}, {{2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}}, {}});
  long long sum = 0;
  for (const auto& c : d.classes) sum += c.edge_count();
  CHECK(sum == d.base.edge_count());
  CHECK(d.consistent());
}

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "enclose/decomposition.hpp"
#include "enclose/errors.hpp"
#include "enclose/flow.hpp"
#include "enclose/multigraph.hpp"

namespace enclose {

// Unordered vertex pairs in lexicographic order and their dense indices.
inline std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(n) * (static_cast<size_t>(n) - 1) / 2);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  return pairs;
}

inline int pair_index(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  // index of (u,v) among lexicographically ordered pairs
  return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

struct BoundEval {
  bool ok = true;
  long long lhs = 0;
  long long rhs = 0;
};

// Needed-edge count against the spare-edge supply: classes with fewer than
// min_edges edges must be topped up, and mu*K_n minus lambda*K_n has
// (mu-lambda)*n(n-1)/2 edges to spend. Non-positive min_edges asks nothing.
inline BoundEval check_star(const DecompositionProfile& p, int min_edges,
                            int lambda, int mu) {
  BoundEval r;
  for (int i = 0; i < min_edges; ++i) {
    r.lhs += static_cast<long long>(min_edges - i) * p.s_at(i);
  }
  r.rhs = static_cast<long long>(mu - lambda) * p.n * (p.n - 1) / 2;
  r.ok = r.lhs <= r.rhs;
  return r;
}

namespace detail {

// Spare edge pool of mu*K_n minus the base of A, as per-pair counts.
inline std::vector<int> spare_pool(const Decomposition& a, int mu) {
  const int n = a.vertex_count();
  std::vector<int> pool;
  pool.reserve(static_cast<size_t>(n) * (static_cast<size_t>(n) - 1) / 2);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const int spare = mu - a.base.mult(u, v);
      check_arg(spare >= 0, "base graph exceeds the target multiplicity");
      pool.push_back(spare);
    }
  }
  return pool;
}

}  // namespace detail

// Gives every empty class one distinct spare edge. Preserves strongness:
// a single added edge cannot close a cycle in an empty class.
inline Decomposition extend_1(const Decomposition& a, int mu) {
  const auto verdict = validate(a, false);
  check_arg(verdict.ok, "extend_1: input is not a path decomposition (class " +
                            std::to_string(verdict.offending_class) + ")");
  std::vector<int> empty_classes;
  for (int i = 0; i < a.k(); ++i) {
    if (a.classes[static_cast<size_t>(i)].empty()) empty_classes.push_back(i);
  }
  if (empty_classes.empty()) return a;

  const int lambda = uniform_multiplicity(a);
  const int n = a.vertex_count();
  auto pool = detail::spare_pool(a, mu);
  long long supply = 0;
  for (int c : pool) supply += c;
  if (static_cast<long long>(empty_classes.size()) > supply) {
    throw infeasible_error(
        "1-extension infeasible: " + std::to_string(empty_classes.size()) +
        " empty classes but only " + std::to_string(supply) +
        " spare edges in muK_n minus lambdaK_n (mu=" + std::to_string(mu) +
        ", lambda=" + std::to_string(lambda) + ")");
  }

  Decomposition out = a;
  const auto pairs = all_pairs(n);
  size_t p = 0;
  for (int cls : empty_classes) {
    while (pool[p] == 0) ++p;
    --pool[p];
    const auto [u, v] = pairs[p];
    out.classes[static_cast<size_t>(cls)].add_edge(u, v);
    out.base.add_edge(u, v);
  }
  return out;
}

// Tops every class up to two edges, spending spare edges greedily: empty
// classes first, then single-edge classes, pool consumed in lexicographic
// order. Parallel copies may land together and form 2-cycles, which a path
// decomposition tolerates.
inline Decomposition extend_2_weak(const Decomposition& a, int mu) {
  const auto verdict = validate(a, false);
  check_arg(verdict.ok,
            "extend_2_weak: input is not a path decomposition (class " +
                std::to_string(verdict.offending_class) + ")");
  std::vector<int> zero_classes, one_classes;
  for (int i = 0; i < a.k(); ++i) {
    const long long e = a.classes[static_cast<size_t>(i)].edge_count();
    if (e == 0) zero_classes.push_back(i);
    else if (e == 1) one_classes.push_back(i);
  }
  const long long needed =
      2 * static_cast<long long>(zero_classes.size()) +
      static_cast<long long>(one_classes.size());
  if (needed == 0) return a;

  const int lambda = uniform_multiplicity(a);
  const int n = a.vertex_count();
  auto pool = detail::spare_pool(a, mu);
  long long supply = 0;
  for (int c : pool) supply += c;
  if (needed > supply) {
    throw infeasible_error(
        "2-extension infeasible: need " + std::to_string(needed) +
        " spare edges (2 per empty class, 1 per single-edge class) but only " +
        std::to_string(supply) + " exist (mu=" + std::to_string(mu) +
        ", lambda=" + std::to_string(lambda) + ")");
  }

  Decomposition out = a;
  const auto pairs = all_pairs(n);
  size_t p = 0;
  auto take = [&](int cls) {
    while (pool[p] == 0) ++p;
    --pool[p];
    const auto [u, v] = pairs[p];
    out.classes[static_cast<size_t>(cls)].add_edge(u, v);
    out.base.add_edge(u, v);
  };
  for (int cls : zero_classes) {
    take(cls);
    take(cls);
  }
  for (int cls : one_classes) take(cls);

  check_internal(validate(out, false).ok,
                 "extend_2_weak produced an invalid decomposition");
  return out;
}

struct AddibleVerdict {
  bool ok = true;
  BoundEval total;     // |S_1| against the spare supply
  BoundEval pair;      // worst pair against the non-parallel supply
  int worst_u = -1, worst_v = -1;
};

// An injection from single-edge classes to spare edges avoiding parallel
// images exists iff |S_1| fits the supply and no pair is overloaded.
inline AddibleVerdict check_addible(const DecompositionProfile& p, int lambda,
                                    int mu) {
  AddibleVerdict r;
  const long long pair_total =
      static_cast<long long>(p.n) * (p.n - 1) / 2;
  r.total.lhs = p.s_at(1);
  r.total.rhs = static_cast<long long>(mu - lambda) * pair_total;
  r.total.ok = r.total.lhs <= r.total.rhs;
  r.pair.lhs = 0;
  r.pair.rhs = static_cast<long long>(mu - lambda) * (pair_total - 1);
  r.pair.ok = true;
  for (int u = 0; u < p.n; ++u) {
    for (int v = u + 1; v < p.n; ++v) {
      if (p.s1(u, v) > r.pair.lhs) {
        r.pair.lhs = p.s1(u, v);
        r.worst_u = u;
        r.worst_v = v;
      }
    }
  }
  r.pair.ok = r.pair.lhs <= r.pair.rhs;
  r.ok = r.total.ok && r.pair.ok;
  return r;
}

// Finds targets for the single-edge classes: phi[i] is the pair receiving the
// image of s1_edges[i], never equal to s1_edges[i] itself, with at most
// mu - lambda images per pair. Returns nullopt when no such injection exists.
// Ties are broken deterministically: sources in lexicographic pair order,
// flow units consumed in lexicographic target order.
inline std::optional<std::vector<std::pair<int, int>>> solve_addible(
    const std::vector<std::pair<int, int>>& s1_edges, int lambda, int mu,
    int n) {
  if (s1_edges.empty()) return std::vector<std::pair<int, int>>{};
  check_arg(n >= 2, "solve_addible: need at least two vertices");
  const int pair_total = n * (n - 1) / 2;
  std::vector<long long> per_pair(static_cast<size_t>(pair_total), 0);
  for (const auto& [u, v] : s1_edges) {
    ++per_pair[static_cast<size_t>(pair_index(n, u, v))];
  }

  FlowNetwork net(pair_total, per_pair, mu - lambda);
  const long long value = net.solve();
  if (value < static_cast<long long>(s1_edges.size())) return std::nullopt;

  // Units out of each source pair, consumed in target-lex order, matched to
  // the s1 edges of that pair in input order.
  std::vector<std::vector<size_t>> edges_of_pair(
      static_cast<size_t>(pair_total));
  for (size_t i = 0; i < s1_edges.size(); ++i) {
    edges_of_pair[static_cast<size_t>(
                      pair_index(n, s1_edges[i].first, s1_edges[i].second))]
        .push_back(i);
  }
  const auto pairs = all_pairs(n);
  std::vector<std::pair<int, int>> phi(s1_edges.size(), {-1, -1});
  for (int p = 0; p < pair_total; ++p) {
    size_t next = 0;
    const auto& owners = edges_of_pair[static_cast<size_t>(p)];
    for (int q = 0; q < pair_total && next < owners.size(); ++q) {
      for (int unit = net.units(p, q); unit > 0 && next < owners.size();
           --unit) {
        phi[owners[next++]] = pairs[static_cast<size_t>(q)];
      }
    }
    check_internal(next == owners.size(),
                   "flow decode lost units for a source pair");
  }
  return phi;
}

// Working sets of the strong 2-extension: two_paths holds the edge pairs for
// the empty classes, phi_target[i] the spare image of the i-th single-edge
// class, remaining the untouched spare pool. All entries are pair indices.
struct CompletionSets {
  std::vector<std::array<int, 2>> two_paths;  // E0
  std::vector<int> phi_target;                // E1 via phi
  std::vector<int> remaining;                 // L
};

// Builds E0 and E1 from a solved injection, amending targets through the
// exchange steps when the leftover pool concentrates on one pair.
inline CompletionSets build_completion_sets(long long s0_count,
                                            const std::vector<int>& s1_pairs,
                                            std::vector<int> phi,
                                            int lambda, int mu, int n) {
  const int pair_total = n >= 2 ? n * (n - 1) / 2 : 0;
  std::vector<int> pool(static_cast<size_t>(pair_total), mu - lambda);
  for (int t : phi) {
    check_internal(pool[static_cast<size_t>(t)] > 0,
                   "phi overuses a spare pair");
    --pool[static_cast<size_t>(t)];
  }
  CompletionSets cs;
  cs.phi_target = std::move(phi);
  if (s0_count == 0) {
    cs.remaining = std::move(pool);
    return cs;
  }
  check_internal(pair_total >= 1, "no spare pairs but 2-paths demanded");

  // The pair holding the most leftovers, lexicographic tie-break.
  int xy = 0;
  for (int p = 1; p < pair_total; ++p) {
    if (pool[static_cast<size_t>(p)] > pool[static_cast<size_t>(xy)]) xy = p;
  }

  const long long want = s0_count;
  auto need_more = [&] {
    return static_cast<long long>(cs.two_paths.size()) < want;
  };

  // Pair up leftovers outside xy, most abundant first.
  while (need_more()) {
    int first = -1, second = -1;
    for (int p = 0; p < pair_total; ++p) {
      if (p == xy || pool[static_cast<size_t>(p)] == 0) continue;
      if (first == -1 || pool[static_cast<size_t>(p)] >
                             pool[static_cast<size_t>(first)]) {
        second = first;
        first = p;
      } else if (second == -1 || pool[static_cast<size_t>(p)] >
                                     pool[static_cast<size_t>(second)]) {
        second = p;
      }
    }
    if (first == -1 || second == -1) break;
    cs.two_paths.push_back({std::min(first, second), std::max(first, second)});
    --pool[static_cast<size_t>(first)];
    --pool[static_cast<size_t>(second)];
  }

  // At most one non-xy pair still has leftovers; combine them with xy edges.
  if (need_more()) {
    int leftover = -1;
    for (int p = 0; p < pair_total; ++p) {
      if (p != xy && pool[static_cast<size_t>(p)] > 0) {
        check_internal(leftover == -1,
                       "more than one leftover pair after maximal pairing");
        leftover = p;
      }
    }
    while (need_more() && leftover != -1 &&
           pool[static_cast<size_t>(leftover)] > 0 &&
           pool[static_cast<size_t>(xy)] > 0) {
      cs.two_paths.push_back(
          {std::min(leftover, xy), std::max(leftover, xy)});
      --pool[static_cast<size_t>(leftover)];
      --pool[static_cast<size_t>(xy)];
    }
    if (need_more() && leftover != -1) {
      check_internal(pool[static_cast<size_t>(leftover)] == 0,
                     "xy pool exhausted before the leftover pair; "
                     "contradicts the maximal choice of xy");
    }
  }

  // Leftovers are now all xy edges. Trade existing assignments for pairs of
  // xy edges until enough 2-paths exist.
  while (need_more()) {
    check_internal(pool[static_cast<size_t>(xy)] >= 2,
                   "spare pool exhausted; the counting bound should "
                   "have refused this instance");
    bool advanced = false;
    for (auto& tp : cs.two_paths) {
      if (tp[0] != xy && tp[1] != xy) {
        const int f = tp[1];
        tp[1] = xy;
        if (tp[0] > tp[1]) std::swap(tp[0], tp[1]);
        cs.two_paths.push_back({std::min(f, xy), std::max(f, xy)});
        pool[static_cast<size_t>(xy)] -= 2;
        advanced = true;
        break;
      }
    }
    if (advanced) continue;
    for (size_t i = 0; i < cs.phi_target.size(); ++i) {
      if (cs.phi_target[i] != xy && s1_pairs[i] != xy) {
        const int e = cs.phi_target[i];
        cs.phi_target[i] = xy;
        cs.two_paths.push_back({std::min(e, xy), std::max(e, xy)});
        pool[static_cast<size_t>(xy)] -= 2;
        advanced = true;
        break;
      }
    }
    check_internal(advanced,
                   "no exchange applies; the per-pair bound should "
                   "have refused this instance");
  }

  for (const auto& tp : cs.two_paths) {
    check_internal(tp[0] != tp[1], "a 2-path degenerated into a 2-cycle");
  }
  for (size_t i = 0; i < cs.phi_target.size(); ++i) {
    check_internal(cs.phi_target[i] != s1_pairs[i],
                   "phi maps an edge to a parallel copy");
  }
  cs.remaining = std::move(pool);
  return cs;
}

// Tops every class of a strong path decomposition up to two edges without
// ever closing a cycle: single-edge classes get their injected partner, empty
// classes get a 2-path.
inline Decomposition extend_2_strong(const Decomposition& a, int mu) {
  const auto verdict = validate(a, true);
  check_arg(verdict.ok,
            "extend_2_strong: input is not a strong path decomposition "
            "(class " + std::to_string(verdict.offending_class) + ": " +
                verdict.reason + ")");
  const auto prof = profile(a);
  const int lambda = uniform_multiplicity(a);
  const int n = a.vertex_count();
  const long long pair_total = static_cast<long long>(n) * (n - 1) / 2;

  const long long b1_lhs = 2 * prof.s_at(0) + prof.s_at(1);
  const long long b1_rhs = static_cast<long long>(mu - lambda) * pair_total;
  if (b1_lhs > b1_rhs) {
    throw infeasible_error(
        "strong 2-extension infeasible: 2|S_0|+|S_1| = " +
        std::to_string(b1_lhs) + " exceeds the spare supply " +
        std::to_string(b1_rhs));
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const long long lhs = prof.s_at(0) + prof.s1(u, v);
      const long long rhs =
          static_cast<long long>(mu - lambda) * (pair_total - 1);
      if (lhs > rhs) {
        throw infeasible_error(
            "strong 2-extension infeasible at pair (" + std::to_string(u) +
            "," + std::to_string(v) + "): |S_0|+|S_1(u,v)| = " +
            std::to_string(lhs) + " exceeds the non-parallel supply " +
            std::to_string(rhs));
      }
    }
  }

  std::vector<int> zero_classes, one_classes;
  std::vector<std::pair<int, int>> s1_edges;
  for (int i = 0; i < a.k(); ++i) {
    const Multigraph& c = a.classes[static_cast<size_t>(i)];
    const long long e = c.edge_count();
    if (e == 0) {
      zero_classes.push_back(i);
    } else if (e == 1) {
      one_classes.push_back(i);
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (c.mult(u, v) == 1) s1_edges.emplace_back(u, v);
        }
      }
    }
  }
  if (zero_classes.empty() && one_classes.empty()) return a;

  auto phi = solve_addible(s1_edges, lambda, mu, n);
  check_internal(phi.has_value(),
                 "assignment network came up short although both counting "
                 "bounds hold");
  std::vector<int> s1_pair_idx, phi_idx;
  s1_pair_idx.reserve(s1_edges.size());
  phi_idx.reserve(s1_edges.size());
  for (const auto& [u, v] : s1_edges) {
    s1_pair_idx.push_back(pair_index(n, u, v));
  }
  for (const auto& [u, v] : *phi) phi_idx.push_back(pair_index(n, u, v));

  const auto cs = build_completion_sets(
      static_cast<long long>(zero_classes.size()), s1_pair_idx,
      std::move(phi_idx), lambda, mu, n);

  Decomposition out = a;
  const auto pairs = all_pairs(n);
  auto add = [&](int cls, int pair_idx) {
    const auto [u, v] = pairs[static_cast<size_t>(pair_idx)];
    out.classes[static_cast<size_t>(cls)].add_edge(u, v);
    out.base.add_edge(u, v);
  };
  for (size_t i = 0; i < zero_classes.size(); ++i) {
    add(zero_classes[i], cs.two_paths[i][0]);
    add(zero_classes[i], cs.two_paths[i][1]);
  }
  for (size_t i = 0; i < one_classes.size(); ++i) {
    add(one_classes[i], cs.phi_target[i]);
  }

  check_internal(validate(out, true).ok,
                 "strong 2-extension created a cycle");
  for (int i = 0; i < out.k(); ++i) {
    check_internal(out.classes[static_cast<size_t>(i)].edge_count() >= 2 ||
                       a.classes[static_cast<size_t>(i)].edge_count() >= 2,
                   "a class remained below two edges");
  }
  return out;
}

}  // namespace enclose

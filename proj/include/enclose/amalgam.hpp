#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "enclose/decomposition.hpp"
#include "enclose/errors.hpp"
#include "enclose/multigraph.hpp"

namespace enclose {

// The amalgamated host graph: the classes of a full decomposition of mu*K_n
// plus one hub vertex standing in for all m new vertices. Per class the hub
// carries edges to the base (2 per missing degree unit) and loops; every base
// vertex has per-class degree exactly 2 and the hub per-class degree 2m.
struct AmalgamGraph {
  int n = 0;
  int m = 0;
  int mu = 0;
  std::vector<Multigraph> base_classes;   // on n vertices
  std::vector<std::vector<int>> hub;      // hub[i][u] = hub-u edges in class i
  std::vector<int> hub_loops;             // loops on the hub per class

  int k() const { return static_cast<int>(base_classes.size()); }

  // Class i as a graph on n+1 vertices with the hub at index n.
  Multigraph class_graph(int i) const {
    Multigraph g = base_classes[static_cast<size_t>(i)].padded(n + 1);
    for (int u = 0; u < n; ++u) {
      g.add_edges(n, u, hub[static_cast<size_t>(i)][static_cast<size_t>(u)]);
    }
    g.add_loops(n, hub_loops[static_cast<size_t>(i)]);
    return g;
  }

  Multigraph total_graph() const {
    Multigraph g(n + 1);
    for (int i = 0; i < k(); ++i) g += class_graph(i);
    return g;
  }
};

struct EmbeddingCheck {
  bool ok = true;
  bool class_count_ok = true;   // 2k == mu*(n+m-1)
  bool path_bound_ok = true;    // every class has at most m disjoint paths
  long long two_k = 0;
  long long required_two_k = 0;
  int offending_class = -1;
  long long offending_paths = 0;
};

// Feasibility of embedding a full path decomposition of mu*K_n into a
// 2-factorization of mu*K_{n+m}: the class count must be mu*(n+m-1)/2 and no
// class may have more than m disjoint maximal paths (equivalently, fewer than
// n-m edges; isolated vertices are trivial paths).
inline EmbeddingCheck check_embedding(const Decomposition& b, int m, int mu) {
  check_arg(m >= 1, "check_embedding: m must be positive");
  check_arg(mu >= 1, "check_embedding: mu must be positive");
  check_arg(validate(b, false).ok,
            "check_embedding: not a path decomposition");
  const int n = b.vertex_count();
  check_arg(b.base == complete_multigraph(n, mu),
            "check_embedding: base graph is not mu*K_n");
  EmbeddingCheck r;
  r.two_k = 2 * static_cast<long long>(b.k());
  r.required_two_k = static_cast<long long>(mu) * (n + m - 1);
  r.class_count_ok = r.two_k == r.required_two_k;
  for (int i = 0; i < b.k(); ++i) {
    // In a spanning union of paths and cycles, path components (trivial ones
    // included) number n minus the edge count.
    const long long paths =
        n - b.classes[static_cast<size_t>(i)].edge_count();
    if (paths > m) {
      r.path_bound_ok = false;
      r.offending_class = i;
      r.offending_paths = paths;
      break;
    }
  }
  r.ok = r.class_count_ok && r.path_bound_ok;
  return r;
}

// Builds the amalgamated host: per class, every base vertex is topped up to
// degree 2 with hub edges and the hub receives m - p_i loops, where p_i is
// the class's path count. cycle_free_count must match the number of
// cycle-free classes of b; exactly those become connected in the amalgam.
inline AmalgamGraph build_amalgam(const Decomposition& b, int m, int mu,
                                  long long cycle_free_count) {
  const auto emb = check_embedding(b, m, mu);
  check_arg(emb.class_count_ok,
            "build_amalgam: class count 2k = " + std::to_string(emb.two_k) +
                " differs from mu*(n+m-1) = " +
                std::to_string(emb.required_two_k));
  check_arg(emb.path_bound_ok,
            "build_amalgam: class " + std::to_string(emb.offending_class) +
                " has " + std::to_string(emb.offending_paths) +
                " disjoint paths, more than m = " + std::to_string(m));

  const int n = b.vertex_count();
  AmalgamGraph h;
  h.n = n;
  h.m = m;
  h.mu = mu;
  h.base_classes = b.classes;
  h.hub.assign(static_cast<size_t>(b.k()), std::vector<int>(static_cast<size_t>(n), 0));
  h.hub_loops.assign(static_cast<size_t>(b.k()), 0);

  for (int i = 0; i < b.k(); ++i) {
    const Multigraph& c = b.classes[static_cast<size_t>(i)];
    long long hub_ends = 0;
    for (int u = 0; u < n; ++u) {
      const int need = 2 - c.degree(u);
      check_internal(need >= 0, "class degree exceeds 2 after validation");
      h.hub[static_cast<size_t>(i)][static_cast<size_t>(u)] = need;
      hub_ends += need;
    }
    const long long paths = n - c.edge_count();
    check_internal(hub_ends == 2 * paths,
                   "hub edge ends disagree with the path count");
    const long long loops = m - paths;
    check_internal(loops >= 0, "negative loop count; path bound was violated");
    h.hub_loops[static_cast<size_t>(i)] = static_cast<int>(loops);
    check_internal(hub_ends + 2 * loops == 2LL * m,
                   "per-class hub degree is not 2m");
    // A class hangs together through the hub exactly when it had no cycle.
    const bool cycle_free = classify_class(c) == ClassKind::PathForest;
    check_internal(h.class_graph(i).connected() == cycle_free,
                   "amalgam connectivity disagrees with cycle-freeness");
  }

  // Totals: mu*m hub edges to every base vertex, mu*m(m-1)/2 loops.
  for (int u = 0; u < n; ++u) {
    long long total = 0;
    for (int i = 0; i < b.k(); ++i) {
      total += h.hub[static_cast<size_t>(i)][static_cast<size_t>(u)];
    }
    check_internal(total == static_cast<long long>(mu) * m,
                   "hub multiplicity to vertex " + std::to_string(u) +
                       " is not mu*m");
  }
  long long loop_total = std::accumulate(h.hub_loops.begin(),
                                         h.hub_loops.end(), 0LL);
  check_internal(loop_total == static_cast<long long>(mu) * m * (m - 1) / 2,
                 "total loop count is not mu*m(m-1)/2");

  long long cf = 0;
  for (const auto& c : b.classes) {
    if (classify_class(c) == ClassKind::PathForest) ++cf;
  }
  check_arg(cf == cycle_free_count,
            "build_amalgam: cycle-free class count mismatch");
  return h;
}

// How the detached vertices map back onto the amalgam: base vertices map to
// themselves, the m new vertices all map to the hub (amalgam vertex n).
struct DetachmentPlan {
  int hub_split = 0;
  std::vector<int> to_amalgam;
};

inline DetachmentPlan default_plan(const AmalgamGraph& h) {
  DetachmentPlan plan;
  plan.hub_split = h.m;
  plan.to_amalgam.resize(static_cast<size_t>(h.n + h.m));
  for (int v = 0; v < h.n + h.m; ++v) {
    plan.to_amalgam[static_cast<size_t>(v)] = v < h.n ? v : h.n;
  }
  return plan;
}

namespace detail {

inline int component_count_over(const Multigraph& g,
                                const std::vector<int>& verts) {
  std::vector<int> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (size_t i = 0; i < verts.size(); ++i) {
    for (size_t j = i + 1; j < verts.size(); ++j) {
      if (g.mult(verts[i], verts[j]) > 0) {
        const int a = find(static_cast<int>(i)), bb = find(static_cast<int>(j));
        if (a != bb) parent[static_cast<size_t>(bb)] = a;
      }
    }
  }
  int roots = 0;
  for (size_t i = 0; i < verts.size(); ++i) {
    if (find(static_cast<int>(i)) == static_cast<int>(i)) ++roots;
  }
  return roots;
}

// One way to hand the fresh vertex its two edge ends in a class: ends are
// neighbour indices, or kLoopEnd for one end of a hub loop (which turns the
// loop into a hub-fresh edge). Taking both ends of the same loop would
// create a loop at the fresh vertex, so that combination is never generated.
constexpr int kLoopEnd = -1;

struct EndPair {
  int a = kLoopEnd;
  int b = kLoopEnd;
};

}  // namespace detail

// Splits the hub into m vertices, one per round, handing the fresh vertex
// exactly two edge ends per class, exactly mu edges to every existing vertex
// and exactly mu*(pieces-1) loop conversions per round, while preserving each
// class's component count. The quota assignment is found by backtracking over
// per-class candidate pairs in deterministic order.
inline Decomposition detach(const AmalgamGraph& h, const DetachmentPlan& plan) {
  const int n = h.n, m = h.m, mu = h.mu, k = h.k();
  check_arg(plan.hub_split == m, "detach: plan splits the hub differently");
  check_arg(static_cast<int>(plan.to_amalgam.size()) == n + m,
            "detach: plan vertex map has the wrong size");
  for (int v = 0; v < n + m; ++v) {
    check_arg(plan.to_amalgam[static_cast<size_t>(v)] == (v < n ? v : n),
              "detach: only the standard identity-plus-hub plan is supported");
  }
  if (m == 1) {
    for (int i = 0; i < k; ++i) {
      check_arg(h.hub_loops[static_cast<size_t>(i)] == 0,
                "detach: a vertex that does not split cannot carry loops");
    }
  }

  const int total = n + m;
  const int hub = total - 1;
  std::vector<Multigraph> work;
  work.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    Multigraph g = h.base_classes[static_cast<size_t>(i)].padded(total);
    for (int u = 0; u < n; ++u) {
      g.add_edges(hub, u,
                  h.hub[static_cast<size_t>(i)][static_cast<size_t>(u)]);
    }
    g.add_loops(hub, h.hub_loops[static_cast<size_t>(i)]);
    work.push_back(std::move(g));
  }

  for (int round = 1; round <= m - 1; ++round) {
    const int pieces = m - round + 1;  // hub still stands for this many
    const int fresh = n + round - 1;
    std::vector<int> active;  // split-off so far plus the base
    for (int v = 0; v < fresh; ++v) active.push_back(v);
    std::vector<int> active_with_hub = active;
    active_with_hub.push_back(hub);
    std::vector<int> active_after = active;
    active_after.push_back(fresh);
    active_after.push_back(hub);

    // Per-class candidate end pairs that keep the class in one piece count.
    std::vector<std::vector<detail::EndPair>> cands(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
      const Multigraph& g = work[static_cast<size_t>(i)];
      const int before = detail::component_count_over(g, active_with_hub);
      auto try_pair = [&](int a, int b) {
        Multigraph probe = g;
        for (int end : {a, b}) {
          if (end == detail::kLoopEnd) {
            probe.remove_loops(hub, 1);
            probe.add_edge(fresh, hub);
          } else {
            probe.remove_edge(hub, end);
            probe.add_edge(fresh, end);
          }
        }
        if (detail::component_count_over(probe, active_after) == before) {
          cands[static_cast<size_t>(i)].push_back({a, b});
        }
      };
      for (int a : active) {
        if (g.mult(hub, a) == 0) continue;
        for (int b : active) {
          if (b < a) continue;
          if (b == a ? g.mult(hub, a) >= 2 : g.mult(hub, b) >= 1) {
            try_pair(a, b);
          }
        }
        if (g.loops(hub) >= 1) try_pair(a, detail::kLoopEnd);
      }
      if (g.loops(hub) >= 2) try_pair(detail::kLoopEnd, detail::kLoopEnd);
      check_internal(!cands[static_cast<size_t>(i)].empty(),
                     "round " + std::to_string(round) + ": class " +
                         std::to_string(i) + " admits no split");
    }

    // Exact quotas this round: mu edges from the fresh vertex to every
    // existing vertex, mu*(pieces-1) loop conversions.
    std::vector<int> need(static_cast<size_t>(total), 0);
    for (int v : active) need[static_cast<size_t>(v)] = mu;
    int need_loops = mu * (pieces - 1);

    // Suffix supply for pruning: a class can yield at most two ends of any
    // one kind.
    std::vector<std::vector<int>> supply(static_cast<size_t>(k) + 1,
                                         std::vector<int>(
                                             static_cast<size_t>(total), 0));
    std::vector<int> supply_loops(static_cast<size_t>(k) + 1, 0);
    for (int i = k - 1; i >= 0; --i) {
      const Multigraph& g = work[static_cast<size_t>(i)];
      for (int v : active) {
        supply[static_cast<size_t>(i)][static_cast<size_t>(v)] =
            supply[static_cast<size_t>(i) + 1][static_cast<size_t>(v)] +
            std::min(2, g.mult(hub, v));
      }
      supply_loops[static_cast<size_t>(i)] =
          supply_loops[static_cast<size_t>(i) + 1] +
          std::min(2, g.loops(hub));
    }

    std::vector<int> choice(static_cast<size_t>(k), -1);
    auto feasible = [&](int next_class) {
      if (need_loops < 0 ||
          need_loops > supply_loops[static_cast<size_t>(next_class)]) {
        return false;
      }
      for (int v : active) {
        const int nv = need[static_cast<size_t>(v)];
        if (nv < 0 ||
            nv > supply[static_cast<size_t>(next_class)][static_cast<size_t>(v)]) {
          return false;
        }
      }
      return true;
    };
    auto dfs = [&](auto&& self, int cls) -> bool {
      if (cls == k) return need_loops == 0;  // per-vertex needs sum to zero too
      for (size_t ci = 0; ci < cands[static_cast<size_t>(cls)].size(); ++ci) {
        const auto& [a, b] = cands[static_cast<size_t>(cls)][ci];
        for (int end : {a, b}) {
          if (end == detail::kLoopEnd) --need_loops;
          else --need[static_cast<size_t>(end)];
        }
        if (feasible(cls + 1) && self(self, cls + 1)) {
          choice[static_cast<size_t>(cls)] = static_cast<int>(ci);
          return true;
        }
        for (int end : {a, b}) {
          if (end == detail::kLoopEnd) ++need_loops;
          else ++need[static_cast<size_t>(end)];
        }
      }
      return false;
    };
    check_internal(dfs(dfs, 0),
                   "round " + std::to_string(round) +
                       ": no end assignment meets the multiplicity quotas");

    for (int i = 0; i < k; ++i) {
      const auto& [a, b] =
          cands[static_cast<size_t>(i)][static_cast<size_t>(
              choice[static_cast<size_t>(i)])];
      Multigraph& g = work[static_cast<size_t>(i)];
      for (int end : {a, b}) {
        if (end == detail::kLoopEnd) {
          g.remove_loops(hub, 1);
          g.add_edge(fresh, hub);
        } else {
          g.remove_edge(hub, end);
          g.add_edge(fresh, end);
        }
      }
      check_internal(g.degree(fresh) == 2, "fresh vertex degree is not 2");
      check_internal(g.degree(hub) == 2 * (pieces - 1),
                     "hub degree did not drop to 2*(pieces-1)");
    }

    // Aggregate sub-quotas after the round.
    Multigraph sum(total);
    for (const auto& g : work) sum += g;
    for (int v : active) {
      check_internal(sum.mult(fresh, v) == mu,
                     "fresh vertex multiplicity to an existing vertex "
                     "is not mu");
      check_internal(sum.mult(hub, v) == mu * (pieces - 1),
                     "hub multiplicity did not shrink uniformly");
    }
    check_internal(sum.mult(fresh, hub) == mu * (pieces - 1),
                   "loop conversions missed their quota");
    check_internal(sum.loops(hub) ==
                       mu * (pieces - 1) * (pieces - 2) / 2,
                   "hub loops did not shrink to mu*C(pieces-1,2)");
  }

  for (const auto& g : work) {
    check_internal(!g.has_loops(), "detachment left a loop behind");
  }
  Decomposition out = decomposition_from_classes(std::move(work));
  check_internal(out.base == complete_multigraph(total, mu),
                 "detached graph is not mu*K_{n+m}");
  return out;
}

struct DetachmentVerdict {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(std::string msg) {
    ok = false;
    violations.push_back(std::move(msg));
  }
};

// Literal check of the detachment contract against the amalgam, demanding
// exact quotas (this instance family divides evenly, so floor/ceil slack is
// never needed): uniform degrees, per-class 2-regularity, multiplicity mu
// between every pair, per-class component counts preserved, and classwise
// edge correspondence on the unsplit vertices.
inline DetachmentVerdict verify_detachment(const Decomposition& g,
                                           const AmalgamGraph& h,
                                           const DetachmentPlan& plan) {
  DetachmentVerdict v;
  const int n = h.n, m = h.m, mu = h.mu, k = h.k();
  const int total = n + m;
  if (g.vertex_count() != total) {
    v.fail("vertex count is not n+m");
    return v;
  }
  if (g.k() != k) {
    v.fail("class count changed");
    return v;
  }
  if (plan.hub_split != m) v.fail("plan splits the hub into the wrong count");

  for (int u = 0; u < total; ++u) {
    if (g.base.loops(u) > 0) v.fail("loop at vertex " + std::to_string(u));
  }
  for (int u = 0; u < total; ++u) {
    if (g.base.degree(u) != mu * (total - 1)) {
      v.fail("X1: degree of vertex " + std::to_string(u) + " is " +
             std::to_string(g.base.degree(u)) + ", want " +
             std::to_string(mu * (total - 1)));
    }
  }
  bool regular = true;
  for (int i = 0; i < k; ++i) {
    for (int u = 0; u < total; ++u) {
      if (g.classes[static_cast<size_t>(i)].degree(u) != 2) {
        v.fail("X2: class " + std::to_string(i) + " has degree " +
               std::to_string(g.classes[static_cast<size_t>(i)].degree(u)) +
               " at vertex " + std::to_string(u));
        regular = false;
      }
    }
  }
  for (int u = n; u < total; ++u) {
    for (int w = u + 1; w < total; ++w) {
      if (g.base.mult(u, w) != mu) {
        v.fail("X3: multiplicity between split vertices " +
               std::to_string(u) + "," + std::to_string(w) + " is " +
               std::to_string(g.base.mult(u, w)) + ", want " +
               std::to_string(mu));
      }
    }
  }
  for (int u = 0; u < total; ++u) {
    for (int w = u + 1; w < total && u < n; ++w) {
      if (g.base.mult(u, w) != mu) {
        v.fail("X4: multiplicity at pair " + std::to_string(u) + "," +
               std::to_string(w) + " is " + std::to_string(g.base.mult(u, w)) +
               ", want " + std::to_string(mu));
      }
    }
  }
  if (regular) {
    for (int i = 0; i < k; ++i) {
      const int want = h.class_graph(i).component_count();
      const int got = g.classes[static_cast<size_t>(i)].component_count();
      if (got != want) {
        v.fail("X5: class " + std::to_string(i) + " has " +
               std::to_string(got) + " components, want " +
               std::to_string(want));
      }
    }
  }
  // Edge correspondence: base pairs stay put, hub-incident counts match.
  for (int i = 0; i < k; ++i) {
    const Multigraph& gc = g.classes[static_cast<size_t>(i)];
    const Multigraph& hc = h.base_classes[static_cast<size_t>(i)];
    for (int u = 0; u < n; ++u) {
      for (int w = u + 1; w < n; ++w) {
        if (gc.mult(u, w) != hc.mult(u, w)) {
          v.fail("class " + std::to_string(i) + " changed base pair " +
                 std::to_string(u) + "," + std::to_string(w));
        }
      }
      long long to_splits = 0;
      for (int s = n; s < total; ++s) to_splits += gc.mult(u, s);
      if (to_splits !=
          h.hub[static_cast<size_t>(i)][static_cast<size_t>(u)]) {
        v.fail("class " + std::to_string(i) + " hub edges at vertex " +
               std::to_string(u) + " went astray");
      }
    }
    long long among_splits = 0;
    for (int s = n; s < total; ++s) {
      for (int t = s + 1; t < total; ++t) among_splits += gc.mult(s, t);
    }
    if (among_splits != h.hub_loops[static_cast<size_t>(i)]) {
      v.fail("class " + std::to_string(i) +
             " loop conversions went astray");
    }
  }
  return v;
}

}  // namespace enclose

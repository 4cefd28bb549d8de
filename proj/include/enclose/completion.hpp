#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "enclose/decomposition.hpp"
#include "enclose/errors.hpp"
#include "enclose/multigraph.hpp"

namespace enclose {

enum class CompletionMode { Strong, Weak };

// Colours sorted by how often they touch a vertex: c0/c1/c2 hold the colours
// appearing exactly 0, 1, 2 times on edges incident with the vertex.
struct ColorIncidence {
  std::vector<int> c0, c1, c2;
};

inline ColorIncidence color_incidence(const Decomposition& d, int v) {
  ColorIncidence ci;
  for (int j = 0; j < d.k(); ++j) {
    const int deg = d.classes[static_cast<size_t>(j)].degree(v);
    if (deg == 0) ci.c0.push_back(j);
    else if (deg == 1) ci.c1.push_back(j);
    else ci.c2.push_back(j);
  }
  return ci;
}

// Counts used by the budget-saturated branch of the weak step; recomputed
// from scratch each step.
struct WeakStepCounters {
  long long f1 = 0, f2 = 0, f3 = 0;  // 2-factors by number of uv-edges (2,1,0)
  long long q1 = 0, q2 = 0;          // non-2-factors with a uv-edge / with >= 2
                                     // edges at u or v and no uv-edge
  long long k_star() const { return f1 + f2 + f3 + q1 + q2; }
};

// A partial decomposition of mu*K_n being grown one edge at a time while it
// keeps enclosing the original decomposition of lambda*K_n.
struct CompletionState {
  Decomposition current;    // coloured edges, classwise superset of original
  Decomposition original;   // the enclosed decomposition of lambda*K_n
  Multigraph uncolored;     // mu*K_n minus current.base
  int mu = 0;
  int m = 0;                // extra vertices of the eventual host graph
  CompletionMode mode = CompletionMode::Strong;
  WeakStepCounters last_counters;

  int n() const { return current.vertex_count(); }
  int k() const { return current.k(); }
  long long uncolored_count() const { return uncolored.edge_count(); }
  bool finished() const { return uncolored_count() == 0; }

  // Budget on 2-factor classes in weak mode, kept as the exact comparison
  // 2*count <= mu*(m-1).
  bool within_two_factor_budget() const {
    return 2 * two_factor_count(current.classes) <=
           static_cast<long long>(mu) * (m - 1);
  }
};

inline CompletionState make_completion_state(Decomposition partial,
                                             Decomposition original, int mu,
                                             int m, CompletionMode mode) {
  const int n = partial.vertex_count();
  check_arg(original.vertex_count() == n,
            "completion: vertex count mismatch with the original");
  check_arg(original.k() == partial.k(),
            "completion: class count mismatch with the original");
  check_arg(partial.consistent(), "completion: classes do not sum to the base");
  for (int i = 0; i < partial.k(); ++i) {
    check_arg(partial.classes[static_cast<size_t>(i)].contains(
                  original.classes[static_cast<size_t>(i)]),
              "completion: class " + std::to_string(i) +
                  " does not enclose its original class");
  }
  const bool strong = mode == CompletionMode::Strong;
  check_arg(validate(partial, strong).ok,
            strong ? "completion: partial decomposition is not strong"
                   : "completion: partial decomposition is not a path "
                     "decomposition");
  CompletionState st{std::move(partial), std::move(original),
                     complete_multigraph(n, mu), mu, m, mode, {}};
  st.uncolored -= st.current.base;  // underflow here means base exceeds muK_n
  if (mode == CompletionMode::Weak) {
    check_arg(st.within_two_factor_budget(),
              "completion: 2-factor count already exceeds mu*(m-1)/2");
  }
  return st;
}

namespace detail {

inline std::pair<int, int> first_uncolored(const Multigraph& uncolored) {
  const int n = uncolored.vertex_count();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (uncolored.mult(u, v) > 0) return {u, v};
    }
  }
  throw std::logic_error("no uncolored edge left");
}

inline void assign_color(CompletionState& st, int u, int v, int j) {
  st.current.classes[static_cast<size_t>(j)].add_edge(u, v);
  st.current.base.add_edge(u, v);
  st.uncolored.remove_edge(u, v);
}

}  // namespace detail

// Colours one more edge of mu*K_n keeping the decomposition strong; all class
// sizes are preserved except one that grows by one. At most one already
// coloured spare edge is recoloured, and edges of the original decomposition
// are never touched.
inline CompletionState step_strong(CompletionState st) {
  check_arg(st.mode == CompletionMode::Strong, "step_strong: wrong mode");
  check_arg(!st.finished(), "step_strong: decomposition is already complete");
  const int n = st.n();
  const long long k = st.k();
  check_arg(k >= static_cast<long long>(st.mu) * (n - 1) - 1,
            "step_strong: k = " + std::to_string(k) +
                " is below mu*(n-1)-1 = " +
                std::to_string(static_cast<long long>(st.mu) * (n - 1) - 1));

  const auto [u, v] = detail::first_uncolored(st.uncolored);
  auto deg = [&](int cls, int vert) {
    return st.current.classes[static_cast<size_t>(cls)].degree(vert);
  };
  auto joined = [&](int cls, int a, int b) {
    return st.current.classes[static_cast<size_t>(cls)].same_component(a, b);
  };

  // A colour is compatible with uv when it touches u and v at most once each
  // and does not already connect them (closing a path into a cycle).
  for (int j = 0; j < st.k(); ++j) {
    if (deg(j, u) <= 1 && deg(j, v) <= 1 && !joined(j, u, v)) {
      detail::assign_color(st, u, v, j);
      return st;
    }
  }

  // No compatible colour: the incidence structure at u and v must be
  // complementary, which the exchange below exploits.
  {
    const auto cu = color_incidence(st.current, u);
    const auto cv = color_incidence(st.current, v);
    check_internal(cu.c0 == cv.c2 && cv.c0 == cu.c2 && cu.c1 == cv.c1,
                   "exchange premise failed: colour incidence at the "
                   "endpoints is not complementary");
  }

  // The colour of an original uv-edge; it appears exactly once at u and at v,
  // so its class holds the uv-edge as an isolated 1-edge path.
  int a = -1;
  for (int j = 0; j < st.k() && a < 0; ++j) {
    if (st.original.classes[static_cast<size_t>(j)].mult(u, v) >= 1) a = j;
  }
  check_internal(a >= 0, "no original uv-edge although lambda >= 1");
  check_internal(deg(a, u) == 1 && deg(a, v) == 1 &&
                     st.current.classes[static_cast<size_t>(a)].mult(u, v) >= 1,
                 "the original uv-colour does not sit as a bare edge");

  // Endpoint of another path of colour a (an isolated vertex counts as a
  // trivial path); lowest index wins.
  int w = -1;
  for (int x = 0; x < n && w < 0; ++x) {
    if (x != u && x != v && deg(a, x) <= 1) w = x;
  }
  check_internal(w >= 0, "colour class has a single path and no spare "
                         "endpoint; the class-count bound excludes this");

  if (st.uncolored.mult(u, w) > 0) {
    // An uncoloured uw-edge extends colour a directly.
    detail::assign_color(st, u, w, a);
    return st;
  }

  // Every uw-copy is coloured; one of them is a spare copy (beyond the
  // original decomposition) and can be recoloured to a.
  int b = -1;
  for (int j = 0; j < st.k() && b < 0; ++j) {
    if (st.current.classes[static_cast<size_t>(j)].mult(u, w) >
        st.original.classes[static_cast<size_t>(j)].mult(u, w)) {
      b = j;
    }
  }
  check_internal(b >= 0, "no recolourable uw-copy although mu > lambda");
  check_internal(b != a, "recolour candidate already has colour a");

  st.current.classes[static_cast<size_t>(b)].remove_edge(u, w);
  st.current.classes[static_cast<size_t>(a)].add_edge(u, w);
  check_internal(
      st.current.classes[static_cast<size_t>(b)].contains(
          st.original.classes[static_cast<size_t>(b)]),
      "recolouring stole an edge of the original decomposition");
  check_internal(classify_class(st.current.classes[static_cast<size_t>(a)]) ==
                     ClassKind::PathForest,
                 "recolouring closed a cycle in the receiving class");

  check_internal(deg(b, u) <= 1 && deg(b, v) <= 1 && !joined(b, u, v),
                 "freed colour is still incompatible with the edge");
  detail::assign_color(st, u, v, b);
  return st;
}

// Colours one more edge of mu*K_n keeping a path decomposition with at most
// mu*(m-1)/2 2-factors.
inline CompletionState step_weak(CompletionState st) {
  check_arg(st.mode == CompletionMode::Weak, "step_weak: wrong mode");
  check_arg(!st.finished(), "step_weak: decomposition is already complete");
  const int n = st.n();
  const int m = st.m;
  const long long k = st.k();
  check_arg(m >= n - 2, "step_weak: m must be at least n-2");
  check_arg(!(m == n - 2 && n < 4), "step_weak: m = n-2 requires n >= 4");
  check_arg(2 * k >= static_cast<long long>(st.mu) * (n + m - 1),
            "step_weak: class count below mu*(n+m-1)/2");
  check_arg(st.within_two_factor_budget(),
            "step_weak: 2-factor budget already exceeded");

  const auto [u, v] = detail::first_uncolored(st.uncolored);
  const long long budget2 = static_cast<long long>(st.mu) * (m - 1);
  const long long tf2 = 2 * two_factor_count(st.current.classes);

  int chosen = -1;
  if (tf2 < budget2) {
    // Room in the budget: any colour of degree <= 1 at both endpoints keeps a
    // path decomposition, even if it happens to finish a 2-factor.
    for (int j = 0; j < st.k() && chosen < 0; ++j) {
      const Multigraph& c = st.current.classes[static_cast<size_t>(j)];
      if (c.degree(u) <= 1 && c.degree(v) <= 1) chosen = j;
    }
    check_internal(chosen >= 0,
                   "no colour free at both endpoints; the class-count bound "
                   "excludes this");
  } else {
    // Budget saturated: partition the classes touching u or v and pick a
    // colour outside every part, which cannot finish another 2-factor.
    WeakStepCounters cnt;
    for (int j = 0; j < st.k(); ++j) {
      const Multigraph& c = st.current.classes[static_cast<size_t>(j)];
      const bool tf = is_two_factor(classify_class(c));
      const int uv = c.mult(u, v);
      const int incident = c.degree(u) + c.degree(v) - uv;
      if (tf) {
        if (uv >= 2) ++cnt.f1;
        else if (uv == 1) ++cnt.f2;
        else ++cnt.f3;
      } else if (uv >= 1) {
        ++cnt.q1;
      } else if (incident >= 2) {
        ++cnt.q2;
      } else if (chosen < 0) {
        chosen = j;
      }
    }
    st.last_counters = cnt;
    check_internal(2 * cnt.k_star() + static_cast<long long>(st.mu) * (m - 1) <=
                       static_cast<long long>(st.mu) * (2 * n - 2) - 2,
                   "edge-count bound on the class partition failed");
    check_internal(cnt.k_star() < k, "every class fell into the partition");
    check_internal(chosen >= 0, "partition complement is empty");
  }

  detail::assign_color(st, u, v, chosen);
  check_internal(st.within_two_factor_budget(),
                 "colouring exceeded the 2-factor budget");
  check_internal(validate(st.current, false).ok,
                 "colouring broke the path decomposition");
  return st;
}

struct CompletionOutcome {
  Decomposition decomposition;
  long long steps = 0;
};

// Runs the mode's step until every edge of mu*K_n is coloured. Terminates in
// exactly uncolored_count() steps, never shrinking a class.
inline CompletionOutcome complete(CompletionState st) {
  long long steps = 0;
  while (!st.finished()) {
    st = st.mode == CompletionMode::Strong ? step_strong(std::move(st))
                                           : step_weak(std::move(st));
    ++steps;
  }
  check_internal(st.current.base ==
                     complete_multigraph(st.current.vertex_count(), st.mu),
                 "completion finished without covering mu*K_n");
  return {std::move(st.current), steps};
}

}  // namespace enclose

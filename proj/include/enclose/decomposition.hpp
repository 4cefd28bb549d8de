#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "enclose/errors.hpp"
#include "enclose/multigraph.hpp"

namespace enclose {

// Most specific shape of a colour class. A class with max degree <= 2 is a
// disjoint union of paths and cycles; it is a path forest when additionally
// acyclic (a pair with multiplicity >= 2 is a 2-cycle, so it disqualifies),
// a 2-factor when 2-regular on every vertex, and a Hamiltonian cycle when a
// connected 2-factor.
enum class ClassKind {
  PathForest,
  PathsAndCycles,
  TwoFactor,
  HamiltonianCycle,
  Invalid,
};

inline const char* to_string(ClassKind k) {
  switch (k) {
    case ClassKind::PathForest: return "path-forest";
    case ClassKind::PathsAndCycles: return "paths-and-cycles";
    case ClassKind::TwoFactor: return "two-factor";
    case ClassKind::HamiltonianCycle: return "hamiltonian-cycle";
    case ClassKind::Invalid: return "invalid";
  }
  return "?";
}

inline bool acyclic(const Multigraph& g) {
  const int n = g.vertex_count();
  for (int v = 0; v < n; ++v) {
    if (g.loops(v) > 0) return false;
  }
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const int c = g.mult(u, v);
      if (c == 0) continue;
      if (c >= 2) return false;  // parallel pair = 2-cycle
      const int ru = find(u), rv = find(v);
      if (ru == rv) return false;
      parent[static_cast<size_t>(rv)] = ru;
    }
  }
  return true;
}

inline ClassKind classify_class(const Multigraph& c) {
  const int n = c.vertex_count();
  bool all_two = n > 0;
  for (int v = 0; v < n; ++v) {
    const int d = c.degree(v);
    if (d > 2) return ClassKind::Invalid;
    if (d != 2) all_two = false;
  }
  if (all_two) {
    return c.connected() ? ClassKind::HamiltonianCycle : ClassKind::TwoFactor;
  }
  return acyclic(c) ? ClassKind::PathForest : ClassKind::PathsAndCycles;
}

inline bool is_two_factor(ClassKind k) {
  return k == ClassKind::TwoFactor || k == ClassKind::HamiltonianCycle;
}

// An edge-coloured decomposition: a base multigraph plus colour classes on the
// same vertex set that sum to it exactly. Classes are indexed, may be empty,
// and the base is the colored subgraph (partial decompositions keep the same
// shape with a smaller base).
struct Decomposition {
  Multigraph base;
  std::vector<Multigraph> classes;

  int vertex_count() const { return base.vertex_count(); }
  int k() const { return static_cast<int>(classes.size()); }

  bool consistent() const {
    Multigraph sum(base.vertex_count());
    for (const auto& c : classes) {
      if (c.vertex_count() != base.vertex_count()) return false;
      sum += c;
    }
    return sum == base;
  }

  bool operator==(const Decomposition&) const = default;
};

inline Decomposition decomposition_from_classes(std::vector<Multigraph> classes) {
  check_arg(!classes.empty(), "decomposition needs at least one class");
  Multigraph sum(classes.front().vertex_count());
  for (const auto& c : classes) {
    check_arg(c.vertex_count() == sum.vertex_count(),
              "classes live on different vertex sets");
    sum += c;
  }
  return Decomposition{std::move(sum), std::move(classes)};
}

struct ValidationVerdict {
  bool ok = true;
  int offending_class = -1;
  std::string reason;

  explicit operator bool() const { return ok; }
};

// Accepts iff every class is a union of paths and cycles; with strong set,
// every class must be cycle-free (2-cycles from parallel edges included).
inline ValidationVerdict validate(const Decomposition& d, bool strong) {
  for (int i = 0; i < d.k(); ++i) {
    const ClassKind kind = classify_class(d.classes[static_cast<size_t>(i)]);
    if (kind == ClassKind::Invalid) {
      return {false, i, "class has a vertex of degree > 2"};
    }
    if (strong && kind != ClassKind::PathForest) {
      return {false, i, "class contains a cycle"};
    }
  }
  return {};
}

// Per-size class counts |S_i|, the pair table |S_1(u,v)|, and the counts of
// 2-factor and cycle-free classes.
struct DecompositionProfile {
  int n = 0;
  long long k = 0;
  std::vector<long long> s;        // s[i] = number of classes with i edges
  std::vector<long long> s1_pair;  // n*n symmetric table
  long long two_factor_count = 0;
  long long cycle_free_count = 0;

  long long s_at(int i) const {
    if (i < 0 || i >= static_cast<int>(s.size())) return 0;
    return s[static_cast<size_t>(i)];
  }

  long long s1(int u, int v) const {
    return s1_pair[static_cast<size_t>(u) * static_cast<size_t>(n) +
                   static_cast<size_t>(v)];
  }
};

inline DecompositionProfile profile(const Decomposition& d) {
  const int n = d.vertex_count();
  DecompositionProfile p;
  p.n = n;
  p.k = d.k();
  p.s1_pair.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  for (int i = 0; i < d.k(); ++i) {
    const Multigraph& c = d.classes[static_cast<size_t>(i)];
    const ClassKind kind = classify_class(c);
    check_arg(kind != ClassKind::Invalid,
              "profile: class " + std::to_string(i) +
                  " is not a union of paths and cycles");
    const long long edges = c.edge_count();
    if (edges >= static_cast<long long>(p.s.size())) {
      p.s.resize(static_cast<size_t>(edges) + 1, 0);
    }
    ++p.s[static_cast<size_t>(edges)];
    if (is_two_factor(kind)) ++p.two_factor_count;
    if (kind == ClassKind::PathForest) ++p.cycle_free_count;
    if (edges == 1 && !c.has_loops()) {
      bool found = false;
      for (int u = 0; u < n && !found; ++u) {
        for (int v = u + 1; v < n && !found; ++v) {
          if (c.mult(u, v) == 1) {
            ++p.s1_pair[static_cast<size_t>(u) * static_cast<size_t>(n) +
                        static_cast<size_t>(v)];
            ++p.s1_pair[static_cast<size_t>(v) * static_cast<size_t>(n) +
                        static_cast<size_t>(u)];
            found = true;
          }
        }
      }
    }
  }
  return p;
}

// The base of a decomposition of lambda*K_n must be a uniform complete
// multigraph; returns its multiplicity.
inline int uniform_multiplicity(const Decomposition& a) {
  const int n = a.vertex_count();
  check_arg(n >= 1, "decomposition on empty vertex set");
  check_arg(!a.base.has_loops(), "base graph must be loopless");
  if (n == 1) return 0;  // no pairs; multiplicity is immaterial
  const int lambda = a.base.mult(0, 1);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      check_arg(a.base.mult(u, v) == lambda,
                "base graph is not a uniform complete multigraph");
    }
  }
  return lambda;
}

inline long long two_factor_count(const std::vector<Multigraph>& classes) {
  long long cnt = 0;
  for (const auto& c : classes) {
    if (is_two_factor(classify_class(c))) ++cnt;
  }
  return cnt;
}

}  // namespace enclose

#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "enclose/errors.hpp"

namespace enclose {

// Undirected multigraph on vertices 0..n-1: a symmetric table of edge
// multiplicities per unordered pair plus a loop count per vertex. Loops are
// stored separately and count twice towards degree.
class Multigraph {
 public:
  Multigraph() = default;

  explicit Multigraph(int n)
      : n_(n),
        mult_(static_cast<size_t>(n) * static_cast<size_t>(n), 0),
        loops_(static_cast<size_t>(n), 0) {
    check_arg(n >= 0, "Multigraph: negative vertex count");
  }

  int vertex_count() const { return n_; }

  int mult(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    check_arg(u != v, "mult: loops are stored separately");
    return mult_[idx(u, v)];
  }

  void add_edges(int u, int v, int count) {
    check_vertex(u);
    check_vertex(v);
    check_arg(u != v, "add_edges: use add_loops for loops");
    check_arg(count >= 0, "add_edges: negative count");
    mult_[idx(u, v)] += count;
    mult_[idx(v, u)] += count;
  }

  void add_edge(int u, int v) { add_edges(u, v, 1); }

  void remove_edges(int u, int v, int count) {
    check_vertex(u);
    check_vertex(v);
    check_arg(u != v, "remove_edges: use remove_loops for loops");
    check_arg(count >= 0, "remove_edges: negative count");
    check_internal(mult_[idx(u, v)] >= count,
                   "multigraph subtraction underflow at pair (" +
                       std::to_string(u) + "," + std::to_string(v) + ")");
    mult_[idx(u, v)] -= count;
    mult_[idx(v, u)] -= count;
  }

  void remove_edge(int u, int v) { remove_edges(u, v, 1); }

  int loops(int v) const {
    check_vertex(v);
    return loops_[static_cast<size_t>(v)];
  }

  void add_loops(int v, int count) {
    check_vertex(v);
    check_arg(count >= 0, "add_loops: negative count");
    loops_[static_cast<size_t>(v)] += count;
  }

  void remove_loops(int v, int count) {
    check_vertex(v);
    check_internal(loops_[static_cast<size_t>(v)] >= count,
                   "loop subtraction underflow at vertex " + std::to_string(v));
    loops_[static_cast<size_t>(v)] -= count;
  }

  // Degree of v, each loop counted twice.
  int degree(int v) const {
    check_vertex(v);
    int d = 2 * loops_[static_cast<size_t>(v)];
    for (int u = 0; u < n_; ++u) {
      if (u != v) d += mult_[idx(v, u)];
    }
    return d;
  }

  long long edge_count() const {
    long long total = 0;
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) total += mult_[idx(u, v)];
      total += loops_[static_cast<size_t>(u)];
    }
    return total;
  }

  bool empty() const { return edge_count() == 0; }

  bool has_loops() const {
    for (int v = 0; v < n_; ++v) {
      if (loops_[static_cast<size_t>(v)] > 0) return true;
    }
    return false;
  }

  // Number of connected components; isolated vertices count, loops connect
  // nothing new.
  int component_count() const {
    std::vector<int> parent(static_cast<size_t>(n_));
    std::iota(parent.begin(), parent.end(), 0);
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        if (mult_[idx(u, v)] > 0) unite(parent, u, v);
      }
    }
    int roots = 0;
    for (int v = 0; v < n_; ++v) {
      if (find(parent, v) == v) ++roots;
    }
    return roots;
  }

  bool connected() const { return n_ <= 1 ? true : component_count() == 1; }

  bool same_component(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return true;
    std::vector<int> parent(static_cast<size_t>(n_));
    std::iota(parent.begin(), parent.end(), 0);
    for (int a = 0; a < n_; ++a) {
      for (int b = a + 1; b < n_; ++b) {
        if (mult_[idx(a, b)] > 0) unite(parent, a, b);
      }
    }
    return find(parent, u) == find(parent, v);
  }

  // True iff every pair multiplicity and loop count dominates other's.
  bool contains(const Multigraph& other) const {
    check_arg(n_ == other.n_, "contains: vertex count mismatch");
    for (size_t i = 0; i < mult_.size(); ++i) {
      if (mult_[i] < other.mult_[i]) return false;
    }
    for (size_t i = 0; i < loops_.size(); ++i) {
      if (loops_[i] < other.loops_[i]) return false;
    }
    return true;
  }

  // Embeds this graph into a larger vertex set; new vertices are isolated.
  Multigraph padded(int new_n) const {
    check_arg(new_n >= n_, "padded: cannot shrink");
    Multigraph g(new_n);
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        g.add_edges(u, v, mult_[idx(u, v)]);
      }
      g.add_loops(u, loops_[static_cast<size_t>(u)]);
    }
    return g;
  }

  Multigraph& operator+=(const Multigraph& other) {
    check_arg(n_ == other.n_, "graph sum: vertex count mismatch");
    for (size_t i = 0; i < mult_.size(); ++i) mult_[i] += other.mult_[i];
    for (size_t i = 0; i < loops_.size(); ++i) loops_[i] += other.loops_[i];
    return *this;
  }

  // Exact subtraction; underflow is a hard error, never saturation.
  Multigraph& operator-=(const Multigraph& other) {
    check_arg(n_ == other.n_, "graph difference: vertex count mismatch");
    for (size_t i = 0; i < mult_.size(); ++i) {
      check_internal(mult_[i] >= other.mult_[i],
                     "graph difference underflow: not a subgraph");
      mult_[i] -= other.mult_[i];
    }
    for (size_t i = 0; i < loops_.size(); ++i) {
      check_internal(loops_[i] >= other.loops_[i],
                     "graph difference underflow: loops");
      loops_[i] -= other.loops_[i];
    }
    return *this;
  }

  friend Multigraph operator+(Multigraph a, const Multigraph& b) {
    a += b;
    return a;
  }

  friend Multigraph operator-(Multigraph a, const Multigraph& b) {
    a -= b;
    return a;
  }

  bool operator==(const Multigraph&) const = default;

 private:
  size_t idx(int u, int v) const {
    return static_cast<size_t>(u) * static_cast<size_t>(n_) +
           static_cast<size_t>(v);
  }

  void check_vertex(int v) const {
    if (v < 0 || v >= n_) {
      throw std::out_of_range("vertex " + std::to_string(v) +
                              " out of range [0," + std::to_string(n_) + ")");
    }
  }

  static int find(std::vector<int>& parent, int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }

  static void unite(std::vector<int>& parent, int a, int b) {
    a = find(parent, a);
    b = find(parent, b);
    if (a != b) parent[static_cast<size_t>(b)] = a;
  }

  int n_ = 0;
  std::vector<int> mult_;  // n*n symmetric, diagonal unused
  std::vector<int> loops_;
};

// The complete multigraph on n vertices with every pair multiplicity lambda.
inline Multigraph complete_multigraph(int n, int lambda) {
  check_arg(n >= 1, "complete_multigraph: n must be positive");
  check_arg(lambda >= 1, "complete_multigraph: lambda must be positive");
  Multigraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edges(u, v, lambda);
  }
  return g;
}

}  // namespace enclose

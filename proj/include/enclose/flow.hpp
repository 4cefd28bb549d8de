#pragma once

#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "enclose/errors.hpp"

namespace enclose {

namespace detail {

// Integral max flow by shortest augmenting paths. Arcs are explored in
// insertion order, so results are deterministic.
class MaxFlow {
 public:
  explicit MaxFlow(int node_count) : head_(static_cast<size_t>(node_count)) {}

  int add_arc(int from, int to, int capacity) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, capacity, 0});
    arcs_.push_back({from, 0, 0});
    head_[static_cast<size_t>(from)].push_back(id);
    head_[static_cast<size_t>(to)].push_back(id + 1);
    return id;
  }

  long long run(int source, int sink) {
    long long total = 0;
    while (true) {
      // BFS for a shortest augmenting path.
      std::vector<int> pred_arc(head_.size(), -1);
      std::vector<bool> seen(head_.size(), false);
      std::queue<int> q;
      q.push(source);
      seen[static_cast<size_t>(source)] = true;
      while (!q.empty() && !seen[static_cast<size_t>(sink)]) {
        const int v = q.front();
        q.pop();
        for (int id : head_[static_cast<size_t>(v)]) {
          const Arc& a = arcs_[static_cast<size_t>(id)];
          if (a.cap - a.flow <= 0 || seen[static_cast<size_t>(a.to)]) continue;
          seen[static_cast<size_t>(a.to)] = true;
          pred_arc[static_cast<size_t>(a.to)] = id;
          q.push(a.to);
        }
      }
      if (!seen[static_cast<size_t>(sink)]) break;
      int bottleneck = std::numeric_limits<int>::max();
      for (int v = sink; v != source;) {
        const int id = pred_arc[static_cast<size_t>(v)];
        const Arc& a = arcs_[static_cast<size_t>(id)];
        bottleneck = std::min(bottleneck, a.cap - a.flow);
        v = arcs_[static_cast<size_t>(id ^ 1)].to;
      }
      for (int v = sink; v != source;) {
        const int id = pred_arc[static_cast<size_t>(v)];
        arcs_[static_cast<size_t>(id)].flow += bottleneck;
        arcs_[static_cast<size_t>(id ^ 1)].flow -= bottleneck;
        v = arcs_[static_cast<size_t>(id ^ 1)].to;
      }
      total += bottleneck;
    }
    return total;
  }

  int flow_on(int arc_id) const {
    return arcs_[static_cast<size_t>(arc_id)].flow;
  }

 private:
  struct Arc {
    int to;
    int cap;
    int flow;
  };

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> head_;
};

}  // namespace detail

// The assignment network for matching single-edge classes to spare edges:
// source -> x_{u,v} with capacity |S_1(u,v)|, x_{u,v} -> y_{w,z} for every
// distinct pair with capacity mu - lambda, y_{w,z} -> sink with capacity
// mu - lambda. A max flow of value |S_1| yields the wanted injection.
class FlowNetwork {
 public:
  // s1_per_pair[p] = number of single-edge classes on pair index p;
  // spare_cap = mu - lambda.
  FlowNetwork(int pair_count, const std::vector<long long>& s1_per_pair,
              int spare_cap)
      : pairs_(pair_count),
        solver_(2 + 2 * pair_count),
        start_arc_(static_cast<size_t>(pair_count)),
        mid_arc_(static_cast<size_t>(pair_count) *
                     static_cast<size_t>(pair_count),
                 -1) {
    check_arg(static_cast<int>(s1_per_pair.size()) == pair_count,
              "FlowNetwork: pair table size mismatch");
    for (int p = 0; p < pairs_; ++p) {
      start_arc_[static_cast<size_t>(p)] =
          solver_.add_arc(source(), x_node(p),
                          static_cast<int>(s1_per_pair[static_cast<size_t>(p)]));
    }
    for (int p = 0; p < pairs_; ++p) {
      for (int q = 0; q < pairs_; ++q) {
        if (p == q) continue;  // no arc x_{u,v} -> y_{u,v}
        mid_arc_[static_cast<size_t>(p) * static_cast<size_t>(pairs_) +
                 static_cast<size_t>(q)] =
            solver_.add_arc(x_node(p), y_node(q), spare_cap);
      }
    }
    for (int q = 0; q < pairs_; ++q) {
      solver_.add_arc(y_node(q), sink(), spare_cap);
    }
  }

  long long solve() { return solver_.run(source(), sink()); }

  // Flow pushed from x_p to y_q after solve(); 0 when the arc is absent.
  int units(int p, int q) const {
    const int id = mid_arc_[static_cast<size_t>(p) *
                                static_cast<size_t>(pairs_) +
                            static_cast<size_t>(q)];
    return id < 0 ? 0 : solver_.flow_on(id);
  }

  int pair_count() const { return pairs_; }

 private:
  int source() const { return 0; }
  int sink() const { return 1; }
  int x_node(int p) const { return 2 + p; }
  int y_node(int p) const { return 2 + pairs_ + p; }

  int pairs_;
  detail::MaxFlow solver_;
  std::vector<int> start_arc_;
  std::vector<int> mid_arc_;
};

}  // namespace enclose

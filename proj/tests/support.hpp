#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "enclose/decomposition.hpp"
#include "enclose/multigraph.hpp"

namespace testsupport {

using enclose::Decomposition;
using enclose::Multigraph;

using EdgeList = std::vector<std::pair<int, int>>;

inline Multigraph graph_of(int n, const EdgeList& edges) {
  Multigraph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Decomposition decomposition_of(int n,
                                      const std::vector<EdgeList>& classes) {
  std::vector<Multigraph> cs;
  cs.reserve(classes.size());
  for (const auto& edges : classes) cs.push_back(graph_of(n, edges));
  return enclose::decomposition_from_classes(std::move(cs));
}

// Independent check that an injection from the listed single edges into the
// spare pool exists, avoiding parallel images: plain recursive assignment,
// no flow machinery.
inline bool injection_exists(const std::vector<int>& edge_pairs,
                             std::vector<int>& pool, size_t idx) {
  if (idx == edge_pairs.size()) return true;
  for (size_t target = 0; target < pool.size(); ++target) {
    if (static_cast<int>(target) == edge_pairs[idx] || pool[target] == 0) {
      continue;
    }
    --pool[target];
    if (injection_exists(edge_pairs, pool, idx + 1)) {
      ++pool[target];
      return true;
    }
    ++pool[target];
  }
  return false;
}

inline bool brute_force_addible(const std::vector<int>& edge_pairs,
                                int pair_count, int spare_per_pair) {
  std::vector<int> pool(static_cast<size_t>(pair_count), spare_per_pair);
  return injection_exists(edge_pairs, pool, 0);
}

}  // namespace testsupport

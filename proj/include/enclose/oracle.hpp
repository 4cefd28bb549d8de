#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "enclose/decomposition.hpp"
#include "enclose/enclosure.hpp"
#include "enclose/errors.hpp"
#include "enclose/multigraph.hpp"

namespace enclose {

struct SearchBudget {
  int max_vertices = 8;
  int max_multiplicity = 3;
  long long node_limit = 50'000'000;
  double time_limit_seconds = 120.0;
};

enum class OracleAnswer { Yes, No, BudgetExceeded };

inline const char* to_string(OracleAnswer a) {
  switch (a) {
    case OracleAnswer::Yes: return "yes";
    case OracleAnswer::No: return "no";
    case OracleAnswer::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

struct OracleResult {
  OracleAnswer answer = OracleAnswer::No;
  std::optional<Decomposition> witness;
  long long nodes = 0;
};

namespace detail {

struct OracleSearch {
  int total;       // n + m
  int k;
  bool hamiltonian;
  std::vector<Multigraph> classes;
  std::vector<std::vector<int>> class_degree;  // [class][vertex]
  std::vector<uint64_t> class_hash;            // commutative content hash
  std::vector<std::pair<int, int>> copies;     // uncoloured edge copies, lex
  long long nodes = 0;
  long long node_limit;
  std::chrono::steady_clock::time_point deadline;
  bool exhausted = false;

  static uint64_t edge_token(int u, int v) {
    uint64_t h = 1469598103934665603ULL;
    for (uint64_t x : {static_cast<uint64_t>(u), static_cast<uint64_t>(v)}) {
      h ^= x + 0x9e3779b97f4a7c15ULL;
      h *= 1099511628211ULL;
    }
    return h;
  }

  bool out_of_budget() {
    if (nodes >= node_limit) return true;
    if ((nodes & 1023) == 0 &&
        std::chrono::steady_clock::now() > deadline) {
      return true;
    }
    return false;
  }

  bool place(size_t idx) {
    if (idx == copies.size()) return true;
    const auto [u, v] = copies[idx];
    // Identical classes are interchangeable; try only the first of each kind.
    std::vector<uint64_t> tried;
    for (int j = 0; j < k; ++j) {
      auto& deg = class_degree[static_cast<size_t>(j)];
      if (deg[static_cast<size_t>(u)] >= 2 || deg[static_cast<size_t>(v)] >= 2)
        continue;
      bool dup = false;
      for (uint64_t h : tried) {
        if (h == class_hash[static_cast<size_t>(j)]) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      tried.push_back(class_hash[static_cast<size_t>(j)]);

      Multigraph& c = classes[static_cast<size_t>(j)];
      if (hamiltonian && c.same_component(u, v)) {
        // Closing a cycle is only allowed when it is the spanning one.
        if (c.edge_count() != total - 1) continue;
      }
      ++nodes;
      if (out_of_budget()) {
        exhausted = true;
        return false;
      }
      c.add_edge(u, v);
      deg[static_cast<size_t>(u)]++;
      deg[static_cast<size_t>(v)]++;
      class_hash[static_cast<size_t>(j)] += edge_token(u, v);
      if (place(idx + 1)) return true;
      if (exhausted) return false;
      class_hash[static_cast<size_t>(j)] -= edge_token(u, v);
      deg[static_cast<size_t>(u)]--;
      deg[static_cast<size_t>(v)]--;
      c.remove_edge(u, v);
    }
    return false;
  }
};

}  // namespace detail

// Exhaustive check whether the decomposition a of a subgraph of mu*K_{n+m}
// extends to a full 2-factorization (hamiltonian: all classes connected) with
// a's edges keeping their colours. Independent of the decision procedure:
// pure backtracking over colourings, with class-permutation symmetry pruning.
// A "yes" carries a witness that passes verify_enclosure.
inline OracleResult oracle_exists(const Decomposition& a, int mu, int m,
                                  EnclosureMode mode,
                                  const SearchBudget& budget = {}) {
  const int n = a.vertex_count();
  const int total = n + m;
  check_arg(m >= 1 && mu >= 1, "oracle: m and mu must be positive");
  check_arg(total <= budget.max_vertices,
            "oracle: n+m exceeds the budget cap of " +
                std::to_string(budget.max_vertices) + " vertices");
  check_arg(mu <= budget.max_multiplicity,
            "oracle: mu exceeds the budget cap of " +
                std::to_string(budget.max_multiplicity));
  const int k = a.k();

  OracleResult result;
  // Counting necessities: every vertex needs per-class degree 2 across k
  // classes, so 2k must be the host degree; and a class can never contain a
  // vertex of degree > 2, nor (hamiltonian) a non-spanning cycle.
  if (2LL * k != static_cast<long long>(mu) * (total - 1)) return result;
  for (const auto& c : a.classes) {
    const ClassKind kind = classify_class(c);
    if (kind == ClassKind::Invalid) return result;
    if (mode == EnclosureMode::Hamiltonian && total >= 3 &&
        kind != ClassKind::PathForest) {
      return result;  // a cycle on at most n < n+m vertices cannot grow
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (a.base.mult(u, v) > mu) return result;
    }
  }

  detail::OracleSearch search;
  search.total = total;
  search.k = k;
  search.hamiltonian = mode == EnclosureMode::Hamiltonian;
  search.node_limit = budget.node_limit;
  search.deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(budget.time_limit_seconds));
  search.class_degree.assign(static_cast<size_t>(k),
                             std::vector<int>(static_cast<size_t>(total), 0));
  search.class_hash.assign(static_cast<size_t>(k), 0);
  for (int j = 0; j < k; ++j) {
    Multigraph c = a.classes[static_cast<size_t>(j)].padded(total);
    for (int v = 0; v < total; ++v) {
      search.class_degree[static_cast<size_t>(j)][static_cast<size_t>(v)] =
          c.degree(v);
    }
    for (int u = 0; u < total; ++u) {
      for (int v = u + 1; v < total; ++v) {
        for (int c2 = c.mult(u, v); c2 > 0; --c2) {
          search.class_hash[static_cast<size_t>(j)] +=
              detail::OracleSearch::edge_token(u, v);
        }
      }
    }
    search.classes.push_back(std::move(c));
  }
  for (int u = 0; u < total; ++u) {
    for (int v = u + 1; v < total; ++v) {
      const int coloured =
          (u < n && v < n) ? a.base.mult(u, v) : 0;
      for (int c = mu - coloured; c > 0; --c) search.copies.emplace_back(u, v);
    }
  }

  const bool found = search.place(0);
  result.nodes = search.nodes;
  if (search.exhausted) {
    result.answer = OracleAnswer::BudgetExceeded;
    return result;
  }
  if (!found) {
    result.answer = OracleAnswer::No;
    return result;
  }

  Decomposition witness = decomposition_from_classes(std::move(search.classes));
  EnclosureCertificate cert;
  cert.enclosing = witness;
  cert.n = n;
  cert.m = m;
  cert.lambda = 0;
  cert.mu = mu;
  cert.mode = mode;
  const auto verdict = verify_enclosure(a, cert, mode);
  check_internal(verdict.ok, "oracle witness failed verification");
  result.answer = OracleAnswer::Yes;
  result.witness = std::move(witness);
  return result;
}

// Random valid (optionally strong) path decomposition of lambda*K_n into k
// classes; deterministic in the seed. Some shapes admit no such
// decomposition, which is reported after bounded retries.
inline Decomposition random_instance(uint64_t seed, int n, int lambda, int k,
                                     bool strong) {
  check_arg(n >= 1, "random_instance: n must be positive");
  check_arg(lambda >= 1, "random_instance: lambda must be positive");
  check_arg(k >= 1, "random_instance: k must be positive");
  std::mt19937_64 rng(seed);
  auto below = [&](size_t bound) {
    return static_cast<size_t>(rng() % static_cast<uint64_t>(bound));
  };

  std::vector<std::pair<int, int>> copies;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      for (int c = 0; c < lambda; ++c) copies.emplace_back(u, v);
    }
  }

  constexpr int kAttempts = 500;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    for (size_t i = copies.size(); i > 1; --i) {
      std::swap(copies[i - 1], copies[below(i)]);
    }
    std::vector<Multigraph> classes(static_cast<size_t>(k), Multigraph(n));
    bool ok = true;
    for (const auto& [u, v] : copies) {
      std::vector<int> fits;
      for (int j = 0; j < k; ++j) {
        const Multigraph& c = classes[static_cast<size_t>(j)];
        if (c.degree(u) >= 2 || c.degree(v) >= 2) continue;
        if (strong && c.same_component(u, v)) continue;
        fits.push_back(j);
      }
      if (fits.empty()) {
        ok = false;
        break;
      }
      classes[static_cast<size_t>(fits[below(fits.size())])].add_edge(u, v);
    }
    if (!ok) continue;
    Decomposition d = decomposition_from_classes(std::move(classes));
    check_internal(d.base == complete_multigraph(n, lambda),
                   "generator lost edges");
    check_internal(validate(d, strong).ok, "generator built an invalid "
                                           "decomposition");
    return d;
  }
  throw infeasible_error(
      "no valid " + std::string(strong ? "strong " : "") +
      "path decomposition found for n=" + std::to_string(n) +
      ", lambda=" + std::to_string(lambda) + ", k=" + std::to_string(k) +
      " after " + std::to_string(kAttempts) + " attempts");
}

}  // namespace enclose

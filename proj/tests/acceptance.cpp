// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Criteria 5-7 re-examine the instances collected while
// running criteria 1-3.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "enclose/enclosure.hpp"
#include "enclose/extend.hpp"
#include "enclose/io.hpp"
#include "enclose/oracle.hpp"

using namespace enclose;

namespace {

struct CollectedCase {
  Decomposition a;
  int mu = 0;
  int m = 0;
  EnclosureMode mode = EnclosureMode::Hamiltonian;
};

std::vector<CollectedCase> g_successes;   // decision all-pass, constructed
std::vector<CollectedCase> g_oracle_nos;  // oracle said no, inside a regime

int g_failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail, double seconds) {
  std::printf("[%s] criterion %d: %s (%s, %.1fs)\n", pass ? "PASS" : "FAIL",
              index, name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void run(int index, const std::string& name,
         const std::function<bool(std::string&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail += std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(index, name, pass, detail, seconds);
}

Decomposition assignment_to_decomposition(int c0, int c1, int c2) {
  const std::pair<int, int> edges[3] = {{0, 1}, {1, 2}, {2, 0}};
  std::vector<Multigraph> classes(3, Multigraph(3));
  const int colour[3] = {c0, c1, c2};
  for (int e = 0; e < 3; ++e) {
    classes[static_cast<size_t>(colour[e])].add_edge(edges[e].first,
                                                     edges[e].second);
  }
  return decomposition_from_classes(std::move(classes));
}

// Exhaustive iff over the 27 labelled colourings of K_3's edges: decision,
// oracle and construction must agree, and every success must verify.
bool criterion1(std::string& detail) {
  int yes = 0, no = 0;
  for (int c0 = 0; c0 < 3; ++c0) {
    for (int c1 = 0; c1 < 3; ++c1) {
      for (int c2 = 0; c2 < 3; ++c2) {
        const auto a = assignment_to_decomposition(c0, c1, c2);
        const bool decided = check_hamiltonian(a, 2, 1).all_pass();
        const auto oracle = oracle_exists(a, 2, 1,
                                          EnclosureMode::Hamiltonian);
        if (oracle.answer == OracleAnswer::BudgetExceeded) {
          detail = "oracle ran out of budget";
          return false;
        }
        const bool exists = oracle.answer == OracleAnswer::Yes;
        bool constructed = false;
        try {
          const auto cert = enclose_hamiltonian(a, 2, 1);
          constructed = true;
          if (!verify_enclosure(a, cert, EnclosureMode::Hamiltonian).ok) {
            detail = "a constructed certificate failed verification";
            return false;
          }
        } catch (const enclosure_refused&) {
        } catch (const out_of_regime_error&) {
        }
        if (decided != exists || decided != constructed) {
          detail = "decision/oracle/construction disagree on a colouring";
          return false;
        }
        (exists ? yes : no)++;
        if (exists) {
          g_successes.push_back({a, 2, 1, EnclosureMode::Hamiltonian});
        } else {
          g_oracle_nos.push_back({a, 2, 1, EnclosureMode::Hamiltonian});
        }
      }
    }
  }
  detail = "27 colourings, " + std::to_string(yes) + " enclosable / " +
           std::to_string(no) + " not";
  return yes == 24 && no == 3;
}

// 2-factorizations at n=4, m=2, lambda=1, mu=2, k=5 over seeded random path
// decompositions; decision must equal construction success, certificates must
// verify, and a sample is cross-checked against the oracle.
bool criterion2(std::string& detail) {
  const int target = 200;
  int built = 0, oracled = 0;
  uint64_t seed = 0;
  for (int i = 0; i < target; ++i, ++seed) {
    Decomposition a = random_instance(seed, 4, 1, 5, false);
    const bool decided = check_twofactor(a, 2, 2).all_pass();
    bool constructed = false;
    EnclosureCertificate cert;
    try {
      cert = enclose_twofactor(a, 2, 2);
      constructed = true;
    } catch (const enclosure_refused&) {
    }
    if (decided != constructed) {
      detail = "decision and construction disagree at seed " +
               std::to_string(seed);
      return false;
    }
    if (constructed) {
      if (!verify_enclosure(a, cert, EnclosureMode::TwoFactor).ok) {
        detail = "certificate failed verification at seed " +
                 std::to_string(seed);
        return false;
      }
      g_successes.push_back({a, 2, 2, EnclosureMode::TwoFactor});
      ++built;
    }
    if (oracled < 20) {
      const auto oracle =
          oracle_exists(a, 2, 2, EnclosureMode::TwoFactor);
      if (oracle.answer == OracleAnswer::BudgetExceeded) {
        detail = "oracle ran out of budget at seed " + std::to_string(seed);
        return false;
      }
      if ((oracle.answer == OracleAnswer::Yes) != decided) {
        detail = "oracle disagrees with the decision at seed " +
                 std::to_string(seed);
        return false;
      }
      if (oracle.answer == OracleAnswer::No) {
        g_oracle_nos.push_back({a, 2, 2, EnclosureMode::TwoFactor});
      }
      ++oracled;
    }
  }
  detail = std::to_string(built) + "/" + std::to_string(target) +
           " constructed and verified, " + std::to_string(oracled) +
           " oracle cross-checks";
  return built == target && oracled >= 20;
}

// Hamiltonian decompositions at n=4, m=3, lambda=1, mu=2: k=6 instances all
// pass and construct; k=5 and k=7 variants fail the class-count condition and
// the oracle confirms non-existence.
bool criterion3(std::string& detail) {
  const int target = 200;
  int built = 0;
  for (uint64_t seed = 0; seed < target; ++seed) {
    Decomposition a = random_instance(seed, 4, 1, 6, true);
    const auto decision = check_hamiltonian(a, 2, 3);
    if (!decision.all_pass()) {
      detail = "a k=6 strong instance unexpectedly failed the decision";
      return false;
    }
    EnclosureCertificate cert;
    try {
      cert = enclose_hamiltonian(a, 2, 3);
    } catch (const std::exception& e) {
      detail = std::string("construction failed at seed ") +
               std::to_string(seed) + ": " + e.what();
      return false;
    }
    if (!verify_enclosure(a, cert, EnclosureMode::Hamiltonian).ok) {
      detail = "certificate failed verification at seed " +
               std::to_string(seed);
      return false;
    }
    g_successes.push_back({a, 2, 3, EnclosureMode::Hamiltonian});
    ++built;
  }
  int refuted = 0;
  for (int k : {5, 7}) {
    for (uint64_t seed = 0; seed < 10; ++seed) {
      Decomposition a = random_instance(seed, 4, 1, k, true);
      const auto decision = check_hamiltonian(a, 2, 3);
      if (decision.all_pass()) {
        detail = "a wrong class count slipped through the decision";
        return false;
      }
      const auto oracle =
          oracle_exists(a, 2, 3, EnclosureMode::Hamiltonian);
      if (oracle.answer != OracleAnswer::No) {
        detail = "oracle failed to refute a k=" + std::to_string(k) +
                 " instance";
        return false;
      }
      g_oracle_nos.push_back({a, 2, 3, EnclosureMode::Hamiltonian});
      ++refuted;
    }
  }
  detail = std::to_string(built) + "/" + std::to_string(target) +
           " constructed and verified, " + std::to_string(refuted) +
           " failing variants refuted by the oracle";
  return built == target && refuted >= 10;
}

// Addibility equivalence, exhaustive over per-pair distributions with
// n <= 4, mu-lambda <= 2, |S_1| <= 6: condition check, assignment network and
// brute-force injection search must agree.
bool criterion4(std::string& detail) {
  long long cases = 0;
  for (int n = 2; n <= 4; ++n) {
    const int pair_total = n * (n - 1) / 2;
    const auto pairs = all_pairs(n);
    for (int cap = 1; cap <= 2; ++cap) {
      std::vector<long long> dist(static_cast<size_t>(pair_total), 0);
      bool ok = true;
      std::function<void(int, int)> enumerate = [&](int idx, int left) {
        if (!ok) return;
        if (idx == pair_total) {
          std::vector<std::pair<int, int>> s1;
          for (int p = 0; p < pair_total; ++p) {
            for (long long c = 0; c < dist[static_cast<size_t>(p)]; ++c) {
              s1.push_back(pairs[static_cast<size_t>(p)]);
            }
          }
          DecompositionProfile prof;
          prof.n = n;
          prof.k = static_cast<long long>(s1.size());
          prof.s.assign(2, 0);
          prof.s[1] = prof.k;
          prof.s1_pair.assign(static_cast<size_t>(n) * n, 0);
          for (int p = 0; p < pair_total; ++p) {
            const auto [u, v] = pairs[static_cast<size_t>(p)];
            prof.s1_pair[static_cast<size_t>(u) * n + v] =
                dist[static_cast<size_t>(p)];
            prof.s1_pair[static_cast<size_t>(v) * n + u] =
                dist[static_cast<size_t>(p)];
          }
          const bool checked = check_addible(prof, 1, 1 + cap).ok;
          const bool solved = solve_addible(s1, 1, 1 + cap, n).has_value();
          // independent brute force over injections
          std::vector<int> pool(static_cast<size_t>(pair_total), cap);
          std::function<bool(size_t)> brute = [&](size_t idx2) -> bool {
            if (idx2 == s1.size()) return true;
            const int own = pair_index(n, s1[idx2].first, s1[idx2].second);
            for (int t = 0; t < pair_total; ++t) {
              if (t == own || pool[static_cast<size_t>(t)] == 0) continue;
              --pool[static_cast<size_t>(t)];
              if (brute(idx2 + 1)) {
                ++pool[static_cast<size_t>(t)];
                return true;
              }
              ++pool[static_cast<size_t>(t)];
            }
            return false;
          };
          const bool brute_ok = brute(0);
          ++cases;
          if (checked != solved || solved != brute_ok) ok = false;
          return;
        }
        for (int c = 0; c <= left; ++c) {
          dist[static_cast<size_t>(idx)] = c;
          enumerate(idx + 1, left - c);
        }
        dist[static_cast<size_t>(idx)] = 0;
      };
      enumerate(0, 6);
      if (!ok) {
        detail = "equivalence broke at n=" + std::to_string(n) +
                 ", cap=" + std::to_string(cap);
        return false;
      }
    }
  }
  detail = std::to_string(cases) + " profiles, all three routes agree";
  return cases > 0;
}

// The extension stage of the pipeline, shared by criteria 5 and 6.
Decomposition extended_for(const CollectedCase& cc) {
  const int min_edges = cc.a.vertex_count() - cc.m;
  if (min_edges <= 0) return cc.a;
  if (min_edges == 1) return extend_1(cc.a, cc.mu);
  return cc.mode == EnclosureMode::Hamiltonian
             ? extend_2_strong(cc.a, cc.mu)
             : extend_2_weak(cc.a, cc.mu);
}

// Re-runs every collected success through the pipeline pieces and checks the
// detachment contract verifier on each output, demanding zero violations.
bool criterion5(std::string& detail) {
  long long checked = 0;
  for (const auto& cc : g_successes) {
    const bool strong = cc.mode == EnclosureMode::Hamiltonian;
    auto state = make_completion_state(
        extended_for(cc), cc.a, cc.mu, cc.m,
        strong ? CompletionMode::Strong : CompletionMode::Weak);
    auto done = complete(std::move(state));
    const auto prof = profile(done.decomposition);
    const auto host =
        build_amalgam(done.decomposition, cc.m, prof.cycle_free_count);
    const auto plan = default_plan(host);
    const auto g = detach(host, plan);
    const auto verdict = verify_detachment(g, host, plan);
    if (!verdict.ok) {
      detail = "detachment contract violated: " + verdict.violations.front();
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " detachments, zero violations";
  return checked > 0;
}

// Completion behaviour on every extended state: exactly one edge per step,
// no class ever shrinks, strongness and the 2-factor budget are maintained.
bool criterion6(std::string& detail) {
  long long states = 0, steps_total = 0;
  for (const auto& cc : g_successes) {
    const bool strong = cc.mode == EnclosureMode::Hamiltonian;
    auto st = make_completion_state(
        extended_for(cc), cc.a, cc.mu, cc.m,
        strong ? CompletionMode::Strong : CompletionMode::Weak);
    const long long expect = st.uncolored_count();
    std::vector<long long> sizes;
    for (const auto& c : st.current.classes) sizes.push_back(c.edge_count());
    long long steps = 0;
    while (!st.finished()) {
      st = strong ? step_strong(std::move(st)) : step_weak(std::move(st));
      ++steps;
      long long grown = 0;
      for (size_t i = 0; i < sizes.size(); ++i) {
        const long long now = st.current.classes[i].edge_count();
        if (now < sizes[i]) {
          detail = "a class shrank during completion";
          return false;
        }
        grown += now - sizes[i];
        sizes[i] = now;
      }
      if (grown != 1) {
        detail = "a step changed the total size by " + std::to_string(grown);
        return false;
      }
      if (strong && !validate(st.current, true).ok) {
        detail = "a strong step produced a cycle";
        return false;
      }
      if (!strong && !st.within_two_factor_budget()) {
        detail = "a weak step exceeded the 2-factor budget";
        return false;
      }
    }
    if (steps != expect) {
      detail = "completion took " + std::to_string(steps) + " steps, not " +
               std::to_string(expect);
      return false;
    }
    ++states;
    steps_total += steps;
  }
  detail = std::to_string(states) + " states completed, " +
           std::to_string(steps_total) + " steps in total";
  return states > 0;
}

// Necessity: every success re-derives an all-pass decision; every oracle "no"
// inside a covered regime has a failed condition (or invalid input).
bool criterion7(std::string& detail) {
  for (const auto& cc : g_successes) {
    const auto d = cc.mode == EnclosureMode::Hamiltonian
                       ? check_hamiltonian(cc.a, cc.mu, cc.m)
                       : check_twofactor(cc.a, cc.mu, cc.m);
    if (!d.all_pass()) {
      detail = "a successful instance re-derives a failing decision";
      return false;
    }
  }
  for (const auto& cc : g_oracle_nos) {
    const auto d = cc.mode == EnclosureMode::Hamiltonian
                       ? check_hamiltonian(cc.a, cc.mu, cc.m)
                       : check_twofactor(cc.a, cc.mu, cc.m);
    if (!d.in_regime()) {
      detail = "an oracle refutation fell outside the regimes";
      return false;
    }
    if (d.all_pass()) {
      detail = "oracle said no but every condition passes";
      return false;
    }
  }
  detail = std::to_string(g_successes.size()) + " successes all-pass, " +
           std::to_string(g_oracle_nos.size()) +
           " refutations each fail a condition";
  return !g_successes.empty() && !g_oracle_nos.empty();
}

}  // namespace

int main() {
  run(1, "exhaustive iff on K_3 hamiltonian enclosures", criterion1);
  run(2, "random 2-factorization enclosures at n=4, m=2", criterion2);
  run(3, "random hamiltonian enclosures at n=4, m=3", criterion3);
  run(4, "addibility equivalence, exhaustive profiles", criterion4);
  run(5, "detachment contract on every construction", criterion5);
  run(6, "completion step laws on every extended state", criterion6);
  run(7, "necessity direction over successes and refutations", criterion7);
  if (g_failures == 0) {
    std::printf("all 7 criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", g_failures);
  }
  return g_failures;
}

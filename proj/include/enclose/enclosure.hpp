#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "enclose/amalgam.hpp"
#include "enclose/completion.hpp"
#include "enclose/decomposition.hpp"
#include "enclose/errors.hpp"
#include "enclose/extend.hpp"
#include "enclose/multigraph.hpp"

namespace enclose {

enum class EnclosureMode { Hamiltonian, TwoFactor };

inline const char* to_string(EnclosureMode m) {
  return m == EnclosureMode::Hamiltonian ? "hamiltonian" : "twofactor";
}

// Parameter regimes with a decision procedure. Everything else is refused,
// not guessed.
enum class Regime {
  HamiltonianWide,      // m >= n-1
  HamiltonianDoubling,  // lambda=1, mu=2, m=n-2
  HamiltonianTriangle,  // n=3, m=1
  TwoFactorNear,        // m >= n-2
  OutOfRegime,
};

inline const char* describe(Regime r) {
  switch (r) {
    case Regime::HamiltonianWide: return "hamiltonian: m >= n-1";
    case Regime::HamiltonianDoubling:
      return "hamiltonian: lambda=1, mu=2, m=n-2";
    case Regime::HamiltonianTriangle: return "hamiltonian: n=3, m=1";
    case Regime::TwoFactorNear: return "two-factor: m >= n-2";
    case Regime::OutOfRegime: return "out of regime";
  }
  return "?";
}

struct EnclosureInstance {
  int n = 0;
  int m = 0;
  int lambda = 0;
  int mu = 0;
  long long k = 0;
  EnclosureMode mode = EnclosureMode::Hamiltonian;
};

struct ConditionResult {
  std::string id;      // "M1".."M3" or "N1".."N3"
  std::string detail;  // computed left/right sides, human readable
  bool applicable = true;
  bool pass = true;
};

struct EnclosureDecision {
  EnclosureInstance instance;
  Regime regime = Regime::OutOfRegime;
  bool input_valid = false;
  std::string input_issue;
  std::vector<ConditionResult> conditions;

  bool in_regime() const { return regime != Regime::OutOfRegime; }

  bool all_pass() const {
    if (!in_regime() || !input_valid) return false;
    for (const auto& c : conditions) {
      if (c.applicable && !c.pass) return false;
    }
    return true;
  }

  std::string failure_summary() const {
    std::ostringstream out;
    if (!in_regime()) out << "out of regime; ";
    if (!input_valid) out << "input: " << input_issue << "; ";
    for (const auto& c : conditions) {
      if (c.applicable && !c.pass) out << c.id << ": " << c.detail << "; ";
    }
    return out.str();
  }
};

// A construction was refused because the decision conditions fail.
class enclosure_refused : public std::runtime_error {
 public:
  enclosure_refused(EnclosureDecision d, const std::string& msg)
      : std::runtime_error(msg), decision(std::move(d)) {}

  EnclosureDecision decision;
};

namespace detail {

inline std::string ratio_text(long long numerator_times_two) {
  if (numerator_times_two % 2 == 0) {
    return std::to_string(numerator_times_two / 2);
  }
  return std::to_string(numerator_times_two / 2) + ".5";
}

// Shared skeleton of both decisions: class count, deficiency sum, and (where
// applicable) the per-pair bound on single-edge classes.
inline void eval_class_count(EnclosureDecision& d,
                             const DecompositionProfile&) {
  const auto& inst = d.instance;
  const long long rhs2 =
      static_cast<long long>(inst.mu) * (inst.m + inst.n - 1);
  ConditionResult c;
  c.id = d.instance.mode == EnclosureMode::Hamiltonian ? "M1" : "N1";
  c.pass = 2 * inst.k == rhs2;
  c.detail = "k = " + std::to_string(inst.k) + ", mu(m+n-1)/2 = " +
             ratio_text(rhs2);
  d.conditions.push_back(std::move(c));
}

inline void eval_deficiency_sum(EnclosureDecision& d,
                                const DecompositionProfile& p,
                                const std::string& id) {
  const auto& inst = d.instance;
  const int want = inst.n - inst.m;  // edges every class must reach
  long long lhs = 0;
  for (int i = 0; i < want; ++i) {
    lhs += static_cast<long long>(want - i) * p.s_at(i);
  }
  const long long rhs = static_cast<long long>(inst.mu - inst.lambda) *
                        inst.n * (inst.n - 1) / 2;
  ConditionResult c;
  c.id = id;
  c.pass = lhs <= rhs;
  c.detail = std::to_string(lhs) + " <= " + std::to_string(rhs);
  d.conditions.push_back(std::move(c));
}

inline void eval_pair_bound(EnclosureDecision& d,
                            const DecompositionProfile& p, bool applicable) {
  const auto& inst = d.instance;
  const long long pair_total =
      static_cast<long long>(inst.n) * (inst.n - 1) / 2;
  const long long rhs = static_cast<long long>(inst.mu - inst.lambda) *
                            (pair_total - 1) -
                        p.s_at(0);
  long long worst = 0;
  for (int u = 0; u < inst.n; ++u) {
    for (int v = u + 1; v < inst.n; ++v) {
      worst = std::max(worst, p.s1(u, v));
    }
  }
  ConditionResult c;
  c.id = "M3";
  c.applicable = applicable;
  c.pass = !applicable || worst <= rhs;
  c.detail = "max |S1(u,v)| = " + std::to_string(worst) +
             " <= " + std::to_string(rhs);
  d.conditions.push_back(std::move(c));
}

}  // namespace detail

namespace detail {

// The edge multiplicity of the decomposed complete graph. With a single
// vertex there are no edges to read it from, so a caller-provided value is
// required there; everywhere else a provided value must match the graph.
inline int resolve_lambda(const Decomposition& a, int lambda_hint) {
  if (a.vertex_count() == 1) {
    check_arg(lambda_hint >= 1,
              "lambda cannot be read off a one-vertex graph; pass it "
              "explicitly");
    return lambda_hint;
  }
  const int lambda = uniform_multiplicity(a);
  check_arg(lambda_hint == 0 || lambda_hint == lambda,
            "provided lambda disagrees with the decomposed graph");
  return lambda;
}

}  // namespace detail

// Decision for enclosing a strong path decomposition of lambda*K_n in a
// Hamiltonian decomposition of mu*K_{n+m}. lambda is read off the graph
// unless n = 1 forces an explicit value.
inline EnclosureDecision check_hamiltonian(const Decomposition& a, int mu,
                                           int m, int lambda_hint = 0) {
  const int n = a.vertex_count();
  const int lambda = detail::resolve_lambda(a, lambda_hint);
  check_arg(m >= 1, "m must be positive");
  check_arg(lambda >= 1, "lambda must be positive");
  check_arg(mu > lambda, "mu must exceed lambda");

  EnclosureDecision d;
  d.instance = {n, m, lambda, mu, a.k(), EnclosureMode::Hamiltonian};
  if (m >= n - 1) d.regime = Regime::HamiltonianWide;
  else if (n == 3 && m == 1) d.regime = Regime::HamiltonianTriangle;
  else if (lambda == 1 && mu == 2 && m == n - 2)
    d.regime = Regime::HamiltonianDoubling;
  else d.regime = Regime::OutOfRegime;

  const auto verdict = validate(a, true);
  d.input_valid = verdict.ok;
  if (!verdict.ok) {
    d.input_issue = "not a strong path decomposition (class " +
                    std::to_string(verdict.offending_class) + ": " +
                    verdict.reason + ")";
    return d;
  }
  const auto p = profile(a);
  detail::eval_class_count(d, p);
  detail::eval_deficiency_sum(d, p, "M2");
  detail::eval_pair_bound(d, p,
                          d.regime == Regime::HamiltonianDoubling ||
                              d.regime == Regime::HamiltonianTriangle);
  return d;
}

// Decision for enclosing a path decomposition of lambda*K_n in a
// 2-factorization of mu*K_{n+m}.
inline EnclosureDecision check_twofactor(const Decomposition& a, int mu,
                                         int m) {
  const int n = a.vertex_count();
  const int lambda = uniform_multiplicity(a);
  check_arg(m >= 1, "m must be positive");
  check_arg(lambda >= 1, "lambda must be positive");
  check_arg(mu > lambda, "mu must exceed lambda");

  EnclosureDecision d;
  d.instance = {n, m, lambda, mu, a.k(), EnclosureMode::TwoFactor};
  d.regime = m >= n - 2 ? Regime::TwoFactorNear : Regime::OutOfRegime;

  const auto verdict = validate(a, false);
  d.input_valid = verdict.ok;
  if (!verdict.ok) {
    d.input_issue = "not a path decomposition (class " +
                    std::to_string(verdict.offending_class) + ": " +
                    verdict.reason + ")";
    return d;
  }
  const auto p = profile(a);
  detail::eval_class_count(d, p);
  {
    ConditionResult c;
    c.id = "N2";
    const long long budget2 = static_cast<long long>(mu) * (m - 1);
    c.pass = 2 * p.two_factor_count <= budget2;
    c.detail = "2-factors = " + std::to_string(p.two_factor_count) +
               " <= mu(m-1)/2 = " + detail::ratio_text(budget2);
    d.conditions.push_back(std::move(c));
  }
  detail::eval_deficiency_sum(d, p, "N3");
  return d;
}

// The witness: a verified decomposition of mu*K_{n+m} whose class i contains
// class i of the input (vertices keep their indices, new vertices are
// n..n+m-1).
struct EnclosureCertificate {
  Decomposition enclosing;
  int n = 0;
  int m = 0;
  int lambda = 0;
  int mu = 0;
  EnclosureMode mode = EnclosureMode::Hamiltonian;
  std::vector<std::string> transcript;
};

struct EnclosureVerdict {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
};

// Checks a certificate from scratch: the host graph is exactly mu*K_{n+m},
// every class contains its original class, every class is a spanning
// 2-regular subgraph, and in hamiltonian mode every class is connected.
inline EnclosureVerdict verify_enclosure(const Decomposition& a,
                                         const EnclosureCertificate& cert,
                                         EnclosureMode mode) {
  EnclosureVerdict v;
  const int n = a.vertex_count();
  const int total = cert.enclosing.vertex_count();
  if (cert.n != n) {
    v.fail("certificate was built for a different base vertex count");
    return v;
  }
  if (total != n + cert.m) {
    v.fail("host vertex count is not n+m");
    return v;
  }
  if (cert.enclosing.k() != a.k()) {
    v.fail("class counts differ");
    return v;
  }
  if (!cert.enclosing.consistent()) {
    v.fail("classes do not sum to the host base graph");
  }
  if (cert.enclosing.base != complete_multigraph(total, cert.mu)) {
    v.fail("host base graph is not mu*K_{n+m}");
  }
  for (int i = 0; i < a.k(); ++i) {
    const Multigraph& big = cert.enclosing.classes[static_cast<size_t>(i)];
    if (!big.contains(a.classes[static_cast<size_t>(i)].padded(total))) {
      v.fail("class " + std::to_string(i) +
             " does not contain its original class");
    }
    const ClassKind kind = classify_class(big);
    if (!is_two_factor(kind)) {
      v.fail("class " + std::to_string(i) + " is not a 2-factor (" +
             std::string(to_string(kind)) + ")");
    } else if (mode == EnclosureMode::Hamiltonian &&
               kind != ClassKind::HamiltonianCycle) {
      v.fail("class " + std::to_string(i) + " is a disconnected 2-factor");
    }
  }
  return v;
}

namespace detail {

inline Decomposition extend_to_floor(const Decomposition& a, int mu,
                                     int min_edges, bool strong,
                                     std::vector<std::string>& transcript) {
  if (min_edges <= 0) {
    transcript.push_back("extension: nothing to do (n-m <= 0)");
    return a;
  }
  check_internal(min_edges <= 2,
                 "regimes never require more than two edges per class");
  Decomposition ext =
      min_edges == 1
          ? extend_1(a, mu)
          : (strong ? extend_2_strong(a, mu) : extend_2_weak(a, mu));
  transcript.push_back(
      "extension: every class now has at least " +
      std::to_string(min_edges) + " edges (" +
      std::to_string(ext.base.edge_count() - a.base.edge_count()) +
      " spare edges spent)");
  return ext;
}

inline EnclosureCertificate run_pipeline(const Decomposition& a, int mu, int m,
                                         EnclosureMode mode,
                                         const EnclosureDecision& decision) {
  const int n = a.vertex_count();
  const int lambda = decision.instance.lambda;
  const bool strong = mode == EnclosureMode::Hamiltonian;
  std::vector<std::string> transcript;
  transcript.push_back("instance: n=" + std::to_string(n) +
                       " m=" + std::to_string(m) +
                       " lambda=" + std::to_string(lambda) +
                       " mu=" + std::to_string(mu) +
                       " k=" + std::to_string(a.k()) + " mode=" +
                       to_string(mode) + " (" + describe(decision.regime) +
                       ")");

  Decomposition ext =
      extend_to_floor(a, mu, n - m, strong, transcript);

  auto state = make_completion_state(
      std::move(ext), a, mu, m,
      strong ? CompletionMode::Strong : CompletionMode::Weak);
  if (!strong && n == 3 && m == 1) {
    // With three vertices and one new vertex, the extension already uses
    // every edge of mu*K_3.
    check_internal(state.finished(),
                   "the 2-extension left mu*K_3 edges uncoloured");
  }
  auto done = complete(std::move(state));
  transcript.push_back("completion: coloured " + std::to_string(done.steps) +
                       " remaining edges of mu*K_n");

  const auto prof = profile(done.decomposition);
  if (strong) {
    check_internal(prof.cycle_free_count == done.decomposition.k(),
                   "a strong completion produced a cyclic class");
  }
  auto host = build_amalgam(done.decomposition, m, prof.cycle_free_count);
  transcript.push_back(
      "amalgam: hub carries " + std::to_string(mu) + "*" + std::to_string(m) +
      " edges to each vertex and " +
      std::to_string(static_cast<long long>(mu) * m * (m - 1) / 2) +
      " loops; " + std::to_string(prof.cycle_free_count) +
      " classes will detach connected");

  const auto plan = default_plan(host);
  auto detached = detach(host, plan);
  const auto dv = verify_detachment(detached, host, plan);
  if (!dv.ok) {
    std::string msg = "stage detach: contract violated:";
    for (const auto& f : dv.violations) msg += " " + f + ";";
    throw std::logic_error(msg);
  }
  transcript.push_back("detachment: hub split into " + std::to_string(m) +
                       " vertices; contract verified");

  EnclosureCertificate cert;
  cert.enclosing = std::move(detached);
  cert.n = n;
  cert.m = m;
  cert.lambda = lambda;
  cert.mu = mu;
  cert.mode = mode;
  cert.transcript = std::move(transcript);

  const auto ev = verify_enclosure(a, cert, mode);
  if (!ev.ok) {
    std::string msg = "stage verify: certificate rejected:";
    for (const auto& f : ev.failures) msg += " " + f + ";";
    throw std::logic_error(msg);
  }
  cert.transcript.push_back(
      std::string("verified: every class is a ") +
      (strong ? "hamiltonian cycle" : "2-factor") + " of mu*K_{n+m} "
      "containing its original class");
  return cert;
}

inline void gate(const EnclosureDecision& decision) {
  if (!decision.in_regime()) {
    throw out_of_regime_error(
        "parameters are outside the covered regimes (n=" +
        std::to_string(decision.instance.n) +
        ", m=" + std::to_string(decision.instance.m) +
        ", lambda=" + std::to_string(decision.instance.lambda) +
        ", mu=" + std::to_string(decision.instance.mu) +
        ", mode=" + to_string(decision.instance.mode) + ")");
  }
  if (!decision.all_pass()) {
    throw enclosure_refused(decision,
                            "enclosure refused: " +
                                decision.failure_summary());
  }
}

}  // namespace detail

// Builds and verifies a Hamiltonian decomposition of mu*K_{n+m} enclosing the
// strong path decomposition a, or refuses with the failed decision.
inline EnclosureCertificate enclose_hamiltonian(const Decomposition& a, int mu,
                                                int m) {
  const auto decision = check_hamiltonian(a, mu, m);
  detail::gate(decision);
  return detail::run_pipeline(a, mu, m, EnclosureMode::Hamiltonian, decision);
}

// Builds and verifies a 2-factorization of mu*K_{n+m} enclosing the path
// decomposition a, or refuses with the failed decision.
inline EnclosureCertificate enclose_twofactor(const Decomposition& a, int mu,
                                              int m) {
  const auto decision = check_twofactor(a, mu, m);
  detail::gate(decision);
  return detail::run_pipeline(a, mu, m, EnclosureMode::TwoFactor, decision);
}

}  // namespace enclose

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "enclose/enclosure.hpp"
#include "enclose/io.hpp"
#include "enclose/oracle.hpp"

namespace {

using namespace enclose;

int log_level() {
  const char* e = std::getenv("ENCLOSE_LOG");
  return e ? std::atoi(e) : 0;
}

void logv(const std::string& line) {
  if (log_level() >= 1) std::cerr << "[enclose] " << line << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot write '" + path + "'");
  out << text;
}

struct Resolved {
  int mu = 0;
  int m = 0;
  EnclosureMode mode = EnclosureMode::Hamiltonian;
};

// Flags win over the instance file's params; both may contribute. The
// sentinel kUnset marks an omitted flag, so zero and negative values are
// rejected rather than ignored.
constexpr int kUnset = -1;

Resolved resolve_params(const InstanceFile& f, int mu_flag, int m_flag,
                        const std::string& mode_flag) {
  Resolved r;
  if (mu_flag != kUnset && mu_flag < 1) {
    throw parse_error("mu must be positive");
  }
  if (m_flag != kUnset && m_flag < 1) throw parse_error("m must be positive");
  if (mu_flag != kUnset) r.mu = mu_flag;
  else if (f.mu) r.mu = *f.mu;
  else throw parse_error("mu is required (flag --mu or params.mu)");
  if (m_flag != kUnset) r.m = m_flag;
  else if (f.m) r.m = *f.m;
  else throw parse_error("m is required (flag --m or params.m)");
  if (!mode_flag.empty()) {
    if (mode_flag == "hamiltonian") r.mode = EnclosureMode::Hamiltonian;
    else if (mode_flag == "twofactor") r.mode = EnclosureMode::TwoFactor;
    else throw parse_error("mode must be 'hamiltonian' or 'twofactor'");
  } else if (f.mode) {
    r.mode = *f.mode;
  } else {
    throw parse_error("mode is required (flag --mode or params.mode)");
  }
  return r;
}

EnclosureDecision decide(const Decomposition& a, const Resolved& p) {
  return p.mode == EnclosureMode::Hamiltonian
             ? check_hamiltonian(a, p.mu, p.m)
             : check_twofactor(a, p.mu, p.m);
}

void print_decision(const EnclosureDecision& d, std::ostream& out) {
  const auto& inst = d.instance;
  out << "instance: n=" << inst.n << " m=" << inst.m
      << " lambda=" << inst.lambda << " mu=" << inst.mu << " k=" << inst.k
      << " mode=" << to_string(inst.mode) << "\n";
  out << "regime:   " << describe(d.regime) << "\n";
  out << "input:    "
      << (d.input_valid ? (inst.mode == EnclosureMode::Hamiltonian
                               ? "strong path decomposition"
                               : "path decomposition")
                        : d.input_issue)
      << "\n";
  for (const auto& c : d.conditions) {
    out << c.id << "  " << c.detail << "  "
        << (c.applicable ? (c.pass ? "pass" : "FAIL") : "not applicable")
        << "\n";
  }
  if (!d.in_regime()) {
    out << "result: out of regime (no verdict)\n";
  } else {
    out << "result: " << (d.all_pass() ? "enclosable" : "not enclosable")
        << "\n";
  }
}

int exit_code_for(const EnclosureDecision& d) {
  if (!d.in_regime()) return 2;
  return d.all_pass() ? 0 : 1;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const out_of_regime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const enclosure_refused& e) {
    print_decision(e.decision, std::cerr);
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const infeasible_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "decide, construct and verify enclosures of complete-multigraph "
      "decompositions inside 2-factorizations and hamiltonian "
      "decompositions"};
  app.require_subcommand(1);

  std::string input, original, certificate, output, mode_flag;
  int mu_flag = -1, m_flag = -1;
  long long node_budget = 50'000'000;
  double time_budget = 120.0;
  uint64_t seed = 1;
  int gen_n = 4, gen_lambda = 1, gen_k = 5;
  bool gen_strong = false;

  std::function<int()> action;

  auto* check = app.add_subcommand(
      "check", "evaluate the enclosure conditions and print the table");
  check->add_option("input", input, "instance file")->required();
  check->add_option("--mu", mu_flag, "target edge multiplicity");
  check->add_option("--m", m_flag, "number of new vertices");
  check->add_option("--mode", mode_flag, "hamiltonian | twofactor");
  check->callback([&] {
    action = [&]() {
      const auto f = parse_instance_text(read_file(input));
      const auto p = resolve_params(f, mu_flag, m_flag, mode_flag);
      const auto d = decide(f.decomposition, p);
      print_decision(d, std::cout);
      return exit_code_for(d);
    };
  });

  auto* construct = app.add_subcommand(
      "construct", "build and verify an enclosing decomposition");
  construct->add_option("input", input, "instance file")->required();
  construct->add_option("--mu", mu_flag, "target edge multiplicity");
  construct->add_option("--m", m_flag, "number of new vertices");
  construct->add_option("--mode", mode_flag, "hamiltonian | twofactor");
  construct->add_option("--output", output,
                        "certificate file (stdout when omitted)");
  construct->callback([&] {
    action = [&]() {
      const auto f = parse_instance_text(read_file(input));
      const auto p = resolve_params(f, mu_flag, m_flag, mode_flag);
      const auto cert = p.mode == EnclosureMode::Hamiltonian
                            ? enclose_hamiltonian(f.decomposition, p.mu, p.m)
                            : enclose_twofactor(f.decomposition, p.mu, p.m);
      for (const auto& line : cert.transcript) logv(line);
      const auto text = serialize_certificate(cert, f);
      if (output.empty()) {
        std::cout << text;
      } else {
        write_file(output, text);
        std::cerr << "certificate written to " << output << "\n";
      }
      return 0;
    };
  });

  auto* verify = app.add_subcommand(
      "verify", "check a certificate against its original instance");
  verify->add_option("original", original, "original instance file")
      ->required();
  verify->add_option("certificate", certificate, "certificate file")
      ->required();
  verify->add_option("--mode", mode_flag,
                     "override the certificate's recorded mode");
  verify->callback([&] {
    action = [&]() {
      const auto orig = parse_instance_text(read_file(original));
      const auto cert = parse_certificate_text(read_file(certificate));
      if (cert.original_digest != instance_digest(orig)) {
        throw parse_error(
            "certificate does not belong to this instance (digest mismatch)");
      }
      if (cert.original_n != orig.n || cert.original_lambda != orig.lambda) {
        throw parse_error("certificate parameters disagree with the instance");
      }
      EnclosureMode mode = cert.mode;
      if (!mode_flag.empty()) {
        if (mode_flag == "hamiltonian") mode = EnclosureMode::Hamiltonian;
        else if (mode_flag == "twofactor") mode = EnclosureMode::TwoFactor;
        else throw parse_error("mode must be 'hamiltonian' or 'twofactor'");
      }
      EnclosureCertificate ec;
      ec.enclosing = cert.enclosing.decomposition;
      ec.n = cert.original_n;
      ec.m = cert.m;
      ec.lambda = cert.original_lambda;
      ec.mu = cert.mu;
      ec.mode = mode;
      const auto verdict = verify_enclosure(orig.decomposition, ec, mode);
      if (verdict.ok) {
        std::cout << "certificate verified: every class is a "
                  << (mode == EnclosureMode::Hamiltonian ? "hamiltonian cycle"
                                                         : "2-factor")
                  << " containing its original class\n";
        return 0;
      }
      std::cout << "certificate INVALID:\n";
      for (const auto& f2 : verdict.failures) std::cout << "  - " << f2 << "\n";
      return 1;
    };
  });

  auto* oracle = app.add_subcommand(
      "oracle", "exhaustive small-instance existence check");
  oracle->add_option("input", input, "instance file")->required();
  oracle->add_option("--mu", mu_flag, "target edge multiplicity");
  oracle->add_option("--m", m_flag, "number of new vertices");
  oracle->add_option("--mode", mode_flag, "hamiltonian | twofactor");
  oracle->add_option("--budget", node_budget, "search node limit");
  oracle->add_option("--time-limit", time_budget, "search seconds limit");
  oracle->callback([&] {
    action = [&]() {
      const auto f = parse_instance_text(read_file(input));
      const auto p = resolve_params(f, mu_flag, m_flag, mode_flag);
      SearchBudget budget;
      budget.node_limit = node_budget;
      budget.time_limit_seconds = time_budget;
      const auto r =
          oracle_exists(f.decomposition, p.mu, p.m, p.mode, budget);
      std::cout << to_string(r.answer) << "\n";
      logv("search nodes: " + std::to_string(r.nodes));
      switch (r.answer) {
        case OracleAnswer::Yes: return 0;
        case OracleAnswer::No: return 1;
        case OracleAnswer::BudgetExceeded: return 2;
      }
      return 4;
    };
  });

  auto* gen = app.add_subcommand(
      "gen", "generate a random valid path decomposition of lambda*K_n");
  gen->add_option("--seed", seed, "random seed (printed for reproduction)");
  gen->add_option("--n", gen_n, "vertex count");
  gen->add_option("--lambda", gen_lambda, "edge multiplicity");
  gen->add_option("--k", gen_k, "class count");
  gen->add_flag("--strong", gen_strong, "require a strong path decomposition");
  gen->add_option("--output", output, "instance file (stdout when omitted)");
  gen->callback([&] {
    action = [&]() {
      std::cerr << "seed: " << seed << "\n";
      InstanceFile f;
      f.n = gen_n;
      f.lambda = gen_lambda;
      for (int v = 0; v < gen_n; ++v) f.labels.push_back(std::to_string(v));
      f.decomposition = random_instance(seed, gen_n, gen_lambda, gen_k,
                                        gen_strong);
      const auto text = serialize_instance(f);
      if (output.empty()) std::cout << text;
      else write_file(output, text);
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  return guarded(action);
}

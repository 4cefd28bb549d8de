#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "enclose/decomposition.hpp"
#include "enclose/enclosure.hpp"
#include "enclose/errors.hpp"
#include "enclose/multigraph.hpp"

namespace enclose {

class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// On-disk instance: a decomposition of lambda*K_n with optional vertex labels
// and optional default parameters. Parsing validates that the classes cover
// lambda*K_n exactly and form a path decomposition.
struct InstanceFile {
  int n = 0;
  int lambda = 0;
  std::vector<std::string> labels;
  Decomposition decomposition;
  std::optional<int> mu;
  std::optional<int> m;
  std::optional<EnclosureMode> mode;
};

namespace detail {

using json = nlohmann::ordered_json;

inline int require_positive_int(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number_integer()) {
    throw parse_error("missing or non-integer field '" + field + "'");
  }
  const long long v = j[field].get<long long>();
  if (v < 1 || v > 1'000'000) {
    throw parse_error("field '" + field + "' out of range: " +
                      std::to_string(v));
  }
  return static_cast<int>(v);
}

inline std::optional<EnclosureMode> parse_mode(const std::string& s) {
  if (s == "hamiltonian") return EnclosureMode::Hamiltonian;
  if (s == "twofactor") return EnclosureMode::TwoFactor;
  return std::nullopt;
}

}  // namespace detail

inline InstanceFile parse_instance_text(const std::string& text) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const std::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  InstanceFile f;
  f.n = detail::require_positive_int(j, "n");
  f.lambda = detail::require_positive_int(j, "lambda");

  if (j.contains("vertices")) {
    if (!j["vertices"].is_array() ||
        static_cast<int>(j["vertices"].size()) != f.n) {
      throw parse_error("'vertices' must list exactly n labels");
    }
    for (const auto& lbl : j["vertices"]) {
      if (!lbl.is_string()) throw parse_error("vertex labels must be strings");
      f.labels.push_back(lbl.get<std::string>());
    }
  } else {
    for (int v = 0; v < f.n; ++v) f.labels.push_back(std::to_string(v));
  }
  std::vector<std::pair<std::string, int>> index;
  for (int v = 0; v < f.n; ++v) {
    for (const auto& [lbl, _] : index) {
      if (lbl == f.labels[static_cast<size_t>(v)]) {
        throw parse_error("duplicate vertex label '" + lbl + "'");
      }
    }
    index.emplace_back(f.labels[static_cast<size_t>(v)], v);
  }
  auto lookup = [&](const detail::json& lbl) {
    if (!lbl.is_string()) throw parse_error("edge endpoints must be labels");
    const std::string s = lbl.get<std::string>();
    for (const auto& [l, v] : index) {
      if (l == s) return v;
    }
    throw parse_error("unknown vertex label '" + s + "'");
  };

  if (!j.contains("classes") || !j["classes"].is_array() ||
      j["classes"].empty()) {
    throw parse_error("'classes' must be a non-empty array of edge lists");
  }
  std::vector<Multigraph> classes;
  for (const auto& cls : j["classes"]) {
    if (!cls.is_array()) throw parse_error("each class must be an edge list");
    Multigraph g(f.n);
    for (const auto& edge : cls) {
      if (!edge.is_array() || edge.size() != 2) {
        throw parse_error("each edge must be a pair of labels");
      }
      const int u = lookup(edge[0]), v = lookup(edge[1]);
      if (u == v) throw parse_error("loops are not allowed in instances");
      g.add_edge(u, v);
    }
    classes.push_back(std::move(g));
  }
  f.decomposition = decomposition_from_classes(std::move(classes));
  if (f.decomposition.base != complete_multigraph(f.n, f.lambda)) {
    throw parse_error(
        "classes do not cover lambda*K_n exactly (every pair needs "
        "multiplicity lambda)");
  }
  const auto verdict = validate(f.decomposition, false);
  if (!verdict.ok) {
    throw parse_error("class " + std::to_string(verdict.offending_class) +
                      " is not a union of paths and cycles");
  }

  if (j.contains("params")) {
    const auto& p = j["params"];
    if (!p.is_object()) throw parse_error("'params' must be an object");
    if (p.contains("mu")) f.mu = detail::require_positive_int(p, "mu");
    if (p.contains("m")) f.m = detail::require_positive_int(p, "m");
    if (p.contains("mode")) {
      if (!p["mode"].is_string()) throw parse_error("'mode' must be a string");
      f.mode = detail::parse_mode(p["mode"].get<std::string>());
      if (!f.mode) {
        throw parse_error("mode must be 'hamiltonian' or 'twofactor'");
      }
    }
  }
  return f;
}

namespace detail {

inline json instance_to_json(const InstanceFile& f) {
  json j;
  j["n"] = f.n;
  j["lambda"] = f.lambda;
  j["vertices"] = f.labels;
  json classes = json::array();
  for (const auto& c : f.decomposition.classes) {
    json edges = json::array();
    for (int u = 0; u < f.n; ++u) {
      for (int v = u + 1; v < f.n; ++v) {
        for (int t = c.mult(u, v); t > 0; --t) {
          edges.push_back({f.labels[static_cast<size_t>(u)],
                           f.labels[static_cast<size_t>(v)]});
        }
      }
    }
    classes.push_back(std::move(edges));
  }
  j["classes"] = std::move(classes);
  if (f.mu || f.m || f.mode) {
    json params;
    if (f.mu) params["mu"] = *f.mu;
    if (f.m) params["m"] = *f.m;
    if (f.mode) params["mode"] = to_string(*f.mode);
    j["params"] = std::move(params);
  }
  return j;
}

}  // namespace detail

inline std::string serialize_instance(const InstanceFile& f) {
  return detail::instance_to_json(f).dump(2) + "\n";
}

inline uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Digest of the canonical serialization, so formatting differences do not
// matter.
inline std::string instance_digest(const InstanceFile& f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(serialize_instance(f))));
  return buf;
}

// Fresh labels for the m new vertices, avoiding collisions with the original
// ones.
inline std::vector<std::string> extended_labels(
    const std::vector<std::string>& base, int m) {
  auto taken = [&](const std::vector<std::string>& all, const std::string& s) {
    for (const auto& t : all) {
      if (t == s) return true;
    }
    return false;
  };
  std::vector<std::string> labels = base;
  int next = 0;
  for (int i = 0; i < m; ++i) {
    std::string candidate;
    do {
      candidate = "+" + std::to_string(next++);
    } while (taken(labels, candidate));
    labels.push_back(candidate);
  }
  return labels;
}

struct CertificateFile {
  InstanceFile enclosing;  // the host decomposition, lambda field holds mu
  EnclosureMode mode = EnclosureMode::Hamiltonian;
  int original_n = 0;
  int original_lambda = 0;
  int m = 0;
  int mu = 0;
  std::string original_digest;
  std::vector<std::string> transcript;
};

inline std::string serialize_certificate(const EnclosureCertificate& cert,
                                         const InstanceFile& original) {
  InstanceFile host;
  host.n = cert.n + cert.m;
  host.lambda = cert.mu;
  host.labels = extended_labels(original.labels, cert.m);
  host.decomposition = cert.enclosing;

  detail::json j;
  j["format"] = "enclosure-certificate/1";
  j["mode"] = to_string(cert.mode);
  j["original"] = {{"n", cert.n},
                   {"lambda", cert.lambda},
                   {"m", cert.m},
                   {"mu", cert.mu},
                   {"digest", instance_digest(original)}};
  detail::json host_json = detail::instance_to_json(host);
  for (auto& [key, value] : host_json.items()) j[key] = value;
  j["transcript"] = cert.transcript;
  return j.dump(2) + "\n";
}

inline CertificateFile parse_certificate_text(const std::string& text) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const std::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("format") ||
      j["format"] != "enclosure-certificate/1") {
    throw parse_error("not an enclosure certificate");
  }
  CertificateFile c;
  if (!j.contains("mode") || !j["mode"].is_string()) {
    throw parse_error("certificate is missing its mode");
  }
  const auto mode = detail::parse_mode(j["mode"].get<std::string>());
  if (!mode) throw parse_error("unknown certificate mode");
  c.mode = *mode;
  if (!j.contains("original") || !j["original"].is_object()) {
    throw parse_error("certificate is missing the original parameters");
  }
  const auto& orig = j["original"];
  c.original_n = detail::require_positive_int(orig, "n");
  c.original_lambda = detail::require_positive_int(orig, "lambda");
  c.m = detail::require_positive_int(orig, "m");
  c.mu = detail::require_positive_int(orig, "mu");
  if (!orig.contains("digest") || !orig["digest"].is_string()) {
    throw parse_error("certificate is missing the original digest");
  }
  c.original_digest = orig["digest"].get<std::string>();
  c.enclosing = parse_instance_text(j.dump());
  if (j.contains("transcript")) {
    for (const auto& line : j["transcript"]) {
      if (line.is_string()) c.transcript.push_back(line.get<std::string>());
    }
  }
  return c;
}

}  // namespace enclose

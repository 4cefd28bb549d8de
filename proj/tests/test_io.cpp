#include <catch2/catch_amalgamated.hpp>

#include "enclose/io.hpp"
#include "enclose/oracle.hpp"
#include "support.hpp"

using enclose::EnclosureMode;
using enclose::enclose_hamiltonian;
using enclose::InstanceFile;
using enclose::instance_digest;
using enclose::parse_certificate_text;
using enclose::parse_error;
using enclose::parse_instance_text;
using enclose::random_instance;
using enclose::serialize_certificate;
using enclose::serialize_instance;
using enclose::verify_enclosure;
using testsupport::decomposition_of;

namespace {

InstanceFile k3_file() {
  InstanceFile f;
  f.n = 3;
  f.lambda = 1;
  f.labels = {"a", "b", "c"};
  f.decomposition = decomposition_of(3, {{{0, 1}}, {{1, 2}}, {{2, 0}}});
  f.mu = 2;
  f.m = 1;
  f.mode = EnclosureMode::Hamiltonian;
  return f;
}

}  // namespace

TEST_CASE("instances round-trip through serialization") {
  const auto f = k3_file();
  const auto text = serialize_instance(f);
  const auto g = parse_instance_text(text);
  CHECK(g.n == f.n);
  CHECK(g.lambda == f.lambda);
  CHECK(g.labels == f.labels);
  CHECK(g.decomposition == f.decomposition);
  CHECK(g.mu == f.mu);
  CHECK(g.m == f.m);
  CHECK(g.mode == f.mode);
  CHECK(serialize_instance(g) == text);
}

TEST_CASE("digest ignores formatting") {
  const auto f = k3_file();
  const auto text = serialize_instance(f);
  // reformat: strip every newline and indent
  std::string squashed;
  for (char c : text) {
    if (c != '\n' && c != ' ') squashed += c;
  }
  const auto g = parse_instance_text(squashed);
  CHECK(instance_digest(g) == instance_digest(f));
}

TEST_CASE("parser rejects malformed instances") {
  CHECK_THROWS_AS(parse_instance_text("not json"), parse_error);
  CHECK_THROWS_AS(parse_instance_text("{\"n\": 3}"), parse_error);
  // missing an edge of lambda*K_n
  CHECK_THROWS_AS(parse_instance_text(R"({
    "n": 3, "lambda": 1,
    "classes": [[["0","1"]], [["1","2"]]]
  })"),
                  parse_error);
  // unknown label
  CHECK_THROWS_AS(parse_instance_text(R"({
    "n": 3, "lambda": 1, "vertices": ["a","b","c"],
    "classes": [[["a","b"]], [["b","c"]], [["c","d"]]]
  })"),
                  parse_error);
  // vertex of degree 3 in a class
  CHECK_THROWS_AS(parse_instance_text(R"({
    "n": 4, "lambda": 1,
    "classes": [[["0","1"],["0","2"],["0","3"]],
                [["1","2"],["1","3"],["2","3"]]]
  })"),
                  parse_error);
}

TEST_CASE("default labels are the vertex indices") {
  const auto f = parse_instance_text(R"({
    "n": 3, "lambda": 1,
    "classes": [[["0","1"]], [["1","2"]], [["2","0"]]]
  })");
  CHECK(f.labels == std::vector<std::string>{"0", "1", "2"});
  CHECK_FALSE(f.mu.has_value());
}

TEST_CASE("certificates carry the original digest and verify") {
  const auto f = k3_file();
  const auto cert = enclose_hamiltonian(f.decomposition, 2, 1);
  const auto text = serialize_certificate(cert, f);
  const auto parsed = parse_certificate_text(text);
  CHECK(parsed.mode == EnclosureMode::Hamiltonian);
  CHECK(parsed.original_n == 3);
  CHECK(parsed.m == 1);
  CHECK(parsed.mu == 2);
  CHECK(parsed.original_digest == instance_digest(f));
  CHECK(parsed.enclosing.n == 4);
  CHECK(parsed.enclosing.lambda == 2);  // the host multiplicity
  CHECK(parsed.enclosing.decomposition == cert.enclosing);
  CHECK(parsed.enclosing.labels.size() == 4);
  CHECK(verify_enclosure(f.decomposition,
                         {parsed.enclosing.decomposition, parsed.original_n,
                          parsed.m, parsed.original_lambda, parsed.mu,
                          parsed.mode, {}},
                         parsed.mode)
            .ok);
  CHECK_THROWS_AS(parse_certificate_text("{}"), parse_error);
}

TEST_CASE("generated instances serialize byte-identically per seed") {
  InstanceFile f;
  f.n = 4;
  f.lambda = 1;
  for (int v = 0; v < 4; ++v) f.labels.push_back(std::to_string(v));
  f.decomposition = random_instance(42, 4, 1, 5, false);
  const auto once = serialize_instance(f);
  InstanceFile g = f;
  g.decomposition = random_instance(42, 4, 1, 5, false);
  CHECK(serialize_instance(g) == once);
}

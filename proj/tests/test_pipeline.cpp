#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "paraidem/catalog.hpp"
#include "paraidem/pipeline.hpp"

using namespace paraidem;
using nlohmann::json;

namespace {

ErrorCode code_of(const json& pipeline) {
  try {
    (void)run_pipeline(pipeline);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

std::string message_of(const json& pipeline) {
  try {
    (void)run_pipeline(pipeline);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("ring shorthands") {
  CHECK(parse_ring("rational") == Ring::rational());
  CHECK(parse_ring("cyclotomic:8") == Ring::cyclotomic(8));
  CHECK(parse_ring("prime:7") == Ring::prime_field(7));
  CHECK(parse_ring(Ring::cyclotomic(12).to_json()) == Ring::cyclotomic(12));
  CHECK_THROWS_AS(parse_ring("prime:8"), Error);
}

TEST_CASE("empty pipeline") {
  const auto r = run_pipeline(json::parse(R"({"ring": "rational", "steps": []})"));
  CHECK(r.steps.empty());
  CHECK(r.all_checks_ok());
}

TEST_CASE("C2 monomial sum through a pipeline") {
  const json pipeline = json::parse(R"({
    "ring": "rational",
    "steps": [
      {"bind": "S", "op": "group_set", "args": {"family": "cyclic", "n": 2}},
      {"bind": "W", "op": "monomial_sum", "args": {"set": "S", "weights": ["1", "z"]}},
      {"bind": "d", "op": "determinant", "args": {"matrix": "W"}},
      {"bind": "v", "op": "verify", "args": {"target": "W", "mode": "paraunitary"}}
    ]})");
  const auto r = run_pipeline(pipeline);
  CHECK(r.all_checks_ok());
  const auto& w = std::get<PolyMatrix>(r.at("W"));
  CHECK(w == PolyMatrix::parse(Ring::rational(), {{"1/2 + (1/2)*z", "1/2 - (1/2)*z"}, {"1/2 - (1/2)*z", "1/2 + (1/2)*z"}}));
  CHECK(std::get<LaurentPoly>(r.at("d")).to_string() == "z");
  CHECK(value_kind(r.at("S")) == "set");
  CHECK(PolyMatrix::from_json(value_to_json(r.at("W"))) == w);
  CHECK(IdempotentSet::from_json(value_to_json(r.at("S"))).members == std::get<IdempotentSet>(r.at("S")).members);
  CHECK(r.to_json().dump() == run_pipeline(pipeline).to_json().dump());
}

TEST_CASE("pipeline errors name the failing step") {
  CHECK(code_of(json::parse(R"({"ring": "rational", "steps": [{"bind": "W", "op": "adjoint", "args": {"matrix": "nope"}}]})")) ==
        ErrorCode::UnknownBinding);
  CHECK(code_of(json::parse(R"({"ring": "rational", "steps": [{"op": "no_such_op", "args": {}}]})")) == ErrorCode::InvalidPipeline);
  CHECK(code_of(json::parse(R"({"ring": "rational", "steps": {}})")) == ErrorCode::InvalidPipeline);
  const json tangle_q = json::parse(R"({"ring": "rational", "steps": [
      {"bind": "A", "op": "adjoint", "args": {"matrix": {"rows": [["1"]]}}},
      {"bind": "T", "op": "tangle", "args": {"a": "A", "b": "A"}}]})");
  CHECK(code_of(tangle_q) == ErrorCode::NoSquareRoot);
  CHECK(message_of(tangle_q).find("step 2 (tangle)") != std::string::npos);
}

TEST_CASE("catalog inventory") {
  const auto& entries = catalog();
  CHECK(entries.size() >= 20);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    ids.insert(entries[i].id);
    if (i > 0) CHECK(entries[i - 1].id < entries[i].id);
  }
  CHECK(ids.size() == entries.size());
  for (const char* id : {"s3-idempotents", "f5-set", "f7-sets", "c2-idempotents", "pseudo-clearing", "h39", "tangle-f7"}) CHECK(ids.count(id) == 1);
  CHECK_THROWS_AS(catalog_entry("missing"), Error);
}

TEST_CASE("catalog runs are exact and deterministic") {
  const auto first = run_catalog();
  const auto second = run_catalog();
  REQUIRE(first.size() == catalog().size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    INFO(first[i].id);
    CHECK(first[i].ok);
    CHECK(first[i].compared > 0);
    CHECK(first[i].to_json().dump() == second[i].to_json().dump());
  }
}

TEST_CASE("a tampered expectation is reported") {
  CatalogEntry e = catalog_entry("c2-idempotents");
  bool tampered = false;
  for (auto& [name, exp] : e.expect.items()) {
    if (exp.contains("members") && exp["members"].is_array() && !exp["members"].empty() && exp["members"][0].is_object()) {
      exp["members"][0]["rows"][0][0] = "2";
      tampered = true;
      break;
    }
  }
  REQUIRE(tampered);
  const auto out = run_entry(e);
  CHECK_FALSE(out.ok);
  CHECK_FALSE(out.mismatches.empty());
}

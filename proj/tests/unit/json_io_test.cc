// Copyright 2026 The Dutchbook Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dutchbook/json_io.h"

#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "dutchbook/fixtures.h"
#include "unit/helpers.h"

#ifndef DUTCHBOOK_DATA_DIR
#error "DUTCHBOOK_DATA_DIR must point at the sample documents"
#endif

namespace dutchbook {
namespace {

using io::Json;
using testing::Q;

Json Load(const std::string& name) {
  std::ifstream in(std::string(DUTCHBOOK_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return io::ParseDocument(buffer.str());
}

// Asserts an input error whose location mentions `where`.
void CheckRejected(const std::function<void()>& f, const std::string& where) {
  try {
    f();
    FAIL("expected an input error at " << where);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidInput);
    CHECK_MESSAGE(e.location().find(where) != std::string::npos,
                  e.location() << " vs " << where);
  }
}

TEST_CASE("sample documents match the built-in fixtures") {
  const auto larry = fixtures::LarryEnvironment();
  const auto env = io::ParseEnvironment(Load("larry.json"));
  CHECK(env.states().names() == larry.states().names());
  CHECK(env.forest().names() == larry.forest().names());
  for (StateIndex s = 0; s < 3; ++s) CHECK(env.eta(s) == larry.eta(s));
  CHECK(io::ParseBeliefs(env, Load("regret.json")) == fixtures::RegretBeliefs(larry));
  CHECK(io::ParseBeliefs(env, Load("uniform.json")) == fixtures::UniformBeliefs(larry));
  CHECK(io::ParseBeliefs(env, Load("lex.json")) == fixtures::LexBeliefs(larry));
  CHECK(io::ParseLcps(env.states(), Load("lex-lcps.json")) == fixtures::LexLcps());
  CHECK(io::ParseGambles(env, Load("larry-book.json")) == fixtures::LarryBook(larry));

  const auto nested = fixtures::NestedEnvironment();
  const auto nenv = io::ParseEnvironment(Load("nested.json"));
  CHECK(nenv.forest().names() == nested.forest().names());
  CHECK(nenv.forest().parent(1) == 0u);
  CHECK(io::ParseBeliefs(nenv, Load("drift.json")) == fixtures::DriftBeliefs(nested));
  CHECK(io::ParseBeliefs(nenv, Load("conditioned.json")) ==
        fixtures::ConditionedBeliefs(nested));
  CHECK(io::ParseGambles(nenv, Load("nested-book.json")) == fixtures::NestedBook(nested));

  const auto skewed = io::ParseEnvironment(Load("skewed.json"));
  CHECK(skewed.eta(0) == fixtures::SkewedEnvironment().eta(0));
  const auto pair = io::ParseEnvironment(Load("pair.json"));
  CHECK(io::ParseBeliefs(pair, Load("pair-beliefs.json")) ==
        fixtures::PairBeliefs(fixtures::PairEnvironment()));
}

TEST_CASE("environment round trip is canonical") {
  const auto env = fixtures::NestedEnvironment();
  const Json doc = io::EnvironmentToJson(env);
  const auto again = io::ParseEnvironment(doc);
  CHECK(io::Dump(io::EnvironmentToJson(again)) == io::Dump(doc));
  CHECK(doc["contingencies"][1]["parent"] == "h0");
  CHECK(doc["contingencies"][0]["parent"].is_null());
}

TEST_CASE("belief output lists every consistent state") {
  const auto env = fixtures::LarryEnvironment();
  const Json doc = io::BeliefsToJson(env, fixtures::LexBeliefs(env));
  CHECK(doc["beliefs"]["sm"]["ma"] == "0");
  CHECK(doc["beliefs"]["sm"]["sq"] == "1");
  CHECK_FALSE(doc["beliefs"]["sm"].contains("pa"));
  CHECK(io::ParseBeliefs(env, doc) == fixtures::LexBeliefs(env));
}

TEST_CASE("rationals are canonicalized and non-strings rejected") {
  CHECK(io::ParseRational(Json("4/6"), "") == Q("2/3"));
  CheckRejected([] { io::ParseRational(Json(0.5), "/x"); }, "/x");
  CheckRejected([] { io::ParseRational(Json("1/0"), "/y"); }, "/y");
}

TEST_CASE("malformed documents are rejected with locations") {
  CheckRejected([] { io::ParseDocument("{\"states\": ["); }, "");
  const auto larry_doc = [] { return io::EnvironmentToJson(fixtures::LarryEnvironment()); };
  CheckRejected([&] {
    auto doc = larry_doc();
    doc["extra"] = 1;
    io::ParseEnvironment(doc);
  }, "/extra");
  CheckRejected([&] {
    auto doc = larry_doc();
    doc.erase("eta");
    io::ParseEnvironment(doc);
  }, "");
  CheckRejected([&] {
    auto doc = larry_doc();
    doc["eta"]["sq"]["nope"] = "1/3";
    io::ParseEnvironment(doc);
  }, "/eta/sq/nope");
  CheckRejected([&] {
    auto doc = larry_doc();
    doc["eta"]["zz"] = Json::object();
    io::ParseEnvironment(doc);
  }, "/eta/zz");
  CheckRejected([&] {
    auto doc = larry_doc();
    doc["contingencies"][0]["id"] = 5;
    io::ParseEnvironment(doc);
  }, "/contingencies/0/id");

  const auto env = fixtures::LarryEnvironment();
  CheckRejected([&] {
    io::ParseBeliefs(env, Json::parse(R"({"beliefs":{"zz":{}}})"));
  }, "/beliefs/zz");
  CheckRejected([&] {
    io::ParseBeliefs(env, Json::parse(R"({"beliefs":{"sq":{"xx":"1"}}})"));
  }, "/beliefs/sq/xx");
  CheckRejected([&] {
    io::ParseGambles(env, Json::parse(R"({"gambles":{"sq":{"sq":1}}})"));
  }, "/gambles/sq/sq");
}

TEST_CASE("non-leaf path keys are rejected") {
  auto doc = io::EnvironmentToJson(fixtures::NestedEnvironment());
  doc["eta"]["A"] = Json::parse(R"({"h0":"1"})");
  CheckRejected([&] { io::ParseEnvironment(doc); }, "/eta/A/h0");
}

TEST_CASE("cps documents") {
  const auto lex = fixtures::LexLcps();
  const auto states = StateSpace::Create({"sq", "ma", "pa"});
  const Json doc = io::CpsToJson(states, LcpsToCps(lex));
  CHECK(doc["conditionals"].begin().key() == "sq");
  CHECK(doc["conditionals"]["ma,pa"]["ma"] == "2/3");
  const auto inferred = io::InferCpsStates(doc);
  CHECK(inferred.names() == states.names());
  CHECK(io::ParseCps(inferred, doc) == LcpsToCps(lex));

  Json bad = doc;
  bad["conditionals"]["pa,ma"] = bad["conditionals"]["ma,pa"];
  CheckRejected([&] { io::ParseCps(states, bad); }, "/conditionals/pa,ma");
  bad = doc;
  bad["conditionals"].erase("ma");
  CheckRejected([&] { io::ParseCps(states, bad); }, "/conditionals");
}

TEST_CASE("lcps documents") {
  const Json doc = Json::parse(R"({"levels":[{"b":"1"},{"a":"1/4","c":"3/4"}]})");
  const auto states = io::InferLcpsStates(doc);
  CHECK(states.names() == std::vector<std::string>{"b", "a", "c"});
  const auto lcps = io::ParseLcps(states, doc);
  CHECK(io::Dump(io::LcpsToJson(states, lcps)) == io::Dump(doc));
  CheckRejected([&] {
    io::ParseLcps(states, Json::parse(R"({"levels":[{"b":"1/2","a":"1/4","c":"1/4"},{"a":"1"}]})"));
  }, "/levels");
}

TEST_CASE("violation documents") {
  const auto env = fixtures::LarryEnvironment();
  const auto r = CheckCompleteConsistency(env, fixtures::RegretBeliefs(env));
  const Json doc = io::ViolationToJson(env, std::get<NotCompletelyConsistent>(r).violation);
  CHECK(doc["product"] == "1/27");
  CHECK(doc["cycle"].size() == 3);
  CHECK(doc["cycle"][0]["h"] == "sm");
  CHECK(doc["cycle"][0]["value"] == "1/3");

  const auto nested = fixtures::NestedEnvironment();
  const auto fv = CheckForwardConsistency(nested, fixtures::DriftBeliefs(nested));
  const Json f = io::ForwardViolationToJson(nested, *fv);
  CHECK(f.dump() == R"({"h":"h0","hprime":"h1","s":"A","lhs":"1/3","rhs":"1/2"})");
}

TEST_CASE("verdict documents use the published field names") {
  const auto env = fixtures::LarryEnvironment();
  const Json v = io::BookVerdictToJson(env, ClassifyDutchBook(env, fixtures::LarryBook(env)));
  CHECK(v["isDutchBook"] == true);
  CHECK(v["perState"]["pa"] == "-1/3");
  const auto nested = fixtures::NestedEnvironment();
  const Json d = io::DeterministicVerdictToJson(
      nested, ClassifyDeterministic(nested, fixtures::NestedBook(nested)));
  CHECK(d["isDeterministicDB"] == true);
  CHECK(d["perPath"][1]["total"] == "-1/24");
}

}  // namespace
}  // namespace dutchbook

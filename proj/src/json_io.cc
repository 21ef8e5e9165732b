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

#include <cmath>
#include <initializer_list>
#include <set>
#include <string>
#include <utility>

#include "dutchbook/error.h"

namespace dutchbook::io {
namespace {

[[noreturn]] void Invalid(const std::string& message, const std::string& where) {
  Fail(ErrorCode::kInvalidInput, message, where);
}

void RequireObject(const Json& value, const std::string& where) {
  if (!value.is_object()) Invalid("expected a JSON object", where);
}

void RequireKeys(const Json& value, std::initializer_list<std::string_view> allowed,
                 const std::string& where) {
  RequireObject(value, where);
  for (const auto& [key, _] : value.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) Invalid("unknown key '" + key + "'", where + "/" + key);
  }
  for (auto a : allowed) {
    if (!value.contains(std::string(a))) {
      Invalid("missing key '" + std::string(a) + "'", where);
    }
  }
}

const std::string& AsString(const Json& value, const std::string& where) {
  if (!value.is_string()) Invalid("expected a string", where);
  return value.get_ref<const std::string&>();
}

std::vector<std::string> StringArray(const Json& value, const std::string& where) {
  if (!value.is_array()) Invalid("expected an array of strings", where);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(AsString(value[i], where + "/" + std::to_string(i)));
  }
  return out;
}

// {state: rational} over the given state space.
Distribution ParseStateMap(const StateSpace& states, const Json& value,
                           const std::string& where) {
  RequireObject(value, where);
  Distribution d = Distribution::Zero(states.size());
  for (const auto& [key, mass] : value.items()) {
    const auto s = states.Find(key);
    if (!s) Invalid("unknown state '" + key + "'", where + "/" + key);
    d[*s] = ParseRational(mass, where + "/" + key);
  }
  return d;
}

Json StateList(const StateSpace& states, std::span<const StateIndex> members) {
  Json out = Json::array();
  for (StateIndex s : members) out.push_back(states.name(s));
  return out;
}

}  // namespace

Json ParseDocument(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    Invalid(std::string("malformed JSON: ") + e.what(), "");
  }
}

std::string Dump(const Json& doc) { return doc.dump(2) + "\n"; }

Rational ParseRational(const Json& value, const std::string& where) {
  if (!value.is_string()) Invalid("rationals must be strings like \"p/q\"", where);
  try {
    return Rational::Parse(value.get_ref<const std::string&>());
  } catch (const Error& e) {
    Invalid(e.what(), where);
  }
}

LearningEnvironment ParseEnvironment(const Json& doc) {
  RequireKeys(doc, {"states", "contingencies", "eta"}, "");
  StateSpace states;
  try {
    states = StateSpace::Create(StringArray(doc["states"], "/states"));
  } catch (const Error& e) {
    Invalid(e.what(), "/states");
  }

  const Json& nodes = doc["contingencies"];
  if (!nodes.is_array()) Invalid("expected an array", "/contingencies");
  std::vector<ContingencyForest::NodeSpec> specs;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "/contingencies/" + std::to_string(i);
    RequireKeys(nodes[i], {"id", "parent"}, where);
    ContingencyForest::NodeSpec spec;
    spec.id = AsString(nodes[i]["id"], where + "/id");
    if (!nodes[i]["parent"].is_null()) {
      spec.parent = AsString(nodes[i]["parent"], where + "/parent");
    }
    specs.push_back(std::move(spec));
  }
  ContingencyForest forest = ContingencyForest::Create(specs);

  const Json& eta_doc = doc["eta"];
  RequireObject(eta_doc, "/eta");
  std::vector<PathIndex> path_of(forest.size(), forest.size());
  for (PathIndex p = 0; p < forest.leaves().size(); ++p) {
    path_of[forest.leaves()[p]] = p;
  }
  for (const auto& [key, _] : eta_doc.items()) {
    if (!states.Find(key)) Invalid("unknown state '" + key + "'", "/eta/" + key);
  }
  std::vector<std::vector<Rational>> eta(states.size(),
                                         std::vector<Rational>(forest.leaves().size()));
  for (StateIndex s = 0; s < states.size(); ++s) {
    const std::string where = "/eta/" + states.name(s);
    if (!eta_doc.contains(states.name(s))) {
      Invalid("missing path distribution for state '" + states.name(s) + "'", where);
    }
    const Json& row = eta_doc[states.name(s)];
    RequireObject(row, where);
    for (const auto& [leaf, mass] : row.items()) {
      const auto h = forest.Find(leaf);
      if (!h) Invalid("unknown path key '" + leaf + "'", where + "/" + leaf);
      if (!forest.IsLeaf(*h)) {
        Invalid("path key '" + leaf + "' is not a leaf", where + "/" + leaf);
      }
      eta[s][path_of[*h]] = ParseRational(mass, where + "/" + leaf);
    }
  }
  return LearningEnvironment::Build(std::move(states), std::move(forest),
                                    std::move(eta));
}

Json EnvironmentToJson(const LearningEnvironment& env) {
  const auto& forest = env.forest();
  Json doc;
  doc["states"] = env.states().names();
  Json nodes = Json::array();
  for (NodeIndex h = 0; h < forest.size(); ++h) {
    Json node;
    node["id"] = forest.name(h);
    const auto parent = forest.parent(h);
    node["parent"] = parent ? Json(forest.name(*parent)) : Json(nullptr);
    nodes.push_back(std::move(node));
  }
  doc["contingencies"] = std::move(nodes);
  Json eta = Json::object();
  for (StateIndex s = 0; s < env.num_states(); ++s) {
    Json row = Json::object();
    for (PathIndex p = 0; p < env.paths().size(); ++p) {
      if (env.eta(s)[p].IsZero()) continue;
      row[forest.name(env.paths()[p].leaf())] = env.eta(s)[p].ToString();
    }
    eta[env.states().name(s)] = std::move(row);
  }
  doc["eta"] = std::move(eta);
  return doc;
}

BeliefSystem ParseBeliefs(const LearningEnvironment& env, const Json& doc) {
  RequireKeys(doc, {"beliefs"}, "");
  const Json& beliefs = doc["beliefs"];
  RequireObject(beliefs, "/beliefs");
  BeliefSystem mu(env.num_contingencies());
  for (const auto& [key, row] : beliefs.items()) {
    const auto h = env.forest().Find(key);
    if (!h) Invalid("unknown contingency '" + key + "'", "/beliefs/" + key);
    mu.Set(*h, ParseStateMap(env.states(), row, "/beliefs/" + key));
  }
  return mu;
}

Json BeliefsToJson(const LearningEnvironment& env, const BeliefSystem& mu) {
  Json rows = Json::object();
  for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
    if (!mu.Has(h)) continue;
    Json row = Json::object();
    for (StateIndex s = 0; s < env.num_states(); ++s) {
      if (env.IsConsistent(h, s) || !mu[h][s].IsZero()) {
        row[env.states().name(s)] = mu[h][s].ToString();
      }
    }
    rows[env.forest().name(h)] = std::move(row);
  }
  Json doc;
  doc["beliefs"] = std::move(rows);
  return doc;
}

StateSpace InferLcpsStates(const Json& doc) {
  RequireKeys(doc, {"levels"}, "");
  const Json& levels = doc["levels"];
  if (!levels.is_array()) Invalid("expected an array", "/levels");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (std::size_t m = 0; m < levels.size(); ++m) {
    RequireObject(levels[m], "/levels/" + std::to_string(m));
    for (const auto& [key, _] : levels[m].items()) {
      if (seen.insert(key).second) names.push_back(key);
    }
  }
  return StateSpace::Create(std::move(names));
}

Lcps ParseLcps(const StateSpace& states, const Json& doc) {
  RequireKeys(doc, {"levels"}, "");
  const Json& levels = doc["levels"];
  if (!levels.is_array()) Invalid("expected an array", "/levels");
  std::vector<Distribution> out;
  for (std::size_t m = 0; m < levels.size(); ++m) {
    out.push_back(ParseStateMap(states, levels[m], "/levels/" + std::to_string(m)));
  }
  try {
    return Lcps::Create(std::move(out));
  } catch (const Error& e) {
    Invalid(e.what(), "/levels");
  }
}

Json LcpsToJson(const StateSpace& states, const Lcps& lcps) {
  Json levels = Json::array();
  for (const Distribution& level : lcps.levels()) {
    Json row = Json::object();
    for (StateIndex s = 0; s < level.size(); ++s) {
      if (level[s].IsPositive()) row[states.name(s)] = level[s].ToString();
    }
    levels.push_back(std::move(row));
  }
  Json doc;
  doc["levels"] = std::move(levels);
  return doc;
}

std::string SubsetKey(const StateSpace& states, StateMask mask) {
  std::string key;
  for (StateIndex s : StatesOf(mask)) {
    if (!key.empty()) key += ",";
    key += states.name(s);
  }
  return key;
}

StateSpace InferCpsStates(const Json& doc) {
  RequireKeys(doc, {"conditionals"}, "");
  const Json& rows = doc["conditionals"];
  RequireObject(rows, "/conditionals");
  std::vector<std::string> best;
  for (const auto& [key, _] : rows.items()) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const auto comma = key.find(',', start);
      parts.push_back(key.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (parts.size() > best.size()) best = std::move(parts);
  }
  return StateSpace::Create(std::move(best));
}

CompleteCps ParseCps(const StateSpace& states, const Json& doc) {
  RequireKeys(doc, {"conditionals"}, "");
  const Json& rows = doc["conditionals"];
  RequireObject(rows, "/conditionals");
  for (const auto& name : states.names()) {
    if (name.find(',') != std::string::npos) {
      Invalid("state '" + name + "' contains ',' and cannot key a CPS row", "/conditionals");
    }
  }
  CompleteCps cps(states.size());
  for (const auto& [key, row] : rows.items()) {
    const std::string where = "/conditionals/" + key;
    StateMask mask = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = key.find(',', start);
      const std::string part = key.substr(start, comma - start);
      const auto s = states.Find(part);
      if (!s) Invalid("unknown state '" + part + "' in subset key", where);
      const StateMask bit = StateMask{1} << *s;
      if ((mask & bit) != 0) Invalid("repeated state in subset key", where);
      mask |= bit;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (key != SubsetKey(states, mask)) {
      Invalid("subset key is not in canonical state order", where);
    }
    cps.Set(mask, ParseStateMap(states, row, where));
  }
  for (StateMask c = 1; c <= cps.full_mask(); ++c) {
    if (!cps.Has(c)) {
      Invalid("missing conditional for subset '" + SubsetKey(states, c) + "'",
              "/conditionals");
    }
  }
  return cps;
}

Json CpsToJson(const StateSpace& states, const CompleteCps& cps) {
  Json rows = Json::object();
  for (StateMask c = 1; c <= cps.full_mask(); ++c) {
    Json row = Json::object();
    for (StateIndex s : StatesOf(c)) row[states.name(s)] = cps[c][s].ToString();
    rows[SubsetKey(states, c)] = std::move(row);
  }
  Json doc;
  doc["conditionals"] = std::move(rows);
  return doc;
}

GambleSystem ParseGambles(const LearningEnvironment& env, const Json& doc) {
  RequireKeys(doc, {"gambles"}, "");
  const Json& rows = doc["gambles"];
  RequireObject(rows, "/gambles");
  GambleSystem g = GambleSystem::Zero(env);
  for (const auto& [key, row] : rows.items()) {
    const auto h = env.forest().Find(key);
    if (!h) Invalid("unknown contingency '" + key + "'", "/gambles/" + key);
    g.gambles[*h].payoff = ParseStateMap(env.states(), row, "/gambles/" + key).masses();
  }
  return g;
}

Json GamblesToJson(const LearningEnvironment& env, const GambleSystem& g) {
  Json rows = Json::object();
  for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
    Json row = Json::object();
    for (StateIndex s = 0; s < env.num_states(); ++s) {
      if (!g.gambles[h].payoff[s].IsZero()) {
        row[env.states().name(s)] = g.gambles[h].payoff[s].ToString();
      }
    }
    rows[env.forest().name(h)] = std::move(row);
  }
  Json doc;
  doc["gambles"] = std::move(rows);
  return doc;
}

Json LinkToJson(const LearningEnvironment& env, const OddsLink& link) {
  Json out;
  out["h"] = env.forest().name(link.h);
  out["from"] = env.states().name(link.from);
  out["to"] = env.states().name(link.to);
  out["value"] = link.value.ToString();
  return out;
}

Json ViolationToJson(const LearningEnvironment& env,
                     const CoherenceViolation& violation) {
  Json cycle = Json::array();
  for (const auto& link : violation.cycle.links()) cycle.push_back(LinkToJson(env, link));
  Json out;
  out["cycle"] = std::move(cycle);
  out["product"] = violation.product.ToString();
  return out;
}

Json CertificateToJson(const LearningEnvironment& env,
                       const CoherenceCertificate& certificate) {
  Json levels = Json::array();
  for (const auto& level : certificate.partition.levels) {
    levels.push_back(StateList(env.states(), level));
  }
  Json potentials = Json::object();
  for (StateIndex s = 0; s < certificate.potentials.size(); ++s) {
    potentials[env.states().name(s)] = certificate.potentials[s].ToString();
  }
  Json out;
  out["levels"] = std::move(levels);
  out["potentials"] = std::move(potentials);
  return out;
}

Json ForwardViolationToJson(const LearningEnvironment& env,
                            const ForwardViolation& violation) {
  Json out;
  out["h"] = env.forest().name(violation.h);
  out["hprime"] = env.forest().name(violation.h_prime);
  out["s"] = env.states().name(violation.s);
  out["lhs"] = violation.lhs.ToString();
  out["rhs"] = violation.rhs.ToString();
  return out;
}

Json BeliefViolationsToJson(const LearningEnvironment& env,
                            const std::vector<BeliefViolation>& violations) {
  Json out = Json::array();
  for (const auto& v : violations) {
    Json item;
    item["h"] = v.h < env.num_contingencies() ? env.forest().name(v.h) : "";
    item["reason"] = v.reason;
    out.push_back(std::move(item));
  }
  return out;
}

Json CpsViolationToJson(const StateSpace& states, const CpsViolation& violation) {
  Json out;
  out["C"] = SubsetKey(states, violation.c);
  out["D"] = violation.d == 0 ? Json(nullptr) : Json(SubsetKey(states, violation.d));
  out["E"] = violation.e ? Json(states.name(*violation.e)) : Json(nullptr);
  out["lhs"] = violation.lhs.ToString();
  out["rhs"] = violation.rhs.ToString();
  out["reason"] = violation.reason;
  return out;
}

Json SiniscalchiViolationToJson(const LearningEnvironment& env,
                                const SiniscalchiViolation& violation) {
  Json sequence = Json::array();
  for (NodeIndex h : violation.sequence) sequence.push_back(env.forest().name(h));
  Json out;
  out["sequence"] = std::move(sequence);
  out["event"] = StateList(env.states(), violation.event);
  out["lhs"] = violation.lhs.ToString();
  out["rhs"] = violation.rhs.ToString();
  return out;
}

Json AcceptanceToJson(const LearningEnvironment& env,
                      const AcceptanceReport& report) {
  Json per = Json::object();
  for (NodeIndex h = 0; h < report.per_contingency.size(); ++h) {
    Json item;
    item["expectation"] = report.per_contingency[h].expectation.ToString();
    item["accepted"] = report.per_contingency[h].accepted;
    per[env.forest().name(h)] = std::move(item);
  }
  Json out;
  out["accepted"] = report.accepted;
  out["perContingency"] = std::move(per);
  return out;
}

Json BookVerdictToJson(const LearningEnvironment& env, const BookVerdict& verdict) {
  Json per = Json::object();
  for (StateIndex s = 0; s < verdict.per_state.size(); ++s) {
    per[env.states().name(s)] = verdict.per_state[s].ToString();
  }
  Json out;
  out["isDutchBook"] = verdict.is_dutch_book;
  out["perState"] = std::move(per);
  return out;
}

Json DeterministicVerdictToJson(const LearningEnvironment& env,
                                const DeterministicVerdict& verdict) {
  Json per = Json::array();
  for (const auto& entry : verdict.per_path) {
    Json item;
    item["state"] = env.states().name(entry.state);
    item["path"] = env.forest().name(env.paths()[entry.path].leaf());
    item["total"] = entry.total.ToString();
    per.push_back(std::move(item));
  }
  Json out;
  out["isDeterministicDB"] = verdict.is_deterministic_db;
  out["perPath"] = std::move(per);
  return out;
}

Json SimReportToJson(const LearningEnvironment& env, const SimReport& report) {
  const auto deviations = CompareToExact(report);
  Json per = Json::object();
  for (const auto& [s, stats] : report.per_state) {
    Json item;
    item["count"] = stats.count;
    item["empiricalMean"] = stats.empirical_mean;
    item["sampleStdDev"] = stats.sample_std_dev;
    item["exactExpectation"] = stats.exact_expectation.ToString();
    item["exactExpectationDecimal"] = stats.exact_expectation.ToDouble();
    item["ungatedMean"] = stats.ungated_mean;
    item["exactUngated"] = stats.exact_ungated.ToString();
    if (auto it = deviations.find(s); it != deviations.end()) {
      const double se = it->second.standard_errors;
      item["deviationStandardErrors"] = std::isfinite(se) ? Json(se) : Json("inf");
      item["flagged"] = it->second.flagged;
    }
    per[env.states().name(s)] = std::move(item);
  }
  Json accepted = Json::object();
  for (NodeIndex h = 0; h < report.accepted.size(); ++h) {
    accepted[env.forest().name(h)] = static_cast<bool>(report.accepted[h]);
  }
  Json out;
  out["rounds"] = report.rounds;
  out["seed"] = report.seed;
  out["accepted"] = std::move(accepted);
  out["perState"] = std::move(per);
  return out;
}

}  // namespace dutchbook::io

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

#ifndef DUTCHBOOK_JSON_IO_H_
#define DUTCHBOOK_JSON_IO_H_

#include <string>
#include <string_view>

#include "json.hpp"

#include "dutchbook/book.h"
#include "dutchbook/consistency.h"
#include "dutchbook/cps.h"
#include "dutchbook/model.h"
#include "dutchbook/odds.h"
#include "dutchbook/simulate.h"

// JSON documents. Rationals are strings "p/q" or "n". Readers reject unknown
// keys; writers emit keys in canonical state and contingency order so the
// output is byte-stable.
namespace dutchbook::io {

using Json = nlohmann::ordered_json;

// Throws Error(kInvalidInput) on syntax errors.
Json ParseDocument(std::string_view text);
std::string Dump(const Json& doc);

Rational ParseRational(const Json& value, const std::string& where);

// {"states":[...], "contingencies":[{"id":..,"parent":null|id}],
//  "eta":{state:{leaf:"p/q"}}}
LearningEnvironment ParseEnvironment(const Json& doc);
Json EnvironmentToJson(const LearningEnvironment& env);

// {"beliefs":{contingency:{state:"p/q"}}}; contingencies left out stay
// undefined, states left out have mass zero.
BeliefSystem ParseBeliefs(const LearningEnvironment& env, const Json& doc);
Json BeliefsToJson(const LearningEnvironment& env, const BeliefSystem& mu);

// {"levels":[{state:"p/q"}]}
Lcps ParseLcps(const StateSpace& states, const Json& doc);
// State order of first appearance across the levels.
StateSpace InferLcpsStates(const Json& doc);
Json LcpsToJson(const StateSpace& states, const Lcps& lcps);

// {"conditionals":{"a,b":{"a":"1/2","b":"1/2"}}}
CompleteCps ParseCps(const StateSpace& states, const Json& doc);
// State order of the longest subset key.
StateSpace InferCpsStates(const Json& doc);
Json CpsToJson(const StateSpace& states, const CompleteCps& cps);
std::string SubsetKey(const StateSpace& states, StateMask mask);

// {"gambles":{contingency:{state:"p/q"}}}; missing entries are zero.
GambleSystem ParseGambles(const LearningEnvironment& env, const Json& doc);
Json GamblesToJson(const LearningEnvironment& env, const GambleSystem& g);

Json LinkToJson(const LearningEnvironment& env, const OddsLink& link);
Json ViolationToJson(const LearningEnvironment& env,
                     const CoherenceViolation& violation);
Json CertificateToJson(const LearningEnvironment& env,
                       const CoherenceCertificate& certificate);
Json ForwardViolationToJson(const LearningEnvironment& env,
                            const ForwardViolation& violation);
Json BeliefViolationsToJson(const LearningEnvironment& env,
                            const std::vector<BeliefViolation>& violations);
Json CpsViolationToJson(const StateSpace& states, const CpsViolation& violation);
Json SiniscalchiViolationToJson(const LearningEnvironment& env,
                                const SiniscalchiViolation& violation);
Json AcceptanceToJson(const LearningEnvironment& env,
                      const AcceptanceReport& report);
Json BookVerdictToJson(const LearningEnvironment& env, const BookVerdict& verdict);
Json DeterministicVerdictToJson(const LearningEnvironment& env,
                                const DeterministicVerdict& verdict);
Json SimReportToJson(const LearningEnvironment& env, const SimReport& report);

}  // namespace dutchbook::io

#endif  // DUTCHBOOK_JSON_IO_H_

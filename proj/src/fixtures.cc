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

#include "dutchbook/fixtures.h"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace dutchbook::fixtures {
namespace {

using Entry = std::pair<const char*, Rational>;

Distribution Dist(const StateSpace& states, std::initializer_list<Entry> entries) {
  Distribution d = Distribution::Zero(states.size());
  for (const auto& [name, mass] : entries) d[states.IndexOf(name)] = mass;
  return d;
}

void Put(const LearningEnvironment& env, BeliefSystem& mu, const char* h,
         std::initializer_list<Entry> entries) {
  mu.Set(env.forest().IndexOf(h), Dist(env.states(), entries));
}

void Put(const LearningEnvironment& env, GambleSystem& g, const char* h,
         std::initializer_list<Entry> entries) {
  g.gambles[env.forest().IndexOf(h)].payoff =
      Dist(env.states(), entries).masses();
}

std::vector<ContingencyForest::NodeSpec> Roots(
    std::initializer_list<const char*> ids) {
  std::vector<ContingencyForest::NodeSpec> nodes;
  for (const char* id : ids) nodes.push_back({id, std::nullopt});
  return nodes;
}

}  // namespace

LearningEnvironment LarryEnvironment() {
  auto states = StateSpace::Create({"sq", "ma", "pa"});
  auto forest = ContingencyForest::Create(Roots({"sq", "ma", "pa", "sm", "mp", "ps"}));
  const Rational third(1, 3);
  const Rational zero;
  // Leaf order: sq, ma, pa, sm, mp, ps.
  std::vector<std::vector<Rational>> eta = {
      {third, zero, zero, third, zero, third},
      {zero, third, zero, third, third, zero},
      {zero, zero, third, zero, third, third},
  };
  return LearningEnvironment::Build(std::move(states), std::move(forest),
                                    std::move(eta));
}

BeliefSystem RegretBeliefs(const LearningEnvironment& larry) {
  BeliefSystem mu(larry.num_contingencies());
  Put(larry, mu, "sq", {{"sq", 1}});
  Put(larry, mu, "ma", {{"ma", 1}});
  Put(larry, mu, "pa", {{"pa", 1}});
  Put(larry, mu, "sm", {{"sq", {1, 4}}, {"ma", {3, 4}}});
  Put(larry, mu, "mp", {{"ma", {1, 4}}, {"pa", {3, 4}}});
  Put(larry, mu, "ps", {{"sq", {3, 4}}, {"pa", {1, 4}}});
  return mu;
}

BeliefSystem UniformBeliefs(const LearningEnvironment& larry) {
  BeliefSystem mu(larry.num_contingencies());
  Put(larry, mu, "sq", {{"sq", 1}});
  Put(larry, mu, "ma", {{"ma", 1}});
  Put(larry, mu, "pa", {{"pa", 1}});
  Put(larry, mu, "sm", {{"sq", {1, 2}}, {"ma", {1, 2}}});
  Put(larry, mu, "mp", {{"ma", {1, 2}}, {"pa", {1, 2}}});
  Put(larry, mu, "ps", {{"sq", {1, 2}}, {"pa", {1, 2}}});
  return mu;
}

BeliefSystem LexBeliefs(const LearningEnvironment& larry) {
  BeliefSystem mu(larry.num_contingencies());
  Put(larry, mu, "sq", {{"sq", 1}});
  Put(larry, mu, "ma", {{"ma", 1}});
  Put(larry, mu, "pa", {{"pa", 1}});
  Put(larry, mu, "sm", {{"sq", 1}, {"ma", 0}});
  Put(larry, mu, "mp", {{"ma", {2, 3}}, {"pa", {1, 3}}});
  Put(larry, mu, "ps", {{"sq", 1}, {"pa", 0}});
  return mu;
}

Lcps LexLcps() {
  const auto states = StateSpace::Create({"sq", "ma", "pa"});
  return Lcps::Create({Dist(states, {{"sq", 1}}),
                       Dist(states, {{"ma", {2, 3}}, {"pa", {1, 3}}})});
}

GambleSystem LarryBook(const LearningEnvironment& larry) {
  GambleSystem g = GambleSystem::Zero(larry);
  Put(larry, g, "sm", {{"sq", -10}, {"ma", 9}});
  Put(larry, g, "mp", {{"ma", -10}, {"pa", 9}});
  Put(larry, g, "ps", {{"sq", 9}, {"pa", -10}});
  return g;
}

LearningEnvironment SkewedEnvironment() {
  auto states = StateSpace::Create({"u", "v"});
  auto forest = ContingencyForest::Create(Roots({"a", "b"}));
  std::vector<std::vector<Rational>> eta = {{{3, 4}, {1, 4}}, {{1, 4}, {3, 4}}};
  return LearningEnvironment::Build(std::move(states), std::move(forest),
                                    std::move(eta));
}

LearningEnvironment NestedEnvironment() {
  auto states = StateSpace::Create({"A", "B", "C"});
  auto forest = ContingencyForest::Create(
      {{"h0", std::nullopt}, {"h1", "h0"}, {"h2", "h0"}});
  // Leaf order: h1, h2.
  std::vector<std::vector<Rational>> eta = {{1, 0}, {1, 0}, {0, 1}};
  return LearningEnvironment::Build(std::move(states), std::move(forest),
                                    std::move(eta));
}

BeliefSystem DriftBeliefs(const LearningEnvironment& nested) {
  BeliefSystem mu(nested.num_contingencies());
  Put(nested, mu, "h0", {{"A", {1, 3}}, {"B", {1, 3}}, {"C", {1, 3}}});
  Put(nested, mu, "h1", {{"A", {3, 4}}, {"B", {1, 4}}});
  Put(nested, mu, "h2", {{"C", 1}});
  return mu;
}

BeliefSystem ConditionedBeliefs(const LearningEnvironment& nested) {
  BeliefSystem mu(nested.num_contingencies());
  Put(nested, mu, "h0", {{"A", {1, 3}}, {"B", {1, 3}}, {"C", {1, 3}}});
  Put(nested, mu, "h1", {{"A", {1, 2}}, {"B", {1, 2}}});
  Put(nested, mu, "h2", {{"C", 1}});
  return mu;
}

GambleSystem NestedBook(const LearningEnvironment& nested) {
  GambleSystem g = GambleSystem::Zero(nested);
  Put(nested, g, "h0", {{"A", {-5, 6}}, {"B", 1}});
  Put(nested, g, "h1", {{"A", {1, 2}}, {"B", {-25, 24}}});
  return g;
}

LearningEnvironment PairEnvironment() {
  auto states = StateSpace::Create({"a", "b"});
  auto forest = ContingencyForest::Create(Roots({"h", "h2"}));
  const Rational half(1, 2);
  std::vector<std::vector<Rational>> eta = {{half, half}, {half, half}};
  return LearningEnvironment::Build(std::move(states), std::move(forest),
                                    std::move(eta));
}

BeliefSystem PairBeliefs(const LearningEnvironment& pair) {
  BeliefSystem mu(pair.num_contingencies());
  Put(pair, mu, "h", {{"a", {2, 3}}, {"b", {1, 3}}});
  Put(pair, mu, "h2", {{"a", {1, 2}}, {"b", {1, 2}}});
  return mu;
}

}  // namespace dutchbook::fixtures

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

#include "dutchbook/model.h"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "dutchbook/error.h"

namespace dutchbook {

StateSpace StateSpace::Create(std::vector<std::string> names) {
  if (names.empty()) Fail(ErrorCode::kInvalidInput, "state space is empty");
  StateSpace space;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) {
      Fail(ErrorCode::kInvalidInput, "empty state identifier");
    }
    if (!space.index_.emplace(names[i], i).second) {
      Fail(ErrorCode::kInvalidInput, "duplicate state '" + names[i] + "'",
           names[i]);
    }
  }
  space.names_ = std::move(names);
  return space;
}

std::optional<StateIndex> StateSpace::Find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

StateIndex StateSpace::IndexOf(std::string_view name) const {
  auto found = Find(name);
  if (!found) {
    Fail(ErrorCode::kDomain, "unknown state '" + std::string(name) + "'",
         std::string(name));
  }
  return *found;
}

ContingencyForest ContingencyForest::Create(const std::vector<NodeSpec>& nodes) {
  if (nodes.empty()) {
    Fail(ErrorCode::kInvalidInput, "contingency forest is empty");
  }
  ContingencyForest forest;
  const std::size_t n = nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes[i].id.empty()) {
      Fail(ErrorCode::kInvalidInput, "empty contingency identifier");
    }
    if (!forest.index_.emplace(nodes[i].id, i).second) {
      Fail(ErrorCode::kInvalidInput,
           "duplicate contingency '" + nodes[i].id + "'", nodes[i].id);
    }
    forest.names_.push_back(nodes[i].id);
  }
  forest.parent_.assign(n, std::nullopt);
  forest.children_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    if (!nodes[i].parent) continue;
    auto p = forest.Find(*nodes[i].parent);
    if (!p) {
      Fail(ErrorCode::kInvalidInput,
           "contingency '" + nodes[i].id + "' has unknown parent '" +
               *nodes[i].parent + "'",
           nodes[i].id);
    }
    if (*p == i) {
      Fail(ErrorCode::kInvalidInput,
           "contingency '" + nodes[i].id + "' is its own parent", nodes[i].id);
    }
    forest.parent_[i] = *p;
    forest.children_[*p].push_back(i);
  }
  // Depth by walking parents; a walk longer than n means a cycle.
  forest.depth_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t steps = 0;
    for (auto cur = forest.parent_[i]; cur; cur = forest.parent_[*cur]) {
      if (++steps > n) {
        Fail(ErrorCode::kInvalidInput,
             "cycle in contingency forest through '" + nodes[i].id + "'",
             nodes[i].id);
      }
    }
    forest.depth_[i] = steps;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!forest.parent_[i]) forest.roots_.push_back(i);
    if (forest.children_[i].empty()) forest.leaves_.push_back(i);
  }
  return forest;
}

std::optional<NodeIndex> ContingencyForest::Find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex ContingencyForest::IndexOf(std::string_view name) const {
  auto found = Find(name);
  if (!found) {
    Fail(ErrorCode::kDomain,
         "unknown contingency '" + std::string(name) + "'", std::string(name));
  }
  return *found;
}

bool ContingencyForest::Precedes(NodeIndex a, NodeIndex b) const {
  if (depth_.at(a) >= depth_.at(b)) return false;
  for (auto cur = parent_.at(b); cur; cur = parent_[*cur]) {
    if (*cur == a) return true;
  }
  return false;
}

std::vector<NodeIndex> ContingencyForest::ChainTo(NodeIndex h) const {
  std::vector<NodeIndex> chain{h};
  for (auto cur = parent_.at(h); cur; cur = parent_[*cur]) {
    chain.push_back(*cur);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

Distribution Distribution::PointMass(std::size_t n, StateIndex s) {
  Distribution d = Zero(n);
  d[s] = Rational(1);
  return d;
}

Rational Distribution::Total() const {
  Rational total;
  for (const auto& m : masses_) total += m;
  return total;
}

Rational Distribution::MassOf(std::span<const StateIndex> states) const {
  Rational total;
  for (StateIndex s : states) total += masses_.at(s);
  return total;
}

bool Distribution::IsProbability() const {
  for (const auto& m : masses_) {
    if (m.IsNegative()) return false;
  }
  return Total() == Rational(1);
}

std::vector<StateIndex> Distribution::Support() const {
  std::vector<StateIndex> support;
  for (StateIndex s = 0; s < masses_.size(); ++s) {
    if (masses_[s].IsPositive()) support.push_back(s);
  }
  return support;
}

LearningEnvironment LearningEnvironment::Build(
    StateSpace states, ContingencyForest forest,
    std::vector<std::vector<Rational>> eta) {
  LearningEnvironment env;
  const std::size_t num_states = states.size();
  const std::size_t num_nodes = forest.size();
  if (num_states == 0) Fail(ErrorCode::kInvalidInput, "state space is empty");
  if (eta.size() != num_states) {
    Fail(ErrorCode::kInvalidInput, "path distribution count does not match "
                                   "the number of states");
  }

  for (NodeIndex leaf : forest.leaves()) {
    env.paths_.push_back(LearningPath{forest.ChainTo(leaf)});
  }
  const std::size_t num_paths = env.paths_.size();

  for (StateIndex s = 0; s < num_states; ++s) {
    const std::string& name = states.name(s);
    if (eta[s].size() != num_paths) {
      Fail(ErrorCode::kInvalidInput,
           "path distribution of state '" + name + "' has wrong length", name);
    }
    Rational total;
    for (const auto& m : eta[s]) {
      if (m.IsNegative()) {
        Fail(ErrorCode::kInvalidInput,
             "negative path probability under state '" + name + "'", name);
      }
      total += m;
    }
    if (total != Rational(1)) {
      Fail(ErrorCode::kInvalidInput,
           "path distribution of state '" + name + "' sums to " +
               total.ToString() + ", not 1",
           name);
    }
  }

  env.paths_through_.assign(num_nodes, {});
  for (PathIndex p = 0; p < num_paths; ++p) {
    for (NodeIndex h : env.paths_[p].chain) env.paths_through_[h].push_back(p);
  }

  env.reach_.assign(num_nodes, std::vector<Rational>(num_states));
  env.consistent_states_.assign(num_nodes, {});
  for (NodeIndex h = 0; h < num_nodes; ++h) {
    for (StateIndex s = 0; s < num_states; ++s) {
      Rational r;
      for (PathIndex p : env.paths_through_[h]) r += eta[s][p];
      if (r.IsPositive()) env.consistent_states_[h].push_back(s);
      env.reach_[h][s] = std::move(r);
    }
    if (env.consistent_states_[h].empty()) {
      Fail(ErrorCode::kInvalidInput,
           "inconsistent contingency '" + forest.name(h) +
               "': no state reaches it",
           forest.name(h));
    }
  }

  env.consistent_paths_.assign(num_states, {});
  for (StateIndex s = 0; s < num_states; ++s) {
    for (PathIndex p = 0; p < num_paths; ++p) {
      if (eta[s][p].IsPositive()) env.consistent_paths_[s].push_back(p);
    }
  }

  env.states_ = std::move(states);
  env.forest_ = std::move(forest);
  env.eta_ = std::move(eta);
  return env;
}

Rational ReachProbability(const LearningEnvironment& env, NodeIndex h,
                          StateIndex s) {
  if (h >= env.num_contingencies()) {
    Fail(ErrorCode::kDomain, "contingency index out of range");
  }
  if (s >= env.num_states()) Fail(ErrorCode::kDomain, "state index out of range");
  return env.reach(h, s);
}

bool IsUniformReach(const LearningEnvironment& env) {
  for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
    const auto& states = env.consistent_states(h);
    for (StateIndex s : states) {
      if (env.reach(h, s) != env.reach(h, states.front())) return false;
    }
  }
  return true;
}

bool HasDeterministicContinuation(const LearningEnvironment& env) {
  const auto& forest = env.forest();
  for (NodeIndex h = 0; h < forest.size(); ++h) {
    if (forest.IsLeaf(h)) continue;
    for (StateIndex s : env.consistent_states(h)) {
      std::set<NodeIndex> next;
      for (PathIndex p : env.paths_through(h)) {
        if (!env.eta(s)[p].IsPositive()) continue;
        const auto& chain = env.paths()[p].chain;
        auto it = std::find(chain.begin(), chain.end(), h);
        next.insert(*(it + 1));
      }
      if (next.size() > 1) return false;
    }
  }
  return true;
}

const Distribution& BeliefSystem::operator[](NodeIndex h) const {
  const auto& belief = beliefs_.at(h);
  if (!belief) {
    Fail(ErrorCode::kInvalidInput, "undefined belief at contingency index " +
                                       std::to_string(h));
  }
  return *belief;
}

std::vector<BeliefViolation> ValidateBeliefSystem(const LearningEnvironment& env,
                                                  const BeliefSystem& mu) {
  std::vector<BeliefViolation> out;
  const auto& states = env.states();
  if (mu.size() != env.num_contingencies()) {
    out.push_back({0, "belief system has wrong number of contingencies"});
    return out;
  }
  for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
    if (!mu.Has(h)) {
      out.push_back({h, "undefined belief"});
      continue;
    }
    const Distribution& belief = mu[h];
    if (belief.size() != env.num_states()) {
      out.push_back({h, "belief has wrong dimension"});
      continue;
    }
    for (StateIndex s = 0; s < belief.size(); ++s) {
      if (belief[s].IsNegative()) {
        out.push_back({h, "negative mass on state '" + states.name(s) + "'"});
      } else if (belief[s].IsPositive() && !env.IsConsistent(h, s)) {
        out.push_back({h, "mass " + belief[s].ToString() + " on state '" +
                              states.name(s) + "' outside S(h)"});
      }
    }
    const Rational inside = belief.MassOf(env.consistent_states(h));
    if (inside != Rational(1)) {
      out.push_back({h, "mass on S(h) is " + inside.ToString() + ", not 1"});
    }
  }
  return out;
}

void RequireValidBeliefs(const LearningEnvironment& env,
                         const BeliefSystem& mu) {
  auto violations = ValidateBeliefSystem(env, mu);
  if (violations.empty()) return;
  const auto& v = violations.front();
  std::string where = v.h < env.num_contingencies() ? env.forest().name(v.h) : "";
  Fail(ErrorCode::kInvalidInput, "invalid belief system: " + v.reason, where);
}

}  // namespace dutchbook

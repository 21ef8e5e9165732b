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

#ifndef DUTCHBOOK_MODEL_H_
#define DUTCHBOOK_MODEL_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dutchbook/rational.h"

namespace dutchbook {

using StateIndex = std::size_t;
using NodeIndex = std::size_t;
// Learning paths are keyed by their leaf; a PathIndex is the position of that
// leaf in ContingencyForest::leaves().
using PathIndex = std::size_t;

// Ordered set of distinct state names. The order is canonical and drives
// every deterministic tie-break in the library.
class StateSpace {
 public:
  StateSpace() = default;
  static StateSpace Create(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(StateIndex s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<StateIndex> Find(std::string_view name) const;
  // Throws Error(kDomain) for unknown names.
  StateIndex IndexOf(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateIndex> index_;
};

// A forest of contingencies. Node order is the order of declaration and is
// canonical; roots, leaves and children lists follow it.
class ContingencyForest {
 public:
  struct NodeSpec {
    std::string id;
    std::optional<std::string> parent;
  };

  ContingencyForest() = default;
  // Throws Error(kInvalidInput) on duplicate ids, unknown parents or cycles.
  static ContingencyForest Create(const std::vector<NodeSpec>& nodes);

  std::size_t size() const { return names_.size(); }
  const std::string& name(NodeIndex h) const { return names_.at(h); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<NodeIndex> Find(std::string_view name) const;
  NodeIndex IndexOf(std::string_view name) const;

  std::optional<NodeIndex> parent(NodeIndex h) const { return parent_.at(h); }
  const std::vector<NodeIndex>& children(NodeIndex h) const {
    return children_.at(h);
  }
  const std::vector<NodeIndex>& roots() const { return roots_; }
  const std::vector<NodeIndex>& leaves() const { return leaves_; }
  bool IsLeaf(NodeIndex h) const { return children_.at(h).empty(); }

  // True iff `a` is a proper ancestor of `b` (a ≺ b).
  bool Precedes(NodeIndex a, NodeIndex b) const;
  // Root-to-node chain ending at `h`.
  std::vector<NodeIndex> ChainTo(NodeIndex h) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::optional<NodeIndex>> parent_;
  std::vector<std::vector<NodeIndex>> children_;
  std::vector<NodeIndex> roots_;
  std::vector<NodeIndex> leaves_;
  std::vector<std::size_t> depth_;
};

// Masses indexed by state. Construction does not enforce the probability
// invariant; IsProbability() checks it and validators report failures.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::vector<Rational> masses)
      : masses_(std::move(masses)) {}
  static Distribution Zero(std::size_t n) {
    return Distribution(std::vector<Rational>(n));
  }
  static Distribution PointMass(std::size_t n, StateIndex s);

  std::size_t size() const { return masses_.size(); }
  const Rational& operator[](StateIndex s) const { return masses_.at(s); }
  Rational& operator[](StateIndex s) { return masses_.at(s); }
  const std::vector<Rational>& masses() const { return masses_; }

  Rational Total() const;
  Rational MassOf(std::span<const StateIndex> states) const;
  // Nonnegative and summing to exactly one.
  bool IsProbability() const;
  std::vector<StateIndex> Support() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<Rational> masses_;
};

struct LearningPath {
  std::vector<NodeIndex> chain;  // root first
  NodeIndex leaf() const { return chain.back(); }
};

// States, contingencies, learning paths and the objective path distribution
// of every state, with the derived reach table p(h|s), consistent states S(h)
// and consistent paths L(s). Immutable after Build.
class LearningEnvironment {
 public:
  LearningEnvironment() = default;

  // `eta[s][p]` is the probability that state s follows path p. Throws
  // Error(kInvalidInput) if a row is not a distribution or some contingency
  // is unreachable under every state.
  static LearningEnvironment Build(StateSpace states, ContingencyForest forest,
                                   std::vector<std::vector<Rational>> eta);

  const StateSpace& states() const { return states_; }
  const ContingencyForest& forest() const { return forest_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_contingencies() const { return forest_.size(); }

  const std::vector<LearningPath>& paths() const { return paths_; }
  const std::vector<Rational>& eta(StateIndex s) const { return eta_.at(s); }

  const Rational& reach(NodeIndex h, StateIndex s) const {
    return reach_.at(h).at(s);
  }
  // S(h), in canonical state order.
  const std::vector<StateIndex>& consistent_states(NodeIndex h) const {
    return consistent_states_.at(h);
  }
  bool IsConsistent(NodeIndex h, StateIndex s) const {
    return reach_.at(h).at(s).IsPositive();
  }
  // L(s): paths with positive probability under s.
  const std::vector<PathIndex>& consistent_paths(StateIndex s) const {
    return consistent_paths_.at(s);
  }
  // L(h): paths whose chain contains h.
  const std::vector<PathIndex>& paths_through(NodeIndex h) const {
    return paths_through_.at(h);
  }

 private:
  StateSpace states_;
  ContingencyForest forest_;
  std::vector<LearningPath> paths_;
  std::vector<std::vector<Rational>> eta_;
  std::vector<std::vector<Rational>> reach_;  // [h][s]
  std::vector<std::vector<StateIndex>> consistent_states_;
  std::vector<std::vector<PathIndex>> consistent_paths_;
  std::vector<std::vector<PathIndex>> paths_through_;
};

// p(h|s). Throws Error(kDomain) for out-of-range indices.
Rational ReachProbability(const LearningEnvironment& env, NodeIndex h,
                          StateIndex s);

// Every contingency has the same reach probability under all its consistent
// states.
bool IsUniformReach(const LearningEnvironment& env);

// For every non-leaf h and s in S(h), all positive-probability paths of s
// through h continue into the same child of h.
bool HasDeterministicContinuation(const LearningEnvironment& env);

// One belief per contingency; entries may be missing until validated.
class BeliefSystem {
 public:
  BeliefSystem() = default;
  explicit BeliefSystem(std::size_t num_contingencies)
      : beliefs_(num_contingencies) {}

  std::size_t size() const { return beliefs_.size(); }
  void Set(NodeIndex h, Distribution belief) { beliefs_.at(h) = std::move(belief); }
  bool Has(NodeIndex h) const { return beliefs_.at(h).has_value(); }
  // Throws Error(kInvalidInput) when the belief at h is undefined.
  const Distribution& operator[](NodeIndex h) const;

  friend bool operator==(const BeliefSystem&, const BeliefSystem&) = default;

 private:
  std::vector<std::optional<Distribution>> beliefs_;
};

struct BeliefViolation {
  NodeIndex h;
  std::string reason;
};

std::vector<BeliefViolation> ValidateBeliefSystem(const LearningEnvironment& env,
                                                  const BeliefSystem& mu);
// Throws Error(kInvalidInput) naming the first violation, if any.
void RequireValidBeliefs(const LearningEnvironment& env, const BeliefSystem& mu);

}  // namespace dutchbook

#endif  // DUTCHBOOK_MODEL_H_

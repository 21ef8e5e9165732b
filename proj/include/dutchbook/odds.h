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

#ifndef DUTCHBOOK_ODDS_H_
#define DUTCHBOOK_ODDS_H_

#include <cstddef>
#include <variant>
#include <vector>

#include "dutchbook/model.h"
#include "dutchbook/rational.h"

namespace dutchbook {

// A nonnegative odds value on the extended half line. Finite values are
// strictly positive; zero and infinity have their own tags. The indeterminate
// 0/0 case is an error, never a value.
class ExtendedRatio {
 public:
  enum class Tag { kZero, kFinite, kInfinite };

  static ExtendedRatio Zero() { return ExtendedRatio(Tag::kZero, Rational()); }
  static ExtendedRatio Infinite() {
    return ExtendedRatio(Tag::kInfinite, Rational());
  }
  // Throws Error(kDomain) unless value > 0.
  static ExtendedRatio Finite(Rational value);

  Tag tag() const { return tag_; }
  bool is_zero() const { return tag_ == Tag::kZero; }
  bool is_finite() const { return tag_ == Tag::kFinite; }
  bool is_infinite() const { return tag_ == Tag::kInfinite; }
  // Only meaningful when is_finite().
  const Rational& value() const { return value_; }
  bool IsOne() const { return is_finite() && value_ == Rational(1); }

  ExtendedRatio Inverse() const;
  // Throws Error(kIndeterminate) for zero times infinity.
  friend ExtendedRatio operator*(const ExtendedRatio& a, const ExtendedRatio& b);
  friend bool operator==(const ExtendedRatio&, const ExtendedRatio&) = default;

  // "0", "inf" or the rational text.
  std::string ToString() const;

 private:
  ExtendedRatio(Tag tag, Rational value) : tag_(tag), value_(std::move(value)) {}

  Tag tag_;
  Rational value_;
};

// One discounted odds ratio o(from, to | h).
struct OddsLink {
  NodeIndex h;
  StateIndex from;
  StateIndex to;
  ExtendedRatio value;

  friend bool operator==(const OddsLink&, const OddsLink&) = default;
};

// A concatenation of odds links whose endpoints match up. Construction
// rejects chains that mix zero and infinite links.
class OddsChain {
 public:
  static OddsChain Create(std::vector<OddsLink> links);

  const std::vector<OddsLink>& links() const { return links_; }
  std::size_t size() const { return links_.size(); }
  StateIndex start() const { return links_.front().from; }
  StateIndex end() const { return links_.back().to; }
  bool IsCycle() const { return start() == end(); }
  // Product of the stored link values.
  ExtendedRatio Product() const;
  // Reverses the chain and inverts every link.
  OddsChain Inverted() const;

  friend bool operator==(const OddsChain&, const OddsChain&) = default;

 private:
  explicit OddsChain(std::vector<OddsLink> links) : links_(std::move(links)) {}
  std::vector<OddsLink> links_;
};

// o(s,s'|h) = (mu(s|h)/p(h|s)) * (p(h|s')/mu(s'|h)). Throws
// Error(kIndeterminate) when both beliefs vanish and Error(kDomain) when
// s or s' is not in S(h) or s == s'.
ExtendedRatio DiscountedOddsRatio(const LearningEnvironment& env,
                                  const BeliefSystem& mu, NodeIndex h,
                                  StateIndex s, StateIndex s_prime);

// Product of the chain's discounted odds ratios, each recomputed from env and
// mu.
ExtendedRatio GeneralizedOddsRatio(const LearningEnvironment& env,
                                   const BeliefSystem& mu,
                                   const OddsChain& chain);

// Every defined discounted odds ratio, both orientations, ordered by
// (contingency, from, to).
struct CoherenceGraph {
  std::size_t num_states = 0;
  std::vector<OddsLink> edges;
};

CoherenceGraph BuildCoherenceGraph(const LearningEnvironment& env,
                                   const BeliefSystem& mu);

// Ordered, disjoint, nonempty levels covering every state; the first level
// is the most plausible.
struct PlausibilityPartition {
  std::vector<std::vector<StateIndex>> levels;

  // Level of each state, 0-based.
  std::vector<std::size_t> LevelOf(std::size_t num_states) const;
  friend bool operator==(const PlausibilityPartition&,
                         const PlausibilityPartition&) = default;
};

struct CoherenceCertificate {
  PlausibilityPartition partition;
  // Positive on every state; each level sums to one. For every finite edge
  // (h, s, s', v): potentials[s] / potentials[s'] == v.
  std::vector<Rational> potentials;
};

// A simple self-cycle of odds whose product is zero or finite and not one.
// The cycle starts at its smallest state index.
struct CoherenceViolation {
  OddsChain cycle;
  ExtendedRatio product;
};

using CoherenceResult = std::variant<CoherenceCertificate, CoherenceViolation>;

// Certificate iff every generalized self-odds ratio is one.
CoherenceResult CheckCoherence(const CoherenceGraph& graph);

// Requires a graph with consistent finite potentials and no zero cycle;
// throws Error(kInternal) otherwise.
PlausibilityPartition PlausibilityLevels(const CoherenceGraph& graph);

}  // namespace dutchbook

#endif  // DUTCHBOOK_ODDS_H_

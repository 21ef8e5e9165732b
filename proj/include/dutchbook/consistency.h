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

#ifndef DUTCHBOOK_CONSISTENCY_H_
#define DUTCHBOOK_CONSISTENCY_H_

#include <optional>
#include <variant>
#include <vector>

#include "dutchbook/model.h"
#include "dutchbook/odds.h"

namespace dutchbook {

// Lexicographic conditional probability system: an ordered list of
// probability measures over the states such that every state has positive
// mass in exactly one level.
class Lcps {
 public:
  // Throws Error(kInvalidInput) if a level is not a probability measure or
  // the exactly-one-level condition fails.
  static Lcps Create(std::vector<Distribution> levels);

  const std::vector<Distribution>& levels() const { return levels_; }
  std::size_t num_states() const { return levels_.front().size(); }
  // Index of the first level giving positive mass to `event`, if any.
  std::optional<std::size_t> FirstLevelCharging(
      std::span<const StateIndex> event) const;

  friend bool operator==(const Lcps&, const Lcps&) = default;

 private:
  explicit Lcps(std::vector<Distribution> levels) : levels_(std::move(levels)) {}
  std::vector<Distribution> levels_;
};

// Witness that mu(s|h) != mu(s|h') * mu(S(h')|h) for some h ≺ h' with
// mu(S(h')|h) > 0.
struct ForwardViolation {
  NodeIndex h;
  NodeIndex h_prime;
  StateIndex s;
  Rational lhs;
  Rational rhs;
};

// Bayes rule from the first level that charges S(h):
// mu(s|h) = p(h|s) mu^m(s) / sum_s' p(h|s') mu^m(s').
BeliefSystem DeriveBeliefs(const LearningEnvironment& env, const Lcps& lcps);

// Exact equality of DeriveBeliefs(env, lcps) and mu at every contingency.
bool VerifyCcbs(const LearningEnvironment& env, const BeliefSystem& mu,
                const Lcps& lcps);

struct CompletelyConsistent {
  Lcps lcps;
  CoherenceCertificate certificate;
};

struct NotCompletelyConsistent {
  CoherenceViolation violation;
};

using CompleteConsistencyResult =
    std::variant<CompletelyConsistent, NotCompletelyConsistent>;

// Throws Error(kInvalidInput) for invalid beliefs and Error(kInternal) if an
// extracted LCPS fails to reproduce mu.
CompleteConsistencyResult CheckCompleteConsistency(const LearningEnvironment& env,
                                                   const BeliefSystem& mu);

// Levels are the plausibility partition; masses within a level are the
// certificate potentials. Throws Error(kPrecondition) if mu is not
// completely consistent.
Lcps ExtractLcps(const LearningEnvironment& env, const BeliefSystem& mu);
Lcps LcpsFromCertificate(const CoherenceCertificate& certificate);

// Checks mu(s|h) == mu(s|h') * mu(S(h')|h) for every comparable pair h ≺ h'
// with mu(S(h')|h) > 0 and every s in S(h'). Returns the first violation in
// (h, h', s) canonical order.
std::optional<ForwardViolation> CheckForwardConsistency(
    const LearningEnvironment& env, const BeliefSystem& mu);

// Every violation in the same order, for callers that need alternatives.
std::vector<ForwardViolation> AllForwardViolations(
    const LearningEnvironment& env, const BeliefSystem& mu);

}  // namespace dutchbook

#endif  // DUTCHBOOK_CONSISTENCY_H_

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

#include "dutchbook/consistency.h"

#include <string>
#include <utility>

#include "dutchbook/error.h"

namespace dutchbook {

Lcps Lcps::Create(std::vector<Distribution> levels) {
  if (levels.empty()) Fail(ErrorCode::kInvalidInput, "LCPS has no levels");
  const std::size_t n = levels.front().size();
  if (n == 0) Fail(ErrorCode::kInvalidInput, "LCPS over an empty state space");
  std::vector<int> owners(n, 0);
  for (std::size_t m = 0; m < levels.size(); ++m) {
    if (levels[m].size() != n) {
      Fail(ErrorCode::kInvalidInput, "LCPS levels have different dimensions");
    }
    if (!levels[m].IsProbability()) {
      Fail(ErrorCode::kInvalidInput,
           "LCPS level " + std::to_string(m) + " is not a probability measure");
    }
    for (StateIndex s = 0; s < n; ++s) {
      if (levels[m][s].IsPositive()) ++owners[s];
    }
  }
  for (StateIndex s = 0; s < n; ++s) {
    if (owners[s] != 1) {
      Fail(ErrorCode::kInvalidInput,
           "state index " + std::to_string(s) + " is charged by " +
               std::to_string(owners[s]) + " LCPS levels, expected exactly one");
    }
  }
  return Lcps(std::move(levels));
}

std::optional<std::size_t> Lcps::FirstLevelCharging(
    std::span<const StateIndex> event) const {
  for (std::size_t m = 0; m < levels_.size(); ++m) {
    if (levels_[m].MassOf(event).IsPositive()) return m;
  }
  return std::nullopt;
}

BeliefSystem DeriveBeliefs(const LearningEnvironment& env, const Lcps& lcps) {
  if (lcps.num_states() != env.num_states()) {
    Fail(ErrorCode::kInvalidInput, "LCPS and environment disagree on states");
  }
  BeliefSystem mu(env.num_contingencies());
  for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
    const auto& support = env.consistent_states(h);
    const auto m = lcps.FirstLevelCharging(support);
    if (!m) Fail(ErrorCode::kInternal, "no LCPS level charges a contingency");
    const Distribution& level = lcps.levels()[*m];
    Distribution belief = Distribution::Zero(env.num_states());
    Rational total;
    for (StateIndex s : support) {
      belief[s] = env.reach(h, s) * level[s];
      total += belief[s];
    }
    for (StateIndex s : support) belief[s] /= total;
    mu.Set(h, std::move(belief));
  }
  return mu;
}

bool VerifyCcbs(const LearningEnvironment& env, const BeliefSystem& mu,
                const Lcps& lcps) {
  if (lcps.num_states() != env.num_states()) return false;
  return DeriveBeliefs(env, lcps) == mu;
}

Lcps LcpsFromCertificate(const CoherenceCertificate& certificate) {
  const std::size_t n = certificate.potentials.size();
  std::vector<Distribution> levels;
  for (const auto& level : certificate.partition.levels) {
    Distribution d = Distribution::Zero(n);
    for (StateIndex s : level) d[s] = certificate.potentials[s];
    levels.push_back(std::move(d));
  }
  return Lcps::Create(std::move(levels));
}

CompleteConsistencyResult CheckCompleteConsistency(const LearningEnvironment& env,
                                                   const BeliefSystem& mu) {
  RequireValidBeliefs(env, mu);
  CoherenceResult coherence = CheckCoherence(BuildCoherenceGraph(env, mu));
  if (auto* violation = std::get_if<CoherenceViolation>(&coherence)) {
    return NotCompletelyConsistent{std::move(*violation)};
  }
  auto& certificate = std::get<CoherenceCertificate>(coherence);
  Lcps lcps = LcpsFromCertificate(certificate);
  if (!VerifyCcbs(env, mu, lcps)) {
    Fail(ErrorCode::kInternal,
         "extracted LCPS does not reproduce the belief system");
  }
  return CompletelyConsistent{std::move(lcps), std::move(certificate)};
}

Lcps ExtractLcps(const LearningEnvironment& env, const BeliefSystem& mu) {
  auto result = CheckCompleteConsistency(env, mu);
  if (std::holds_alternative<NotCompletelyConsistent>(result)) {
    Fail(ErrorCode::kPrecondition,
         "belief system is not completely consistent");
  }
  return std::get<CompletelyConsistent>(std::move(result)).lcps;
}

std::vector<ForwardViolation> AllForwardViolations(
    const LearningEnvironment& env, const BeliefSystem& mu) {
  RequireValidBeliefs(env, mu);
  std::vector<ForwardViolation> out;
  const auto& forest = env.forest();
  for (NodeIndex h = 0; h < forest.size(); ++h) {
    for (NodeIndex hp = 0; hp < forest.size(); ++hp) {
      if (!forest.Precedes(h, hp)) continue;
      const auto& later = env.consistent_states(hp);
      const Rational carried = mu[h].MassOf(later);
      if (!carried.IsPositive()) continue;
      for (StateIndex s : later) {
        Rational rhs = mu[hp][s] * carried;
        if (mu[h][s] != rhs) out.push_back({h, hp, s, mu[h][s], std::move(rhs)});
      }
    }
  }
  return out;
}

std::optional<ForwardViolation> CheckForwardConsistency(
    const LearningEnvironment& env, const BeliefSystem& mu) {
  auto all = AllForwardViolations(env, mu);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

}  // namespace dutchbook

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

#include "dutchbook/cps.h"

#include <bit>
#include <string>
#include <utility>

#include "dutchbook/error.h"

namespace dutchbook {

StateMask MaskOf(std::span<const StateIndex> states) {
  StateMask mask = 0;
  for (StateIndex s : states) {
    if (s >= kMaxCpsStates) Fail(ErrorCode::kDomain, "state index exceeds mask width");
    mask |= StateMask{1} << s;
  }
  return mask;
}

std::vector<StateIndex> StatesOf(StateMask mask) {
  std::vector<StateIndex> out;
  while (mask != 0) {
    out.push_back(static_cast<StateIndex>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

CompleteCps::CompleteCps(std::size_t num_states) : num_states_(num_states) {
  if (num_states == 0 || num_states > kMaxCpsStates) {
    Fail(ErrorCode::kInvalidInput,
         "complete CPS supports 1 to " + std::to_string(kMaxCpsStates) +
             " states, got " + std::to_string(num_states));
  }
  rows_.resize(std::size_t{1} << num_states);
}

void CompleteCps::Set(StateMask event, Distribution row) {
  if (event == 0 || event > full_mask()) {
    Fail(ErrorCode::kDomain, "CPS event out of range");
  }
  rows_.at(event) = std::move(row);
}

const Distribution& CompleteCps::operator[](StateMask event) const {
  if (event == 0 || event > full_mask() || !rows_.at(event)) {
    Fail(ErrorCode::kInvalidInput,
         "CPS row undefined for event mask " + std::to_string(event));
  }
  return *rows_[event];
}

std::optional<CpsViolation> ValidateCompleteCps(const CompleteCps& cps) {
  const StateMask full = cps.full_mask();
  for (StateMask c = 1; c <= full; ++c) {
    const Distribution& row = cps[c];
    if (row.size() != cps.num_states()) {
      return CpsViolation{c, 0, std::nullopt, {}, {}, "row has wrong dimension"};
    }
    if (!row.IsProbability()) {
      return CpsViolation{c, 0, std::nullopt, row.Total(), Rational(1),
                          "row is not a probability measure"};
    }
    const auto members = StatesOf(c);
    const Rational inside = row.MassOf(members);
    if (inside != Rational(1)) {
      return CpsViolation{c, c, std::nullopt, inside, Rational(1),
                          "row does not give its event probability one"};
    }
  }
  for (StateMask c = 1; c <= full; ++c) {
    const Distribution& row_c = cps[c];
    // Proper nonempty subsets of c in ascending mask order.
    for (StateMask d = 1; d < c; ++d) {
      if ((d & c) != d) continue;
      const Distribution& row_d = cps[d];
      const auto members = StatesOf(d);
      const Rational d_given_c = row_c.MassOf(members);
      for (StateIndex e : members) {
        Rational rhs = row_d[e] * d_given_c;
        if (row_c[e] != rhs) {
          return CpsViolation{c, d, e, row_c[e], std::move(rhs),
                              "chain rule fails"};
        }
      }
    }
  }
  return std::nullopt;
}

CompleteCps LcpsToCps(const Lcps& lcps) {
  CompleteCps cps(lcps.num_states());
  for (StateMask c = 1; c <= cps.full_mask(); ++c) {
    const auto members = StatesOf(c);
    const auto k = lcps.FirstLevelCharging(members);
    if (!k) Fail(ErrorCode::kInternal, "LCPS without full support");
    const Distribution& level = lcps.levels()[*k];
    const Rational total = level.MassOf(members);
    Distribution row = Distribution::Zero(lcps.num_states());
    for (StateIndex s : members) row[s] = level[s] / total;
    cps.Set(c, std::move(row));
  }
  return cps;
}

Lcps CpsToLcps(const CompleteCps& cps) {
  if (const auto v = ValidateCompleteCps(cps)) {
    Fail(ErrorCode::kInvalidInput, "invalid CPS: " + v->reason);
  }
  std::vector<Distribution> levels;
  StateMask remaining = cps.full_mask();
  while (remaining != 0) {
    const Distribution& row = cps[remaining];
    StateMask next = remaining;
    for (StateIndex s : StatesOf(remaining)) {
      if (row[s].IsPositive()) next &= ~(StateMask{1} << s);
    }
    if (next == remaining) {
      Fail(ErrorCode::kInvalidInput, "CPS row charges none of its event");
    }
    levels.push_back(row);
    remaining = next;
  }
  return Lcps::Create(std::move(levels));
}

namespace {

struct SiniscalchiSearch {
  const LearningEnvironment& env;
  const BeliefSystem& mu;
  std::size_t max_len;
  std::vector<NodeIndex> sequence;
  std::vector<bool> used;
  std::optional<SiniscalchiViolation> found;

  // Checks the current sequence; both products are the accumulated overlap
  // factors: `forward` carries mu(overlap | later), `backward` mu(overlap |
  // earlier).
  bool CheckEnds(const Rational& forward, const Rational& backward) {
    const NodeIndex first = sequence.front();
    const NodeIndex last = sequence.back();
    std::vector<StateIndex> common;
    for (StateIndex s : env.consistent_states(first)) {
      if (env.IsConsistent(last, s)) common.push_back(s);
    }
    auto test = [&](std::vector<StateIndex> event) {
      Rational lhs = mu[first].MassOf(event) * forward;
      Rational rhs = mu[last].MassOf(event) * backward;
      if (lhs == rhs) return true;
      found = SiniscalchiViolation{sequence, std::move(event), std::move(lhs),
                                   std::move(rhs)};
      return false;
    };
    for (StateIndex s : common) {
      if (!test({s})) return false;
    }
    if (common.size() > 1 && !test(common)) return false;
    return true;
  }

  bool Extend(const Rational& forward, const Rational& backward) {
    if (sequence.size() >= 2 && !CheckEnds(forward, backward)) return false;
    if (sequence.size() == max_len) return true;
    const NodeIndex last = sequence.back();
    for (NodeIndex next = 0; next < env.num_contingencies(); ++next) {
      if (used[next]) continue;
      std::vector<StateIndex> overlap;
      for (StateIndex s : env.consistent_states(last)) {
        if (env.IsConsistent(next, s)) overlap.push_back(s);
      }
      Rational f = forward * mu[next].MassOf(overlap);
      Rational b = backward * mu[last].MassOf(overlap);
      // Both sides vanish for every continuation.
      if (f.IsZero() && b.IsZero()) continue;
      used[next] = true;
      sequence.push_back(next);
      const bool ok = Extend(f, b);
      sequence.pop_back();
      used[next] = false;
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace

std::optional<SiniscalchiViolation> CheckSiniscalchi(
    const LearningEnvironment& env, const BeliefSystem& mu,
    std::optional<std::size_t> max_len) {
  RequireValidBeliefs(env, mu);
  if (!IsUniformReach(env)) {
    Fail(ErrorCode::kUnsupported,
         "sequence consistency check requires uniform reach probabilities");
  }
  const std::size_t len = max_len.value_or(env.num_contingencies());
  if (len < 2) Fail(ErrorCode::kInvalidInput, "max length must be at least 2");
  SiniscalchiSearch search{env, mu, len, {}, std::vector<bool>(env.num_contingencies()), std::nullopt};
  for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
    search.used[h] = true;
    search.sequence = {h};
    const bool ok = search.Extend(Rational(1), Rational(1));
    search.used[h] = false;
    if (!ok) return search.found;
  }
  return std::nullopt;
}

}  // namespace dutchbook

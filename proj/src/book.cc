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

#include "dutchbook/book.h"

#include <string>
#include <utility>

#include "dutchbook/error.h"

namespace dutchbook {

GambleSystem GambleSystem::Zero(const LearningEnvironment& env) {
  return GambleSystem{std::vector<Gamble>(env.num_contingencies(),
                                          Gamble::Zero(env.num_states()))};
}

void RequireValidGambles(const LearningEnvironment& env, const GambleSystem& g) {
  if (g.gambles.size() != env.num_contingencies()) {
    Fail(ErrorCode::kInvalidInput, "gamble system has wrong number of contingencies");
  }
  for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
    const auto& payoff = g.gambles[h].payoff;
    if (payoff.size() != env.num_states()) {
      Fail(ErrorCode::kInvalidInput, "gamble has wrong dimension",
           env.forest().name(h));
    }
    for (StateIndex s = 0; s < payoff.size(); ++s) {
      if (!payoff[s].IsZero() && !env.IsConsistent(h, s)) {
        Fail(ErrorCode::kInvalidInput,
             "gamble at '" + env.forest().name(h) + "' pays on state '" +
                 env.states().name(s) + "' outside S(h)",
             env.forest().name(h));
      }
    }
  }
}

Rational ExpectedPayoff(const Distribution& nu, const Gamble& gamble) {
  if (nu.size() != gamble.payoff.size()) {
    Fail(ErrorCode::kInvalidInput, "belief and gamble dimensions differ");
  }
  Rational total;
  for (StateIndex s = 0; s < nu.size(); ++s) total += nu[s] * gamble.payoff[s];
  return total;
}

bool IsWillingToAccept(const Distribution& nu, const Gamble& gamble) {
  const Rational expectation = ExpectedPayoff(nu, gamble);
  if (expectation.IsPositive()) return true;
  if (expectation.IsNegative()) return false;
  for (StateIndex s = 0; s < nu.size(); ++s) {
    if (nu[s].IsZero() && gamble.payoff[s].IsNegative()) return false;
  }
  return true;
}

AcceptanceReport AcceptsSystem(const LearningEnvironment& env,
                               const BeliefSystem& mu, const GambleSystem& g) {
  RequireValidBeliefs(env, mu);
  RequireValidGambles(env, g);
  AcceptanceReport report;
  report.accepted = true;
  for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
    ContingencyAcceptance entry{ExpectedPayoff(mu[h], g.gambles[h]),
                                IsWillingToAccept(mu[h], g.gambles[h])};
    report.accepted = report.accepted && entry.accepted;
    report.per_contingency.push_back(std::move(entry));
  }
  return report;
}

BookVerdict ClassifyDutchBook(const LearningEnvironment& env,
                              const GambleSystem& g) {
  RequireValidGambles(env, g);
  BookVerdict verdict;
  bool all_nonpositive = true;
  bool some_negative = false;
  for (StateIndex s = 0; s < env.num_states(); ++s) {
    Rational total;
    for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
      total += env.reach(h, s) * g.gambles[h].payoff[s];
    }
    all_nonpositive = all_nonpositive && !total.IsPositive();
    some_negative = some_negative || total.IsNegative();
    verdict.per_state.push_back(std::move(total));
  }
  verdict.is_dutch_book = all_nonpositive && some_negative;
  return verdict;
}

DeterministicVerdict ClassifyDeterministic(const LearningEnvironment& env,
                                           const GambleSystem& g) {
  RequireValidGambles(env, g);
  DeterministicVerdict verdict;
  bool all_nonpositive = true;
  bool some_negative = false;
  for (StateIndex s = 0; s < env.num_states(); ++s) {
    for (PathIndex p : env.consistent_paths(s)) {
      Rational total;
      for (NodeIndex h : env.paths()[p].chain) total += g.gambles[h].payoff[s];
      all_nonpositive = all_nonpositive && !total.IsPositive();
      some_negative = some_negative || total.IsNegative();
      verdict.per_path.push_back({s, p, std::move(total)});
    }
  }
  verdict.is_deterministic_db = all_nonpositive && some_negative;
  return verdict;
}

GambleSystem CycleBook(const LearningEnvironment& env, const BeliefSystem& mu,
                       const OddsChain& cycle, const Rational& epsilon) {
  GambleSystem g = GambleSystem::Zero(env);
  Rational prev_b;
  for (std::size_t m = 0; m < cycle.size(); ++m) {
    const OddsLink& link = cycle.links()[m];
    Rational a;
    if (m == 0) {
      a = Rational(-1);
    } else {
      const OddsLink& prev = cycle.links()[m - 1];
      a = -prev_b * env.reach(prev.h, prev.to) / env.reach(link.h, link.from) -
          epsilon;
    }
    Rational b = -a * mu[link.h][link.from] / mu[link.h][link.to] + epsilon;
    g.gambles[link.h].payoff[link.from] += a;
    g.gambles[link.h].payoff[link.to] += b;
    prev_b = std::move(b);
  }
  return g;
}

DutchBookSynthesis SynthesizeDutchBook(const LearningEnvironment& env,
                                       const BeliefSystem& mu,
                                       const SynthesisParams& params) {
  auto consistency = CheckCompleteConsistency(env, mu);
  auto* inconsistent = std::get_if<NotCompletelyConsistent>(&consistency);
  if (inconsistent == nullptr) {
    Fail(ErrorCode::kPrecondition,
         "belief system is completely consistent; no Dutch book exists");
  }
  CoherenceViolation witness = std::move(inconsistent->violation);
  const OddsChain& cycle = witness.cycle;
  const StateIndex anchor = cycle.start();
  const NodeIndex first = cycle.links().front().h;

  // Telescoping: at eps = 0 the anchor collects -p(h1|s)(1 - r).
  const Rational r = witness.product.is_zero() ? Rational(0) : witness.product.value();
  const Rational expected_anchor = -env.reach(first, anchor) * (Rational(1) - r);
  const BookVerdict at_zero = ClassifyDutchBook(env, CycleBook(env, mu, cycle, Rational(0)));
  if (at_zero.per_state[anchor] != expected_anchor) {
    Fail(ErrorCode::kInternal, "cycle book does not telescope: anchor pays " +
                                   at_zero.per_state[anchor].ToString() +
                                   ", expected " + expected_anchor.ToString());
  }

  Rational epsilon = params.epsilon.value_or(Rational(1));
  if (!epsilon.IsPositive()) Fail(ErrorCode::kInvalidInput, "epsilon must be positive");
  for (int shrinks = 0; shrinks <= params.max_shrinks; ++shrinks) {
    GambleSystem book = CycleBook(env, mu, cycle, epsilon);
    AcceptanceReport acceptance = AcceptsSystem(env, mu, book);
    BookVerdict verdict = ClassifyDutchBook(env, book);
    if (acceptance.accepted && verdict.is_dutch_book) {
      return DutchBookSynthesis{std::move(book),       std::move(witness),
                                std::move(epsilon),    shrinks,
                                at_zero.per_state[anchor],
                                std::move(acceptance), std::move(verdict)};
    }
    epsilon *= params.shrink_factor;
  }
  Fail(ErrorCode::kInternal,
       "no epsilon in the shrink schedule yields a verified Dutch book");
}

GambleSystem TwoStageBook(const LearningEnvironment& env, NodeIndex h,
                          NodeIndex h_prime, StateIndex s, StateIndex s_prime,
                          const Rational& x, const Rational& y,
                          const Rational& epsilon, bool scaled_loss) {
  GambleSystem g = GambleSystem::Zero(env);
  const Rational third = epsilon / Rational(3);
  const Rational loss = scaled_loss ? epsilon / (Rational(4) * y)
                                    : y * epsilon / Rational(4);
  g.gambles[h].payoff[s] = Rational(1);
  g.gambles[h].payoff[s_prime] = -x + third;
  g.gambles[h_prime].payoff[s] = Rational(-1) - loss;
  g.gambles[h_prime].payoff[s_prime] = y + third;
  return g;
}

DeterministicSynthesis SynthesizeDeterministicDb(const LearningEnvironment& env,
                                                 const BeliefSystem& mu,
                                                 const SynthesisParams& params) {
  const auto violations = AllForwardViolations(env, mu);
  if (violations.empty()) {
    Fail(ErrorCode::kPrecondition,
         "belief system is forward consistent; no deterministic Dutch book "
         "exists");
  }
  if (!HasDeterministicContinuation(env)) {
    Fail(ErrorCode::kUnsupported,
         "environment lacks deterministic continuation: a state can pass a "
         "contingency and then branch to different children");
  }

  // First violating pair (h, h') and ordered states (s, s') in S(h') with
  // mu(s'|h), mu(s'|h') > 0 and x > y.
  const ForwardViolation* witness = nullptr;
  StateIndex s = 0;
  StateIndex sp = 0;
  for (const ForwardViolation& v : violations) {
    if (witness != nullptr) break;
    const auto& later = env.consistent_states(v.h_prime);
    for (StateIndex a : later) {
      for (StateIndex b : later) {
        if (a == b || witness != nullptr) continue;
        const Rational& early_b = mu[v.h][b];
        const Rational& late_b = mu[v.h_prime][b];
        if (!early_b.IsPositive() || !late_b.IsPositive()) continue;
        if (mu[v.h][a] / early_b > mu[v.h_prime][a] / late_b) {
          witness = &v;
          s = a;
          sp = b;
        }
      }
    }
  }
  if (witness == nullptr) {
    const auto& v = violations.front();
    Fail(ErrorCode::kPrecondition,
         "every violating pair of states has infinite earlier odds (first "
         "violation at '" + env.forest().name(v.h) + "' -> '" +
             env.forest().name(v.h_prime) + "')",
         env.forest().name(v.h_prime));
  }

  const NodeIndex h = witness->h;
  const NodeIndex hp = witness->h_prime;
  const Rational x = mu[h][s] / mu[h][sp];
  const Rational y = mu[hp][s] / mu[hp][sp];
  const Rational gap = x - y;
  // The h' gamble has expectation eps * mu(s'|h') * (1/3 - y^2/4) with the
  // plain loss term, so it is only acceptable while 3 y^2 < 4.
  const bool scaled_loss = Rational(3) * y * y >= Rational(4);

  Rational epsilon = gap / Rational(2);
  if (params.epsilon && params.epsilon->IsPositive() && *params.epsilon < gap) {
    epsilon = *params.epsilon;
  }
  for (int shrinks = 0; shrinks <= params.max_shrinks; ++shrinks) {
    GambleSystem book = TwoStageBook(env, h, hp, s, sp, x, y, epsilon, scaled_loss);
    AcceptanceReport acceptance = AcceptsSystem(env, mu, book);
    DeterministicVerdict verdict = ClassifyDeterministic(env, book);
    if (acceptance.accepted && verdict.is_deterministic_db) {
      return DeterministicSynthesis{std::move(book), *witness, s, sp, x, y,
                                    std::move(epsilon), shrinks, scaled_loss,
                                    std::move(acceptance), std::move(verdict)};
    }
    epsilon *= params.shrink_factor;
  }
  Fail(ErrorCode::kInternal,
       "no epsilon in the shrink schedule yields a verified deterministic "
       "Dutch book");
}

}  // namespace dutchbook

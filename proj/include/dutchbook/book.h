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

#ifndef DUTCHBOOK_BOOK_H_
#define DUTCHBOOK_BOOK_H_

#include <optional>
#include <vector>

#include "dutchbook/consistency.h"
#include "dutchbook/model.h"
#include "dutchbook/odds.h"

namespace dutchbook {

// Payoff to the agent in each state.
struct Gamble {
  std::vector<Rational> payoff;

  static Gamble Zero(std::size_t num_states) {
    return Gamble{std::vector<Rational>(num_states)};
  }
  friend bool operator==(const Gamble&, const Gamble&) = default;
};

// One gamble per contingency; the gamble at h pays nothing outside S(h).
struct GambleSystem {
  std::vector<Gamble> gambles;

  static GambleSystem Zero(const LearningEnvironment& env);
  friend bool operator==(const GambleSystem&, const GambleSystem&) = default;
};

// Throws Error(kInvalidInput) if the system has the wrong shape or pays
// anything outside S(h).
void RequireValidGambles(const LearningEnvironment& env, const GambleSystem& g);

Rational ExpectedPayoff(const Distribution& nu, const Gamble& gamble);

// Positive expectation, or zero expectation with no loss on a nu-null state.
bool IsWillingToAccept(const Distribution& nu, const Gamble& gamble);

struct ContingencyAcceptance {
  Rational expectation;
  bool accepted = false;
};

struct AcceptanceReport {
  bool accepted = false;
  std::vector<ContingencyAcceptance> per_contingency;
};

AcceptanceReport AcceptsSystem(const LearningEnvironment& env,
                               const BeliefSystem& mu, const GambleSystem& g);

// per_state[s] = sum_h p(h|s) g(s|h). A Dutch book when every entry is <= 0
// and one is < 0.
struct BookVerdict {
  std::vector<Rational> per_state;
  bool is_dutch_book = false;
};

BookVerdict ClassifyDutchBook(const LearningEnvironment& env,
                              const GambleSystem& g);

struct PathPayoff {
  StateIndex state;
  PathIndex path;
  Rational total;  // sum of g(state|h) over the contingencies of the path
};

// One entry per state and consistent path, in (state, path) order.
struct DeterministicVerdict {
  std::vector<PathPayoff> per_path;
  bool is_deterministic_db = false;
};

DeterministicVerdict ClassifyDeterministic(const LearningEnvironment& env,
                                           const GambleSystem& g);

struct SynthesisParams {
  // Starting epsilon; the synthesizers pick their own scale when unset.
  std::optional<Rational> epsilon;
  Rational shrink_factor{1, 2};
  int max_shrinks = 64;
};

struct DutchBookSynthesis {
  GambleSystem book;
  CoherenceViolation witness;
  Rational epsilon;
  int shrinks = 0;
  // Anchor state payoff of the epsilon = 0 book; equals -p(h1|s)(1 - r).
  Rational anchor_payoff_at_zero;
  AcceptanceReport acceptance;
  BookVerdict verdict;
};

// Book along an odds self-cycle with product below one. Per link m with
// states s(m-1) -> s(m) at h(m):
//   a(1) = -1,
//   a(m) = -b(m-1) p(h(m-1)|s(m-1)) / p(h(m)|s(m-1)) - eps,
//   b(m) = -a(m) mu(s(m-1)|h(m)) / mu(s(m)|h(m)) + eps,
// with a(m) paid on s(m-1) and b(m) on s(m) at h(m). Repeated contingencies
// accumulate.
GambleSystem CycleBook(const LearningEnvironment& env, const BeliefSystem& mu,
                       const OddsChain& cycle, const Rational& epsilon);

// Throws Error(kPrecondition) if mu is completely consistent and
// Error(kInternal) if no epsilon in the shrink schedule verifies.
DutchBookSynthesis SynthesizeDutchBook(const LearningEnvironment& env,
                                       const BeliefSystem& mu,
                                       const SynthesisParams& params = {});

struct DeterministicSynthesis {
  GambleSystem book;
  ForwardViolation witness;
  StateIndex s;
  StateIndex s_prime;
  Rational x;  // mu(s|h) / mu(s'|h)
  Rational y;  // mu(s|h') / mu(s'|h')
  Rational epsilon;
  int shrinks = 0;
  // True when the loss on s at h' is -1 - eps/(4y) instead of -1 - y eps/4.
  bool scaled_loss = false;
  AcceptanceReport acceptance;
  DeterministicVerdict verdict;
};

// Two-contingency book on h ≺ h':
//   g(s|h) = 1, g(s'|h) = -x + eps/3, g(s|h') = -1 - loss, g(s'|h') = y + eps/3.
GambleSystem TwoStageBook(const LearningEnvironment& env, NodeIndex h,
                          NodeIndex h_prime, StateIndex s, StateIndex s_prime,
                          const Rational& x, const Rational& y,
                          const Rational& epsilon, bool scaled_loss);

// Throws Error(kPrecondition) if mu is forward consistent or no violating
// pair has finite x, Error(kUnsupported) if the environment lacks
// deterministic continuation, Error(kInternal) if verification never passes.
DeterministicSynthesis SynthesizeDeterministicDb(
    const LearningEnvironment& env, const BeliefSystem& mu,
    const SynthesisParams& params = {});

}  // namespace dutchbook

#endif  // DUTCHBOOK_BOOK_H_

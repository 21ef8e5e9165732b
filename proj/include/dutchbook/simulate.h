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

#ifndef DUTCHBOOK_SIMULATE_H_
#define DUTCHBOOK_SIMULATE_H_

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "dutchbook/book.h"
#include "dutchbook/model.h"

namespace dutchbook {

struct FixedState {
  StateIndex state;
};

struct PriorDraw {
  Distribution prior;
};

struct SimConfig {
  std::uint64_t rounds = 1;
  std::uint64_t seed = 0;
  std::variant<FixedState, PriorDraw> mode = FixedState{0};
  // Worker threads; 0 means hardware concurrency. Results do not depend on it.
  unsigned threads = 1;
};

// Display statistics are binary floating point; exact fields are rational.
struct StateStats {
  std::uint64_t count = 0;
  double empirical_mean = 0;       // accepted gambles only
  double sample_std_dev = 0;
  double ungated_mean = 0;         // every gamble taken regardless of acceptance
  Rational exact_expectation;      // sum_h p(h|s) g(s|h) [accepted at h]
  Rational exact_ungated;          // sum_h p(h|s) g(s|h)
};

struct SimReport {
  std::uint64_t rounds = 0;
  std::uint64_t seed = 0;
  std::vector<bool> accepted;                // per contingency
  std::map<StateIndex, StateStats> per_state;  // states drawn at least once
};

// Counter-based generator: the stream of round i depends only on (seed, i).
class RoundRng {
 public:
  RoundRng(std::uint64_t seed, std::uint64_t round);
  std::uint64_t Next();
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();

 private:
  std::uint64_t state_;
};

SimReport RunRounds(const LearningEnvironment& env, const BeliefSystem& mu,
                    const GambleSystem& g, const SimConfig& config);

struct Deviation {
  double standard_errors = 0;
  bool flagged = false;
};

inline constexpr double kDeviationFlag = 4.0;

// |mean - exact| / (sd / sqrt(count)) per state with count >= 2. A zero
// standard deviation yields 0 when the mean is exact and +inf otherwise.
std::map<StateIndex, Deviation> CompareToExact(const SimReport& report);

}  // namespace dutchbook

#endif  // DUTCHBOOK_SIMULATE_H_

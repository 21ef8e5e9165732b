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

#include "dutchbook/simulate.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>
#include <utility>

#include "dutchbook/error.h"

namespace dutchbook {
namespace {

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kChunk = 4096;

std::size_t Draw(const std::vector<double>& cumulative, double u) {
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) return cumulative.size() - 1;
  return static_cast<std::size_t>(it - cumulative.begin());
}

std::vector<double> Cumulative(const std::vector<Rational>& weights) {
  std::vector<double> out;
  Rational running;
  for (const auto& w : weights) {
    running += w;
    out.push_back(running.ToDouble());
  }
  return out;
}

}  // namespace

RoundRng::RoundRng(std::uint64_t seed, std::uint64_t round)
    : state_(SplitMix(seed) ^ SplitMix(round ^ 0x632BE59BD9B4E019ULL)) {}

std::uint64_t RoundRng::Next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double RoundRng::Uniform() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

SimReport RunRounds(const LearningEnvironment& env, const BeliefSystem& mu,
                    const GambleSystem& g, const SimConfig& config) {
  RequireValidBeliefs(env, mu);
  RequireValidGambles(env, g);
  if (config.rounds == 0) Fail(ErrorCode::kInvalidInput, "rounds must be >= 1");
  const std::size_t num_states = env.num_states();
  const std::size_t num_paths = env.paths().size();

  std::vector<double> state_cumulative;
  std::optional<StateIndex> fixed;
  if (const auto* f = std::get_if<FixedState>(&config.mode)) {
    if (f->state >= num_states) Fail(ErrorCode::kDomain, "fixed state out of range");
    fixed = f->state;
  } else {
    const auto& prior = std::get<PriorDraw>(config.mode).prior;
    if (prior.size() != num_states || !prior.IsProbability()) {
      Fail(ErrorCode::kInvalidInput, "prior is not a distribution over states");
    }
    state_cumulative = Cumulative(prior.masses());
  }

  SimReport report;
  report.rounds = config.rounds;
  report.seed = config.seed;
  for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
    report.accepted.push_back(IsWillingToAccept(mu[h], g.gambles[h]));
  }

  std::vector<std::vector<double>> path_cumulative(num_states);
  for (StateIndex s = 0; s < num_states; ++s) {
    path_cumulative[s] = Cumulative(env.eta(s));
  }

  // Each round only selects a (state, path) cell, so the counts carry all the
  // information and merge exactly in any order.
  const std::uint64_t num_chunks = (config.rounds + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> counts(num_states * num_paths, 0);
  std::vector<std::vector<std::uint64_t>> partial(
      num_chunks, std::vector<std::uint64_t>(num_states * num_paths, 0));
  std::atomic<std::uint64_t> next_chunk{0};
  auto worker = [&] {
    for (std::uint64_t c = next_chunk++; c < num_chunks; c = next_chunk++) {
      const std::uint64_t begin = c * kChunk;
      const std::uint64_t end = std::min(config.rounds, begin + kChunk);
      auto& cells = partial[c];
      for (std::uint64_t i = begin; i < end; ++i) {
        RoundRng rng(config.seed, i);
        const StateIndex s = fixed ? *fixed : Draw(state_cumulative, rng.Uniform());
        const PathIndex p = Draw(path_cumulative[s], rng.Uniform());
        ++cells[s * num_paths + p];
      }
    }
  };
  unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency()
                                         : config.threads;
  threads = std::max(1u, std::min<unsigned>(threads, num_chunks));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& cells : partial) {
    for (std::size_t k = 0; k < cells.size(); ++k) counts[k] += cells[k];
  }

  for (StateIndex s = 0; s < num_states; ++s) {
    std::uint64_t n = 0;
    for (PathIndex p = 0; p < num_paths; ++p) n += counts[s * num_paths + p];

    StateStats stats;
    for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
      const Rational term = env.reach(h, s) * g.gambles[h].payoff[s];
      stats.exact_ungated += term;
      if (report.accepted[h]) stats.exact_expectation += term;
    }
    if (n == 0) continue;
    stats.count = n;

    std::vector<Rational> gated(num_paths);
    Rational gated_sum;
    Rational ungated_sum;
    for (PathIndex p = 0; p < num_paths; ++p) {
      const std::uint64_t c = counts[s * num_paths + p];
      if (c == 0) continue;
      Rational ungated;
      for (NodeIndex h : env.paths()[p].chain) {
        ungated += g.gambles[h].payoff[s];
        if (report.accepted[h]) gated[p] += g.gambles[h].payoff[s];
      }
      const Rational weight(static_cast<long>(c));
      gated_sum += weight * gated[p];
      ungated_sum += weight * ungated;
    }
    const Rational count(static_cast<long>(n));
    const Rational mean = gated_sum / count;
    Rational squares;
    for (PathIndex p = 0; p < num_paths; ++p) {
      const std::uint64_t c = counts[s * num_paths + p];
      if (c == 0) continue;
      const Rational d = gated[p] - mean;
      squares += Rational(static_cast<long>(c)) * d * d;
    }
    stats.empirical_mean = mean.ToDouble();
    stats.ungated_mean = (ungated_sum / count).ToDouble();
    stats.sample_std_dev =
        n > 1 ? std::sqrt((squares / (count - Rational(1))).ToDouble()) : 0.0;
    report.per_state.emplace(s, std::move(stats));
  }
  return report;
}

std::map<StateIndex, Deviation> CompareToExact(const SimReport& report) {
  std::map<StateIndex, Deviation> out;
  for (const auto& [s, stats] : report.per_state) {
    if (stats.count < 2) continue;
    const double gap =
        std::abs(stats.empirical_mean - stats.exact_expectation.ToDouble());
    Deviation d;
    if (stats.sample_std_dev == 0.0) {
      d.standard_errors = gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      d.standard_errors = gap / (stats.sample_std_dev /
                                 std::sqrt(static_cast<double>(stats.count)));
    }
    d.flagged = d.standard_errors > kDeviationFlag;
    out.emplace(s, d);
  }
  return out;
}

}  // namespace dutchbook

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

#include "support/generators.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <variant>

namespace dutchbook::testing {
namespace {

ContingencyForest RandomForest(Rng& rng, std::size_t num_nodes) {
  std::vector<ContingencyForest::NodeSpec> nodes;
  for (std::size_t i = 0; i < num_nodes; ++i) {
    ContingencyForest::NodeSpec spec{"h" + std::to_string(i), std::nullopt};
    if (i > 0 && Coin(rng, 0.7)) {
      spec.parent = "h" + std::to_string(UniformInt(rng, 0, static_cast<int>(i) - 1));
    }
    nodes.push_back(std::move(spec));
  }
  return ContingencyForest::Create(nodes);
}

Distribution Permuted(const Distribution& d, const std::vector<StateIndex>& order) {
  Distribution out = Distribution::Zero(d.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[i] = d[order[i]];
  return out;
}

}  // namespace

int UniformInt(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool Coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::vector<Rational> RandomWeights(Rng& rng, std::size_t n, long max_denominator) {
  std::vector<long> weights(n, 1);
  long total = static_cast<long>(n);
  while (total < max_denominator && Coin(rng, 0.6)) {
    ++weights[UniformInt(rng, 0, static_cast<int>(n) - 1)];
    ++total;
  }
  std::vector<Rational> out;
  for (long w : weights) out.emplace_back(w, total);
  return out;
}

Rational RandomRational(Rng& rng, long lo, long hi, long max_denominator) {
  const long d = UniformInt(rng, 1, static_cast<int>(max_denominator));
  const long n = UniformInt(rng, static_cast<int>(lo * d), static_cast<int>(hi * d));
  return Rational(n, d);
}

LearningEnvironment RandomEnvironment(Rng& rng, const EnvShape& shape) {
  const auto num_states =
      static_cast<std::size_t>(UniformInt(rng, 2, static_cast<int>(shape.max_states)));
  std::vector<std::string> names;
  for (std::size_t s = 0; s < num_states; ++s) names.push_back("s" + std::to_string(s));

  ContingencyForest forest;
  while (true) {
    const auto num_nodes = static_cast<std::size_t>(
        UniformInt(rng, 1, static_cast<int>(shape.max_contingencies)));
    forest = RandomForest(rng, num_nodes);
    if (!shape.deterministic_paths || forest.leaves().size() <= num_states) break;
  }
  const std::size_t num_paths = forest.leaves().size();

  // Every path is used by some state and every state uses some path.
  std::vector<std::vector<PathIndex>> support(num_states);
  std::vector<StateIndex> owner(num_states);
  std::iota(owner.begin(), owner.end(), 0);
  std::shuffle(owner.begin(), owner.end(), rng);
  for (PathIndex p = 0; p < num_paths; ++p) {
    const StateIndex s = p < num_states
                             ? owner[p]
                             : static_cast<StateIndex>(
                                   UniformInt(rng, 0, static_cast<int>(num_states) - 1));
    support[s].push_back(p);
  }
  for (auto& paths : support) {
    if (paths.empty()) {
      paths.push_back(static_cast<PathIndex>(
          UniformInt(rng, 0, static_cast<int>(num_paths) - 1)));
    }
    if (shape.deterministic_paths) {
      paths.resize(1);
      continue;
    }
    for (PathIndex p = 0; p < num_paths; ++p) {
      if (std::find(paths.begin(), paths.end(), p) == paths.end() &&
          static_cast<long>(paths.size()) < shape.max_denominator && Coin(rng, 0.25)) {
        paths.push_back(p);
      }
    }
  }
  if (shape.deterministic_paths) {
    // Truncation may have dropped a path's only owner; give it back.
    for (PathIndex p = 0; p < num_paths; ++p) support[owner[p]] = {p};
  }

  std::vector<std::vector<Rational>> eta(num_states, std::vector<Rational>(num_paths));
  for (StateIndex s = 0; s < num_states; ++s) {
    const auto weights = RandomWeights(rng, support[s].size(), shape.max_denominator);
    for (std::size_t i = 0; i < weights.size(); ++i) eta[s][support[s][i]] = weights[i];
  }
  return LearningEnvironment::Build(StateSpace::Create(std::move(names)),
                                    std::move(forest), std::move(eta));
}

Lcps RandomLcps(Rng& rng, std::size_t num_states, long max_denominator) {
  std::vector<StateIndex> order(num_states);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Distribution> levels;
  std::size_t begin = 0;
  while (begin < num_states) {
    std::size_t end = begin + 1;
    while (end < num_states && Coin(rng, 0.6)) ++end;
    const auto weights = RandomWeights(rng, end - begin, max_denominator);
    Distribution level = Distribution::Zero(num_states);
    for (std::size_t i = begin; i < end; ++i) level[order[i]] = weights[i - begin];
    levels.push_back(std::move(level));
    begin = end;
  }
  return Lcps::Create(std::move(levels));
}

std::optional<BeliefSystem> PerturbInconsistent(Rng& rng, const LearningEnvironment& env,
                                                const BeliefSystem& mu, int attempts) {
  std::vector<NodeIndex> candidates;
  for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
    if (env.consistent_states(h).size() >= 2) candidates.push_back(h);
  }
  if (candidates.empty()) return std::nullopt;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    BeliefSystem out = mu;
    const int changes = UniformInt(rng, 1, 2);
    for (int c = 0; c < changes; ++c) {
      const NodeIndex h = candidates[UniformInt(rng, 0, static_cast<int>(candidates.size()) - 1)];
      std::vector<StateIndex> members = env.consistent_states(h);
      std::shuffle(members.begin(), members.end(), rng);
      members.resize(static_cast<std::size_t>(
          UniformInt(rng, 1, static_cast<int>(members.size()))));
      const auto weights = RandomWeights(rng, members.size(), 12);
      Distribution d = Distribution::Zero(env.num_states());
      for (std::size_t i = 0; i < members.size(); ++i) d[members[i]] = weights[i];
      out.Set(h, std::move(d));
    }
    if (std::holds_alternative<NotCompletelyConsistent>(CheckCompleteConsistency(env, out))) {
      return out;
    }
  }
  return std::nullopt;
}

BeliefSystem ConditionedBeliefs(const LearningEnvironment& env, const Distribution& prior) {
  BeliefSystem mu(env.num_contingencies());
  for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
    const auto& members = env.consistent_states(h);
    const Rational total = prior.MassOf(members);
    Distribution d = Distribution::Zero(env.num_states());
    for (StateIndex s : members) d[s] = prior[s] / total;
    mu.Set(h, std::move(d));
  }
  return mu;
}

Distribution RandomFullSupport(Rng& rng, std::size_t num_states, long max_denominator) {
  return Distribution(RandomWeights(rng, num_states, max_denominator));
}

GambleSystem RandomAcceptedGambles(Rng& rng, const LearningEnvironment& env,
                                   const BeliefSystem& mu) {
  GambleSystem g = GambleSystem::Zero(env);
  for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
    const Distribution& nu = mu[h];
    for (int draw = 0; draw < 8; ++draw) {
      Gamble gamble = Gamble::Zero(env.num_states());
      for (StateIndex s : env.consistent_states(h)) {
        gamble.payoff[s] = RandomRational(rng, -10, 10, 16);
      }
      if (IsWillingToAccept(nu, gamble)) {
        g.gambles[h] = std::move(gamble);
        break;
      }
      Rational positive, negative;
      for (StateIndex s = 0; s < nu.size(); ++s) {
        const Rational part = nu[s] * gamble.payoff[s];
        if (part.IsPositive()) positive = positive + part;
        if (part.IsNegative()) negative = negative - part;
      }
      if (!positive.IsPositive()) continue;
      // Exactly break-even first, which exercises the tie-breaking rule.
      Rational scale = negative / positive;
      if (Coin(rng, 0.8)) scale = scale * (Rational(1) + RandomRational(rng, 0, 1, 16) +
                                           Rational(1, 16));
      for (auto& x : gamble.payoff) {
        if (x.IsPositive()) x = x * scale;
      }
      if (IsWillingToAccept(nu, gamble)) {
        g.gambles[h] = std::move(gamble);
        break;
      }
    }
  }
  return g;
}

LearningEnvironment RootEnvironment(std::size_t num_states,
                                    const std::vector<std::vector<StateIndex>>& members,
                                    const std::vector<Rational>& weight) {
  std::vector<std::string> names;
  for (std::size_t s = 0; s < num_states; ++s) names.push_back(std::string(1, 'a' + s));
  std::vector<ContingencyForest::NodeSpec> nodes;
  for (std::size_t h = 0; h < members.size(); ++h) {
    nodes.push_back({"h" + std::to_string(h), std::nullopt});
  }
  std::vector<std::vector<Rational>> eta(num_states, std::vector<Rational>(members.size()));
  for (std::size_t h = 0; h < members.size(); ++h) {
    for (StateIndex s : members[h]) eta[s][h] = weight[h];
  }
  return LearningEnvironment::Build(StateSpace::Create(std::move(names)),
                                    ContingencyForest::Create(nodes), std::move(eta));
}

std::vector<Rational> FareyGrid(long max_denominator) {
  std::set<Rational> values;
  for (long d = 1; d <= max_denominator; ++d) {
    for (long k = 0; k <= d; ++k) values.insert(Rational(k, d));
  }
  return {values.begin(), values.end()};
}

std::vector<std::vector<Rational>> SimplexGrid(std::size_t n, long max_denominator) {
  std::set<std::vector<Rational>> out;
  std::vector<long> counts(n);
  for (long d = 1; d <= max_denominator; ++d) {
    // Enumerate compositions of d into n nonnegative parts.
    auto recurse = [&](auto&& self, std::size_t i, long left) -> void {
      if (i + 1 == n) {
        counts[i] = left;
        std::vector<Rational> point;
        for (long c : counts) point.emplace_back(c, d);
        out.insert(std::move(point));
        return;
      }
      for (long c = 0; c <= left; ++c) {
        counts[i] = c;
        self(self, i + 1, left - c);
      }
    };
    recurse(recurse, 0, d);
  }
  return {out.begin(), out.end()};
}

LearningEnvironment PermuteStates(const LearningEnvironment& env,
                                  const std::vector<StateIndex>& order) {
  std::vector<std::string> names;
  std::vector<std::vector<Rational>> eta;
  for (StateIndex s : order) {
    names.push_back(env.states().name(s));
    eta.push_back(env.eta(s));
  }
  return LearningEnvironment::Build(StateSpace::Create(std::move(names)), env.forest(),
                                    std::move(eta));
}

BeliefSystem PermuteBeliefs(const BeliefSystem& mu, const std::vector<StateIndex>& order) {
  BeliefSystem out(mu.size());
  for (NodeIndex h = 0; h < mu.size(); ++h) {
    if (mu.Has(h)) out.Set(h, Permuted(mu[h], order));
  }
  return out;
}

GambleSystem PermuteGambles(const GambleSystem& g, const std::vector<StateIndex>& order) {
  GambleSystem out = g;
  for (std::size_t h = 0; h < g.gambles.size(); ++h) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      out.gambles[h].payoff[i] = g.gambles[h].payoff[order[i]];
    }
  }
  return out;
}

}  // namespace dutchbook::testing

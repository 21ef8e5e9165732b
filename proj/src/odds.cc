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

#include "dutchbook/odds.h"

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <utility>

#include "dutchbook/error.h"

namespace dutchbook {

ExtendedRatio ExtendedRatio::Finite(Rational value) {
  if (!value.IsPositive()) {
    Fail(ErrorCode::kDomain, "finite odds must be positive, got " +
                                 value.ToString());
  }
  return ExtendedRatio(Tag::kFinite, std::move(value));
}

ExtendedRatio ExtendedRatio::Inverse() const {
  switch (tag_) {
    case Tag::kZero: return Infinite();
    case Tag::kInfinite: return Zero();
    case Tag::kFinite: return Finite(value_.Inverse());
  }
  return *this;
}

ExtendedRatio operator*(const ExtendedRatio& a, const ExtendedRatio& b) {
  using Tag = ExtendedRatio::Tag;
  if ((a.is_zero() && b.is_infinite()) || (a.is_infinite() && b.is_zero())) {
    Fail(ErrorCode::kIndeterminate, "product of zero and infinite odds");
  }
  if (a.is_zero() || b.is_zero()) return ExtendedRatio::Zero();
  if (a.is_infinite() || b.is_infinite()) return ExtendedRatio::Infinite();
  return ExtendedRatio(Tag::kFinite, a.value_ * b.value_);
}

std::string ExtendedRatio::ToString() const {
  switch (tag_) {
    case Tag::kZero: return "0";
    case Tag::kInfinite: return "inf";
    case Tag::kFinite: return value_.ToString();
  }
  return {};
}

OddsChain OddsChain::Create(std::vector<OddsLink> links) {
  if (links.empty()) Fail(ErrorCode::kInvalidInput, "empty odds chain");
  bool has_zero = false;
  bool has_infinite = false;
  for (std::size_t k = 0; k < links.size(); ++k) {
    if (links[k].from == links[k].to) {
      Fail(ErrorCode::kInvalidInput, "odds link from a state to itself");
    }
    if (k + 1 < links.size() && links[k].to != links[k + 1].from) {
      Fail(ErrorCode::kInvalidInput,
           "odds chain links " + std::to_string(k) + " and " +
               std::to_string(k + 1) + " do not share an endpoint");
    }
    has_zero |= links[k].value.is_zero();
    has_infinite |= links[k].value.is_infinite();
  }
  if (has_zero && has_infinite) {
    Fail(ErrorCode::kIndeterminate,
         "odds chain mixes zero and infinite links");
  }
  return OddsChain(std::move(links));
}

ExtendedRatio OddsChain::Product() const {
  ExtendedRatio product = links_.front().value;
  for (std::size_t k = 1; k < links_.size(); ++k) product = product * links_[k].value;
  return product;
}

OddsChain OddsChain::Inverted() const {
  std::vector<OddsLink> out;
  out.reserve(links_.size());
  for (auto it = links_.rbegin(); it != links_.rend(); ++it) {
    out.push_back({it->h, it->to, it->from, it->value.Inverse()});
  }
  return OddsChain(std::move(out));
}

ExtendedRatio DiscountedOddsRatio(const LearningEnvironment& env,
                                  const BeliefSystem& mu, NodeIndex h,
                                  StateIndex s, StateIndex s_prime) {
  if (h >= env.num_contingencies() || s >= env.num_states() ||
      s_prime >= env.num_states()) {
    Fail(ErrorCode::kDomain, "odds ratio index out of range");
  }
  if (s == s_prime) Fail(ErrorCode::kDomain, "odds ratio of a state with itself");
  const auto& forest = env.forest();
  const auto& states = env.states();
  if (!env.IsConsistent(h, s) || !env.IsConsistent(h, s_prime)) {
    Fail(ErrorCode::kDomain,
         "states '" + states.name(s) + "' and '" + states.name(s_prime) +
             "' are not both consistent with '" + forest.name(h) + "'",
         forest.name(h));
  }
  const Rational& a = mu[h][s];
  const Rational& b = mu[h][s_prime];
  if (a.IsZero() && b.IsZero()) {
    Fail(ErrorCode::kIndeterminate,
         "indeterminate odds between '" + states.name(s) + "' and '" +
             states.name(s_prime) + "' at '" + forest.name(h) + "'",
         forest.name(h));
  }
  if (a.IsZero()) return ExtendedRatio::Zero();
  if (b.IsZero()) return ExtendedRatio::Infinite();
  return ExtendedRatio::Finite((a / env.reach(h, s)) *
                               (env.reach(h, s_prime) / b));
}

ExtendedRatio GeneralizedOddsRatio(const LearningEnvironment& env,
                                   const BeliefSystem& mu,
                                   const OddsChain& chain) {
  std::optional<ExtendedRatio> product;
  for (const OddsLink& link : chain.links()) {
    ExtendedRatio v = DiscountedOddsRatio(env, mu, link.h, link.from, link.to);
    product = product ? *product * v : v;
  }
  return *product;
}

CoherenceGraph BuildCoherenceGraph(const LearningEnvironment& env,
                                   const BeliefSystem& mu) {
  CoherenceGraph graph;
  graph.num_states = env.num_states();
  for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
    const auto& support = env.consistent_states(h);
    for (StateIndex s : support) {
      for (StateIndex t : support) {
        if (s == t) continue;
        if (mu[h][s].IsZero() && mu[h][t].IsZero()) continue;
        graph.edges.push_back({h, s, t, DiscountedOddsRatio(env, mu, h, s, t)});
      }
    }
  }
  return graph;
}

std::vector<std::size_t> PlausibilityPartition::LevelOf(
    std::size_t num_states) const {
  std::vector<std::size_t> level(num_states, levels.size());
  for (std::size_t m = 0; m < levels.size(); ++m) {
    for (StateIndex s : levels[m]) level.at(s) = m;
  }
  return level;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Spanning forest of the finite-odds subgraph, built breadth first from the
// smallest unvisited state. potential[root] = 1 and
// potential[child] = potential[parent] / o(parent, child).
struct FiniteForest {
  std::vector<std::size_t> component;
  std::vector<StateIndex> roots;              // one per component
  std::vector<std::size_t> parent_edge;       // edge index into the graph
  std::vector<std::size_t> depth;
  std::vector<Rational> potential;
};

FiniteForest SpanFiniteEdges(const CoherenceGraph& graph) {
  const std::size_t n = graph.num_states;
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    if (graph.edges[e].value.is_finite()) out[graph.edges[e].from].push_back(e);
  }
  FiniteForest f;
  f.component.assign(n, kNone);
  f.parent_edge.assign(n, kNone);
  f.depth.assign(n, 0);
  f.potential.assign(n, Rational(1));
  for (StateIndex root = 0; root < n; ++root) {
    if (f.component[root] != kNone) continue;
    const std::size_t c = f.roots.size();
    f.roots.push_back(root);
    f.component[root] = c;
    std::deque<StateIndex> queue{root};
    while (!queue.empty()) {
      const StateIndex u = queue.front();
      queue.pop_front();
      for (std::size_t e : out[u]) {
        const OddsLink& link = graph.edges[e];
        if (f.component[link.to] != kNone) continue;
        f.component[link.to] = c;
        f.parent_edge[link.to] = e;
        f.depth[link.to] = f.depth[u] + 1;
        f.potential[link.to] = f.potential[u] / link.value.value();
        queue.push_back(link.to);
      }
    }
  }
  return f;
}

// Links walking the spanning tree from `from` to `to` (same component).
std::vector<OddsLink> TreePath(const CoherenceGraph& graph,
                               const FiniteForest& f, StateIndex from,
                               StateIndex to) {
  std::vector<OddsLink> up;    // from -> ... -> lca
  std::vector<OddsLink> down;  // lca -> ... -> to, collected reversed
  StateIndex a = from;
  StateIndex b = to;
  while (a != b) {
    if (f.depth[a] >= f.depth[b]) {
      const OddsLink& e = graph.edges[f.parent_edge[a]];
      up.push_back({e.h, a, e.from, e.value.Inverse()});
      a = e.from;
    } else {
      const OddsLink& e = graph.edges[f.parent_edge[b]];
      down.push_back(e);
      b = e.from;
    }
  }
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

// Orients the cycle so that its product is zero or finite below one, then
// rotates it to start at its smallest state.
CoherenceViolation NormalizeWitness(std::vector<OddsLink> links) {
  OddsChain cycle = OddsChain::Create(std::move(links));
  ExtendedRatio product = cycle.Product();
  if (product.is_infinite() ||
      (product.is_finite() && product.value() > Rational(1))) {
    cycle = cycle.Inverted();
    product = product.Inverse();
  }
  std::vector<OddsLink> rotated = cycle.links();
  std::vector<StateIndex> visited;
  for (const auto& link : rotated) visited.push_back(link.from);
  std::sort(visited.begin(), visited.end());
  if (std::adjacent_find(visited.begin(), visited.end()) != visited.end()) {
    Fail(ErrorCode::kInternal, "coherence witness is not a simple cycle");
  }
  auto first = std::min_element(
      rotated.begin(), rotated.end(),
      [](const OddsLink& x, const OddsLink& y) { return x.from < y.from; });
  std::rotate(rotated.begin(), first, rotated.end());
  CoherenceViolation violation{OddsChain::Create(std::move(rotated)), product};
  if (violation.product.IsOne() || violation.product.is_infinite()) {
    Fail(ErrorCode::kInternal, "coherence witness has product " +
                                   violation.product.ToString());
  }
  return violation;
}

// Zero edges between distinct finite components, first representative edge
// per ordered component pair, in edge order.
struct Condensation {
  std::vector<std::vector<std::size_t>> succ_edges;  // per component
};

Condensation Condense(const CoherenceGraph& graph, const FiniteForest& f) {
  Condensation cond;
  cond.succ_edges.assign(f.roots.size(), {});
  std::vector<std::vector<bool>> seen(
      f.roots.size(), std::vector<bool>(f.roots.size(), false));
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const OddsLink& link = graph.edges[e];
    if (!link.value.is_zero()) continue;
    const std::size_t a = f.component[link.from];
    const std::size_t b = f.component[link.to];
    if (a == b || seen[a][b]) continue;
    seen[a][b] = true;
    cond.succ_edges[a].push_back(e);
  }
  return cond;
}

// Finds a directed cycle of zero edges across components; returns the edge
// indices along it, or an empty vector.
std::vector<std::size_t> FindZeroCycle(const CoherenceGraph& graph,
                                       const FiniteForest& f,
                                       const Condensation& cond) {
  const std::size_t k = cond.succ_edges.size();
  enum Color { kWhite, kGray, kBlack };
  std::vector<Color> color(k, kWhite);
  std::vector<std::size_t> via(k, kNone);  // edge that entered the component
  for (std::size_t start = 0; start < k; ++start) {
    if (color[start] != kWhite) continue;
    // Iterative DFS keeping the next successor position per frame.
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    color[start] = kGray;
    while (!stack.empty()) {
      auto& [c, pos] = stack.back();
      if (pos == cond.succ_edges[c].size()) {
        color[c] = kBlack;
        stack.pop_back();
        continue;
      }
      const std::size_t e = cond.succ_edges[c][pos++];
      const std::size_t next = f.component[graph.edges[e].to];
      if (color[next] == kGray) {
        std::vector<std::size_t> cycle{e};
        for (std::size_t cur = c; cur != next;) {
          cycle.push_back(via[cur]);
          cur = f.component[graph.edges[via[cur]].from];
        }
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (color[next] == kWhite) {
        color[next] = kGray;
        via[next] = e;
        stack.emplace_back(next, 0);
      }
    }
  }
  return {};
}

// Longest zero-edge path depth per component; requires an acyclic
// condensation.
std::vector<std::size_t> ComponentLevels(const CoherenceGraph& graph,
                                         const FiniteForest& f,
                                         const Condensation& cond) {
  const std::size_t k = cond.succ_edges.size();
  std::vector<std::size_t> level(k, kNone);
  for (std::size_t start = 0; start < k; ++start) {
    if (level[start] != kNone) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    while (!stack.empty()) {
      auto& [c, pos] = stack.back();
      if (pos == cond.succ_edges[c].size()) {
        std::size_t lv = 0;
        for (std::size_t e : cond.succ_edges[c]) {
          lv = std::max(lv, level[f.component[graph.edges[e].to]] + 1);
        }
        level[c] = lv;
        stack.pop_back();
        continue;
      }
      const std::size_t next =
          f.component[graph.edges[cond.succ_edges[c][pos++]].to];
      if (level[next] == kNone) stack.emplace_back(next, 0);
    }
  }
  return level;
}

std::optional<CoherenceViolation> FindViolation(const CoherenceGraph& graph,
                                                const FiniteForest& f) {
  // Finite edges must agree with the potentials.
  for (const OddsLink& link : graph.edges) {
    if (!link.value.is_finite()) continue;
    if (f.potential[link.from] / f.potential[link.to] == link.value.value()) {
      continue;
    }
    std::vector<OddsLink> cycle{link};
    auto back = TreePath(graph, f, link.to, link.from);
    cycle.insert(cycle.end(), back.begin(), back.end());
    return NormalizeWitness(std::move(cycle));
  }
  // A zero edge inside a finite component closes a zero cycle.
  for (const OddsLink& link : graph.edges) {
    if (!link.value.is_zero()) continue;
    if (f.component[link.from] != f.component[link.to]) continue;
    std::vector<OddsLink> cycle{link};
    auto back = TreePath(graph, f, link.to, link.from);
    cycle.insert(cycle.end(), back.begin(), back.end());
    return NormalizeWitness(std::move(cycle));
  }
  const Condensation cond = Condense(graph, f);
  const auto zero_cycle = FindZeroCycle(graph, f, cond);
  if (zero_cycle.empty()) return std::nullopt;
  std::vector<OddsLink> cycle;
  for (std::size_t i = 0; i < zero_cycle.size(); ++i) {
    const OddsLink& jump = graph.edges[zero_cycle[i]];
    const OddsLink& next = graph.edges[zero_cycle[(i + 1) % zero_cycle.size()]];
    cycle.push_back(jump);
    auto walk = TreePath(graph, f, jump.to, next.from);
    cycle.insert(cycle.end(), walk.begin(), walk.end());
  }
  return NormalizeWitness(std::move(cycle));
}

PlausibilityPartition LevelsFromForest(const CoherenceGraph& graph,
                                       const FiniteForest& f) {
  const Condensation cond = Condense(graph, f);
  const auto level = ComponentLevels(graph, f, cond);
  std::size_t depth = 0;
  for (std::size_t lv : level) depth = std::max(depth, lv + 1);
  PlausibilityPartition partition;
  partition.levels.assign(depth, {});
  for (StateIndex s = 0; s < graph.num_states; ++s) {
    partition.levels[level[f.component[s]]].push_back(s);
  }
  return partition;
}

}  // namespace

CoherenceResult CheckCoherence(const CoherenceGraph& graph) {
  const FiniteForest f = SpanFiniteEdges(graph);
  if (auto violation = FindViolation(graph, f)) return *std::move(violation);

  CoherenceCertificate cert;
  cert.partition = LevelsFromForest(graph, f);
  cert.potentials = f.potential;
  for (const auto& level : cert.partition.levels) {
    Rational total;
    for (StateIndex s : level) total += f.potential[s];
    for (StateIndex s : level) cert.potentials[s] = f.potential[s] / total;
  }
  return cert;
}

PlausibilityPartition PlausibilityLevels(const CoherenceGraph& graph) {
  const FiniteForest f = SpanFiniteEdges(graph);
  if (FindViolation(graph, f)) {
    Fail(ErrorCode::kInternal,
         "plausibility levels requested for an incoherent odds graph");
  }
  return LevelsFromForest(graph, f);
}

}  // namespace dutchbook

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

// Acceptance suite: one line per criterion, "PASS" or "FAIL", followed by the
// measured quantities. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dutchbook/book.h"
#include "dutchbook/consistency.h"
#include "dutchbook/cps.h"
#include "dutchbook/error.h"
#include "dutchbook/fixtures.h"
#include "dutchbook/json_io.h"
#include "dutchbook/odds.h"
#include "dutchbook/simulate.h"
#include "support/generators.h"
#include "support/oracles.h"

namespace dutchbook {
namespace {

using namespace dutchbook::testing;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Expect(bool condition, const std::string& what) {
    if (!condition && pass) {
      pass = false;
      detail << "first failure: " << what << "; ";
    }
  }
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

bool Consistent(const LearningEnvironment& env, const BeliefSystem& mu) {
  return std::holds_alternative<CompletelyConsistent>(CheckCompleteConsistency(env, mu));
}

// 1. The motivating example, exactly.
void LarryReproduction(Outcome& out) {
  const auto start = Clock::now();
  const auto env = fixtures::LarryEnvironment();
  const auto mu = fixtures::RegretBeliefs(env);
  const auto result = CheckCompleteConsistency(env, mu);
  const auto* bad = std::get_if<NotCompletelyConsistent>(&result);
  out.Expect(bad != nullptr, "regret beliefs reported consistent");
  if (bad != nullptr) {
    const auto& v = bad->violation;
    const auto again = GeneralizedOddsRatio(env, mu, v.cycle);
    out.Expect(v.cycle.IsCycle(), "witness is not a cycle");
    out.Expect(!again.IsOne(), "witness product re-evaluates to one");
    out.Expect(again == v.product, "witness product does not re-evaluate");
    out.Expect(v.product.is_finite() && v.product.value() == Rational(1, 27),
               "witness product is not 1/27");
    // Independent evaluation from the odds definition.
    std::vector<std::pair<NodeIndex, StateIndex>> cycle;
    for (const auto& link : v.cycle.links()) cycle.push_back({link.h, link.from});
    const auto oracle = OracleCycleProduct(env, mu, cycle);
    out.Expect(oracle && oracle->kind == 0 && oracle->value == Rational(1, 27),
               "oracle product is not 1/27");
    out.detail << "witness product " << v.product.ToString() << "; ";
  }
  const auto book = fixtures::LarryBook(env);
  const auto verdict = ClassifyDutchBook(env, book);
  const auto acceptance = AcceptsSystem(env, mu, book);
  out.Expect(verdict.is_dutch_book, "larry book not a dutch book");
  out.Expect(acceptance.accepted, "larry book not accepted");
  for (StateIndex s = 0; s < env.num_states(); ++s) {
    out.Expect(verdict.per_state[s] == Rational(-1, 3), "perState differs from -1/3");
    out.Expect(OracleExpectedPayoff(env, book, s) == Rational(-1, 3),
               "oracle expectation differs from -1/3");
  }
  const double elapsed = Seconds(start);
  out.Expect(elapsed < 1.0, "runtime above 1 s");
  out.detail << "perState all -1/3, accepted; " << elapsed << " s";
}

// 2. Pairwise odds 3 and generalized odds 1/9.
void OddsValues(Outcome& out) {
  const auto env = fixtures::LarryEnvironment();
  const auto mu = fixtures::RegretBeliefs(env);
  const auto& f = env.forest();
  const auto& st = env.states();
  struct Pair { const char* h; const char* s; const char* t; };
  for (const auto& p : {Pair{"sm", "ma", "sq"}, Pair{"mp", "pa", "ma"}, Pair{"ps", "sq", "pa"}}) {
    const auto o = DiscountedOddsRatio(env, mu, f.IndexOf(p.h), st.IndexOf(p.s), st.IndexOf(p.t));
    out.Expect(o.is_finite() && o.value() == Rational(3),
               std::string("odds at ") + p.h + " differ from 3");
  }
  const auto one = ExtendedRatio::Finite(Rational(1));
  struct Chain { const char* h1; const char* a; const char* b; const char* h2; const char* c; };
  for (const auto& c : {Chain{"sm", "sq", "ma", "mp", "pa"}, Chain{"mp", "ma", "pa", "ps", "sq"},
                        Chain{"ps", "pa", "sq", "sm", "ma"}}) {
    const auto chain = OddsChain::Create(
        {{f.IndexOf(c.h1), st.IndexOf(c.a), st.IndexOf(c.b), one},
         {f.IndexOf(c.h2), st.IndexOf(c.b), st.IndexOf(c.c), one}});
    const auto gor = GeneralizedOddsRatio(env, mu, chain);
    out.Expect(gor.is_finite() && gor.value() == Rational(1, 9),
               std::string("generalized odds from ") + c.a + " differ from 1/9");
  }
  out.detail << "three pairwise odds equal 3; three two-link chains equal 1/9";
}

// 3. derive -> extract -> derive is a fixed point.
void RoundTrip(Outcome& out) {
  const auto start = Clock::now();
  Rng rng(3003);
  const int kInstances = 1000;
  for (int i = 0; i < kInstances && out.pass; ++i) {
    const auto env = RandomEnvironment(rng, {6, 12, 12, false});
    const auto lcps = RandomLcps(rng, env.num_states(), 12);
    const auto mu = DeriveBeliefs(env, lcps);
    out.Expect(mu == OracleDerive(env, lcps), "derived beliefs differ from the oracle");
    const auto result = CheckCompleteConsistency(env, mu);
    const auto* ok = std::get_if<CompletelyConsistent>(&result);
    out.Expect(ok != nullptr, "derived beliefs reported inconsistent");
    if (ok == nullptr) break;
    out.Expect(DeriveBeliefs(env, ok->lcps) == mu, "derive(extract(mu)) differs from mu");
    out.Expect(VerifyCcbs(env, mu, ok->lcps), "extracted LCPS fails verification");
  }
  const double elapsed = Seconds(start);
  out.Expect(elapsed < 60.0, "runtime above 60 s");
  out.detail << kInstances << " instances; " << elapsed << " s";
}

// 4. Every synthesized book is accepted and a Dutch book.
void SynthesisSoundness(Outcome& out) {
  Rng rng(4004);
  int built = 0, draws = 0;
  while (built < 300 && draws < 20000) {
    ++draws;
    const auto env = RandomEnvironment(rng, {6, 12, 12, false});
    const auto base = DeriveBeliefs(env, RandomLcps(rng, env.num_states()));
    const auto mu = PerturbInconsistent(rng, env, base);
    if (!mu) continue;
    out.Expect(!Consistent(env, *mu), "perturbed beliefs are consistent");
    const auto s = SynthesizeDutchBook(env, *mu);
    out.Expect(AcceptsSystem(env, *mu, s.book).accepted, "synthesized book rejected");
    const auto verdict = ClassifyDutchBook(env, s.book);
    out.Expect(verdict.is_dutch_book, "synthesized book is not a dutch book");
    bool some_negative = false;
    for (StateIndex x = 0; x < env.num_states(); ++x) {
      const Rational e = OracleExpectedPayoff(env, s.book, x);
      out.Expect(!e.IsPositive(), "oracle finds a positive expectation");
      some_negative = some_negative || e.IsNegative();
    }
    out.Expect(some_negative, "oracle finds no strictly negative expectation");
    ++built;
  }
  out.Expect(built >= 300, "fewer than 300 inconsistent instances");
  out.detail << built << " books verified (" << draws << " draws)";
}

// 5. Consistent agents never accept a Dutch book.
void NoBookAgainstConsistent(Outcome& out) {
  Rng rng(5005);
  const int kInstances = 100, kSystems = 1000;
  long checked = 0;
  for (int i = 0; i < kInstances && out.pass; ++i) {
    const auto env = RandomEnvironment(rng, {6, 12, 12, false});
    const auto mu = DeriveBeliefs(env, RandomLcps(rng, env.num_states()));
    for (int k = 0; k < kSystems; ++k) {
      const auto g = RandomAcceptedGambles(rng, env, mu);
      out.Expect(AcceptsSystem(env, mu, g).accepted, "generator produced a rejected system");
      out.Expect(!ClassifyDutchBook(env, g).is_dutch_book, "accepted dutch book found");
      ++checked;
    }
  }
  out.detail << kInstances << " instances x " << kSystems << " accepted systems, "
             << checked << " checked, 0 dutch books";
}

std::vector<GambleSystem> deterministic_corpus_books;
std::vector<LearningEnvironment> deterministic_corpus_envs;

// 6. Forward consistency and deterministic books.
void ForwardConsistencyBooks(Outcome& out) {
  const auto nested = fixtures::NestedEnvironment();
  const auto drift = fixtures::DriftBeliefs(nested);
  const auto v = CheckForwardConsistency(nested, drift);
  out.Expect(v && v->h == 0 && v->h_prime == 1, "drift witness is not (h0, h1, .)");

  SynthesisParams params;
  params.epsilon = Rational(1, 2);
  const auto s = SynthesizeDeterministicDb(nested, drift, params);
  // Independent evaluation of the reference book.
  const auto& g = s.book;
  const auto A = 0, B = 1, C = 2;
  out.Expect(g.gambles[0].payoff[B] == Rational(1) && g.gambles[0].payoff[A] == Rational(-5, 6) &&
                 g.gambles[1].payoff[B] == Rational(-25, 24) &&
                 g.gambles[1].payoff[A] == Rational(1, 2),
             "book differs from the reference");
  const Rational e0 = drift[0][A] * g.gambles[0].payoff[A] + drift[0][B] * g.gambles[0].payoff[B];
  const Rational e1 = drift[1][A] * g.gambles[1].payoff[A] + drift[1][B] * g.gambles[1].payoff[B];
  out.Expect(e0 == Rational(1, 18) && e1 == Rational(11, 96), "acceptance expectations differ");
  const Rational path_a = g.gambles[0].payoff[A] + g.gambles[1].payoff[A];
  const Rational path_b = g.gambles[0].payoff[B] + g.gambles[1].payoff[B];
  const Rational path_c = g.gambles[0].payoff[C] + g.gambles[2].payoff[C];
  out.Expect(path_a == Rational(-1, 3) && path_b == Rational(-1, 24) && path_c == Rational(0),
             "path sums differ from (-1/3, -1/24, 0)");
  out.Expect(ClassifyDeterministic(nested, g).is_deterministic_db, "reference is not a DDB");
  out.Expect(AcceptsSystem(nested, drift, g).accepted, "reference is rejected");
  deterministic_corpus_envs.push_back(nested);
  deterministic_corpus_books.push_back(g);

  Rng rng(6006);
  const int kInstances = 300, kSystems = 1000;
  int synthesized = 0;
  for (int i = 0; i < kInstances && out.pass; ++i) {
    const auto env = RandomEnvironment(rng, {6, 12, 12, true});
    const auto mu = ConditionedBeliefs(env, RandomFullSupport(rng, env.num_states()));
    out.Expect(!CheckForwardConsistency(env, mu).has_value(), "conditioned beliefs fail");
    out.Expect(OracleForwardConsistent(env, mu), "oracle rejects conditioned beliefs");
    for (int k = 0; k < kSystems; ++k) {
      const auto gs = RandomAcceptedGambles(rng, env, mu);
      out.Expect(!ClassifyDeterministic(env, gs).is_deterministic_db,
                 "accepted deterministic dutch book found");
    }
    // Perturb one belief so conditioning fails, then synthesize.
    BeliefSystem drifted = mu;
    for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
      const auto& members = env.consistent_states(h);
      if (members.size() < 2 || env.forest().parent(h) == std::nullopt) continue;
      Distribution d = Distribution::Zero(env.num_states());
      const auto w = RandomWeights(rng, members.size(), 12);
      for (std::size_t j = 0; j < members.size(); ++j) d[members[j]] = w[j];
      drifted.Set(h, std::move(d));
      break;
    }
    if (CheckForwardConsistency(env, drifted)) {
      try {
        const auto ds = SynthesizeDeterministicDb(env, drifted);
        out.Expect(AcceptsSystem(env, drifted, ds.book).accepted, "synthesized DDB rejected");
        out.Expect(ClassifyDeterministic(env, ds.book).is_deterministic_db,
                   "synthesized DDB fails");
        deterministic_corpus_envs.push_back(env);
        deterministic_corpus_books.push_back(ds.book);
        ++synthesized;
      } catch (const Error& e) {
        out.Expect(e.code() == ErrorCode::kPrecondition, e.what());
      }
    }
  }
  out.detail << "reference book verified; " << kInstances << " filtration instances x "
             << kSystems << " accepted systems, 0 deterministic books; " << synthesized
             << " random deterministic books synthesized and verified";
}

// 7. Deterministic Dutch books are Dutch books.
void DeterministicImpliesBook(Outcome& out) {
  // Handcrafted: uniform losses and a book that only loses on one path.
  {
    const auto env = fixtures::NestedEnvironment();
    auto g = GambleSystem::Zero(env);
    g.gambles[0].payoff = {Rational(-1), Rational(-1), Rational(-1)};
    deterministic_corpus_envs.push_back(env);
    deterministic_corpus_books.push_back(g);
    g = GambleSystem::Zero(env);
    g.gambles[1].payoff = {Rational(-1, 7), Rational(0), Rational(0)};
    deterministic_corpus_envs.push_back(env);
    deterministic_corpus_books.push_back(g);
  }
  // Random search over unconstrained systems.
  Rng rng(7007);
  int found = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto env = RandomEnvironment(rng, {4, 8, 8, i % 2 == 0});
    auto g = GambleSystem::Zero(env);
    for (NodeIndex h = 0; h < env.num_contingencies(); ++h) {
      for (StateIndex s : env.consistent_states(h)) {
        g.gambles[h].payoff[s] = RandomRational(rng, -10, 2, 4);
      }
    }
    if (ClassifyDeterministic(env, g).is_deterministic_db) {
      deterministic_corpus_envs.push_back(env);
      deterministic_corpus_books.push_back(g);
      ++found;
    }
  }
  int checked = 0;
  for (std::size_t i = 0; i < deterministic_corpus_books.size(); ++i) {
    const auto& env = deterministic_corpus_envs[i];
    const auto& g = deterministic_corpus_books[i];
    out.Expect(ClassifyDeterministic(env, g).is_deterministic_db, "corpus entry is not a DDB");
    out.Expect(ClassifyDutchBook(env, g).is_dutch_book, "deterministic book is not a book");
    ++checked;
  }
  out.Expect(checked >= 100, "corpus too small");
  out.detail << checked << " deterministic books (" << found << " from random search), "
             << "all dutch books";
}

// 8. CPS conversions and the sequence-product characterization.
void CpsEquivalences(Outcome& out) {
  Rng rng(8008);
  for (int i = 0; i < 500 && out.pass; ++i) {
    const auto n = static_cast<std::size_t>(UniformInt(rng, 1, 5));
    const auto lcps = RandomLcps(rng, n, 12);
    const auto cps = LcpsToCps(lcps);
    out.Expect(!ValidateCompleteCps(cps).has_value(), "converted CPS invalid");
    const auto back = CpsToLcps(cps);
    out.Expect(back == lcps, "CPS -> LCPS differs");
    out.Expect(LcpsToCps(back) == cps, "LCPS -> CPS differs");
  }

  // Families of uniform-reach environments, each with every belief system
  // on a grid of denominators up to six.
  const auto farey = FareyGrid(6);
  long instances = 0, consistent = 0;
  auto run = [&](const LearningEnvironment& env, const BeliefSystem& mu) {
    const bool complete = Consistent(env, mu);
    const bool sequence = !CheckSiniscalchi(env, mu).has_value();
    out.Expect(complete == sequence, "sequence check disagrees with complete consistency");
    ++instances;
    if (complete) ++consistent;
  };
  auto pair_belief = [](std::size_t n, StateIndex a, StateIndex b, const Rational& pa) {
    Distribution d = Distribution::Zero(n);
    d[a] = pa;
    d[b] = Rational(1) - pa;
    return d;
  };
  const Rational third(1, 3), half(1, 2);

  // Three states: singletons and the three pairs.
  {
    const std::vector<std::vector<StateIndex>> members{{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}};
    const auto env = RootEnvironment(3, members, std::vector<Rational>(6, third));
    for (const auto& x : farey) for (const auto& y : farey) for (const auto& z : farey) {
      BeliefSystem mu(6);
      for (StateIndex s = 0; s < 3; ++s) mu.Set(s, Distribution::PointMass(3, s));
      mu.Set(3, pair_belief(3, 0, 1, x));
      mu.Set(4, pair_belief(3, 1, 2, y));
      mu.Set(5, pair_belief(3, 0, 2, z));
      run(env, mu);
    }
  }
  // Three states: the whole space, one pair and the remaining singleton.
  {
    const std::vector<std::vector<StateIndex>> members{{0, 1, 2}, {0, 1}, {2}};
    const auto env = RootEnvironment(3, members, {half, half, half});
    for (const auto& top : SimplexGrid(3, 6)) for (const auto& x : farey) {
      BeliefSystem mu(3);
      mu.Set(0, Distribution(top));
      mu.Set(1, pair_belief(3, 0, 1, x));
      mu.Set(2, Distribution::PointMass(3, 2));
      run(env, mu);
    }
  }
  // Four states on a cycle of pairs.
  {
    const std::vector<std::vector<StateIndex>> members{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    const auto env = RootEnvironment(4, members, std::vector<Rational>(4, half));
    for (const auto& a : farey) for (const auto& b : farey)
      for (const auto& c : farey) for (const auto& d : farey) {
        BeliefSystem mu(4);
        mu.Set(0, pair_belief(4, 0, 1, a));
        mu.Set(1, pair_belief(4, 1, 2, b));
        mu.Set(2, pair_belief(4, 2, 3, c));
        mu.Set(3, pair_belief(4, 0, 3, d));
        run(env, mu);
      }
  }
  // Four states, a root and two children splitting the space.
  {
    auto env = LearningEnvironment::Build(
        StateSpace::Create({"a", "b", "c", "d"}),
        ContingencyForest::Create({{"r", std::nullopt}, {"x", "r"}, {"y", "r"}}),
        {{Rational(1), Rational(0)}, {Rational(1), Rational(0)},
         {Rational(0), Rational(1)}, {Rational(0), Rational(1)}});
    for (const auto& top : SimplexGrid(4, 6)) for (const auto& x : farey)
      for (const auto& y : farey) {
        BeliefSystem mu(3);
        mu.Set(0, Distribution(top));
        mu.Set(1, pair_belief(4, 0, 1, x));
        mu.Set(2, pair_belief(4, 2, 3, y));
        run(env, mu);
      }
  }
  // Four states, all six pairs: grid of denominators up to three.
  {
    std::vector<std::vector<StateIndex>> members;
    for (StateIndex a = 0; a < 4; ++a)
      for (StateIndex b = a + 1; b < 4; ++b) members.push_back({a, b});
    const auto env = RootEnvironment(4, members, std::vector<Rational>(6, third));
    const auto grid = FareyGrid(3);
    std::vector<std::size_t> idx(6, 0);
    while (true) {
      BeliefSystem mu(6);
      for (std::size_t h = 0; h < 6; ++h) {
        mu.Set(h, pair_belief(4, members[h][0], members[h][1], grid[idx[h]]));
      }
      run(env, mu);
      std::size_t k = 0;
      while (k < 6 && ++idx[k] == grid.size()) idx[k++] = 0;
      if (k == 6) break;
    }
  }
  out.detail << "500 LCPS<->CPS round trips; " << instances
             << " enumerated uniform-reach instances (" << consistent
             << " consistent), sequence check agrees on all";
}

// 9. Monte Carlo audit of the motivating example.
void MonteCarlo(Outcome& out) {
  const auto start = Clock::now();
  const auto env = fixtures::LarryEnvironment();
  const auto mu = fixtures::RegretBeliefs(env);
  const auto book = fixtures::LarryBook(env);
  int reruns = 0;
  for (StateIndex s = 0; s < env.num_states(); ++s) {
    bool ok = false;
    for (std::uint64_t seed : {std::uint64_t{20260101} + s, std::uint64_t{977} + 31 * s}) {
      SimConfig config;
      config.rounds = 100000;
      config.seed = seed;
      config.mode = FixedState{s};
      config.threads = 0;
      const auto report = RunRounds(env, mu, book, config);
      const auto& stats = report.per_state.at(s);
      out.Expect(stats.count == config.rounds, "round count differs from the request");
      const double se = stats.sample_std_dev / std::sqrt(static_cast<double>(stats.count));
      const double z = std::abs(stats.empirical_mean + 1.0 / 3.0) / se;
      out.detail << env.states().name(s) << " mean " << stats.empirical_mean << " (" << z
                 << " se); ";
      if (stats.exact_expectation == Rational(-1, 3) && z <= 3.0) {
        ok = true;
        break;
      }
      ++reruns;
    }
    out.Expect(ok, "state outside 3 standard errors after a rerun");
  }
  const double elapsed = Seconds(start);
  out.Expect(elapsed < 10.0, "runtime above 10 s");
  out.detail << reruns << " reruns; " << elapsed << " s";
}

// Verdicts that must not change under relabeling or eta rescaling.
struct Verdicts {
  bool consistent;
  std::string product;
  bool forward;
  bool accepted;
  bool book;
  bool deterministic;
  std::vector<std::string> per_state;  // by state name, sorted

  bool operator==(const Verdicts&) const = default;
};

Verdicts Evaluate(const LearningEnvironment& env, const BeliefSystem& mu,
                  const GambleSystem& g) {
  Verdicts v;
  const auto r = CheckCompleteConsistency(env, mu);
  v.consistent = std::holds_alternative<CompletelyConsistent>(r);
  v.product = v.consistent ? "" : std::get<NotCompletelyConsistent>(r).violation.product.ToString();
  v.forward = !CheckForwardConsistency(env, mu).has_value();
  v.accepted = AcceptsSystem(env, mu, g).accepted;
  const auto verdict = ClassifyDutchBook(env, g);
  v.book = verdict.is_dutch_book;
  v.deterministic = ClassifyDeterministic(env, g).is_deterministic_db;
  std::map<std::string, std::string> by_name;
  for (StateIndex s = 0; s < env.num_states(); ++s) {
    by_name[env.states().name(s)] = verdict.per_state[s].ToString();
  }
  for (const auto& [name, value] : by_name) v.per_state.push_back(name + "=" + value);
  return v;
}

// Rewrites every eta entry p/q as (kp)/(kq) in the document text.
io::Json ScaleEta(io::Json doc, long k) {
  for (auto& [state, row] : doc["eta"].items()) {
    for (auto& [leaf, value] : row.items()) {
      const Rational r = Rational::Parse(value.get<std::string>());
      const mpz_class num = r.raw().get_num() * k, den = r.raw().get_den() * k;
      value = num.get_str() + "/" + den.get_str();
    }
  }
  return doc;
}

// 10. Exactness under eta rescaling and state permutation.
void Metamorphic(Outcome& out) {
  Rng rng(10010);
  int instances = 0;
  auto check = [&](const LearningEnvironment& env, const BeliefSystem& mu,
                   const GambleSystem& g) {
    const Verdicts base = Evaluate(env, mu, g);
    // Rescaled eta through the document layer.
    const long k = UniformInt(rng, 2, 97);
    const auto scaled_doc = ScaleEta(io::EnvironmentToJson(env), k);
    const auto scaled = io::ParseEnvironment(io::ParseDocument(scaled_doc.dump()));
    const auto mu2 = io::ParseBeliefs(scaled, io::BeliefsToJson(env, mu));
    const auto g2 = io::ParseGambles(scaled, io::GamblesToJson(env, g));
    out.Expect(Evaluate(scaled, mu2, g2) == base, "verdict changed under eta scaling");
    if (!base.consistent) {
      const auto a = std::get<NotCompletelyConsistent>(CheckCompleteConsistency(env, mu));
      const auto b = std::get<NotCompletelyConsistent>(CheckCompleteConsistency(scaled, mu2));
      out.Expect(a.violation.cycle == b.violation.cycle, "witness changed under eta scaling");
    }
    // Random state permutation.
    std::vector<StateIndex> order(env.num_states());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const auto penv = PermuteStates(env, order);
    const auto pmu = PermuteBeliefs(mu, order);
    const auto pg = PermuteGambles(g, order);
    const Verdicts permuted = Evaluate(penv, pmu, pg);
    Verdicts expect = base;
    // Witness products may legitimately differ between orders; compare the
    // original witness relabeled into the permuted instance instead.
    expect.product = permuted.product;
    out.Expect(permuted == expect, "verdict changed under state permutation");
    if (!base.consistent) {
      const auto a = std::get<NotCompletelyConsistent>(CheckCompleteConsistency(env, mu));
      std::vector<StateIndex> position(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
      std::vector<OddsLink> links;
      for (auto link : a.violation.cycle.links()) {
        link.from = position[link.from];
        link.to = position[link.to];
        links.push_back(link);
      }
      const auto relabeled = OddsChain::Create(links);
      out.Expect(GeneralizedOddsRatio(penv, pmu, relabeled) == a.violation.product,
                 "relabeled witness re-evaluates differently");
    }
    ++instances;
  };
  {
    const auto env = fixtures::LarryEnvironment();
    check(env, fixtures::RegretBeliefs(env), fixtures::LarryBook(env));
    check(env, fixtures::UniformBeliefs(env), fixtures::LarryBook(env));
    check(env, fixtures::LexBeliefs(env), fixtures::LarryBook(env));
    const auto nested = fixtures::NestedEnvironment();
    check(nested, fixtures::DriftBeliefs(nested), fixtures::NestedBook(nested));
    check(nested, fixtures::ConditionedBeliefs(nested), fixtures::NestedBook(nested));
  }
  for (int i = 0; i < 300 && out.pass; ++i) {
    const auto env = RandomEnvironment(rng, {5, 10, 12, i % 3 == 0});
    auto mu = DeriveBeliefs(env, RandomLcps(rng, env.num_states()));
    if (i % 2 == 1) mu = PerturbInconsistent(rng, env, mu).value_or(mu);
    GambleSystem g = RandomAcceptedGambles(rng, env, mu);
    if (i % 4 == 1 && !Consistent(env, mu)) g = SynthesizeDutchBook(env, mu).book;
    check(env, mu, g);
  }
  out.detail << instances << " instances; verdicts, witnesses and payoffs unchanged";
}

struct Criterion {
  int number;
  const char* title;
  std::function<void(Outcome&)> run;
};

}  // namespace
}  // namespace dutchbook

int main() {
  using dutchbook::Criterion;
  using dutchbook::Outcome;
  const std::vector<Criterion> criteria = {
      {1, "Larry reproduction (exact)", dutchbook::LarryReproduction},
      {2, "odds values 3 and 1/9 (exact)", dutchbook::OddsValues},
      {3, "derive/extract round trip on random instances", dutchbook::RoundTrip},
      {4, "synthesized Dutch books are sound", dutchbook::SynthesisSoundness},
      {5, "no accepted Dutch book against consistent beliefs",
       dutchbook::NoBookAgainstConsistent},
      {6, "forward consistency and deterministic Dutch books", dutchbook::ForwardConsistencyBooks},
      {7, "every deterministic Dutch book is a Dutch book",
       dutchbook::DeterministicImpliesBook},
      {8, "CPS conversions and sequence-product equivalence", dutchbook::CpsEquivalences},
      {9, "Monte Carlo audit of the Larry book", dutchbook::MonteCarlo},
      {10, "invariance under eta rescaling and state permutation", dutchbook::Metamorphic},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    const auto start = dutchbook::Clock::now();
    try {
      c.run(outcome);
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail << "exception: " << e.what();
    }
    const double elapsed = dutchbook::Seconds(start);
    std::printf("%s criterion %d: %s [%.2f s] %s\n", outcome.pass ? "PASS" : "FAIL",
                c.number, c.title, elapsed, outcome.detail.str().c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

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

#include "dutchbook/dutchbook.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <functional>
#include <new>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "dutchbook/book.h"
#include "dutchbook/consistency.h"
#include "dutchbook/cps.h"
#include "dutchbook/error.h"
#include "dutchbook/json_io.h"
#include "dutchbook/model.h"
#include "dutchbook/simulate.h"

using dutchbook::Error;
using dutchbook::ErrorCode;
using dutchbook::Fail;
namespace io = dutchbook::io;

struct dbk_env {
  dutchbook::LearningEnvironment env;
};

struct dbk_beliefs {
  dutchbook::BeliefSystem mu;
};

struct dbk_lcps {
  dutchbook::StateSpace states;
  dutchbook::Lcps lcps;
};

struct dbk_cps {
  dutchbook::StateSpace states;
  dutchbook::CompleteCps cps;
};

struct dbk_book {
  dutchbook::GambleSystem g;
};

namespace {

thread_local std::string last_error;

dbk_status StatusOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return DBK_INVALID_INPUT;
    case ErrorCode::kDomain: return DBK_DOMAIN;
    case ErrorCode::kIndeterminate: return DBK_INDETERMINATE;
    case ErrorCode::kPrecondition: return DBK_PRECONDITION;
    case ErrorCode::kUnsupported: return DBK_UNSUPPORTED;
    case ErrorCode::kInternal: return DBK_INTERNAL;
  }
  return DBK_INTERNAL;
}

void SetError(std::string_view code, const std::string& message,
              const std::string& location) {
  io::Json doc;
  doc["code"] = std::string(code);
  doc["message"] = message;
  doc["location"] = location;
  last_error = doc.dump();
}

char* CopyString(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

// Runs `body`, translating exceptions into status codes and last_error.
dbk_status Guard(const std::function<dbk_status()>& body) {
  last_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    SetError(dutchbook::ErrorCodeName(e.code()), e.what(), e.location());
    return StatusOf(e.code());
  } catch (const nlohmann::json::exception& e) {
    SetError("invalid_input", e.what(), "");
    return DBK_INVALID_INPUT;
  } catch (const std::bad_alloc&) {
    SetError("internal_error", "out of memory", "");
    return DBK_INTERNAL;
  } catch (const std::exception& e) {
    SetError("internal_error", e.what(), "");
    return DBK_INTERNAL;
  }
}

void Require(bool condition, const char* what) {
  if (!condition) Fail(ErrorCode::kInvalidInput, what, "");
}

dbk_status Emit(const io::Json& doc, char** out, bool positive = true) {
  Require(out != nullptr, "null output pointer");
  *out = CopyString(io::Dump(doc));
  return positive ? DBK_OK : DBK_NEGATIVE;
}

const dutchbook::LearningEnvironment& EnvOf(const dbk_env* env) {
  Require(env != nullptr, "missing environment");
  return env->env;
}

// Beliefs must be shaped for the environment and valid there.
const dutchbook::BeliefSystem& BeliefsOf(const dutchbook::LearningEnvironment& env,
                                         const dbk_beliefs* beliefs) {
  Require(beliefs != nullptr, "missing beliefs");
  Require(beliefs->mu.size() == env.num_contingencies(),
          "beliefs were parsed against a different environment");
  dutchbook::RequireValidBeliefs(env, beliefs->mu);
  return beliefs->mu;
}

const dutchbook::GambleSystem& BookOf(const dutchbook::LearningEnvironment& env,
                                      const dbk_book* book) {
  Require(book != nullptr, "missing gamble system");
  dutchbook::RequireValidGambles(env, book->g);
  return book->g;
}

dutchbook::SynthesisParams ParamsOf(const char* epsilon) {
  dutchbook::SynthesisParams params;
  if (epsilon != nullptr) {
    params.epsilon = dutchbook::Rational::Parse(epsilon);
    if (!params.epsilon->IsPositive()) {
      Fail(ErrorCode::kInvalidInput, "epsilon must be positive", "--epsilon");
    }
  }
  return params;
}

}  // namespace

extern "C" {

const char* dbk_version(void) { return "0.1.0"; }

const char* dbk_last_error(void) { return last_error.c_str(); }

void dbk_string_free(char* s) { std::free(s); }

dbk_status dbk_env_parse(const char* json, dbk_env** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "null argument");
    *out = new dbk_env{io::ParseEnvironment(io::ParseDocument(json))};
    return DBK_OK;
  });
}

void dbk_env_free(dbk_env* env) { delete env; }

dbk_status dbk_env_to_json(const dbk_env* env, char** out) {
  return Guard([&] { return Emit(io::EnvironmentToJson(EnvOf(env)), out); });
}

dbk_status dbk_beliefs_parse(const dbk_env* env, const char* json,
                             dbk_beliefs** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "null argument");
    *out = new dbk_beliefs{io::ParseBeliefs(EnvOf(env), io::ParseDocument(json))};
    return DBK_OK;
  });
}

void dbk_beliefs_free(dbk_beliefs* beliefs) { delete beliefs; }

dbk_status dbk_beliefs_to_json(const dbk_env* env, const dbk_beliefs* beliefs,
                               char** out) {
  return Guard([&] {
    Require(beliefs != nullptr, "missing beliefs");
    return Emit(io::BeliefsToJson(EnvOf(env), beliefs->mu), out);
  });
}

dbk_status dbk_lcps_parse(const dbk_env* env, const char* json, dbk_lcps** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "null argument");
    const io::Json doc = io::ParseDocument(json);
    dutchbook::StateSpace states =
        env != nullptr ? env->env.states() : io::InferLcpsStates(doc);
    dutchbook::Lcps lcps = io::ParseLcps(states, doc);
    *out = new dbk_lcps{std::move(states), std::move(lcps)};
    return DBK_OK;
  });
}

void dbk_lcps_free(dbk_lcps* lcps) { delete lcps; }

dbk_status dbk_lcps_to_json(const dbk_lcps* lcps, char** out) {
  return Guard([&] {
    Require(lcps != nullptr, "missing LCPS");
    return Emit(io::LcpsToJson(lcps->states, lcps->lcps), out);
  });
}

dbk_status dbk_cps_parse(const char* json, dbk_cps** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "null argument");
    const io::Json doc = io::ParseDocument(json);
    dutchbook::StateSpace states = io::InferCpsStates(doc);
    dutchbook::CompleteCps cps = io::ParseCps(states, doc);
    *out = new dbk_cps{std::move(states), std::move(cps)};
    return DBK_OK;
  });
}

void dbk_cps_free(dbk_cps* cps) { delete cps; }

dbk_status dbk_cps_to_json(const dbk_cps* cps, char** out) {
  return Guard([&] {
    Require(cps != nullptr, "missing CPS");
    return Emit(io::CpsToJson(cps->states, cps->cps), out);
  });
}

dbk_status dbk_book_parse(const dbk_env* env, const char* json, dbk_book** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "null argument");
    *out = new dbk_book{io::ParseGambles(EnvOf(env), io::ParseDocument(json))};
    return DBK_OK;
  });
}

void dbk_book_free(dbk_book* book) { delete book; }

dbk_status dbk_book_to_json(const dbk_env* env, const dbk_book* book, char** out) {
  return Guard([&] {
    Require(book != nullptr, "missing gamble system");
    return Emit(io::GamblesToJson(EnvOf(env), book->g), out);
  });
}

dbk_status dbk_validate(const dbk_env* env, const dbk_beliefs* beliefs,
                        const dbk_book* book, char** report) {
  return Guard([&] {
    const auto& e = EnvOf(env);
    bool valid = true;
    io::Json doc;
    doc["states"] = e.num_states();
    doc["contingencies"] = e.num_contingencies();
    doc["paths"] = e.paths().size();
    doc["uniformReach"] = dutchbook::IsUniformReach(e);
    doc["deterministicContinuation"] = dutchbook::HasDeterministicContinuation(e);
    if (beliefs != nullptr) {
      Require(beliefs->mu.size() == e.num_contingencies(),
              "beliefs were parsed against a different environment");
      const auto violations = dutchbook::ValidateBeliefSystem(e, beliefs->mu);
      valid = valid && violations.empty();
      doc["beliefViolations"] = io::BeliefViolationsToJson(e, violations);
    }
    if (book != nullptr) {
      std::string problem;
      try {
        dutchbook::RequireValidGambles(e, book->g);
      } catch (const Error& err) {
        problem = err.what();
      }
      valid = valid && problem.empty();
      doc["bookProblem"] = problem.empty() ? io::Json(nullptr) : io::Json(problem);
    }
    doc["valid"] = valid;
    return Emit(doc, report, valid);
  });
}

dbk_status dbk_check_forward(const dbk_env* env, const dbk_beliefs* beliefs,
                             char** report) {
  return Guard([&] {
    const auto& e = EnvOf(env);
    const auto violation = dutchbook::CheckForwardConsistency(e, BeliefsOf(e, beliefs));
    io::Json doc;
    doc["forwardConsistent"] = !violation.has_value();
    if (violation) doc["violation"] = io::ForwardViolationToJson(e, *violation);
    return Emit(doc, report, !violation.has_value());
  });
}

dbk_status dbk_check_complete(const dbk_env* env, const dbk_beliefs* beliefs,
                              char** report) {
  return Guard([&] {
    const auto& e = EnvOf(env);
    const auto result = dutchbook::CheckCompleteConsistency(e, BeliefsOf(e, beliefs));
    io::Json doc;
    if (const auto* ok = std::get_if<dutchbook::CompletelyConsistent>(&result)) {
      doc["consistent"] = true;
      doc["certificate"] = io::CertificateToJson(e, ok->certificate);
      doc["lcps"] = io::LcpsToJson(e.states(), ok->lcps);
      return Emit(doc, report, true);
    }
    const auto& bad = std::get<dutchbook::NotCompletelyConsistent>(result);
    doc["consistent"] = false;
    doc["violation"] = io::ViolationToJson(e, bad.violation);
    return Emit(doc, report, false);
  });
}

dbk_status dbk_extract_lcps(const dbk_env* env, const dbk_beliefs* beliefs,
                            char** report) {
  return Guard([&] {
    const auto& e = EnvOf(env);
    const auto result = dutchbook::CheckCompleteConsistency(e, BeliefsOf(e, beliefs));
    if (const auto* ok = std::get_if<dutchbook::CompletelyConsistent>(&result)) {
      return Emit(io::LcpsToJson(e.states(), ok->lcps), report, true);
    }
    io::Json doc;
    doc["consistent"] = false;
    doc["violation"] = io::ViolationToJson(
        e, std::get<dutchbook::NotCompletelyConsistent>(result).violation);
    return Emit(doc, report, false);
  });
}

dbk_status dbk_derive_beliefs(const dbk_env* env, const dbk_lcps* lcps,
                              char** report) {
  return Guard([&] {
    const auto& e = EnvOf(env);
    Require(lcps != nullptr, "missing LCPS");
    Require(lcps->states.names() == e.states().names(),
            "LCPS states differ from the environment states");
    return Emit(io::BeliefsToJson(e, dutchbook::DeriveBeliefs(e, lcps->lcps)), report);
  });
}

dbk_status dbk_lcps_to_cps(const dbk_lcps* lcps, char** report) {
  return Guard([&] {
    Require(lcps != nullptr, "missing LCPS");
    return Emit(io::CpsToJson(lcps->states, dutchbook::LcpsToCps(lcps->lcps)), report);
  });
}

dbk_status dbk_cps_to_lcps(const dbk_cps* cps, char** report) {
  return Guard([&] {
    Require(cps != nullptr, "missing CPS");
    if (const auto violation = dutchbook::ValidateCompleteCps(cps->cps)) {
      io::Json doc;
      doc["valid"] = false;
      doc["violation"] = io::CpsViolationToJson(cps->states, *violation);
      return Emit(doc, report, false);
    }
    return Emit(io::LcpsToJson(cps->states, dutchbook::CpsToLcps(cps->cps)), report);
  });
}

dbk_status dbk_check_siniscalchi(const dbk_env* env, const dbk_beliefs* beliefs,
                                 uint32_t max_len, char** report) {
  return Guard([&] {
    const auto& e = EnvOf(env);
    std::optional<std::size_t> len;
    if (max_len != 0) len = max_len;
    const auto violation = dutchbook::CheckSiniscalchi(e, BeliefsOf(e, beliefs), len);
    io::Json doc;
    doc["consistent"] = !violation.has_value();
    if (violation) doc["violation"] = io::SiniscalchiViolationToJson(e, *violation);
    return Emit(doc, report, !violation.has_value());
  });
}

dbk_status dbk_verify_book(const dbk_env* env, const dbk_beliefs* beliefs,
                           const dbk_book* book, char** report) {
  return Guard([&] {
    const auto& e = EnvOf(env);
    const auto& g = BookOf(e, book);
    const auto verdict = dutchbook::ClassifyDutchBook(e, g);
    io::Json doc = io::BookVerdictToJson(e, verdict);
    bool positive = verdict.is_dutch_book;
    if (beliefs != nullptr) {
      const auto acceptance = dutchbook::AcceptsSystem(e, BeliefsOf(e, beliefs), g);
      doc["acceptsSystem"] = acceptance.accepted;
      doc["acceptance"] = io::AcceptanceToJson(e, acceptance);
      positive = positive && acceptance.accepted;
    }
    return Emit(doc, report, positive);
  });
}

dbk_status dbk_verify_deterministic(const dbk_env* env, const dbk_beliefs* beliefs,
                                    const dbk_book* book, char** report) {
  return Guard([&] {
    const auto& e = EnvOf(env);
    const auto& g = BookOf(e, book);
    const auto verdict = dutchbook::ClassifyDeterministic(e, g);
    io::Json doc = io::DeterministicVerdictToJson(e, verdict);
    bool positive = verdict.is_deterministic_db;
    if (beliefs != nullptr) {
      const auto acceptance = dutchbook::AcceptsSystem(e, BeliefsOf(e, beliefs), g);
      doc["acceptsSystem"] = acceptance.accepted;
      doc["acceptance"] = io::AcceptanceToJson(e, acceptance);
      positive = positive && acceptance.accepted;
    }
    return Emit(doc, report, positive);
  });
}

dbk_status dbk_synth_book(const dbk_env* env, const dbk_beliefs* beliefs,
                          const char* epsilon, char** report) {
  return Guard([&] {
    const auto& e = EnvOf(env);
    const auto params = ParamsOf(epsilon);
    const auto result = dutchbook::SynthesizeDutchBook(e, BeliefsOf(e, beliefs), params);
    io::Json doc;
    doc["book"] = io::GamblesToJson(e, result.book);
    doc["witness"] = io::ViolationToJson(e, result.witness);
    doc["epsilon"] = result.epsilon.ToString();
    doc["shrinks"] = result.shrinks;
    doc["anchorPayoffAtZero"] = result.anchor_payoff_at_zero.ToString();
    doc["acceptsSystem"] = result.acceptance.accepted;
    doc["acceptance"] = io::AcceptanceToJson(e, result.acceptance);
    doc["verdict"] = io::BookVerdictToJson(e, result.verdict);
    return Emit(doc, report, true);
  });
}

dbk_status dbk_synth_deterministic(const dbk_env* env, const dbk_beliefs* beliefs,
                                   const char* epsilon, char** report) {
  return Guard([&] {
    const auto& e = EnvOf(env);
    const auto params = ParamsOf(epsilon);
    const auto result =
        dutchbook::SynthesizeDeterministicDb(e, BeliefsOf(e, beliefs), params);
    io::Json doc;
    doc["book"] = io::GamblesToJson(e, result.book);
    doc["witness"] = io::ForwardViolationToJson(e, result.witness);
    doc["s"] = e.states().name(result.s);
    doc["sPrime"] = e.states().name(result.s_prime);
    doc["x"] = result.x.ToString();
    doc["y"] = result.y.ToString();
    doc["epsilon"] = result.epsilon.ToString();
    doc["shrinks"] = result.shrinks;
    doc["scaledLoss"] = result.scaled_loss;
    doc["acceptsSystem"] = result.acceptance.accepted;
    doc["acceptance"] = io::AcceptanceToJson(e, result.acceptance);
    doc["verdict"] = io::DeterministicVerdictToJson(e, result.verdict);
    return Emit(doc, report, true);
  });
}

dbk_status dbk_simulate(const dbk_env* env, const dbk_beliefs* beliefs,
                        const dbk_book* book, uint64_t rounds, uint64_t seed,
                        const char* state, uint32_t threads, char** report) {
  return Guard([&] {
    const auto& e = EnvOf(env);
    const auto& mu = BeliefsOf(e, beliefs);
    const auto& g = BookOf(e, book);
    if (rounds == 0) Fail(ErrorCode::kInvalidInput, "rounds must be positive", "--rounds");
    dutchbook::SimConfig config;
    config.rounds = rounds;
    config.seed = seed;
    config.threads = threads;
    if (state != nullptr) {
      const auto s = e.states().Find(state);
      if (!s) Fail(ErrorCode::kInvalidInput, std::string("unknown state '") + state + "'",
                   "--state");
      config.mode = dutchbook::FixedState{*s};
    } else {
      dutchbook::Distribution prior = dutchbook::Distribution::Zero(e.num_states());
      for (dutchbook::StateIndex s = 0; s < e.num_states(); ++s) {
        prior[s] = dutchbook::Rational(1, static_cast<long>(e.num_states()));
      }
      config.mode = dutchbook::PriorDraw{std::move(prior)};
    }
    const auto sim = dutchbook::RunRounds(e, mu, g, config);
    bool flagged = false;
    for (const auto& [s, deviation] : dutchbook::CompareToExact(sim)) {
      flagged = flagged || deviation.flagged;
    }
    io::Json doc = io::SimReportToJson(e, sim);
    doc["flagged"] = flagged;
    return Emit(doc, report, !flagged);
  });
}

}  // extern "C"

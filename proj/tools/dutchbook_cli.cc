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

// Command-line front end over the C API. Verdict documents go to standard
// output; exit status is 0 for a positive verdict, 1 for a negative one and 2
// for input or usage errors.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "dutchbook/dutchbook.h"

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kBadInput = 2;

struct Options {
  std::string env;
  std::string beliefs;
  std::string lcps;
  std::string cps;
  std::string book;
  std::string out;
  std::uint64_t seed = 0;
  std::uint64_t rounds = 100000;
  std::uint32_t max_len = 0;
  std::optional<std::string> epsilon;
  std::optional<std::string> state;
  std::optional<std::uint32_t> threads;
};

// Thrown for failures detected by the front end itself.
struct CliError {
  std::string code;
  std::string message;
  std::string location;
};

std::string ErrorJson(const std::string& code, const std::string& message,
                      const std::string& location) {
  nlohmann::ordered_json doc;
  doc["code"] = code;
  doc["message"] = message;
  doc["location"] = location;
  return doc.dump(2) + "\n";
}

int ReportError(const std::string& json) {
  std::cout << json;
  const auto doc = nlohmann::json::parse(json, nullptr, false);
  if (!doc.is_discarded() && doc.contains("message")) {
    std::cerr << "error: " << doc["message"].get<std::string>() << "\n";
  }
  return kBadInput;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"invalid_input", "cannot read file", path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw CliError{"invalid_input", "cannot write file", path};
}

// Library failure: prefix the location with the file being processed.
[[noreturn]] void Throw(const std::string& file) {
  auto doc = nlohmann::ordered_json::parse(dbk_last_error());
  const std::string inner = doc.value("location", "");
  throw CliError{doc.value("code", "internal_error"), doc.value("message", ""),
                 file.empty() ? inner : file + (inner.empty() ? "" : ":" + inner)};
}

void Check(dbk_status status, const std::string& file = "") {
  if (status != DBK_OK) Throw(file);
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Env = std::unique_ptr<dbk_env, Deleter<dbk_env, dbk_env_free>>;
using Beliefs = std::unique_ptr<dbk_beliefs, Deleter<dbk_beliefs, dbk_beliefs_free>>;
using LcpsHandle = std::unique_ptr<dbk_lcps, Deleter<dbk_lcps, dbk_lcps_free>>;
using CpsHandle = std::unique_ptr<dbk_cps, Deleter<dbk_cps, dbk_cps_free>>;
using Book = std::unique_ptr<dbk_book, Deleter<dbk_book, dbk_book_free>>;

Env LoadEnv(const Options& o) {
  dbk_env* raw = nullptr;
  Check(dbk_env_parse(ReadFile(o.env).c_str(), &raw), o.env);
  return Env(raw);
}

Beliefs LoadBeliefs(const Options& o, const Env& env) {
  if (o.beliefs.empty()) return nullptr;
  dbk_beliefs* raw = nullptr;
  Check(dbk_beliefs_parse(env.get(), ReadFile(o.beliefs).c_str(), &raw), o.beliefs);
  return Beliefs(raw);
}

Book LoadBook(const Options& o, const Env& env) {
  dbk_book* raw = nullptr;
  Check(dbk_book_parse(env.get(), ReadFile(o.book).c_str(), &raw), o.book);
  return Book(raw);
}

LcpsHandle LoadLcps(const Options& o, const dbk_env* env) {
  dbk_lcps* raw = nullptr;
  Check(dbk_lcps_parse(env, ReadFile(o.lcps).c_str(), &raw), o.lcps);
  return LcpsHandle(raw);
}

CpsHandle LoadCps(const Options& o) {
  dbk_cps* raw = nullptr;
  Check(dbk_cps_parse(ReadFile(o.cps).c_str(), &raw), o.cps);
  return CpsHandle(raw);
}

std::uint32_t ThreadCount(const Options& o) {
  std::uint32_t threads = o.threads.value_or(std::max(1u, std::thread::hardware_concurrency()));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("DUTCHBOOK_THREADS")) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(cap, &end, 10);
    if (end == cap || *end != '\0' || value == 0) {
      throw CliError{"invalid_input", "DUTCHBOOK_THREADS must be a positive integer",
                     "DUTCHBOOK_THREADS"};
    }
    threads = std::min<std::uint32_t>(threads, static_cast<std::uint32_t>(value));
  }
  return threads;
}

// Prints the report, writes `document` (or the report) to --out, and maps the
// status to an exit code. Precondition failures of the synthesizers are
// negative verdicts: there is nothing to synthesize.
int Finish(const Options& o, dbk_status status, char** report,
           const char* document_key = nullptr) {
  if (status == DBK_PRECONDITION) {
    std::cout << ErrorJson("precondition_violation",
                           nlohmann::json::parse(dbk_last_error()).value("message", ""),
                           "");
    return kNegative;
  }
  if (status != DBK_OK && status != DBK_NEGATIVE) Throw("");
  std::string text(*report);
  dbk_string_free(*report);
  std::cout << text;
  if (!o.out.empty()) {
    if (document_key != nullptr) {
      const auto doc = nlohmann::ordered_json::parse(text);
      WriteFile(o.out, doc[document_key].dump(2) + "\n");
    } else {
      WriteFile(o.out, text);
    }
  }
  return status == DBK_OK ? kPositive : kNegative;
}

int Run(const std::string& command, const Options& o) {
  char* report = nullptr;
  if (command == "to-cps") {
    auto lcps = LoadLcps(o, nullptr);
    return Finish(o, dbk_lcps_to_cps(lcps.get(), &report), &report);
  }
  if (command == "to-lcps") {
    auto cps = LoadCps(o);
    return Finish(o, dbk_cps_to_lcps(cps.get(), &report), &report);
  }
  auto env = LoadEnv(o);
  if (command == "derive-beliefs") {
    auto lcps = LoadLcps(o, env.get());
    return Finish(o, dbk_derive_beliefs(env.get(), lcps.get(), &report), &report);
  }
  auto beliefs = LoadBeliefs(o, env);
  if (command == "validate") {
    Book book = o.book.empty() ? nullptr : LoadBook(o, env);
    return Finish(o, dbk_validate(env.get(), beliefs.get(), book.get(), &report), &report);
  }
  if (command == "check-forward") {
    return Finish(o, dbk_check_forward(env.get(), beliefs.get(), &report), &report);
  }
  if (command == "check-complete") {
    return Finish(o, dbk_check_complete(env.get(), beliefs.get(), &report), &report);
  }
  if (command == "extract-lcps") {
    return Finish(o, dbk_extract_lcps(env.get(), beliefs.get(), &report), &report);
  }
  if (command == "check-siniscalchi") {
    return Finish(o, dbk_check_siniscalchi(env.get(), beliefs.get(), o.max_len, &report),
                  &report);
  }
  const char* epsilon = o.epsilon ? o.epsilon->c_str() : nullptr;
  if (command == "synth-book") {
    return Finish(o, dbk_synth_book(env.get(), beliefs.get(), epsilon, &report), &report,
                  "book");
  }
  if (command == "synth-deterministic") {
    return Finish(o, dbk_synth_deterministic(env.get(), beliefs.get(), epsilon, &report),
                  &report, "book");
  }
  auto book = LoadBook(o, env);
  if (command == "verify-book") {
    return Finish(o, dbk_verify_book(env.get(), beliefs.get(), book.get(), &report),
                  &report);
  }
  if (command == "verify-deterministic") {
    return Finish(o,
                  dbk_verify_deterministic(env.get(), beliefs.get(), book.get(), &report),
                  &report);
  }
  // simulate
  const char* state = o.state ? o.state->c_str() : nullptr;
  return Finish(o,
                dbk_simulate(env.get(), beliefs.get(), book.get(), o.rounds, o.seed, state,
                             ThreadCount(o), &report),
                &report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact coherence and Dutch book checks for belief systems over "
               "learning environments."};
  app.set_version_flag("--version", std::string(dbk_version()));
  app.require_subcommand(1);
  Options o;

  auto add_env = [&](CLI::App* c) {
    c->add_option("--env", o.env, "Learning environment JSON file")->required();
  };
  auto add_beliefs = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--beliefs", o.beliefs, "Belief system JSON file");
    if (required) opt->required();
  };
  auto add_book = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--book", o.book, "Gamble system JSON file");
    if (required) opt->required();
  };
  auto add_out = [&](CLI::App* c, const std::string& what) {
    c->add_option("--out", o.out, "Also write " + what + " to this file");
  };
  auto add_epsilon = [&](CLI::App* c) {
    c->add_option("--epsilon", o.epsilon,
                  "Starting epsilon as \"p/q\"; shrunk by halves until the book verifies");
  };

  auto* validate = app.add_subcommand(
      "validate", "Validate an environment and optional beliefs and gamble system");
  add_env(validate);
  add_beliefs(validate, false);
  add_book(validate, false);
  add_out(validate, "the report");

  auto* forward = app.add_subcommand("check-forward",
                                     "Check that beliefs update by conditioning");
  add_env(forward);
  add_beliefs(forward, true);
  add_out(forward, "the report");

  auto* complete = app.add_subcommand(
      "check-complete", "Check complete consistency; report a witness cycle if not");
  add_env(complete);
  add_beliefs(complete, true);
  add_out(complete, "the report");

  auto* extract = app.add_subcommand(
      "extract-lcps", "Extract a lexicographic system that generates the beliefs");
  add_env(extract);
  add_beliefs(extract, true);
  add_out(extract, "the LCPS document");

  auto* derive = app.add_subcommand(
      "derive-beliefs", "Derive beliefs from a lexicographic system by Bayes rule");
  add_env(derive);
  derive->add_option("--lcps", o.lcps, "LCPS JSON file")->required();
  add_out(derive, "the belief document");

  auto* to_cps = app.add_subcommand("to-cps", "Convert an LCPS to a complete CPS");
  to_cps->add_option("--lcps", o.lcps, "LCPS JSON file")->required();
  add_out(to_cps, "the CPS document");

  auto* to_lcps = app.add_subcommand("to-lcps", "Convert a complete CPS to an LCPS");
  to_lcps->add_option("--cps", o.cps, "Complete CPS JSON file")->required();
  add_out(to_lcps, "the LCPS document");

  auto* sini = app.add_subcommand(
      "check-siniscalchi",
      "Sequence-product consistency check for uniform-reach environments");
  add_env(sini);
  add_beliefs(sini, true);
  sini->add_option("--max-len", o.max_len,
                   "Longest contingency sequence to examine (default: all)")
      ->check(CLI::Range(2u, 1000000u));
  add_out(sini, "the report");

  auto* verify = app.add_subcommand(
      "verify-book", "Classify a gamble system as a Dutch book; check acceptance if "
                     "beliefs are given");
  add_env(verify);
  add_beliefs(verify, false);
  add_book(verify, true);
  add_out(verify, "the report");

  auto* verify_det = app.add_subcommand(
      "verify-deterministic",
      "Classify a gamble system as a deterministic Dutch book");
  add_env(verify_det);
  add_beliefs(verify_det, false);
  add_book(verify_det, true);
  add_out(verify_det, "the report");

  auto* synth = app.add_subcommand(
      "synth-book", "Build a verified Dutch book against inconsistent beliefs");
  add_env(synth);
  add_beliefs(synth, true);
  add_epsilon(synth);
  add_out(synth, "the gamble system document");

  auto* synth_det = app.add_subcommand(
      "synth-deterministic",
      "Build a verified deterministic Dutch book against non-conditioning beliefs");
  add_env(synth_det);
  add_beliefs(synth_det, true);
  add_epsilon(synth_det);
  add_out(synth_det, "the gamble system document");

  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo rounds of a gamble system against an agent");
  add_env(simulate);
  add_beliefs(simulate, true);
  add_book(simulate, true);
  simulate->add_option("--seed", o.seed, "Random seed")->required();
  simulate->add_option("--rounds", o.rounds, "Number of rounds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--state", o.state,
                       "Fix the true state; otherwise drawn uniformly each round");
  simulate->add_option("--threads", o.threads,
                       "Worker threads (0: all cores; capped by DUTCHBOOK_THREADS)");
  add_out(simulate, "the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return ReportError(ErrorJson("usage_error", e.what(), ""));
  }

  try {
    return Run(app.get_subcommands().front()->get_name(), o);
  } catch (const CliError& e) {
    return ReportError(ErrorJson(e.code, e.message, e.location));
  } catch (const std::exception& e) {
    return ReportError(ErrorJson("internal_error", e.what(), ""));
  }
}

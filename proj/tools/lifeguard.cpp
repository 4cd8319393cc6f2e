/*
 * Copyright 2026 The Lifeguard Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// lifeguard: command-line front end over the C API.
//
// Exit codes: 0 valid/Safe/finished, 1 invalid/Violation/bad,
// 2 Unknown, usage errors and failures.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "lifeguard/lifeguard.h"

namespace {

constexpr int kExitUnknown = 2;

struct Failure {
  std::string what;
};

void check(lg_status s, const std::string& context) {
  if (s != LG_OK) {
    std::string msg = lg_last_error();
    throw Failure{context + ": " + (msg.empty() ? lg_status_name(s) : msg)};
  }
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using TracePtr = std::unique_ptr<lg_trace, Deleter<lg_trace, lg_trace_free>>;
using SpecPtr = std::unique_ptr<lg_spec, Deleter<lg_spec, lg_spec_free>>;
using ProgramPtr = std::unique_ptr<lg_program, Deleter<lg_program, lg_program_free>>;
using ReportPtr = std::unique_ptr<lg_report, Deleter<lg_report, lg_report_free>>;

std::string take(char* s) {
  std::string out = s ? s : "";
  lg_string_free(s);
  return out;
}

SpecPtr load_spec(const std::string& path) {
  lg_spec* s = nullptr;
  check(lg_spec_load(path.c_str(), &s), "spec");
  return SpecPtr(s);
}

TracePtr load_trace(const std::string& path) {
  lg_trace* t = nullptr;
  check(lg_trace_load(path.c_str(), &t), "trace");
  return TracePtr(t);
}

void write_trace(const lg_report* r, const std::string& path) {
  lg_trace* t = nullptr;
  check(lg_report_trace(r, &t), "report");
  TracePtr owned(t);
  char* text = nullptr;
  check(lg_trace_serialize(t, &text), "serialize");
  std::string body = take(text);
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out) throw Failure{"cannot write " + path};
}

int finish(const lg_report* r, const std::string& format) {
  char* text = nullptr;
  check(lg_report_render(r, format == "json" ? LG_FORMAT_JSON : LG_FORMAT_TEXT, &text), "report");
  std::cout << take(text);
  std::cout.flush();
  switch (lg_report_verdict(r)) {
    case LG_PASS: return 0;
    case LG_FAIL: return 1;
    default: return kExitUnknown;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lifestate validation and predictive verification of event-driven traces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lg_version());

  std::string spec_path, trace_path, corpus_dir, program_path, schedule, trace_out, witness_out;
  std::string format = "text", mode = "exhaustive", init = "boot";
  std::optional<std::uint64_t> seed;
  std::size_t max_steps = 500;
  unsigned jobs = 1;
  std::optional<double> timeout;
  std::optional<std::size_t> grounding_cap, state_cap;
  bool stats = false, skip_shape = false;

  auto add_report = [&](CLI::App* c) {
    c->add_option("--report", format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  };
  auto add_caps = [&](CLI::App* c) {
    c->add_option("--grounding-cap", grounding_cap, "Maximum number of ground rule instances")
        ->check(CLI::PositiveNumber);
    c->add_option("--timeout", timeout, "Wall-clock budget in seconds")->check(CLI::Range(1.0, 1e9));
  };

  auto* run = app.add_subcommand("run", "Run a program and print its observable trace");
  run->add_option("--program", program_path, "Program file")->required()->check(CLI::ExistingFile);
  auto* sched_opt = run->add_option("--schedule", schedule, "Comma-separated event choices");
  auto* seed_opt = run->add_option("--seed", seed, "Pseudorandom event choices");
  sched_opt->excludes(seed_opt);
  run->add_option("--max-steps", max_steps, "Machine step budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--trace-out", trace_out, "Write the trace to this file");
  run->add_option("--init", init, "Framework init function")->capture_default_str();
  run->add_flag("--no-shape-check", skip_shape, "Skip the framework shape check");
  add_report(run);

  auto* validate = app.add_subcommand("validate", "Check that traces are accepted by a spec");
  validate->add_option("--spec", spec_path, "Spec file")->required()->check(CLI::ExistingFile);
  auto* trace_opt = validate->add_option("--trace", trace_path, "Trace file")->check(CLI::ExistingFile);
  auto* corpus_opt =
      validate->add_option("--corpus", corpus_dir, "Directory of *.trace files")->check(CLI::ExistingDirectory);
  trace_opt->excludes(corpus_opt);
  validate->add_option("--jobs", jobs, "Concurrent analyses in corpus mode")
      ->check(CLI::Range(1u, 64u))
      ->capture_default_str();
  add_caps(validate);
  add_report(validate);

  auto* verify = app.add_subcommand("verify", "Search callback-unit rearrangements for a violation");
  verify->add_option("--spec", spec_path, "Spec file")->required()->check(CLI::ExistingFile);
  verify->add_option("--trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);
  verify->add_option("--mode", mode, "exhaustive or bounded:K")->capture_default_str();
  verify->add_option("--witness-out", witness_out, "Write a violation witness to this file");
  verify->add_option("--state-cap", state_cap, "Maximum explored states")->check(CLI::PositiveNumber);
  verify->add_flag("--stats", stats, "Print exploration counters");
  add_caps(verify);
  add_report(verify);

  auto* ground = app.add_subcommand("ground", "Print the ground rules of a spec over a trace");
  ground->add_option("--spec", spec_path, "Spec file")->required()->check(CLI::ExistingFile);
  ground->add_option("--trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);
  add_caps(ground);
  add_report(ground);

  auto* explain = app.add_subcommand("explain", "Show rule firings and store changes per message");
  explain->add_option("--spec", spec_path, "Spec file")->required()->check(CLI::ExistingFile);
  explain->add_option("--trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);
  add_caps(explain);
  add_report(explain);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUnknown;
  }

  try {
    lg_options opts;
    lg_options_init(&opts);
    if (const char* env = std::getenv("LIFEGUARD_STATE_CAP"); env && *env) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (*end != '\0' || v == 0)
        throw Failure{std::string("LIFEGUARD_STATE_CAP must be a positive integer, got '") + env + "'"};
      opts.state_cap = static_cast<std::size_t>(v);
    }
    if (grounding_cap) opts.grounding_cap = *grounding_cap;
    if (state_cap) opts.state_cap = *state_cap;
    if (timeout) opts.timeout_seconds = *timeout;
    opts.with_stats = stats ? 1 : 0;

    lg_report* raw = nullptr;
    if (*run) {
      lg_program* p = nullptr;
      check(lg_program_load(program_path.c_str(), &p), "program");
      ProgramPtr prog(p);
      if (!skip_shape) check(lg_program_check_shape(prog.get(), init.c_str()), "program");
      check(lg_run(prog.get(), schedule.c_str(), seed ? &*seed : nullptr, max_steps, &raw), "run");
      ReportPtr r(raw);
      if (!trace_out.empty()) write_trace(r.get(), trace_out);
      return finish(r.get(), format);
    }
    if (*validate) {
      if (trace_path.empty() && corpus_dir.empty()) {
        std::cerr << "validate: one of --trace or --corpus is required\n";
        return kExitUnknown;
      }
      auto spec = load_spec(spec_path);
      if (!corpus_dir.empty()) {
        check(lg_validate_corpus(spec.get(), corpus_dir.c_str(), jobs, &opts, &raw), "validate");
      } else {
        auto trace = load_trace(trace_path);
        check(lg_validate(spec.get(), trace.get(), &opts, &raw), "validate");
      }
      ReportPtr r(raw);
      return finish(r.get(), format);
    }
    if (*verify) {
      if (mode != "exhaustive") {
        const std::string prefix = "bounded:";
        std::size_t k = 0;
        bool ok = mode.rfind(prefix, 0) == 0 && mode.size() > prefix.size();
        if (ok) {
          try {
            std::size_t used = 0;
            k = std::stoul(mode.substr(prefix.size()), &used);
            ok = used == mode.size() - prefix.size() && k > 0;
          } catch (const std::exception&) {
            ok = false;
          }
        }
        if (!ok) {
          std::cerr << "verify: --mode must be 'exhaustive' or 'bounded:K' with K >= 1\n";
          return kExitUnknown;
        }
        opts.bound = k;
      }
      auto spec = load_spec(spec_path);
      auto trace = load_trace(trace_path);
      check(lg_verify(spec.get(), trace.get(), &opts, &raw), "verify");
      ReportPtr r(raw);
      if (!witness_out.empty() && lg_report_verdict(r.get()) == LG_FAIL)
        write_trace(r.get(), witness_out);
      return finish(r.get(), format);
    }
    auto spec = load_spec(spec_path);
    auto trace = load_trace(trace_path);
    if (*ground) check(lg_ground(spec.get(), trace.get(), &opts, &raw), "ground");
    else check(lg_explain(spec.get(), trace.get(), &opts, &raw), "explain");
    ReportPtr r(raw);
    return finish(r.get(), format);
  } catch (const Failure& f) {
    std::cerr << "lifeguard: " << f.what << "\n";
    return kExitUnknown;
  } catch (const std::exception& e) {
    std::cerr << "lifeguard: internal error: " << e.what() << "\n";
    return kExitUnknown;
  }
}

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

#include "lifeguard/lifeguard.h"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "lifeguard/grounding.hpp"
#include "lifeguard/lambda_life.hpp"
#include "lifeguard/validation.hpp"
#include "lifeguard/verification.hpp"
#include "report.hpp"

struct lg_trace {
  lifeguard::Trace value;
};

struct lg_spec {
  lifeguard::LifestateSpec value;
};

struct lg_program {
  lifeguard::life::Program value;
};

struct lg_report {
  lg_verdict verdict = LG_UNKNOWN;
  nlohmann::json json;
  std::string text;
  std::optional<lifeguard::Trace> trace;
};

namespace {

using namespace lifeguard;

thread_local std::string g_last_error;

lg_status fail(lg_status s, std::string what) {
  g_last_error = std::move(what);
  return s;
}

// Maps exceptions from the core onto status codes.
template <class F>
lg_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const GroundingError& e) {
    return fail(LG_ERR_GROUNDING, e.what());
  } catch (const ParseError& e) {
    return fail(LG_ERR_PARSE, e.what());
  } catch (const TraceError& e) {
    return fail(LG_ERR_TRACE, e.what());
  } catch (const Error& e) {
    return fail(LG_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LG_ERR_INTERNAL, e.what());
  }
}

std::optional<std::string> read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size() + 1);
  return p;
}

lg_options defaults() {
  lg_options o;
  lg_options_init(&o);
  return o;
}

AnalysisOptions analysis_options(const lg_options& o) {
  AnalysisOptions a;
  a.grounding_cap = o.grounding_cap;
  if (o.timeout_seconds > 0)
    a.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(o.timeout_seconds));
  return a;
}

lg_status emit(lg_report** out, lg_verdict v, const nlohmann::json& j, std::string text,
               std::optional<Trace> trace = std::nullopt) {
  auto r = std::make_unique<lg_report>();
  r->verdict = v;
  r->json = j;
  r->text = std::move(text);
  r->trace = std::move(trace);
  *out = r.release();
  return LG_OK;
}

lg_verdict validation_verdict(const ValidationReport& r) {
  if (r.timed_out) return LG_UNKNOWN;
  return r.valid ? LG_PASS : LG_FAIL;
}

}  // namespace

extern "C" {

void lg_options_init(lg_options* o) {
  if (!o) return;
  o->grounding_cap = kDefaultGroundingCap;
  try {
    o->state_cap = state_cap_from_env();
  } catch (const Error&) {
    o->state_cap = kDefaultStateCap;
  }
  o->timeout_seconds = 0;
  o->bound = 0;
  o->with_stats = 0;
}

const char* lg_version(void) { return LIFEGUARD_VERSION; }

const char* lg_last_error(void) { return g_last_error.c_str(); }

const char* lg_status_name(lg_status s) {
  switch (s) {
    case LG_OK: return "ok";
    case LG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LG_ERR_IO: return "i/o error";
    case LG_ERR_PARSE: return "parse error";
    case LG_ERR_TRACE: return "malformed trace";
    case LG_ERR_GROUNDING: return "grounding cap exceeded";
    case LG_ERR_SCHEDULE: return "schedule error";
    case LG_ERR_SHAPE: return "framework shape error";
    case LG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void lg_string_free(char* s) { std::free(s); }

lg_status lg_trace_parse(const char* text, size_t len, lg_trace** out) {
  if (!text || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new lg_trace{parse_trace(std::string_view(text, len))};
    return LG_OK;
  });
}

lg_status lg_trace_load(const char* path, lg_trace** out) {
  if (!path || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  auto text = read_file(path);
  if (!text) return fail(LG_ERR_IO, std::string("cannot read ") + path);
  lg_status s = lg_trace_parse(text->data(), text->size(), out);
  if (s != LG_OK) g_last_error = std::string(path) + ": " + g_last_error;
  return s;
}

size_t lg_trace_length(const lg_trace* t) { return t ? t->value.size() : 0; }

lg_status lg_trace_serialize(const lg_trace* t, char** out) {
  if (!t || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(serialize_trace(t->value));
    return LG_OK;
  });
}

void lg_trace_free(lg_trace* t) { delete t; }

lg_status lg_spec_parse(const char* text, size_t len, lg_spec** out) {
  if (!text || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new lg_spec{parse_spec(std::string_view(text, len))};
    return LG_OK;
  });
}

lg_status lg_spec_load(const char* path, lg_spec** out) {
  if (!path || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  auto text = read_file(path);
  if (!text) return fail(LG_ERR_IO, std::string("cannot read ") + path);
  lg_status s = lg_spec_parse(text->data(), text->size(), out);
  if (s != LG_OK) g_last_error = std::string(path) + ": " + g_last_error;
  return s;
}

size_t lg_spec_rule_count(const lg_spec* s) { return s ? s->value.rules.size() : 0; }

void lg_spec_free(lg_spec* s) { delete s; }

lg_status lg_program_parse(const char* text, size_t len, lg_program** out) {
  if (!text || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new lg_program{life::parse_program(std::string_view(text, len))};
    return LG_OK;
  });
}

lg_status lg_program_load(const char* path, lg_program** out) {
  if (!path || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  auto text = read_file(path);
  if (!text) return fail(LG_ERR_IO, std::string("cannot read ") + path);
  lg_status s = lg_program_parse(text->data(), text->size(), out);
  if (s != LG_OK) g_last_error = std::string(path) + ": " + g_last_error;
  return s;
}

lg_status lg_program_check_shape(const lg_program* p, const char* init) {
  if (!p) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  lg_status s = guarded([&] {
    life::check_framework_shape(p->value, init ? init : "boot");
    return LG_OK;
  });
  return s == LG_ERR_INVALID_ARGUMENT ? LG_ERR_SHAPE : s;
}

void lg_program_free(lg_program* p) { delete p; }

lg_status lg_run(const lg_program* p, const char* schedule, const uint64_t* seed,
                 size_t max_steps, lg_report** out) {
  if (!p || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  if (max_steps == 0) return fail(LG_ERR_INVALID_ARGUMENT, "max_steps must be positive");
  life::Schedule sched;
  lg_status s = guarded([&] {
    sched = seed ? life::Schedule::random(*seed) : life::parse_schedule(schedule ? schedule : "");
    return LG_OK;
  });
  if (s != LG_OK) return s == LG_ERR_INVALID_ARGUMENT ? LG_ERR_SCHEDULE : s;
  s = guarded([&] {
    auto r = life::run(p->value, sched, max_steps);
    lg_verdict v = r.status == life::RunStatus::Finished ? LG_PASS
                   : r.status == life::RunStatus::Bad    ? LG_FAIL
                                                         : LG_UNKNOWN;
    return emit(out, v, report::to_json(r), report::to_text(r), r.trace);
  });
  return s == LG_ERR_INVALID_ARGUMENT ? LG_ERR_SCHEDULE : s;
}

lg_status lg_validate(const lg_spec* s, const lg_trace* t, const lg_options* o,
                      lg_report** out) {
  if (!s || !t || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  lg_options opts = o ? *o : defaults();
  return guarded([&] {
    auto r = validate(s->value, t->value, analysis_options(opts));
    return emit(out, validation_verdict(r), report::to_json(r),
                                  report::to_text(r));
  });
}

lg_status lg_validate_corpus(const lg_spec* s, const char* dir, unsigned jobs,
                             const lg_options* o, lg_report** out) {
  if (!s || !dir || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  lg_options opts = o ? *o : defaults();
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return fail(LG_ERR_IO, std::string("not a directory: ") + dir);
  return guarded([&] {
    report::CorpusReport corpus;
    for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::end(it);
         it.increment(ec)) {
      if (it->is_regular_file() && it->path().extension() == ".trace")
        corpus.entries.push_back({it->path().generic_string(), {}, {}});
    }
    if (ec) return fail(LG_ERR_IO, std::string("cannot list ") + dir + ": " + ec.message());
    std::sort(corpus.entries.begin(), corpus.entries.end(),
              [](const auto& a, const auto& b) { return a.path < b.path; });

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < corpus.entries.size(); i = next++) {
        auto& e = corpus.entries[i];
        try {
          auto text = read_file(e.path.c_str());
          if (!text) {
            e.error = "cannot read file";
            continue;
          }
          Trace t = parse_trace(*text);
          e.report = validate(s->value, t, analysis_options(opts));
        } catch (const std::exception& ex) {
          e.error = ex.what();
        }
      }
    };
    unsigned n = std::max(1u, std::min<unsigned>(jobs, 64));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    auto j = report::to_json(corpus);
    std::string v = j["verdict"];
    lg_verdict verdict = v == "valid" ? LG_PASS : v == "invalid" ? LG_FAIL : LG_UNKNOWN;
    return emit(out, verdict, j, report::to_text(corpus));
  });
}

lg_status lg_verify(const lg_spec* s, const lg_trace* t, const lg_options* o, lg_report** out) {
  if (!s || !t || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  lg_options opts = o ? *o : defaults();
  return guarded([&] {
    VerifyOptions vo;
    static_cast<AnalysisOptions&>(vo) = analysis_options(opts);
    if (opts.bound) vo.bound = opts.bound;
    vo.state_cap = opts.state_cap;
    auto r = verify(s->value, t->value, vo);
    lg_verdict v = r.verdict == Verdict::Safe        ? LG_PASS
                   : r.verdict == Verdict::Violation ? LG_FAIL
                                                     : LG_UNKNOWN;
    std::optional<Trace> w;
    if (r.verdict == Verdict::Violation) w = r.witness;
    return emit(out, v, report::to_json(r),
                                    report::to_text(r, opts.with_stats != 0), std::move(w));
  });
}

lg_status lg_ground(const lg_spec* s, const lg_trace* t, const lg_options* o, lg_report** out) {
  if (!s || !t || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  lg_options opts = o ? *o : defaults();
  return guarded([&] {
    auto g = ground_spec(s->value, t->value, opts.grounding_cap);
    auto c = compile_all(g);
    return emit(out, LG_PASS, report::ground_json(s->value, g, c),
                            report::ground_text(s->value, g, c));
  });
}

lg_status lg_explain(const lg_spec* s, const lg_trace* t, const lg_options* o, lg_report** out) {
  if (!s || !t || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  lg_options opts = o ? *o : defaults();
  return guarded([&] {
    auto e = explain(s->value, t->value, analysis_options(opts));
    auto j = report::to_json(e);
    lg_verdict v = j["verdict"] == "valid" ? LG_PASS : LG_FAIL;
    return emit(out, v, j, report::to_text(e));
  });
}

lg_verdict lg_report_verdict(const lg_report* r) { return r ? r->verdict : LG_UNKNOWN; }

lg_status lg_report_render(const lg_report* r, lg_format f, char** out) {
  if (!r || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(f == LG_FORMAT_JSON ? r->json.dump(2) + "\n" : r->text);
    return LG_OK;
  });
}

lg_status lg_report_trace(const lg_report* r, lg_trace** out) {
  if (!r || !out) return fail(LG_ERR_INVALID_ARGUMENT, "null argument");
  if (!r->trace) return fail(LG_ERR_INVALID_ARGUMENT, "report carries no trace");
  return guarded([&] {
    *out = new lg_trace{*r->trace};
    return LG_OK;
  });
}

void lg_report_free(lg_report* r) { delete r; }

}  // extern "C"

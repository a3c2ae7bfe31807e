#include "nalab/nalab.h"

#include <cstring>
#include <sstream>
#include <string>

#include "nalab/recipe.hpp"

struct nalab_recipe {
  nalab::Recipe recipe;
};

struct nalab_ring {
  nalab::Built built;
};

namespace {

thread_local std::string g_message;
thread_local std::string g_kind;
thread_local std::string g_witness = "null";

void clear_error() {
  g_message.clear();
  g_kind.clear();
  g_witness = "null";
}

nalab_status status_of(nalab::ErrorCode c) {
  using nalab::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return NALAB_ERR_INVALID_ARGUMENT;
    case ErrorCode::ParseError: return NALAB_ERR_PARSE;
    case ErrorCode::SchemaError: return NALAB_ERR_SCHEMA;
    case ErrorCode::UnknownKind: return NALAB_ERR_UNKNOWN_KIND;
    case ErrorCode::TooLarge: return NALAB_ERR_TOO_LARGE;
    default: return NALAB_ERR_LIBRARY;
  }
}

template <class F>
nalab_status guard(F&& f) {
  clear_error();
  try {
    f();
    return NALAB_OK;
  } catch (const nalab::Error& e) {
    g_message = e.what();
    g_kind = std::string(nalab::to_string(e.code()));
    g_witness = e.witness().dump();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_message = e.what();
    g_kind = "Internal";
    return NALAB_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

nalab::RunOptions to_options(const nalab_options* o) {
  nalab::RunOptions r;
  if (!o) return r;
  r.limits.seed = o->seed;
  if (o->cap) r.limits.cap = o->cap;
  r.expect = o->expect == NALAB_EXPECT_SIMPLE       ? nalab::Expectation::Simple
             : o->expect == NALAB_EXPECT_NOT_SIMPLE ? nalab::Expectation::NotSimple
                                                    : nalab::Expectation::None;
  if (o->checks && *o->checks) {
    std::stringstream ss(o->checks);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) r.checks.push_back(item);
  }
  r.force = o->force != 0;
  r.timings = o->timings != 0;
  return r;
}

std::string render(const nlohmann::json& report, const nalab_options* o) {
  if (o && o->text) return nalab::render_text(report);
  return report.dump(2) + "\n";
}

}  // namespace

extern "C" {

void nalab_options_init(nalab_options* opts) {
  if (!opts) return;
  nalab::Limits lim;
  opts->seed = lim.seed;
  opts->cap = 0;
  opts->expect = NALAB_EXPECT_NONE;
  opts->checks = nullptr;
  opts->force = 0;
  opts->timings = 0;
  opts->text = 0;
}

const char* nalab_version(void) { return nalab::kToolVersion; }
const char* nalab_last_error(void) { return g_message.c_str(); }
const char* nalab_last_error_kind(void) { return g_kind.c_str(); }
const char* nalab_last_error_witness(void) { return g_witness.c_str(); }

nalab_status nalab_recipe_parse(const char* text, nalab_recipe** out) {
  return guard([&] {
    if (!text || !out) throw nalab::Error(nalab::ErrorCode::InvalidArgument, "null argument");
    *out = new nalab_recipe{nalab::parse_recipe_text(text)};
  });
}

nalab_status nalab_recipe_load(const char* path, nalab_recipe** out) {
  return guard([&] {
    if (!path || !out) throw nalab::Error(nalab::ErrorCode::InvalidArgument, "null argument");
    *out = new nalab_recipe{nalab::parse_recipe_file(path)};
  });
}

void nalab_recipe_free(nalab_recipe* r) { delete r; }

nalab_status nalab_run(const char* command, const nalab_recipe* recipe, const nalab_options* opts, char** report,
                       int* exit_code) {
  return guard([&] {
    if (!command || !recipe || !report || !exit_code)
      throw nalab::Error(nalab::ErrorCode::InvalidArgument, "null argument");
    auto res = nalab::run_command(command, recipe->recipe, to_options(opts));
    *report = dup(render(res.report, opts));
    *exit_code = res.exit_code;
  });
}

nalab_status nalab_corpus(const nalab_options* opts, char** report, int* exit_code) {
  return guard([&] {
    if (!report || !exit_code) throw nalab::Error(nalab::ErrorCode::InvalidArgument, "null argument");
    auto res = nalab::run_corpus(to_options(opts));
    *report = dup(render(res.report, opts));
    *exit_code = res.exit_code;
  });
}

char* nalab_error_report(const char* command, const nalab_options* opts) {
  nlohmann::json witness = nlohmann::json::parse(g_witness, nullptr, false);
  if (witness.is_discarded()) witness = nullptr;
  nlohmann::json rep{{"version", nalab::kToolVersion},
                     {"command", command ? command : ""},
                     {"error", {{"kind", g_kind}, {"message", g_message}, {"witness", witness}}}};
  if (opts && opts->text) {
    std::string s = "error: " + g_kind + ": " + g_message + "\n";
    if (!witness.is_null()) s += "witness: " + witness.dump() + "\n";
    return dup(s);
  }
  return dup(rep.dump(2) + "\n");
}

void nalab_string_free(char* s) { std::free(s); }

nalab_status nalab_ring_build(const nalab_recipe* recipe, nalab_ring** out) {
  return guard([&] {
    if (!recipe || !out) throw nalab::Error(nalab::ErrorCode::InvalidArgument, "null argument");
    *out = new nalab_ring{nalab::build_recipe(recipe->recipe)};
  });
}

void nalab_ring_free(nalab_ring* r) { delete r; }

uint64_t nalab_ring_size(const nalab_ring* r) { return r ? r->built.ring().cardinality() : 0; }

size_t nalab_ring_dimension(const nalab_ring* r) {
  if (!r || !r->built.ring().is_algebra()) return 0;
  return r->built.ring().dim();
}

nalab_status nalab_ring_is_simple(const nalab_ring* r, const nalab_options* opts, nalab_simplicity* out) {
  return guard([&] {
    if (!r || !out) throw nalab::Error(nalab::ErrorCode::InvalidArgument, "null argument");
    auto v = nalab::decide_simplicity(r->built.ring(), to_options(opts).limits);
    *out = v.kind == nalab::Simplicity::Simple      ? NALAB_SIMPLE
           : v.kind == nalab::Simplicity::NotSimple ? NALAB_NOT_SIMPLE
                                                    : NALAB_INCONCLUSIVE;
  });
}

}  // extern "C"

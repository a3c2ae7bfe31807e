#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nalab/nalab.h"

namespace {

int emit(char* text, const std::string& out_path) {
  int rc = 0;
  if (out_path.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
      rc = 2;
    } else {
      out << text;
    }
  }
  nalab_string_free(text);
  return rc;
}

int fail(const char* command, const nalab_options& opts, nalab_status st, const std::string& out_path) {
  char* rep = nalab_error_report(command, &opts);
  std::fprintf(stderr, "error: %s: %s\n", nalab_last_error_kind(), nalab_last_error());
  const int rc = emit(rep, out_path);
  if (rc) return rc;
  switch (st) {
    case NALAB_ERR_INVALID_ARGUMENT:
    case NALAB_ERR_PARSE:
    case NALAB_ERR_SCHEMA:
    case NALAB_ERR_UNKNOWN_KIND:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build rings from recipes, check them and certify simplicity.", "nalab"};
  app.set_version_flag("--version", std::string(nalab_version()));
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0xC0FFEE;
  std::uint64_t cap = 0;
  std::string expect, out_path, format = "json", checks, recipe_path;
  bool force = false, timings = false;

  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--cap", cap, "Enumeration cap (0 keeps the default)");
  app.add_option("--expect", expect, "Turn the simplicity verdict into an assertion")
      ->check(CLI::IsMember({"simple", "not-simple"}));
  app.add_option("--out", out_path, "Write the report to this file");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_flag("--timings", timings, "Include wall-clock timings");

  auto with_recipe = [&](const char* name, const char* desc) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("recipe", recipe_path, "Recipe file (JSON)")->required();
    return sub;
  };
  auto* build = with_recipe("build", "Construct the ring and summarize it");
  auto* table = with_recipe("table", "Dump the multiplication table or basis products");
  table->add_flag("--force", force, "Dump tables above the size threshold");
  auto* check = with_recipe("check", "Run named predicates");
  check->add_option("--checks", checks, "Comma separated: simplicity,center,invariance,grading,degree-map");
  auto* certify = with_recipe("certify", "Run the matching theorem pipelines");
  auto* corpus = app.add_subcommand("corpus", "Cross-check the built-in corpus against the oracles");
  (void)build;
  (void)certify;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  nalab_options opts;
  nalab_options_init(&opts);
  opts.seed = seed;
  opts.cap = cap;
  opts.expect = expect == "simple" ? NALAB_EXPECT_SIMPLE : expect == "not-simple" ? NALAB_EXPECT_NOT_SIMPLE : NALAB_EXPECT_NONE;
  opts.checks = checks.empty() ? nullptr : checks.c_str();
  opts.force = force;
  opts.timings = timings;
  opts.text = format == "text";

  const std::string command = app.get_subcommands().front()->get_name();
  char* report = nullptr;
  int exit_code = 0;

  if (app.got_subcommand(corpus)) {
    nalab_status st = nalab_corpus(&opts, &report, &exit_code);
    if (st != NALAB_OK) return fail(command.c_str(), opts, st, out_path);
    const int rc = emit(report, out_path);
    return rc ? rc : exit_code;
  }

  nalab_recipe* recipe = nullptr;
  nalab_status st = nalab_recipe_load(recipe_path.c_str(), &recipe);
  if (st != NALAB_OK) return fail(command.c_str(), opts, st, out_path);
  st = nalab_run(command.c_str(), recipe, &opts, &report, &exit_code);
  nalab_recipe_free(recipe);
  if (st != NALAB_OK) return fail(command.c_str(), opts, st, out_path);
  const int rc = emit(report, out_path);
  return rc ? rc : exit_code;
}

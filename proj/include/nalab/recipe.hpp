#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nalab/certify.hpp"

namespace nalab {

inline constexpr const char* kToolVersion = NALAB_VERSION;

// A validated recipe document. Children are validated recursively before any
// construction happens.
struct Recipe {
  nlohmann::json doc;
  std::string kind;
};

// Throws ParseError (witness {line, column}), SchemaError (witness {path}) or
// UnknownKind (witness {path, kind}).
Recipe parse_recipe_text(const std::string& text);
Recipe parse_recipe_file(const std::string& path);
Recipe validate_recipe(const nlohmann::json& doc);

// The result of executing a recipe: the ring, its canonical grading, and the
// structure the matching pipelines need.
struct Built {
  std::string kind;
  Construction construction;
  std::optional<CayleyResult> cayley;
  std::vector<CayleyResult> tower;
  std::optional<DynamicsResult> dynamics;
  std::shared_ptr<SigmaDerivationData> ore;
  std::optional<RingMap> conjugation;  // anti-automorphism carried by doubles
  std::optional<RingMap> frobenius;    // finite fields
  std::optional<RingMap> derivative;   // truncated polynomial rings
  std::optional<ScalarSpec> scalar;    // scalar recipes

  const Ring& ring() const { return construction.ring; }
};
Built build_recipe(const Recipe& r);

// FNV-1a 64 of the canonical dump, as 16 hex digits.
std::string recipe_digest(const Recipe& r);

enum class Expectation { None, Simple, NotSimple };

struct RunOptions {
  Limits limits;
  Expectation expect = Expectation::None;
  std::vector<std::string> checks;  // empty means simplicity and center
  bool force = false;
  bool timings = false;
  std::uint64_t table_threshold = 64;
};

struct RunResult {
  nlohmann::json report;
  int exit_code = 0;
};

// command is build, table, check or certify. Throws InvalidArgument for an
// unknown command or check name.
RunResult run_command(const std::string& command, const Recipe& recipe, const RunOptions& opts);
RunResult run_corpus(const RunOptions& opts);

std::string render_text(const nlohmann::json& report);

}  // namespace nalab

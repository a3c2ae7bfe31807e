#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nalab/constructions.hpp"
#include "nalab/ore.hpp"

namespace nalab {

enum class PremiseStatus { Verified, Failed, Sampled, Assumed, Undecided, NotApplicable };
std::string_view to_string(PremiseStatus s);

struct Premise {
  std::string name;
  PremiseStatus status = PremiseStatus::Undecided;
  std::string detail;
  nlohmann::json witness = nullptr;
  // Seed and sample count for sampled premises.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> sampling;
  nlohmann::json to_json() const;
};

enum class OracleStatus { Agrees, Disagrees, Unavailable, NoClaim };
std::string_view to_string(OracleStatus s);

// A theorem applied to one instance. `premises` are the hypotheses of the
// cited statement; `criteria` are the terms of an equivalence it asserts
// (empty for plain implications). The conclusion is the truth value of
// `property`, or empty when withheld.
struct Certificate {
  std::string instance;
  std::string theorem;
  std::string property;
  std::vector<Premise> premises;
  std::vector<Premise> criteria;
  std::optional<bool> conclusion;
  std::string route;
  bool conditional = false;
  OracleStatus oracle = OracleStatus::Unavailable;
  std::optional<bool> oracle_value;
  std::string oracle_method;
  std::string oracle_detail;
  nlohmann::json oracle_witness = nullptr;
  nlohmann::json limits;
  std::vector<std::string> notes;

  const Premise* first_failure() const;
  bool premises_hold() const;
  nlohmann::json to_json() const;
};

// Throws PremiseFailure naming the first failed premise, with its witness.
void require_premises(const Certificate& c);

// Exact simplicity where available: brute force or the module test over
// F_p; over Q, field recognition for commutative associative unital algebras
// of dimension at most 2, or a product of such fields, and otherwise the
// witness search.
SimplicityVerdict decide_simplicity(const Ring& r, const Limits& lim = {});
// Z commutative, unital and every nonzero element invertible (finite case);
// field recognition over Q. Empty when undecidable here.
std::optional<bool> is_field(const Ring& r, const Limits& lim = {});
// All ideals when they can be listed: enumeration over finite rings; over Q,
// products of recognized fields.
std::optional<std::vector<Span>> list_ideals(const Ring& r, const Limits& lim = {});

struct SigmaSimplicity {
  std::optional<bool> sigma_simple;
  std::optional<Span> witness;
  std::size_t ideals_checked = 0;
  std::string method;
};
// No nonzero proper ideal I of B with σ(I) ⊆ I.
SigmaSimplicity sigma_simplicity(const Ring& b, const RingMap& sigma, const Limits& lim = {});

// B = A_0 inside A. A complement is taken from the grading when one is given.
Certificate certify_necessity(const Span& b, const Grading* grading, const Limits& lim = {},
                              std::string instance = {});
// The degree map defaults to the support degree map of the grading with
// X = generators of B.
Certificate certify_sufficiency(const Span& b, const Grading* grading, const DegreeMap* dm = nullptr,
                                const Limits& lim = {}, std::string instance = {});
Certificate certify_groupoid_graded(const Grading& gr, const Limits& lim = {}, std::string instance = {});
Certificate certify_crossed_product(const Construction& c, const Limits& lim = {}, std::string instance = {});
// `base_certified` records that B was certified simple elsewhere (the
// previous tower level).
Certificate certify_cayley(const CayleyResult& r, bool base_certified = false, const Limits& lim = {},
                           std::string instance = {});
std::vector<Certificate> certify_cayley_tower(const std::vector<CayleyResult>& tower, const Limits& lim = {});
Certificate certify_twisted(const Construction& c, const Limits& lim = {}, std::string instance = {});
Certificate certify_matrix(const Construction& c, const std::vector<std::optional<bool>>& certified_bases = {},
                           const Limits& lim = {}, std::string instance = {});
Certificate certify_dynamics(const DynamicsResult& d, const Limits& lim = {}, std::string instance = {});
// B σ-δ-simple is necessary for simplicity of B[x;σ,δ]. A failure is
// witnessed by a σ-δ-invariant ideal I, whose extension IA is proper.
Certificate certify_ore(const SigmaDerivationData& data, const Limits& lim = {}, std::string instance = {});

// The ideal spanned by b(u_k - u_{kg}) for a non-identity g acting trivially,
// when the action is not faithful.
std::optional<Span> nonfaithful_witness_ideal(const Construction& c);
// Functions vanishing on the orbit of a point, when the action is not minimal.
std::optional<Span> vanishing_ideal_witness(const Construction& c);

struct CorpusInstance {
  std::string id;
  std::string description;
  std::optional<Construction> construction;
  std::vector<CayleyResult> tower;  // a tower, certified level by level
  std::optional<CayleyResult> cayley;
  std::optional<DynamicsResult> dynamics;
  std::shared_ptr<SigmaDerivationData> ore;
  std::vector<std::string> pipelines;  // necessity, sufficiency, groupoid, crossed, cayley, tower, twisted, matrix, dynamics, ore
  bool crossed_product_instance() const { return construction && construction->system.has_value(); }
};

struct CorpusEntry {
  std::string id;
  std::string description;
  std::function<CorpusInstance()> build;
};
const std::vector<CorpusEntry>& builtin_corpus();

std::vector<Certificate> run_pipelines(const CorpusInstance& inst, const Limits& lim = {});

struct CorpusReport {
  nlohmann::json report;
  std::size_t disagreements = 0;
  std::size_t instances = 0;
};
// Runs every built-in instance (in parallel, merged in corpus order). Wall
// clock timings are included only on request so that runs stay
// byte-identical.
CorpusReport cross_check_corpus(const Limits& lim = {}, bool timings = false);

}  // namespace nalab

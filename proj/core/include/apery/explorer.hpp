#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "apery/criteria.hpp"

namespace apery {

/// Monomial rings k[[S]] for every numerical semigroup with multiplicity in
/// [min_multiplicity, max_multiplicity] and Frobenius number at most max_frobenius.
struct MonomialFamily {
  std::size_t min_multiplicity = 2;
  std::size_t max_multiplicity = 4;
  long max_frobenius = 12;
};

/// Rings given generator by generator.
struct ExplicitRing {
  std::string label;
  std::vector<std::string> generators;
};

struct ExplicitFamily {
  std::vector<ExplicitRing> rings;
};

/// Starting from t^{n_1}, ..., t^{n_k}, adds c t^{n_i + d} to one generator
/// n_i (i >= 2) for every offset d and nonzero coefficient c.
struct PerturbedFamily {
  std::vector<std::size_t> base;
  std::vector<std::size_t> offsets;
  std::vector<long> coefficients;
};

using Family = std::variant<MonomialFamily, ExplicitFamily, PerturbedFamily>;

struct FamilySpec {
  Field field = Field::rational();
  std::vector<std::string> questions = {"Q1", "Q2", "Q3"};
  BfBudget budget;
  /// Instances are numbered family by family in this order.
  std::vector<Family> families;
};

/// Minimal generators of every numerical semigroup with the given multiplicity
/// and Frobenius number at most max_frobenius, via Kunz coordinates of the Apery set.
std::vector<std::vector<std::size_t>> enumerate_semigroups(std::size_t multiplicity, long max_frobenius);

struct SweepInstance {
  /// Family position then instance position; the report is sorted by it.
  std::size_t family = 0;
  std::size_t index = 0;
  std::string label;
  std::vector<std::string> generators;
};

std::vector<SweepInstance> expand_family(const FamilySpec& spec);

struct InstanceResult {
  std::string label;
  std::vector<std::string> generators;
  /// "ok" or "error".
  std::string status = "ok";
  std::string error;
  std::string semigroup;
  std::size_t e = 0;
  std::size_t nu = 0;
  std::size_t r = 0;
  bool ed_default = false;
  /// Candidate reductions for which the filtration is essentially divisible;
  /// only searched when BF is not certified.
  std::vector<std::string> ed_reductions;
  std::size_t reductions_tried = 0;
  bool bf_holds = false;
  std::string bf_route;
  std::string bf_status;
  bool natural_witness_holds = false;
  bool budget_exhausted = false;
  bool cm_hilbert = false;
  bool a_equals_b = false;
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  std::vector<std::size_t> eps;
  bool q1 = false;
  bool q2 = false;
  bool q3 = false;
  std::string note;
};

InstanceResult explore_instance(const SweepInstance& instance, const FamilySpec& spec);

struct SweepSummary {
  std::size_t instances = 0;
  std::size_t q1 = 0;
  std::size_t q2 = 0;
  std::size_t q3 = 0;
  std::size_t bf_failed_natural = 0;
  std::size_t budget_exhausted = 0;
  std::size_t errors = 0;
};

struct SweepReport {
  std::vector<std::string> questions;
  std::vector<InstanceResult> instances;
  SweepSummary summary;
};

/// Runs every instance on up to `threads` workers; output order is the instance key order.
SweepReport question_explorer(const FamilySpec& spec, std::size_t threads = 1);

}  // namespace apery

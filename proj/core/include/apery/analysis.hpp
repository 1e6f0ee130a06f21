#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "apery/criteria.hpp"
#include "apery/explorer.hpp"

namespace nlohmann {

template <typename T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& value) {
    if (value) {
      j = *value;
    } else {
      j = nullptr;
    }
  }
  static void from_json(const json& j, std::optional<T>& value) {
    if (j.is_null()) {
      value.reset();
    } else {
      value = j.get<T>();
    }
  }
};

}  // namespace nlohmann

namespace apery {

using json = nlohmann::json;

/// One ring as given on the command line or in an input document.
struct RingInput {
  std::string label;
  Field field = Field::rational();
  std::vector<std::string> generators;
  std::string reduction = "default";
  std::vector<std::string> apery_basis;
  std::optional<std::size_t> precision;
};

/// Accepts one ring object or an array of them; labels default to "ring<k>" and must be unique.
std::vector<RingInput> parse_ring_inputs(const json& document);
/// "rational", "QQ", a prime "101", "GF(101)" or {"prime": 101}.
Field parse_field(const json& value);
json field_to_json(const Field& field);

struct RingEcho {
  std::string field;
  std::vector<std::string> generators;
  std::size_t precision = 0;
  std::string semigroup;
  std::vector<std::size_t> semigroup_generators;
  std::size_t e = 0;
  std::size_t nu = 0;
  std::size_t conductor = 0;
  long frobenius = 0;
  std::size_t r = 0;
  std::vector<std::size_t> apery;
  bool monomial = false;
  /// "semigroup" or "echelon".
  std::string path;
};

struct BasisEntry {
  std::size_t cls = 0;
  std::size_t value = 0;
  std::size_t order = 0;
  std::string element;
};

struct AnalysisReport {
  std::string label;
  RingEcho ring;
  InvariantProfile invariants;
  std::vector<BasisEntry> apery_basis;
  /// m^{r+1} = x m^r for the reduction used.
  bool reduction_verified = false;
  EssentialDivisibilityReport essential_divisibility;
  LemmaCheck lemma;
  BFReport bf;
  /// check_bf on the supplied basis, when one was supplied.
  std::optional<BFReport> given_basis_bf;
  CMReport cm;
  CIReport ci;
  /// Wall-clock milliseconds; only filled on request so reports stay reproducible.
  std::optional<double> timing_ms;
};

struct AnalysisOptions {
  BfBudget budget;
  bool timing = false;
};

/// Full pipeline for one ring; asserts the invariant relations and throws DefectError when one fails.
AnalysisReport analyze(const RingInput& input, const AnalysisOptions& options = {});

/// Outcome of one batch item: a report or the error that stopped it.
struct BatchItem {
  std::string label;
  std::optional<AnalysisReport> report;
  /// 0 success, 2 input error, 3 internal defect.
  int code = 0;
  std::string error;
};

/// Items run concurrently; results keep input order.
std::vector<BatchItem> analyze_batch(const std::vector<RingInput>& inputs, const AnalysisOptions& options,
                                     std::size_t threads);

std::string format_table(const AnalysisReport& report);

struct SemigroupReport {
  std::vector<std::size_t> generators;
  std::vector<std::size_t> apery;
  long frobenius = 0;
  std::size_t conductor = 0;
  std::size_t genus = 0;
  bool symmetric = false;
  std::size_t r = 0;
  /// Class-indexed Apery vectors of iM for i = 0..r+1.
  std::vector<std::vector<std::size_t>> power_apery;
  std::optional<CIClassification> ci;
};

SemigroupReport semigroup_report(std::span<const std::size_t> generators);
std::string format_table(const SemigroupReport& report);

FamilySpec parse_family_spec(const json& document);
std::string format_table(const SweepReport& report);

void to_json(json& j, const Field& f);
void from_json(const json& j, Field& f);
void to_json(json& j, const ValueSet& v);
void from_json(const json& j, ValueSet& v);
void to_json(json& j, const CICase& c);
void from_json(const json& j, CICase& c);

#define APERY_JSON_DECL(T)               \
  void to_json(json& j, const T& value); \
  void from_json(const json& j, T& value);

APERY_JSON_DECL(RingEcho)
APERY_JSON_DECL(BasisEntry)
APERY_JSON_DECL(Microinvariants)
APERY_JSON_DECL(HilbertData)
APERY_JSON_DECL(InvariantProfile)
APERY_JSON_DECL(EdWitness)
APERY_JSON_DECL(EssentialDivisibilityReport)
APERY_JSON_DECL(LemmaRow)
APERY_JSON_DECL(LemmaCheck)
APERY_JSON_DECL(BfCertificate)
APERY_JSON_DECL(BfWitness)
APERY_JSON_DECL(BFReport)
APERY_JSON_DECL(CMReport)
APERY_JSON_DECL(CIRepresentation)
APERY_JSON_DECL(CIClassification)
APERY_JSON_DECL(CIReport)
APERY_JSON_DECL(TransferReport)
APERY_JSON_DECL(AnalysisReport)
APERY_JSON_DECL(SemigroupReport)
APERY_JSON_DECL(InstanceResult)
APERY_JSON_DECL(SweepSummary)
APERY_JSON_DECL(SweepReport)

#undef APERY_JSON_DECL

}  // namespace apery

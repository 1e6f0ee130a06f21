#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apery/value_set.hpp"

namespace apery {

/// A numerical semigroup: a submonoid of N with finite complement.
///
/// Apery vectors are indexed by residue class: apery()[j] is the least member
/// congruent to j modulo the multiplicity.
class NumericalSemigroup {
 public:
  /// Throws InputError on empty input, a zero generator, or gcd != 1.
  static NumericalSemigroup from_generators(std::span<const std::size_t> generators);
  /// Semigroup with the given member set; throws DefectError if it is not
  /// closed under addition or does not contain 0.
  static NumericalSemigroup from_values(const ValueSet& values);

  /// Minimal generators, ascending.
  const std::vector<std::size_t>& generators() const { return generators_; }
  std::size_t multiplicity() const { return apery_.size(); }
  std::size_t embedding_dimension() const { return generators_.size(); }
  /// Largest gap, or -1 for N itself.
  long frobenius() const { return static_cast<long>(conductor()) - 1; }
  std::size_t conductor() const { return values_.tail(); }
  const std::vector<std::size_t>& apery() const { return apery_; }
  const ValueSet& values() const { return values_; }
  bool contains(std::size_t n) const { return values_.contains(n); }
  std::size_t genus() const { return values_.gaps().size(); }
  bool is_symmetric() const;
  /// "<6,7,15>".
  std::string to_string() const;

  friend bool operator==(const NumericalSemigroup& a, const NumericalSemigroup& b) {
    return a.values_ == b.values_;
  }

 private:
  explicit NumericalSemigroup(ValueSet values);

  ValueSet values_;
  std::vector<std::size_t> generators_;
  std::vector<std::size_t> apery_;
};

inline NumericalSemigroup sg_from_generators(std::span<const std::size_t> generators) {
  return NumericalSemigroup::from_generators(generators);
}

/// The value set iM of the i-th power of the maximal ideal of k[[S]], where
/// M = S \ {0}; i = 0 gives S itself.
struct SemigroupIdealPower {
  std::size_t i = 0;
  ValueSet values;
  /// Every n >= tail_threshold lies in iM; at most c + i*e.
  std::size_t tail_threshold = 0;
  std::vector<std::size_t> apery;
};

/// Window above which every natural lies in iM: c for i = 0, max(c, e) + (i-1)e after.
std::size_t power_tail_threshold(std::size_t conductor, std::size_t multiplicity, std::size_t i);

SemigroupIdealPower sg_power_values(const NumericalSemigroup& s, std::size_t i);
/// Powers 0..max_i in one pass.
std::vector<SemigroupIdealPower> sg_power_sequence(const NumericalSemigroup& s, std::size_t max_i);

/// Iteration cap for reduction-number searches: 4c/e + 16.
std::size_t reduction_number_cap(std::size_t conductor, std::size_t multiplicity);

/// Least n with (n+1)M = e + nM.
std::size_t sg_reduction_number(const NumericalSemigroup& s);

enum class CICase { a, b, c, none };
std::string to_string(CICase c);

/// One way of writing the minimal generators as {na, nb, n1*a + n2*b}.
struct CIRepresentation {
  std::size_t n = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  CICase case_tag = CICase::none;
  /// "n<n1" or "n1<n" inside case a, empty otherwise.
  std::string subcase;
  bool gr_ci = false;

  std::size_t third() const { return n1 * a + n2 * b; }
};

struct CIClassification {
  bool is_ci = false;
  bool gr_ci = false;
  /// Embedding dimension at most 2.
  bool plane = false;
  std::vector<CIRepresentation> representations;
  /// Representations are sorted by case tag (a, b, c, none) then parameters.
  /// Index of the reported representation: the first with gr_ci, else the first.
  std::optional<std::size_t> chosen;

  const CIRepresentation* chosen_representation() const {
    return chosen ? &representations[*chosen] : nullptr;
  }
};

/// Complete-intersection classification of a semigroup with at most three
/// minimal generators. Throws InputError for four or more.
CIClassification sg_three_gen_ci(const NumericalSemigroup& s);

}  // namespace apery

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apery/echelon.hpp"
#include "apery/semigroup.hpp"
#include "apery/series.hpp"

namespace apery {

struct RingOptions {
  /// Working precision override; raised automatically when it fails the certificate.
  std::optional<std::size_t> precision;
  /// Use echelon arithmetic even when every generator is a monomial.
  bool force_echelon = false;
};

enum class SpanKind { power, sum, intersection };
std::string to_string(SpanKind kind);

/// One step of the filtration: m^i, m^i + xR or m^i ∩ xR.
struct PowerSpan {
  std::size_t i = 0;
  SpanKind kind = SpanKind::power;
  Subspace space;
  ValueSet values;
  /// Class-indexed Apery vector of `values`.
  std::vector<std::size_t> apery;
};

/// An element x of value e; xR is a minimal reduction of the maximal ideal.
struct ReductionElement {
  TruncatedSeries x;
  bool is_monomial() const { return x.is_monomial(); }
  std::string to_string() const { return x.to_string(); }
};

/// f_j with v(f_j) = w_j and ord(f_j) = b_j, indexed by residue class j.
struct AperyBasis {
  std::vector<TruncatedSeries> elements;
  std::vector<std::size_t> values;
  std::vector<std::size_t> orders;
};

/// R = k[[g_1, ..., g_nu]] inside k[[t]], with its value semigroup and the
/// m-adic filtration computed exactly. Immutable after ring_build; filtration
/// steps are memoized behind a lock.
class CurveRing {
 public:
  CurveRing(CurveRing&&) noexcept;
  CurveRing& operator=(CurveRing&&) noexcept;
  ~CurveRing();

  const Field& field() const { return field_; }
  /// Working precision N: every input series is read modulo t^N.
  std::size_t precision() const { return precision_; }
  /// Generators ordered by value.
  const std::vector<TruncatedSeries>& generators() const { return generators_; }
  const NumericalSemigroup& semigroup() const { return semigroup_; }
  std::size_t multiplicity() const { return semigroup_.multiplicity(); }
  std::size_t conductor() const { return semigroup_.conductor(); }
  /// dim m/m^2.
  std::size_t embedding_dimension() const { return embedding_dimension_; }
  std::size_t reduction_number() const { return reduction_number_; }
  /// Every generator is a single term, so R = k[[S]].
  bool is_monomial() const { return monomial_; }
  /// Filtration computed by semigroup combinatorics rather than echelon arithmetic.
  bool uses_semigroup_path() const { return semigroup_path_; }

  /// R modulo its conductor window.
  const Subspace& ring_space() const { return ring_space_; }
  /// m^i for any i (memoized).
  const Subspace& power_space(std::size_t i) const;
  /// x R.
  const Subspace& reduction_ideal(const ReductionElement& x) const;
  /// v(m^i) for any i, using v(m^i) = (i - r)e + v(m^r) past the reduction number.
  ValueSet power_values(std::size_t i) const;

 private:
  friend CurveRing ring_build(const Field&, std::span<const std::string>, const RingOptions&);
  struct Cache;

  CurveRing(Field field, std::size_t precision, std::vector<TruncatedSeries> generators, NumericalSemigroup s,
            Subspace ring_space, bool monomial, bool semigroup_path);
  void finish_build();
  Subspace compute_power(std::size_t i, const Subspace& previous) const;

  Field field_;
  std::size_t precision_;
  std::vector<TruncatedSeries> generators_;
  NumericalSemigroup semigroup_;
  Subspace ring_space_;
  bool monomial_ = false;
  bool semigroup_path_ = false;
  std::size_t embedding_dimension_ = 0;
  std::size_t reduction_number_ = 0;
  std::unique_ptr<Cache> cache_;
};

/// Builds and validates the ring generated by the given series expressions.
CurveRing ring_build(const Field& field, std::span<const std::string> generators, const RingOptions& options = {});
CurveRing ring_build(const Field& field, std::initializer_list<std::string> generators, const RingOptions& options = {});

/// Default starting precision c0 + (cap + 2)e + e from the naive semigroup of generator orders.
std::size_t default_precision(const NumericalSemigroup& naive);

/// Parses `expression` at the ring precision and checks membership in R.
TruncatedSeries ring_element(const CurveRing& ring, std::string_view expression);
bool ring_contains(const CurveRing& ring, const TruncatedSeries& a);

/// m^i with 0 <= i <= r + 2.
PowerSpan power_span(const CurveRing& ring, std::size_t i);
/// max { i : a in m^i } for a nonzero a in R.
std::size_t element_order(const CurveRing& ring, const TruncatedSeries& a);
/// max { i : s in v(m^i) } for s in S.
std::size_t vord(const CurveRing& ring, std::size_t s);
/// "default" picks a generator of value e, preferring a monomial one.
ReductionElement make_reduction(const CurveRing& ring, std::string_view expression);
ReductionElement make_reduction(const CurveRing& ring, const TruncatedSeries& x);
PowerSpan power_plus_reduction(const CurveRing& ring, const ReductionElement& x, std::size_t i);
PowerSpan power_intersect_reduction(const CurveRing& ring, const ReductionElement& x, std::size_t i);
std::size_t ring_reduction_number(const CurveRing& ring);
/// Checks m^{r+1} = x m^r as subspaces.
bool verify_reduction_equality(const CurveRing& ring, const ReductionElement& x);
AperyBasis apery_basis_extract(const CurveRing& ring);

}  // namespace apery

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "apery/series.hpp"
#include "apery/value_set.hpp"

namespace apery {

/// Monic rows with pairwise distinct leading exponents, all truncated at a
/// common precision. Leading exponents are pivots for t-adic elimination.
class EchelonBasis {
 public:
  EchelonBasis(Field field, std::size_t precision);

  const Field& field() const { return field_; }
  std::size_t precision() const { return precision_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// Leading-term elimination of s against the rows, modulo t^precision().
  /// Requires s.precision() >= precision().
  TruncatedSeries reduce(const TruncatedSeries& s) const;
  /// Reduces s; a nonzero remainder becomes a new monic row. Returns the remainder.
  TruncatedSeries insert(const TruncatedSeries& s);
  bool contains(const TruncatedSeries& s) const { return reduce(s).is_zero(); }

  bool has_pivot(std::size_t exponent) const {
    return exponent < pivot_.size() && pivot_[exponent] >= 0;
  }
  const TruncatedSeries& row(std::size_t lead) const;
  /// The row with leading exponent `lead`, reduced against every other row
  /// so that it vanishes at all other pivots. Canonical for the span.
  TruncatedSeries canonical_row(std::size_t lead) const;
  /// Rows in insertion order.
  const std::vector<TruncatedSeries>& rows() const { return rows_; }
  /// Pivots, ascending.
  std::vector<std::size_t> leading_exponents() const;

 private:
  Field field_;
  std::size_t precision_;
  std::vector<TruncatedSeries> rows_;
  std::vector<int> pivot_;
};

/// Leading exponents: the orders of the nonzero elements of the span below the precision.
std::vector<std::size_t> span_orders(const EchelonBasis& basis);

/// A k-subspace V of k[[t]] containing t^tail k[[t]], stored as an echelon
/// basis modulo t^tail. Each row, read as an exact polynomial, is an element of V.
class Subspace {
 public:
  explicit Subspace(EchelonBasis basis) : basis_(std::move(basis)) {}
  /// Builds the span of `generators` plus t^tail k[[t]].
  static Subspace spanned_by(const Field& field, std::size_t tail, std::span<const TruncatedSeries> generators);

  const EchelonBasis& basis() const { return basis_; }
  const Field& field() const { return basis_.field(); }
  std::size_t tail() const { return basis_.precision(); }

  /// Throws DefectError if s is not known to enough precision to decide.
  bool contains(const TruncatedSeries& s) const;
  ValueSet values() const;
  /// Canonical element of value u lifted to `precision`, t^u when u >= tail(),
  /// nothing when u is not a value of V.
  std::optional<TruncatedSeries> element_with_value(std::size_t u, std::size_t precision) const;
  /// Rows lifted to `precision` followed by t^n for tail() <= n < upto.
  std::vector<TruncatedSeries> spanning_elements(std::size_t precision, std::size_t upto) const;

 private:
  EchelonBasis basis_;
};

/// V + W.
Subspace subspace_sum(const Subspace& v, const Subspace& w);
/// y * V.
Subspace subspace_multiple(const Subspace& v, const TruncatedSeries& y);
/// y^{-1} V; requires every element of V to be divisible by y in k[[t]].
Subspace subspace_quotient(const Subspace& v, const TruncatedSeries& y);

/// Requires multiplier * f to lie in target.
struct MembershipConstraint {
  TruncatedSeries multiplier;
  const Subspace* target;
};

/// { f in domain : multiplier_k * f in target_k for every k }, computed as one
/// block elimination. Multipliers must be known to sufficient precision.
Subspace subspace_solve(const Subspace& domain, std::span<const MembershipConstraint> constraints);
/// V intersected with W.
Subspace subspace_intersection(const Subspace& v, const Subspace& w);

}  // namespace apery

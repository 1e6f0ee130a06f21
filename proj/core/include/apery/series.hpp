#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apery/field.hpp"

namespace apery {

/// A power series in t known exactly modulo t^precision.
///
/// Terms are stored sparsely in increasing exponent order; zero coefficients
/// and exponents at or beyond the precision are never stored. A series with no
/// terms has order "at least precision", reported by order() as precision().
class TruncatedSeries {
 public:
  struct Term {
    std::size_t exponent;
    Scalar coefficient;
    friend bool operator==(const Term&, const Term&) = default;
  };

  TruncatedSeries(Field field, std::size_t precision);

  /// Merges repeated exponents, drops zeros and anything at or beyond `precision`.
  static TruncatedSeries from_terms(Field field, std::size_t precision, std::vector<Term> terms);
  static TruncatedSeries monomial(const Field& field, std::size_t exponent, std::size_t precision);
  static TruncatedSeries constant(const Scalar& c, std::size_t precision);

  const Field& field() const { return field_; }
  std::size_t precision() const { return precision_; }
  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Least stored exponent, or precision() when no term is known to be nonzero.
  std::size_t order() const { return terms_.empty() ? precision_ : terms_.front().exponent; }
  const Scalar& leading_coefficient() const;
  Scalar coefficient(std::size_t exponent) const;
  bool is_monomial() const { return terms_.size() == 1; }

  /// Precision lowered to min(n, precision()).
  TruncatedSeries truncated(std::size_t n) const;
  /// Reinterprets the stored terms as an exact polynomial known modulo t^n.
  TruncatedSeries lifted(std::size_t n) const;
  /// Multiplication by t^k.
  TruncatedSeries shifted_up(std::size_t k) const;
  /// Division by t^k; requires order() >= k.
  TruncatedSeries shifted_down(std::size_t k) const;
  TruncatedSeries scaled(const Scalar& c) const;
  /// Leading coefficient normalized to 1.
  TruncatedSeries monic() const;

  TruncatedSeries operator-() const;
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) = default;

  /// Expression in the input grammar, e.g. "3*t^25+3*t^26+t^27"; "0" when empty.
  std::string to_string() const;

 private:
  Field field_;
  std::size_t precision_;
  std::vector<Term> terms_;
};

/// Parses `term (("+"|"-") term)*` with term = [coeff "*"] "t" ["^" nat] | coeff.
TruncatedSeries parse_series(std::string_view text, const Field& field, std::size_t precision);

/// Product with precision min(N_a + ord b, N_b + ord a), capped at max(N_a, N_b).
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_pow(const TruncatedSeries& a, std::size_t k);
/// Exact quotient a / b in k[[t]]; requires ord a >= ord b and b != 0.
TruncatedSeries series_div(const TruncatedSeries& a, const TruncatedSeries& b);

}  // namespace apery

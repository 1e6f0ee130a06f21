#include "apery/series.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace apery {
namespace {

void require_same_field(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!(a.field() == b.field())) {
    throw InputError("series over different fields: " + a.field().to_string() + " vs " + b.field().to_string());
  }
}

TruncatedSeries collect(const Field& field, std::size_t precision, std::size_t base,
                        std::vector<Scalar>& dense) {
  std::vector<TruncatedSeries::Term> terms;
  for (std::size_t k = 0; k < dense.size() && base + k < precision; ++k) {
    if (!dense[k].is_zero()) terms.push_back({base + k, std::move(dense[k])});
  }
  return TruncatedSeries::from_terms(field, precision, std::move(terms));
}

class SeriesParser {
 public:
  SeriesParser(std::string_view text, const Field& field, std::size_t precision)
      : text_(text), field_(field), precision_(precision) {}

  TruncatedSeries parse() {
    std::vector<TruncatedSeries::Term> terms;
    skip_space();
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = take() == '-';
    }
    while (true) {
      skip_space();
      auto term = parse_term();
      if (negative) term.coefficient = -term.coefficient;
      terms.push_back(std::move(term));
      skip_space();
      if (at_end()) break;
      const char op = take();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      negative = op == '-';
    }
    return TruncatedSeries::from_terms(field_, precision_, std::move(terms));
  }

 private:
  TruncatedSeries::Term parse_term() {
    mpq_class coeff(1);
    bool has_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
      coeff = parse_coefficient();
      has_coeff = true;
      skip_space();
      if (peek() != '*') return {0, Scalar(field_, coeff)};
      take();
      skip_space();
    }
    if (peek() != 't') fail(has_coeff ? "expected 't' after '*'" : "expected coefficient or 't'");
    take();
    skip_space();
    std::size_t exponent = 1;
    if (peek() == '^') {
      take();
      skip_space();
      exponent = parse_natural();
    }
    if (exponent >= precision_) {
      throw InputError("exponent " + std::to_string(exponent) + " in '" + std::string(text_) +
                       "' is not below the precision " + std::to_string(precision_));
    }
    return {exponent, Scalar(field_, coeff)};
  }

  mpq_class parse_coefficient() {
    mpz_class num(digits());
    mpz_class den(1);
    skip_space();
    if (peek() == '/') {
      take();
      skip_space();
      den = mpz_class(digits());
      if (den == 0) throw InputError("division by zero in coefficient of '" + std::string(text_) + "'");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  std::size_t parse_natural() {
    const std::string d = digits();
    if (d.size() > 9) fail("exponent too large");
    return static_cast<std::size_t>(std::stoul(d));
  }

  std::string digits() {
    std::string out;
    while (std::isdigit(static_cast<unsigned char>(peek())) != 0) out.push_back(take());
    if (out.empty()) fail("expected digits");
    return out;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char take() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("parse error in series '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                     ": " + what);
  }

  std::string_view text_;
  Field field_;
  std::size_t precision_;
  std::size_t pos_ = 0;
};

}  // namespace

TruncatedSeries::TruncatedSeries(Field field, std::size_t precision) : field_(field), precision_(precision) {}

TruncatedSeries TruncatedSeries::from_terms(Field field, std::size_t precision, std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  TruncatedSeries out(field, precision);
  for (auto& t : terms) {
    if (t.exponent >= precision) break;
    if (!(t.coefficient.field() == field)) throw InputError("coefficient from a different field");
    if (!out.terms_.empty() && out.terms_.back().exponent == t.exponent) {
      out.terms_.back().coefficient += t.coefficient;
      if (out.terms_.back().coefficient.is_zero()) out.terms_.pop_back();
    } else if (!t.coefficient.is_zero()) {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::monomial(const Field& field, std::size_t exponent, std::size_t precision) {
  TruncatedSeries out(field, precision);
  if (exponent < precision) out.terms_.push_back({exponent, Scalar::one(field)});
  return out;
}

TruncatedSeries TruncatedSeries::constant(const Scalar& c, std::size_t precision) {
  TruncatedSeries out(c.field(), precision);
  if (!c.is_zero() && precision > 0) out.terms_.push_back({0, c});
  return out;
}

const Scalar& TruncatedSeries::leading_coefficient() const {
  if (terms_.empty()) throw DefectError("leading coefficient of a zero series");
  return terms_.front().coefficient;
}

Scalar TruncatedSeries::coefficient(std::size_t exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, std::size_t k) { return t.exponent < k; });
  if (it != terms_.end() && it->exponent == exponent) return it->coefficient;
  return Scalar::zero(field_);
}

TruncatedSeries TruncatedSeries::truncated(std::size_t n) const {
  TruncatedSeries out(field_, std::min(n, precision_));
  for (const auto& t : terms_) {
    if (t.exponent >= out.precision_) break;
    out.terms_.push_back(t);
  }
  return out;
}

TruncatedSeries TruncatedSeries::lifted(std::size_t n) const {
  TruncatedSeries out(field_, n);
  for (const auto& t : terms_) {
    if (t.exponent >= n) break;
    out.terms_.push_back(t);
  }
  return out;
}

TruncatedSeries TruncatedSeries::shifted_up(std::size_t k) const {
  TruncatedSeries out(field_, precision_ + k);
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.exponent += k;
  return out;
}

TruncatedSeries TruncatedSeries::shifted_down(std::size_t k) const {
  if (order() < k || precision_ < k) throw DefectError("shifted_down below the series order");
  TruncatedSeries out(field_, precision_ - k);
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.exponent -= k;
  return out;
}

TruncatedSeries TruncatedSeries::scaled(const Scalar& c) const {
  if (c.is_zero()) return TruncatedSeries(field_, precision_);
  TruncatedSeries out = *this;
  for (auto& t : out.terms_) t.coefficient *= c;
  return out;
}

TruncatedSeries TruncatedSeries::monic() const {
  if (terms_.empty()) return *this;
  return scaled(leading_coefficient().inverse());
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_field(a, b);
  const std::size_t n = std::min(a.precision(), b.precision());
  TruncatedSeries out(a.field(), n);
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  while (true) {
    const bool more_a = ia != a.terms_.end() && ia->exponent < n;
    const bool more_b = ib != b.terms_.end() && ib->exponent < n;
    if (!more_a && !more_b) break;
    if (more_a && (!more_b || ia->exponent < ib->exponent)) {
      out.terms_.push_back(*ia++);
    } else if (more_b && (!more_a || ib->exponent < ia->exponent)) {
      out.terms_.push_back(*ib++);
    } else {
      Scalar s = ia->coefficient + ib->coefficient;
      if (!s.is_zero()) out.terms_.push_back({ia->exponent, std::move(s)});
      ++ia;
      ++ib;
    }
  }
  return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return series_mul(a, b); }

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = t.coefficient.to_string();
    bool negative = !c.empty() && c.front() == '-';
    if (negative) c.erase(0, 1);
    if (!first) out += negative ? "-" : "+";
    else if (negative) out += "-";
    first = false;
    if (t.exponent == 0) {
      out += c;
      continue;
    }
    if (c != "1") out += c + "*";
    out += "t";
    if (t.exponent != 1) out += "^" + std::to_string(t.exponent);
  }
  return out;
}

TruncatedSeries parse_series(std::string_view text, const Field& field, std::size_t precision) {
  if (precision == 0) throw InputError("series precision must be positive");
  return SeriesParser(text, field, precision).parse();
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_field(a, b);
  const std::size_t precision =
      std::min(std::min(a.precision() + b.order(), b.precision() + a.order()), std::max(a.precision(), b.precision()));
  if (a.is_zero() || b.is_zero()) return TruncatedSeries(a.field(), precision);
  const std::size_t base = a.order() + b.order();
  if (base >= precision) return TruncatedSeries(a.field(), precision);
  if (a.is_monomial() || b.is_monomial()) {
    const TruncatedSeries& mono = a.is_monomial() ? a : b;
    const TruncatedSeries& other = a.is_monomial() ? b : a;
    const auto& lead = mono.terms().front();
    TruncatedSeries out = other.shifted_up(lead.exponent).truncated(precision);
    return lead.coefficient.is_one() ? out : out.scaled(lead.coefficient);
  }
  std::vector<Scalar> dense(precision - base, Scalar::zero(a.field()));
  for (const auto& ta : a.terms()) {
    if (ta.exponent + b.order() >= precision) break;
    for (const auto& tb : b.terms()) {
      const std::size_t k = ta.exponent + tb.exponent;
      if (k >= precision) break;
      dense[k - base] += ta.coefficient * tb.coefficient;
    }
  }
  return collect(a.field(), precision, base, dense);
}

TruncatedSeries series_pow(const TruncatedSeries& a, std::size_t k) {
  TruncatedSeries result = TruncatedSeries::constant(Scalar::one(a.field()), a.precision());
  TruncatedSeries base = a;
  while (k > 0) {
    if (k & 1U) result = series_mul(result, base);
    k >>= 1U;
    if (k > 0) base = series_mul(base, base);
  }
  return result;
}

TruncatedSeries series_div(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_field(a, b);
  if (b.is_zero()) throw InputError("division by a series with no known nonzero term");
  const std::size_t kb = b.order();
  if (a.order() < kb) throw InputError("quotient is not a power series: order of dividend below divisor");
  const std::size_t q_order = a.order() - kb;
  const std::size_t precision = std::min(a.precision() - kb, b.precision() - kb + q_order);
  if (a.is_zero()) return TruncatedSeries(a.field(), precision);
  if (b.is_monomial()) {
    const Scalar& c = b.terms().front().coefficient;
    auto out = a.shifted_down(kb).truncated(precision);
    return c.is_one() ? out : out.scaled(c.inverse());
  }
  // u = b / t^kb is a unit; invert it modulo t^(precision - q_order).
  const std::size_t len = precision > q_order ? precision - q_order : 0;
  std::vector<Scalar> unit(len, Scalar::zero(a.field()));
  for (const auto& t : b.terms()) {
    if (t.exponent - kb >= len) break;
    unit[t.exponent - kb] = t.coefficient;
  }
  std::vector<Scalar> inv(len, Scalar::zero(a.field()));
  if (len > 0) {
    const Scalar u0_inv = unit[0].inverse();
    inv[0] = u0_inv;
    std::vector<std::size_t> support;
    for (std::size_t i = 1; i < len; ++i) {
      if (!unit[i].is_zero()) support.push_back(i);
    }
    for (std::size_t n = 1; n < len; ++n) {
      Scalar acc = Scalar::zero(a.field());
      for (std::size_t i : support) {
        if (i > n) break;
        if (!inv[n - i].is_zero()) acc += unit[i] * inv[n - i];
      }
      inv[n] = -(acc * u0_inv);
    }
  }
  std::vector<TruncatedSeries::Term> inv_terms;
  for (std::size_t n = 0; n < len; ++n) {
    if (!inv[n].is_zero()) inv_terms.push_back({n, inv[n]});
  }
  const auto u_inv = TruncatedSeries::from_terms(a.field(), len, std::move(inv_terms));
  const auto a_shift = a.shifted_down(kb).truncated(precision);
  // a_shift has order q_order, so the product is known to q_order + len = precision.
  return series_mul(a_shift, u_inv.lifted(precision)).truncated(precision);
}

}  // namespace apery

#include "apery/echelon.hpp"

#include <algorithm>

namespace apery {
namespace {

void eliminate(const EchelonBasis& basis, std::vector<Scalar>& acc, std::size_t base, std::size_t from) {
  const std::size_t end = base + acc.size();
  for (std::size_t p = from; p < end; ++p) {
    Scalar& head = acc[p - base];
    if (head.is_zero() || !basis.has_pivot(p)) continue;
    const Scalar c = head;
    for (const auto& t : basis.row(p).terms()) {
      if (t.exponent >= end) break;
      acc[t.exponent - base] -= c * t.coefficient;
    }
  }
}

TruncatedSeries densify_reduce(const EchelonBasis& basis, const TruncatedSeries& s, std::size_t skip_lead) {
  const std::size_t n = basis.precision();
  const std::size_t base = std::min(s.order(), n);
  std::vector<Scalar> acc(n - base, Scalar::zero(basis.field()));
  for (const auto& t : s.terms()) {
    if (t.exponent >= n) break;
    acc[t.exponent - base] = t.coefficient;
  }
  eliminate(basis, acc, base, skip_lead == n ? base : skip_lead + 1);
  std::vector<TruncatedSeries::Term> terms;
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (!acc[k].is_zero()) terms.push_back({base + k, std::move(acc[k])});
  }
  return TruncatedSeries::from_terms(basis.field(), n, std::move(terms));
}

void require_precision(const TruncatedSeries& s, std::size_t needed, const char* what) {
  if (s.precision() < needed) {
    throw DefectError(std::string(what) + ": series known modulo t^" + std::to_string(s.precision()) +
                      " but t^" + std::to_string(needed) + " is required");
  }
}

}  // namespace

EchelonBasis::EchelonBasis(Field field, std::size_t precision)
    : field_(field), precision_(precision), pivot_(precision, -1) {}

TruncatedSeries EchelonBasis::reduce(const TruncatedSeries& s) const {
  if (!(s.field() == field_)) throw InputError("echelon reduction over mixed fields");
  require_precision(s, precision_, "echelon reduction");
  return densify_reduce(*this, s, precision_);
}

TruncatedSeries EchelonBasis::insert(const TruncatedSeries& s) {
  TruncatedSeries remainder = reduce(s);
  if (!remainder.is_zero()) {
    pivot_[remainder.order()] = static_cast<int>(rows_.size());
    rows_.push_back(remainder.monic());
  }
  return remainder;
}

const TruncatedSeries& EchelonBasis::row(std::size_t lead) const {
  if (!has_pivot(lead)) throw DefectError("no echelon row with leading exponent " + std::to_string(lead));
  return rows_[static_cast<std::size_t>(pivot_[lead])];
}

TruncatedSeries EchelonBasis::canonical_row(std::size_t lead) const {
  return densify_reduce(*this, row(lead), lead);
}

std::vector<std::size_t> EchelonBasis::leading_exponents() const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < pivot_.size(); ++p) {
    if (pivot_[p] >= 0) out.push_back(p);
  }
  return out;
}

std::vector<std::size_t> span_orders(const EchelonBasis& basis) { return basis.leading_exponents(); }

Subspace Subspace::spanned_by(const Field& field, std::size_t tail, std::span<const TruncatedSeries> generators) {
  EchelonBasis basis(field, tail);
  for (const auto& g : generators) basis.insert(g.truncated(tail));
  return Subspace(std::move(basis));
}

bool Subspace::contains(const TruncatedSeries& s) const {
  if (s.order() >= tail()) return true;
  if (s.precision() < tail()) {
    throw DefectError("membership undecidable: element known modulo t^" + std::to_string(s.precision()) +
                      ", subspace window is t^" + std::to_string(tail()));
  }
  return basis_.contains(s.truncated(tail()));
}

ValueSet Subspace::values() const {
  const auto leads = basis_.leading_exponents();
  return ValueSet::from_members(leads, tail());
}

std::optional<TruncatedSeries> Subspace::element_with_value(std::size_t u, std::size_t precision) const {
  if (u >= tail()) return TruncatedSeries::monomial(field(), u, precision);
  if (!basis_.has_pivot(u)) return std::nullopt;
  return basis_.canonical_row(u).lifted(precision);
}

std::vector<TruncatedSeries> Subspace::spanning_elements(std::size_t precision, std::size_t upto) const {
  std::vector<TruncatedSeries> out;
  for (const auto& r : basis_.rows()) out.push_back(r.lifted(precision));
  for (std::size_t n = tail(); n < upto; ++n) out.push_back(TruncatedSeries::monomial(field(), n, precision));
  return out;
}

Subspace subspace_sum(const Subspace& v, const Subspace& w) {
  const std::size_t tail = std::min(v.tail(), w.tail());
  EchelonBasis basis(v.field(), tail);
  for (const auto& r : v.basis().rows()) basis.insert(r.truncated(tail));
  for (const auto& r : w.basis().rows()) basis.insert(r.truncated(tail));
  return Subspace(std::move(basis));
}

Subspace subspace_multiple(const Subspace& v, const TruncatedSeries& y) {
  if (y.is_zero()) throw DefectError("multiple of a subspace by zero");
  const std::size_t k = y.order();
  const std::size_t tail = v.tail() + k;
  EchelonBasis basis(v.field(), tail);
  for (const auto& r : v.basis().rows()) {
    auto product = series_mul(r.lifted(tail), y);
    require_precision(product, tail, "subspace multiple");
    basis.insert(product.truncated(tail));
  }
  return Subspace(std::move(basis));
}

Subspace subspace_quotient(const Subspace& v, const TruncatedSeries& y) {
  if (y.is_zero()) throw DefectError("quotient of a subspace by zero");
  const std::size_t k = y.order();
  if (v.tail() < k) throw DefectError("subspace is not contained in the principal ideal");
  const std::size_t tail = v.tail() - k;
  EchelonBasis basis(v.field(), tail);
  for (const auto& r : v.basis().rows()) {
    if (r.order() < k) throw DefectError("subspace element is not divisible by the given series");
    auto q = series_div(r.lifted(v.tail() + y.precision()), y);
    require_precision(q, tail, "subspace quotient");
    basis.insert(q.truncated(tail));
  }
  return Subspace(std::move(basis));
}

Subspace subspace_solve(const Subspace& domain, std::span<const MembershipConstraint> constraints) {
  const Field& field = domain.field();
  std::size_t window = domain.tail();
  std::vector<std::size_t> offsets;
  std::size_t offset = 0;
  for (const auto& c : constraints) {
    if (c.multiplier.is_zero()) throw DefectError("membership constraint with zero multiplier");
    const std::size_t o = c.multiplier.order();
    const std::size_t need = c.target->tail() > o ? c.target->tail() - o : 0;
    window = std::max(window, need);
    offsets.push_back(offset);
    offset += c.target->tail();
  }
  const std::size_t domain_offset = offset;
  const std::size_t total = domain_offset + window;

  EchelonBasis big(field, total);
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    for (const auto& r : constraints[k].target->basis().rows()) {
      big.insert(r.lifted(constraints[k].target->tail()).shifted_up(offsets[k]).lifted(total));
    }
  }
  const std::size_t exact = total + window;
  for (const auto& f : domain.spanning_elements(exact, window)) {
    std::vector<TruncatedSeries::Term> terms;
    for (std::size_t k = 0; k < constraints.size(); ++k) {
      const std::size_t t = constraints[k].target->tail();
      const auto product = series_mul(f, constraints[k].multiplier);
      require_precision(product, t, "membership constraint");
      for (const auto& term : product.terms()) {
        if (term.exponent >= t) break;
        terms.push_back({term.exponent + offsets[k], term.coefficient});
      }
    }
    for (const auto& term : f.terms()) {
      if (term.exponent >= window) break;
      terms.push_back({term.exponent + domain_offset, term.coefficient});
    }
    big.insert(TruncatedSeries::from_terms(field, total, std::move(terms)));
  }

  EchelonBasis solutions(field, window);
  for (const auto& r : big.rows()) {
    if (r.order() >= domain_offset) solutions.insert(r.shifted_down(domain_offset));
  }
  return Subspace(std::move(solutions));
}

Subspace subspace_intersection(const Subspace& v, const Subspace& w) {
  const std::size_t big = v.tail() + w.tail() + 1;
  const MembershipConstraint c{TruncatedSeries::constant(Scalar::one(v.field()), big), &w};
  return subspace_solve(v, std::span<const MembershipConstraint>(&c, 1));
}

}  // namespace apery

#include "apery/ring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace apery {
namespace {

constexpr std::size_t kPrecisionCap = std::size_t{1} << 16;

Subspace monomial_space(const Field& field, const ValueSet& values) {
  EchelonBasis basis(field, values.tail());
  for (std::size_t n : values.members_below(values.tail())) {
    basis.insert(TruncatedSeries::monomial(field, n, values.tail()));
  }
  return Subspace(std::move(basis));
}

// R modulo t^window as the closure of {1} under multiplication by the generators.
Subspace ring_closure(const Field& field, std::span<const TruncatedSeries> generators, std::size_t window) {
  EchelonBasis basis(field, window);
  std::vector<TruncatedSeries> queue;
  const auto one = TruncatedSeries::constant(Scalar::one(field), window);
  if (!basis.insert(one).is_zero()) queue.push_back(basis.row(0));
  while (!queue.empty()) {
    const TruncatedSeries f = std::move(queue.back());
    queue.pop_back();
    for (const auto& g : generators) {
      const auto product = series_mul(f.lifted(g.precision()), g).truncated(window);
      const auto rem = basis.insert(product);
      if (!rem.is_zero()) queue.push_back(basis.row(rem.order()));
    }
  }
  return Subspace(std::move(basis));
}

PowerSpan make_span(std::size_t i, SpanKind kind, Subspace space, std::size_t e) {
  ValueSet values = space.values();
  auto apery = values.apery(e);
  return PowerSpan{i, kind, std::move(space), std::move(values), std::move(apery)};
}

void require_window(const CurveRing& ring, std::size_t i) {
  if (i > ring.reduction_number() + 2) {
    throw InputError("filtration step " + std::to_string(i) + " is beyond the supported window r+2 = " +
                     std::to_string(ring.reduction_number() + 2));
  }
}

}  // namespace

std::string to_string(SpanKind kind) {
  switch (kind) {
    case SpanKind::power:
      return "power";
    case SpanKind::sum:
      return "sum";
    case SpanKind::intersection:
      return "intersection";
  }
  return "power";
}

struct CurveRing::Cache {
  std::mutex mutex;
  std::map<std::size_t, Subspace> powers;
  std::vector<SemigroupIdealPower> monomial_powers;
  std::map<std::string, Subspace> reduction_ideals;
};

CurveRing::CurveRing(Field field, std::size_t precision, std::vector<TruncatedSeries> generators,
                     NumericalSemigroup s, Subspace ring_space, bool monomial, bool semigroup_path)
    : field_(field),
      precision_(precision),
      generators_(std::move(generators)),
      semigroup_(std::move(s)),
      ring_space_(std::move(ring_space)),
      monomial_(monomial),
      semigroup_path_(semigroup_path),
      cache_(std::make_unique<Cache>()) {}

CurveRing::CurveRing(CurveRing&&) noexcept = default;
CurveRing& CurveRing::operator=(CurveRing&&) noexcept = default;
CurveRing::~CurveRing() = default;

Subspace CurveRing::compute_power(std::size_t i, const Subspace& previous) const {
  const std::size_t c = conductor();
  const std::size_t e = multiplicity();
  const std::size_t window = power_tail_threshold(c, e, i);
  if (semigroup_path_) {
    if (cache_->monomial_powers.size() <= i) cache_->monomial_powers = sg_power_sequence(semigroup_, i + 4);
    return monomial_space(field_, cache_->monomial_powers[i].values);
  }
  if (i == 0) return ring_space_;
  EchelonBasis basis(field_, window);
  if (i == 1) {
    for (const auto& row : ring_space_.basis().rows()) {
      if (row.order() > 0) basis.insert(row.lifted(window));
    }
    return Subspace(std::move(basis));
  }
  for (const auto& g : generators_) {
    for (const auto& row : previous.basis().rows()) {
      basis.insert(series_mul(row.lifted(window), g).truncated(window));
    }
  }
  return Subspace(std::move(basis));
}

const Subspace& CurveRing::power_space(std::size_t i) const {
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->powers.find(i);
  if (it != cache_->powers.end()) return it->second;
  std::size_t k = cache_->powers.empty() ? 0 : cache_->powers.rbegin()->first + 1;
  for (; k <= i; ++k) {
    const Subspace* previous = k == 0 ? &ring_space_ : &cache_->powers.at(k - 1);
    cache_->powers.emplace(k, compute_power(k, *previous));
  }
  return cache_->powers.at(i);
}

const Subspace& CurveRing::reduction_ideal(const ReductionElement& x) const {
  const std::string key = x.to_string();
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->reduction_ideals.find(key);
  if (it == cache_->reduction_ideals.end()) {
    it = cache_->reduction_ideals.emplace(key, subspace_multiple(ring_space_, x.x)).first;
  }
  return it->second;
}

ValueSet CurveRing::power_values(std::size_t i) const {
  const std::size_t r = reduction_number_;
  if (i <= r + 1) return power_space(i).values();
  return power_space(r).values().shifted_up((i - r) * multiplicity());
}

void CurveRing::finish_build() {
  const std::size_t e = multiplicity();
  const auto a1 = power_space(1).values().apery(e);
  const auto a2 = power_space(2).values().apery(e);
  embedding_dimension_ = 0;
  for (std::size_t j = 0; j < e; ++j) embedding_dimension_ += (a2[j] - a1[j]) / e;

  const std::size_t cap = reduction_number_cap(conductor(), e);
  for (std::size_t n = 0; n <= cap; ++n) {
    const auto lower = power_space(n).values().apery(e);
    const auto upper = power_space(n + 1).values().apery(e);
    bool stable = true;
    for (std::size_t j = 0; j < e && stable; ++j) stable = upper[j] == lower[j] + e;
    if (stable) {
      reduction_number_ = n;
      return;
    }
  }
  throw DefectError("reduction number exceeds the cap " + std::to_string(cap));
}

std::size_t default_precision(const NumericalSemigroup& naive) {
  const std::size_t c0 = naive.conductor();
  const std::size_t e = naive.multiplicity();
  return c0 + (reduction_number_cap(c0, e) + 2) * e + e;
}

CurveRing ring_build(const Field& field, std::span<const std::string> texts, const RingOptions& options) {
  if (texts.empty()) throw InputError("a ring needs at least one generator");
  std::vector<TruncatedSeries> parsed;
  std::size_t degree = 0;
  for (const auto& text : texts) {
    auto g = parse_series(text, field, kPrecisionCap);
    if (g.is_zero()) throw InputError("generator '" + text + "' is zero");
    if (g.order() == 0) throw InputError("constant generator '" + text + "': generators must have positive order");
    degree = std::max(degree, g.terms().back().exponent);
    parsed.push_back(std::move(g));
  }
  std::stable_sort(parsed.begin(), parsed.end(),
                   [](const TruncatedSeries& a, const TruncatedSeries& b) { return a.order() < b.order(); });
  std::size_t g = 0;
  for (const auto& s : parsed) {
    for (const auto& term : s.terms()) g = std::gcd(g, term.exponent);
  }
  if (g != 1) {
    throw InputError("every exponent is divisible by " + std::to_string(g) + "; the ring is not a primitive branch");
  }
  const bool monomial = std::all_of(parsed.begin(), parsed.end(), [](const auto& s) { return s.is_monomial(); });

  // Grow the window until the values found below it generate a semigroup whose conductor lies inside it.
  std::size_t window = 4 * degree;
  std::optional<NumericalSemigroup> found;
  std::optional<Subspace> closure;
  {
    std::vector<std::size_t> orders;
    std::size_t order_gcd = 0;
    for (const auto& s : parsed) {
      orders.push_back(s.order());
      order_gcd = std::gcd(order_gcd, s.order());
    }
    if (order_gcd == 1) {
      found = NumericalSemigroup::from_generators(orders);
      window = std::max<std::size_t>(found->conductor(), 1);
    }
  }
  auto close_at = [&](std::size_t w) {
    std::vector<TruncatedSeries> truncated;
    for (const auto& s : parsed) truncated.push_back(s.truncated(std::max(w, s.order() + 1)));
    return ring_closure(field, truncated, w);
  };
  if (!monomial) {
    for (;;) {
      if (window > kPrecisionCap) {
        throw InputError("value semigroup not determined below t^" + std::to_string(kPrecisionCap));
      }
      closure = close_at(window);
      const auto values = closure->values().members_below(window);
      std::size_t value_gcd = 0;
      for (std::size_t v : values) value_gcd = std::gcd(value_gcd, v);
      if (value_gcd == 1) {
        const std::vector<std::size_t> gens(values.begin() + 1, values.end());
        found = NumericalSemigroup::from_generators(gens);
        if (found->conductor() <= window) break;
      }
      window *= 2;
    }
  }
  const NumericalSemigroup& naive = *found;

  std::size_t precision = options.precision.value_or(default_precision(naive));
  precision = std::max({precision, degree + 1, window + 1});
  for (;;) {
    if (precision > kPrecisionCap) {
      throw InputError("precision cap " + std::to_string(kPrecisionCap) + " exceeded");
    }
    std::vector<TruncatedSeries> generators;
    for (const auto& s : parsed) generators.push_back(s.lifted(precision));

    const bool semigroup_path = monomial && !options.force_echelon;
    std::optional<NumericalSemigroup> s;
    std::optional<Subspace> space;
    if (semigroup_path) {
      s = naive;
      space = monomial_space(field, naive.values());
    } else {
      if (!closure) closure = close_at(window);
      const Subspace& base = *closure;
      s = NumericalSemigroup::from_values(base.values());
      space = Subspace::spanned_by(field, s->conductor(), std::span<const TruncatedSeries>(base.basis().rows()));
    }
    CurveRing ring(field, precision, std::move(generators), std::move(*s), std::move(*space), monomial,
                   semigroup_path);
    ring.finish_build();
    const std::size_t needed = ring.conductor() + (ring.reduction_number() + 3) * ring.multiplicity();
    if (precision >= needed) return ring;
    precision *= 2;
  }
}

CurveRing ring_build(const Field& field, std::initializer_list<std::string> generators, const RingOptions& options) {
  const std::vector<std::string> texts(generators);
  return ring_build(field, std::span<const std::string>(texts), options);
}

bool ring_contains(const CurveRing& ring, const TruncatedSeries& a) {
  if (a.precision() < ring.conductor()) {
    throw InputError("element known modulo t^" + std::to_string(a.precision()) + " cannot be tested below t^" +
                     std::to_string(ring.conductor()));
  }
  return ring.ring_space().contains(a);
}

TruncatedSeries ring_element(const CurveRing& ring, std::string_view expression) {
  auto a = parse_series(expression, ring.field(), ring.precision());
  if (!ring_contains(ring, a)) throw InputError("'" + std::string(expression) + "' is not an element of R");
  return a;
}

PowerSpan power_span(const CurveRing& ring, std::size_t i) {
  require_window(ring, i);
  return make_span(i, SpanKind::power, ring.power_space(i), ring.multiplicity());
}

std::size_t vord(const CurveRing& ring, std::size_t s) {
  if (!ring.semigroup().contains(s)) throw InputError(std::to_string(s) + " is not a value of R");
  std::size_t i = 0;
  while (ring.power_values(i + 1).contains(s)) ++i;
  return i;
}

std::size_t element_order(const CurveRing& ring, const TruncatedSeries& a) {
  if (a.is_zero()) throw InputError("the zero element has no order");
  if (!ring_contains(ring, a)) throw InputError("element " + a.to_string() + " is not in R");
  const std::size_t bound = vord(ring, a.order());
  for (std::size_t i = 1; i <= bound; ++i) {
    const Subspace& power = ring.power_space(i);
    if (a.precision() < power.tail()) {
      throw InputError("element known modulo t^" + std::to_string(a.precision()) + " cannot be tested in m^" +
                       std::to_string(i));
    }
    if (!power.contains(a)) return i - 1;
  }
  return bound;
}

ReductionElement make_reduction(const CurveRing& ring, const TruncatedSeries& x) {
  if (x.is_zero()) throw InputError("reduction element is zero");
  if (!ring_contains(ring, x)) throw InputError("reduction element " + x.to_string() + " is not in R");
  if (x.order() != ring.multiplicity()) {
    throw InputError("reduction element " + x.to_string() + " has value " + std::to_string(x.order()) +
                     ", expected the multiplicity " + std::to_string(ring.multiplicity()));
  }
  return ReductionElement{x.lifted(ring.precision())};
}

ReductionElement make_reduction(const CurveRing& ring, std::string_view expression) {
  if (expression == "default") {
    const TruncatedSeries* pick = nullptr;
    for (const auto& g : ring.generators()) {
      if (g.order() != ring.multiplicity()) continue;
      if (pick == nullptr || (!pick->is_monomial() && g.is_monomial())) pick = &g;
    }
    if (pick == nullptr) throw DefectError("no generator has the multiplicity as its value");
    return make_reduction(ring, *pick);
  }
  return make_reduction(ring, parse_series(expression, ring.field(), ring.precision()));
}

PowerSpan power_plus_reduction(const CurveRing& ring, const ReductionElement& x, std::size_t i) {
  require_window(ring, i);
  return make_span(i, SpanKind::sum, subspace_sum(ring.power_space(i), ring.reduction_ideal(x)),
                   ring.multiplicity());
}

PowerSpan power_intersect_reduction(const CurveRing& ring, const ReductionElement& x, std::size_t i) {
  require_window(ring, i);
  return make_span(i, SpanKind::intersection, subspace_intersection(ring.power_space(i), ring.reduction_ideal(x)),
                   ring.multiplicity());
}

std::size_t ring_reduction_number(const CurveRing& ring) { return ring.reduction_number(); }

bool verify_reduction_equality(const CurveRing& ring, const ReductionElement& x) {
  const std::size_t r = ring.reduction_number();
  const Subspace& upper = ring.power_space(r + 1);
  const Subspace scaled = subspace_multiple(ring.power_space(r), x.x);
  if (!(upper.values() == scaled.values())) return false;
  for (const auto& row : scaled.basis().rows()) {
    if (!upper.contains(row.lifted(scaled.tail()))) return false;
  }
  return true;
}

AperyBasis apery_basis_extract(const CurveRing& ring) {
  AperyBasis out;
  for (std::size_t w : ring.semigroup().apery()) {
    const std::size_t b = vord(ring, w);
    auto f = ring.power_space(b).element_with_value(w, ring.precision());
    if (!f) throw DefectError("m^" + std::to_string(b) + " has no element of value " + std::to_string(w));
    out.elements.push_back(std::move(*f));
    out.values.push_back(w);
    out.orders.push_back(b);
  }
  return out;
}

}  // namespace apery

#include "apery/invariants.hpp"

#include <algorithm>
#include <numeric>

namespace apery {
namespace {

std::size_t count_missing(const ValueSet& outer, const ValueSet& inner) {
  const std::size_t bound = std::max(outer.tail(), inner.tail());
  std::size_t missing = 0;
  for (std::size_t n = 0; n < bound; ++n) {
    if (outer.contains(n) && !inner.contains(n)) ++missing;
  }
  return missing;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DefectError("invariant violated: " + what);
}

}  // namespace

BcVectors compute_bc(const CurveRing& ring, const ReductionElement& x) {
  const auto& w = ring.semigroup().apery();
  const std::size_t r = ring.reduction_number();
  BcVectors out;
  for (std::size_t wj : w) out.b.push_back(vord(ring, wj));
  out.c.assign(w.size(), 0);
  for (std::size_t i = 1; i <= r + 1; ++i) {
    const auto sum = power_plus_reduction(ring, x, i);
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (sum.values.contains(w[j])) out.c[j] = i;
    }
  }
  return out;
}

BlowupProfile blowup_profile(const CurveRing& ring) {
  const std::size_t e = ring.multiplicity();
  const std::size_t r = ring.reduction_number();
  BlowupProfile out;
  out.values = ring.power_space(r).values().shifted_down(r * e);
  out.w_prime = out.values.apery(e);
  const auto& w = ring.semigroup().apery();
  for (std::size_t j = 0; j < e; ++j) {
    require(out.w_prime[j] <= w[j] && (w[j] - out.w_prime[j]) % e == 0, "w'_j = w_j - a_j e with a_j >= 0");
    out.a.push_back((w[j] - out.w_prime[j]) / e);
  }
  return out;
}

Subspace blowup_space(const CurveRing& ring, const ReductionElement& x) {
  const std::size_t r = ring.reduction_number();
  return subspace_quotient(ring.power_space(r), series_pow(x.x, r));
}

std::vector<std::size_t> multiset_from_jumps(const std::vector<std::size_t>& jumps, std::size_t e) {
  // #{j : eps_j >= n} = d_n - d_{n-1}.
  auto at_least = [&](std::size_t n) -> std::size_t {
    if (n == 0) return e;
    const std::size_t hi = n < jumps.size() ? jumps[n] : jumps.back();
    const std::size_t lo = n - 1 < jumps.size() ? jumps[n - 1] : jumps.back();
    if (hi < lo) throw DefectError("length sequence of R'/(R + x^n R') decreases");
    return hi - lo;
  };
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < jumps.size(); ++n) {
    const std::size_t here = at_least(n);
    const std::size_t next = at_least(n + 1);
    if (next > here || here > e) throw DefectError("length sequence of R'/(R + x^n R') is not a min-sum profile");
    out.insert(out.end(), here - next, n);
  }
  if (out.size() != e) throw DefectError("microinvariant multiset has the wrong size");
  return out;
}

Microinvariants microinvariants(const CurveRing& ring, const ReductionElement& x) {
  const std::size_t e = ring.multiplicity();
  const auto blowup = blowup_profile(ring);
  const std::size_t total = std::accumulate(blowup.a.begin(), blowup.a.end(), std::size_t{0});
  const Subspace prime = blowup_space(ring, x);
  require(prime.values() == blowup.values, "v(x^{-r} m^r) = v(m^r) - re");
  const ValueSet prime_values = prime.values();

  Microinvariants out;
  out.jumps.push_back(0);
  Subspace scaled = prime;
  while (out.jumps.back() < total) {
    if (out.jumps.size() > total + 1) throw DefectError("length of R'/(R + x^n R') does not stabilize");
    scaled = subspace_multiple(scaled, x.x);
    const Subspace sum = subspace_sum(ring.ring_space(), scaled);
    const std::size_t d = count_missing(prime_values, sum.values());
    if (d <= out.jumps.back()) throw DefectError("length of R'/(R + x^n R') stalls below length(R'/R)");
    out.jumps.push_back(d);
  }
  out.multiset = multiset_from_jumps(out.jumps, e);

  std::vector<std::size_t> per_class(e);
  bool matched = true;
  for (std::size_t j = 0; j < e && matched; ++j) {
    const MembershipConstraint into_ring{series_pow(x.x, blowup.a[j]), &ring.ring_space()};
    const Subspace lifts = subspace_solve(prime, std::span<const MembershipConstraint>(&into_ring, 1));
    matched = lifts.values().contains(blowup.w_prime[j]);
    per_class[j] = blowup.a[j];
  }
  if (matched) out.per_class = std::move(per_class);
  return out;
}

std::vector<long> HilbertData::one_minus_z_hilb_r() const {
  std::vector<long> out;
  for (std::size_t i = 0; i < hilb_r.size(); ++i) {
    const long prev = i == 0 ? 0 : static_cast<long>(hilb_r[i - 1]);
    out.push_back(static_cast<long>(hilb_r[i]) - prev);
  }
  return out;
}

bool HilbertData::inequality_holds() const {
  std::size_t cumulative = 0;
  for (std::size_t n = 0; n < std::max(hilb_r.size(), hilb_mod.size()); ++n) {
    cumulative += n < hilb_mod.size() ? hilb_mod[n] : 0;
    if (hilb_r_at(n) > cumulative) return false;
  }
  return true;
}

bool HilbertData::equality_holds() const {
  const auto lhs = one_minus_z_hilb_r();
  for (std::size_t i = 0; i < std::max(lhs.size(), hilb_mod.size()); ++i) {
    const long a = i < lhs.size() ? lhs[i] : 0;
    const long b = i < hilb_mod.size() ? static_cast<long>(hilb_mod[i]) : 0;
    if (a != b) return false;
  }
  return true;
}

HilbertData hilbert(const CurveRing& ring, const ReductionElement& x) {
  const std::size_t e = ring.multiplicity();
  const std::size_t r = ring.reduction_number();
  HilbertData out;
  out.stable = e;
  auto lower = ring.power_space(0).values().apery(e);
  for (std::size_t i = 0; i <= r; ++i) {
    const auto upper = ring.power_space(i + 1).values().apery(e);
    std::size_t length = 0;
    for (std::size_t j = 0; j < e; ++j) length += (upper[j] - lower[j]) / e;
    out.hilb_r.push_back(length);
    lower = upper;
  }
  const auto bc = compute_bc(ring, x);
  out.hilb_mod.assign(r + 1, 0);
  for (std::size_t cj : bc.c) {
    require(cj <= r, "c_j <= r");
    ++out.hilb_mod[cj];
  }
  return out;
}

InvariantProfile invariant_profile(const CurveRing& ring, const ReductionElement& x) {
  InvariantProfile p;
  p.e = ring.multiplicity();
  p.r = ring.reduction_number();
  p.reduction = x.to_string();
  p.w = ring.semigroup().apery();
  auto blowup = blowup_profile(ring);
  p.w_prime = blowup.w_prime;
  p.a = blowup.a;
  p.blowup_values = blowup.values;
  auto bc = compute_bc(ring, x);
  p.b = std::move(bc.b);
  p.c = std::move(bc.c);
  p.eps = microinvariants(ring, x);
  p.hilbert = hilbert(ring, x);
  return p;
}

void assert_profile(const InvariantProfile& p) {
  const std::size_t e = p.e;
  require(p.w.size() == e && p.a.size() == e && p.b.size() == e && p.c.size() == e, "vectors have e entries");
  for (std::size_t j = 0; j < e; ++j) {
    require(p.a[j] >= p.b[j], "a_j >= b_j for j=" + std::to_string(j));
    require(p.b[j] <= p.c[j], "b_j <= c_j for j=" + std::to_string(j));
    require(p.c[j] <= p.r, "c_j <= r for j=" + std::to_string(j));
  }
  const std::size_t sum_a = std::accumulate(p.a.begin(), p.a.end(), std::size_t{0});
  const std::size_t sum_eps = std::accumulate(p.eps.multiset.begin(), p.eps.multiset.end(), std::size_t{0});
  require(sum_a == sum_eps, "sum of eps = sum of a");
  std::size_t length = 0;
  const std::size_t bound = std::max(p.blowup_values.tail(), *std::max_element(p.w.begin(), p.w.end()) + 1);
  for (std::size_t k = 0; k < bound; ++k) {
    if (p.blowup_values.contains(k) && k < p.w[k % e]) ++length;
  }
  require(length == sum_a, "sum of a = |v(R') \\ v(R)|");
  std::vector<std::size_t> counts(p.r + 1, 0);
  for (std::size_t cj : p.c) ++counts[cj];
  require(counts == p.hilbert.hilb_mod, "Hilb_{R/xR} = sum_j z^{c_j}");
  const std::size_t mod_total = std::accumulate(p.hilbert.hilb_mod.begin(), p.hilbert.hilb_mod.end(), std::size_t{0});
  require(mod_total == e, "Hilb_{R/xR}(1) = e");
  require(p.hilbert.hilb_r_at(p.r) == e, "Hilb_R is constant e from r on");
  require(p.hilbert.inequality_holds(), "Hilb_R(n) <= sum_{i<=n} of Hilb_{R/xR}");
}

}  // namespace apery

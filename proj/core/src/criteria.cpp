#include "apery/criteria.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace apery {
namespace {

ValueSet reduction_values(const CurveRing& ring, const ReductionElement& x) {
  return ring.reduction_ideal(x).values();
}

std::optional<std::size_t> first_outside(const ValueSet& big, const ValueSet& small) {
  const std::size_t bound = std::max(big.tail(), small.tail());
  for (std::size_t n = 0; n < bound; ++n) {
    if (big.contains(n) && !small.contains(n)) return n;
  }
  return std::nullopt;
}

const TruncatedSeries* generator_of_value(const CurveRing& ring, std::size_t value) {
  for (const auto& g : ring.generators()) {
    if (g.order() == value) return &g;
  }
  return nullptr;
}

// Products g_P^i g_Q^j, 0 <= i < A, 0 <= j < B, checked to form an Apery basis.
bool family_pattern_matches(const CurveRing& ring, const CIRepresentation& rep, std::vector<std::size_t>& values) {
  const std::size_t e = ring.multiplicity();
  const std::size_t p = rep.n * rep.b;
  const std::size_t a_range = rep.a;
  std::size_t q = rep.third();
  std::size_t b_range = rep.n;
  if (rep.case_tag == CICase::a && rep.n1 < rep.n) {
    q = rep.n * rep.a;
    b_range = rep.n1;
  }
  if (a_range * b_range != e) return false;
  const TruncatedSeries* gp = generator_of_value(ring, p);
  const TruncatedSeries* gq = generator_of_value(ring, q);
  if (gp == nullptr || gq == nullptr) return false;
  const auto& w = ring.semigroup().apery();
  std::vector<bool> seen(e, false);
  values.clear();
  for (std::size_t i = 0; i < a_range; ++i) {
    for (std::size_t j = 0; j < b_range; ++j) {
      const auto product = series_mul(series_pow(*gp, i), series_pow(*gq, j));
      const std::size_t v = product.order();
      const std::size_t cls = v % e;
      if (v != w[cls] || seen[cls]) return false;
      seen[cls] = true;
      if (element_order(ring, product) != vord(ring, v)) return false;
      values.push_back(v);
    }
  }
  return true;
}

}  // namespace

EssentialDivisibilityReport check_essential_divisibility(const CurveRing& ring, const ReductionElement& x) {
  EssentialDivisibilityReport out;
  out.reduction = x.to_string();
  const auto bc = compute_bc(ring, x);
  out.holds = bc.b == bc.c;
  out.via_union = true;
  out.via_intersection = true;
  const ValueSet xr = reduction_values(ring, x);
  const std::size_t e = ring.multiplicity();
  for (std::size_t i = 0; i <= ring.reduction_number() + 1; ++i) {
    const ValueSet power = ring.power_space(i).values();
    const auto sum = power_plus_reduction(ring, x, i);
    const auto meet = power_intersect_reduction(ring, x, i);
    const ValueSet joined = set_union(power, xr);
    if (!(sum.values == joined)) {
      out.via_union = false;
      if (!out.witness) {
        const auto u = first_outside(sum.values, joined);
        if (!u) throw DefectError("value sets differ without a distinguishing value");
        out.witness = EdWitness{i, *u, *u % e};
      }
    }
    if (!(meet.values == set_intersection(power, xr))) out.via_intersection = false;
  }
  out.consistent = out.holds == out.via_union && out.holds == out.via_intersection;
  return out;
}

LemmaCheck lemma_sum_intersect_check(const CurveRing& ring, const ReductionElement& x) {
  LemmaCheck out;
  const ValueSet xr = reduction_values(ring, x);
  for (std::size_t i = 0; i <= ring.reduction_number() + 1; ++i) {
    const ValueSet power = ring.power_space(i).values();
    LemmaRow row;
    row.i = i;
    row.union_holds = power_plus_reduction(ring, x, i).values == set_union(power, xr);
    row.intersection_holds = power_intersect_reduction(ring, x, i).values == set_intersection(power, xr);
    if (row.union_holds != row.intersection_holds) out.holds = false;
    out.rows.push_back(row);
  }
  return out;
}

BFReport check_bf(const CurveRing& ring, const ReductionElement& x, std::span<const TruncatedSeries> basis) {
  const std::size_t e = ring.multiplicity();
  const auto& w = ring.semigroup().apery();
  if (basis.size() != e) {
    throw InputError("a basis needs " + std::to_string(e) + " elements, got " + std::to_string(basis.size()));
  }
  std::vector<const TruncatedSeries*> by_class(e, nullptr);
  for (const auto& f : basis) {
    if (f.is_zero()) throw InputError("basis element is zero");
    if (!ring_contains(ring, f)) throw InputError("basis element " + f.to_string() + " is not in R");
    const std::size_t v = f.order();
    const std::size_t j = v % e;
    if (v != w[j]) {
      throw InputError("basis element " + f.to_string() + " has value " + std::to_string(v) +
                       ", not the Apery value " + std::to_string(w[j]) + " of its class");
    }
    if (by_class[j] != nullptr) throw InputError("two basis elements in class " + std::to_string(j));
    by_class[j] = &f;
  }

  BFReport out;
  out.route = "given-basis";
  out.reduction = x.to_string();
  out.bases_tried = 1;
  out.reductions_tried = 1;
  for (std::size_t j = 0; j < e; ++j) {
    out.basis.push_back(by_class[j]->to_string());
    out.basis_values.push_back(w[j]);
    out.basis_orders.push_back(element_order(ring, *by_class[j]));
  }
  std::map<std::size_t, TruncatedSeries> x_powers;
  for (std::size_t i = 0; i <= ring.reduction_number() + 1; ++i) {
    const Subspace& power = ring.power_space(i);
    const auto ap = power.values().apery(e);
    for (std::size_t j = 0; j < e; ++j) {
      const std::size_t h = (ap[j] - w[j]) / e;
      auto it = x_powers.find(h);
      if (it == x_powers.end()) it = x_powers.emplace(h, series_pow(x.x, h)).first;
      const bool member = power.contains(series_mul(it->second, *by_class[j]));
      out.certificates.push_back({i, j, h, ap[j], member});
      if (!member && !out.witness) out.witness = BfWitness{i, j, h, ap[j]};
    }
  }
  out.holds = !out.witness;
  out.status = out.holds ? "certified" : "witness-failed";
  return out;
}

std::optional<std::vector<TruncatedSeries>> bf_basis_search(const CurveRing& ring, const ReductionElement& x) {
  const std::size_t e = ring.multiplicity();
  const std::size_t r = ring.reduction_number();
  const auto& w = ring.semigroup().apery();
  std::vector<std::vector<std::size_t>> aperys;
  for (std::size_t i = 0; i <= r + 1; ++i) aperys.push_back(ring.power_space(i).values().apery(e));
  std::vector<TruncatedSeries> out;
  for (std::size_t j = 0; j < e; ++j) {
    const std::size_t b = vord(ring, w[j]);
    std::vector<MembershipConstraint> constraints;
    for (std::size_t i = b + 1; i <= r + 1; ++i) {
      const std::size_t h = (aperys[i][j] - w[j]) / e;
      constraints.push_back({series_pow(x.x, h), &ring.power_space(i)});
    }
    const Subspace admissible = subspace_solve(ring.power_space(b), constraints);
    auto f = admissible.element_with_value(w[j], ring.precision());
    if (!f) return std::nullopt;
    out.push_back(std::move(*f));
  }
  return out;
}

std::vector<ReductionElement> candidate_reductions(const CurveRing& ring, const BfBudget& budget) {
  std::vector<ReductionElement> out;
  std::set<std::string> seen;
  auto add = [&](ReductionElement x) {
    if (out.size() >= budget.max_reductions) return;
    if (seen.insert(x.to_string()).second) out.push_back(std::move(x));
  };
  const auto base = make_reduction(ring, "default");
  add(base);
  const std::size_t e = ring.multiplicity();
  for (const auto& g : ring.generators()) {
    if (g.order() == e) add(make_reduction(ring, g));
  }
  const std::size_t c = ring.conductor();
  for (std::size_t s = e + 1; s < c + e && out.size() < budget.max_reductions; ++s) {
    if (!ring.semigroup().contains(s)) continue;
    const auto f = ring.ring_space().element_with_value(s, ring.precision());
    if (!f) throw DefectError("R has no element of value " + std::to_string(s));
    for (long k = 1; k <= budget.coefficient_bound; ++k) {
      for (long sign : {1L, -1L}) {
        const Scalar coeff(ring.field(), sign * k);
        if (coeff.is_zero()) continue;
        add(ReductionElement{base.x + f->scaled(coeff)});
      }
    }
  }
  return out;
}

BFReport bf_auto(const CurveRing& ring, const BfBudget& budget) {
  const auto x = make_reduction(ring, "default");
  const auto extracted = apery_basis_extract(ring);
  BFReport natural = check_bf(ring, x, extracted.elements);
  if (ring.is_monomial() || ring.reduction_number() <= 2) {
    natural.route = ring.is_monomial() ? "semigroup-algebra" : "reduction-number";
    natural.natural_witness_holds = natural.holds;
    if (!natural.holds) throw DefectError("BF certificate failed on a ring where it always holds (" + natural.route + ")");
    return natural;
  }
  const bool plane = ring.embedding_dimension() <= 2;
  if (natural.holds) {
    natural.route = plane ? "embedding-dimension" : "natural-witness";
    natural.natural_witness_holds = true;
    return natural;
  }

  const auto candidates = candidate_reductions(ring, budget);
  std::size_t tried = 0;
  for (const auto& candidate : candidates) {
    ++tried;
    const auto found = bf_basis_search(ring, candidate);
    if (!found) {
      if (plane) throw DefectError("no BF basis found for a ring of embedding dimension at most 2");
      continue;
    }
    BFReport certified = check_bf(ring, candidate, *found);
    if (!certified.holds) throw DefectError("searched BF basis does not certify");
    certified.route = plane ? "embedding-dimension" : tried == 1 ? "basis-search" : "reduction-search";
    certified.natural_witness_holds = false;
    certified.reductions_tried = tried;
    certified.bases_tried = tried + 1;
    return certified;
  }
  natural.route = "none";
  natural.status = "no-witness-within-budget";
  natural.natural_witness_holds = false;
  natural.reductions_tried = tried;
  natural.bases_tried = tried + 1;
  return natural;
}

std::optional<std::vector<TruncatedSeries>> descent_basis(const CurveRing& ring, const ReductionElement& x) {
  const std::size_t e = ring.multiplicity();
  const std::size_t top = ring.reduction_number() + 1;
  const ValueSet xr = reduction_values(ring, x);
  const Subspace& power = ring.power_space(top);
  const auto ap = power.values().apery(e);
  std::map<std::size_t, PowerSpan> meets;
  std::vector<TruncatedSeries> out;
  for (std::size_t j = 0; j < e; ++j) {
    auto current = power.element_with_value(ap[j], ring.precision());
    if (!current) throw DefectError("m^" + std::to_string(top) + " lacks its Apery element");
    std::size_t level = top;
    for (;;) {
      auto quotient = series_div(*current, x.x);
      --level;
      const std::size_t value = quotient.order();
      if (!xr.contains(value)) {
        out.push_back(std::move(quotient));
        break;
      }
      auto it = meets.find(level);
      if (it == meets.end()) it = meets.emplace(level, power_intersect_reduction(ring, x, level)).first;
      current = it->second.space.element_with_value(value, ring.precision());
      if (!current || level == 0) return std::nullopt;
    }
  }
  return out;
}

CMReport cm_verdict(const InvariantProfile& p, const BFReport& bf) {
  CMReport out;
  out.via_hilbert = p.hilbert.equality_holds();
  out.one_minus_z_hilb_r = p.hilbert.one_minus_z_hilb_r();
  out.hilb_mod = p.hilbert.hilb_mod;
  for (std::size_t j = 0; j < p.e; ++j) {
    if (p.a[j] != p.b[j]) out.ab_failing.push_back(j);
  }
  out.via_ab = out.ab_failing.empty();
  out.ab_applicable = bf.holds;
  if (p.eps.per_class) {
    out.cz_mode = "per-class";
    for (std::size_t j = 0; j < p.e; ++j) {
      if (p.c[j] != (*p.eps.per_class)[j]) out.cz_failing.push_back(j);
    }
    out.via_cz = out.cz_failing.empty();
  } else {
    out.cz_mode = "multiset";
    auto sorted_c = p.c;
    std::sort(sorted_c.begin(), sorted_c.end());
    out.via_cz = sorted_c == p.eps.multiset;
  }
  out.consistent = (!out.ab_applicable || out.via_ab == out.via_hilbert) && out.via_cz == out.via_hilbert;
  return out;
}

CMReport cm_verdict(const CurveRing& ring, const ReductionElement& x) {
  return cm_verdict(invariant_profile(ring, x), bf_auto(ring));
}

TransferReport hilbert_transfer(const CurveRing& source, const CurveRing& target, const BfBudget& budget) {
  TransferReport out;
  if (source.multiplicity() != target.multiplicity()) {
    out.reason = "multiplicities differ";
    return out;
  }
  const auto ps = invariant_profile(source, make_reduction(source, "default"));
  const auto pt = invariant_profile(target, make_reduction(target, "default"));
  out.source_cm = ps.hilbert.equality_holds();
  if (ps.a != pt.a || ps.b != pt.b) {
    out.reason = "the vectors a and b differ";
    return out;
  }
  if (!bf_auto(source, budget).holds || !bf_auto(target, budget).holds) {
    out.reason = "BF is not certified on both rings";
    return out;
  }
  out.applicable = true;
  out.reason = "same e, a and b; BF certified on both rings";
  if (!out.source_cm) {
    out.conclusion = "source is not CM; nothing transfers";
    return out;
  }
  out.target_cm = pt.hilbert.equality_holds();
  const std::size_t len = std::max(ps.hilbert.hilb_r.size(), pt.hilbert.hilb_r.size()) + 1;
  bool equal = ps.hilbert.stable == pt.hilbert.stable;
  for (std::size_t i = 0; i < len && equal; ++i) equal = ps.hilbert.hilb_r_at(i) == pt.hilbert.hilb_r_at(i);
  out.hilbert_equal = equal;
  if (!*out.target_cm || !equal) throw DefectError("transferred CM or Hilbert series fails direct verification");
  out.conclusion = "target is CM with the same Hilbert series";
  return out;
}

CIReport ci_verdict(const CurveRing& ring, const CMReport& cm, const BFReport& bf) {
  CIReport out;
  out.bf_certified = bf.holds;
  if (ring.embedding_dimension() <= 2) {
    out.verdict = "CI";
    out.route = "plane-branch";
    out.reason = "embedding dimension at most 2";
    return out;
  }
  const auto& s = ring.semigroup();
  if (s.generators().size() > 3) {
    out.verdict = cm.via_hilbert ? "unknown" : "not-CI";
    out.route = "none";
    out.reason = cm.via_hilbert ? "value semigroup has more than 3 minimal generators"
                                : "gr(R) is not Cohen-Macaulay";
    return out;
  }
  out.classification = sg_three_gen_ci(s);
  const auto& cls = *out.classification;
  if (ring.is_monomial()) {
    out.route = "monomial-classification";
    out.verdict = cls.gr_ci ? "CI" : "not-CI";
    out.representation = cls.chosen;
    out.reason = !cls.is_ci ? "semigroup is not a complete intersection"
                 : cls.gr_ci ? "semigroup matches case " + to_string(cls.chosen_representation()->case_tag)
                             : "no representation matches a case";
    return out;
  }
  if (!cm.via_hilbert) {
    out.verdict = "not-CI";
    out.route = "none";
    out.reason = "gr(R) is not Cohen-Macaulay";
    return out;
  }
  if (bf.holds) {
    for (std::size_t k = 0; k < cls.representations.size(); ++k) {
      const auto& rep = cls.representations[k];
      if (!rep.gr_ci) continue;
      std::vector<std::size_t> values;
      if (family_pattern_matches(ring, rep, values)) {
        out.verdict = "CI";
        out.route = "section2-family";
        out.representation = k;
        out.pattern_values = std::move(values);
        out.reason = "case " + to_string(rep.case_tag) + (rep.subcase.empty() ? "" : " (" + rep.subcase + ")") +
                     " with generator-product Apery basis and BF certified";
        return out;
      }
    }
  }
  out.verdict = "unknown";
  out.route = "none";
  out.reason = bf.holds ? "no case with a generator-product Apery basis" : "BF not certified";
  return out;
}

CIReport ci_verdict(const CurveRing& ring) {
  const auto x = make_reduction(ring, "default");
  const auto bf = bf_auto(ring);
  const auto cm = cm_verdict(invariant_profile(ring, x), bf);
  return ci_verdict(ring, cm, bf);
}

}  // namespace apery

#include "apery/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

namespace apery {
namespace {

std::string monomial_text(std::size_t n) { return "t^" + std::to_string(n); }

bool wants(const FamilySpec& spec, const std::string& q) {
  return std::find(spec.questions.begin(), spec.questions.end(), q) != spec.questions.end();
}

}  // namespace

std::vector<std::vector<std::size_t>> enumerate_semigroups(std::size_t m, long max_frobenius) {
  std::vector<std::vector<std::size_t>> out;
  if (m == 0) return out;
  if (m == 1) {
    if (max_frobenius >= -1) out.push_back({1});
    return out;
  }
  if (max_frobenius < static_cast<long>(m) - 1) return out;
  // Kunz coordinates: w_j = k_j m + j with k_p + k_q >= k_{p+q}, plus one when p + q wraps past m.
  const std::size_t w_max = static_cast<std::size_t>(max_frobenius) + m;
  std::vector<std::size_t> k(m, 0);
  std::function<void(std::size_t)> place = [&](std::size_t j) {
    if (j == m) {
      std::vector<std::size_t> gens{m};
      for (std::size_t i = 1; i < m; ++i) gens.push_back(k[i] * m + i);
      out.push_back(NumericalSemigroup::from_generators(gens).generators());
      return;
    }
    for (std::size_t kj = 1; kj * m + j <= w_max; ++kj) {
      k[j] = kj;
      bool ok = true;
      // Check every inequality whose three classes are now all placed, one of them being j.
      for (std::size_t p = 1; p <= j && ok; ++p) {
        for (std::size_t q = p; q <= j && ok; ++q) {
          const std::size_t t = (p + q) % m;
          if (t == 0 || t > j || std::max(q, t) != j) continue;
          const std::size_t carry = p + q > m ? 1 : 0;
          if (k[p] + k[q] + carry < k[t]) ok = false;
        }
      }
      if (ok) place(j + 1);
    }
  };
  place(1);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::string label_of(const std::vector<std::string>& generators) {
  std::string label = "k[[";
  for (std::size_t g = 0; g < generators.size(); ++g) label += (g ? "," : "") + generators[g];
  return label + "]]";
}

void expand(const MonomialFamily& mono, std::size_t family, std::vector<SweepInstance>& out) {
  std::size_t index = 0;
  for (std::size_t m = std::max<std::size_t>(1, mono.min_multiplicity); m <= mono.max_multiplicity; ++m) {
    for (const auto& gens : enumerate_semigroups(m, mono.max_frobenius)) {
      SweepInstance inst{family, index++, "", {}};
      for (std::size_t n : gens) inst.generators.push_back(monomial_text(n));
      inst.label = label_of(inst.generators);
      out.push_back(std::move(inst));
    }
  }
}

void expand(const ExplicitFamily& fam, std::size_t family, std::vector<SweepInstance>& out) {
  std::size_t index = 0;
  for (const auto& ring : fam.rings) {
    out.push_back({family, index++, ring.label.empty() ? label_of(ring.generators) : ring.label, ring.generators});
  }
}

void expand(const PerturbedFamily& pert, std::size_t family, std::vector<SweepInstance>& out) {
  std::size_t index = 0;
  std::vector<std::size_t> base = pert.base;
  std::sort(base.begin(), base.end());
  for (std::size_t g = 1; g < base.size(); ++g) {
    for (std::size_t d : pert.offsets) {
      for (long c : pert.coefficients) {
        if (c == 0 || d == 0) continue;
        SweepInstance inst{family, index++, "", {}};
        for (std::size_t h = 0; h < base.size(); ++h) {
          std::string text = monomial_text(base[h]);
          if (h == g) {
            const std::string term = monomial_text(base[h] + d);
            if (c == 1) text += "+" + term;
            else if (c == -1) text += "-" + term;
            else text += (c > 0 ? "+" : "-") + std::to_string(c > 0 ? c : -c) + "*" + term;
          }
          inst.generators.push_back(text);
        }
        inst.label = label_of(inst.generators);
        out.push_back(std::move(inst));
      }
    }
  }
}

}  // namespace

std::vector<SweepInstance> expand_family(const FamilySpec& spec) {
  std::vector<SweepInstance> out;
  for (std::size_t family = 0; family < spec.families.size(); ++family) {
    std::visit([&](const auto& fam) { expand(fam, family, out); }, spec.families[family]);
  }
  return out;
}

InstanceResult explore_instance(const SweepInstance& instance, const FamilySpec& spec) {
  InstanceResult res;
  res.label = instance.label;
  res.generators = instance.generators;
  try {
    const CurveRing ring = ring_build(spec.field, instance.generators);
    res.semigroup = ring.semigroup().to_string();
    res.e = ring.multiplicity();
    res.nu = ring.embedding_dimension();
    res.r = ring.reduction_number();
    const auto x = make_reduction(ring, "default");
    const auto profile = invariant_profile(ring, x);
    assert_profile(profile);
    res.a = profile.a;
    res.b = profile.b;
    res.eps = profile.eps.multiset;
    res.a_equals_b = profile.a == profile.b;
    res.cm_hilbert = profile.hilbert.equality_holds();

    const auto bf = bf_auto(ring, spec.budget);
    res.bf_holds = bf.holds;
    res.bf_route = bf.route;
    res.bf_status = bf.status;
    res.natural_witness_holds = bf.natural_witness_holds.value_or(bf.holds);
    res.budget_exhausted = bf.status == "no-witness-within-budget";

    res.ed_default = check_essential_divisibility(ring, x).holds;
    res.reductions_tried = bf.reductions_tried;
    if (!bf.holds) {
      const auto candidates = candidate_reductions(ring, spec.budget);
      res.reductions_tried = candidates.size();
      for (const auto& cand : candidates) {
        if (check_essential_divisibility(ring, cand).holds) res.ed_reductions.push_back(cand.to_string());
      }
    }

    auto sorted_a = profile.a;
    std::sort(sorted_a.begin(), sorted_a.end());
    res.q1 = wants(spec, "Q1") && !res.ed_reductions.empty() && !bf.holds;
    res.q2 = wants(spec, "Q2") && !bf.holds && res.a_equals_b != res.cm_hilbert;
    res.q3 = wants(spec, "Q3") && sorted_a != profile.eps.multiset;
    if (!res.natural_witness_holds) {
      res.note = "BF witness failed; " + std::to_string(bf.bases_tried) + " bases tried; " +
                 (bf.holds ? "certified by search (" + bf.route + ")" : "not concluded");
    }
  } catch (const Error& err) {
    res.status = "error";
    res.error = err.what();
  }
  return res;
}

SweepReport question_explorer(const FamilySpec& spec, std::size_t threads) {
  const auto instances = expand_family(spec);
  SweepReport report;
  report.questions = spec.questions;
  report.instances.resize(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < instances.size(); k = next++) {
      report.instances[k] = explore_instance(instances[k], spec);
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, instances.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  auto& s = report.summary;
  s.instances = report.instances.size();
  for (const auto& res : report.instances) {
    s.q1 += res.q1;
    s.q2 += res.q2;
    s.q3 += res.q3;
    s.bf_failed_natural += res.status == "ok" && !res.natural_witness_holds;
    s.budget_exhausted += res.budget_exhausted;
    s.errors += res.status != "ok";
  }
  return report;
}

}  // namespace apery

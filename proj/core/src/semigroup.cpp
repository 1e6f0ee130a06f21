#include "apery/semigroup.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

#include "apery/field.hpp"

namespace apery {

NumericalSemigroup::NumericalSemigroup(ValueSet values) : values_(std::move(values)) {
  std::size_t e = 1;
  while (!values_.contains(e)) ++e;
  apery_ = values_.apery(e);
  // Minimal generators are below c + e.
  const std::size_t bound = std::max<std::size_t>(conductor(), 1) + e;
  const auto members = values_.members_below(bound);
  for (std::size_t n : members) {
    if (n == 0) continue;
    bool decomposable = false;
    for (std::size_t m : members) {
      if (m == 0) continue;
      if (2 * m > n) break;
      if (values_.contains(n - m)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) generators_.push_back(n);
  }
}

NumericalSemigroup NumericalSemigroup::from_generators(std::span<const std::size_t> generators) {
  if (generators.empty()) throw InputError("semigroup needs at least one generator");
  std::size_t g = 0;
  for (std::size_t n : generators) {
    if (n == 0) throw InputError("semigroup generators must be positive");
    g = std::gcd(g, n);
  }
  if (g != 1) {
    throw InputError("generators have gcd " + std::to_string(g) + "; the semigroup has no finite conductor");
  }
  // Shortest paths over residues mod e give the Apery vector directly.
  const std::size_t e = *std::min_element(generators.begin(), generators.end());
  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(e, inf);
  std::vector<bool> done(e, false);
  dist[0] = 0;
  for (std::size_t round = 0; round < e; ++round) {
    std::size_t best = inf;
    std::size_t u = 0;
    for (std::size_t j = 0; j < e; ++j) {
      if (!done[j] && dist[j] < best) {
        best = dist[j];
        u = j;
      }
    }
    if (best == inf) break;
    done[u] = true;
    for (std::size_t gen : generators) {
      const std::size_t v = (u + gen) % e;
      if (dist[u] + gen < dist[v]) dist[v] = dist[u] + gen;
    }
  }
  const std::size_t frob_plus_e = *std::max_element(dist.begin(), dist.end());
  const std::size_t conductor = frob_plus_e + 1 >= e ? frob_plus_e + 1 - e : 0;
  std::vector<bool> below(conductor, false);
  for (std::size_t n = 0; n < conductor; ++n) below[n] = n >= dist[n % e];
  return NumericalSemigroup(ValueSet(std::move(below), conductor));
}

NumericalSemigroup NumericalSemigroup::from_values(const ValueSet& values) {
  if (!values.contains(0)) throw DefectError("value set does not contain 0");
  const std::size_t c = values.tail();
  const auto members = values.members_below(c);
  for (std::size_t a : members) {
    for (std::size_t b : members) {
      if (!values.contains(a + b)) {
        throw DefectError("value set is not closed under addition: " + std::to_string(a) + "+" +
                          std::to_string(b));
      }
    }
  }
  return NumericalSemigroup(values);
}

bool NumericalSemigroup::is_symmetric() const {
  return 2 * genus() == conductor();
}

std::string NumericalSemigroup::to_string() const {
  std::string out = "<";
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(generators_[k]);
  }
  return out + ">";
}

std::size_t power_tail_threshold(std::size_t conductor, std::size_t multiplicity, std::size_t i) {
  if (i == 0) return conductor;
  return std::max(conductor, multiplicity) + (i - 1) * multiplicity;
}

std::vector<SemigroupIdealPower> sg_power_sequence(const NumericalSemigroup& s, std::size_t max_i) {
  const std::size_t c = s.conductor();
  const std::size_t e = s.multiplicity();
  std::vector<SemigroupIdealPower> out;
  out.push_back({0, s.values(), c, s.apery()});
  if (max_i == 0) return out;

  const std::size_t t1 = power_tail_threshold(c, e, 1);
  std::vector<bool> m_below(t1);
  for (std::size_t n = 1; n < t1; ++n) m_below[n] = s.contains(n);
  ValueSet m(std::move(m_below), t1);
  out.push_back({1, m, t1, m.apery(e)});

  for (std::size_t i = 2; i <= max_i; ++i) {
    const ValueSet& prev = out.back().values;
    const std::size_t t = power_tail_threshold(c, e, i);
    std::vector<bool> below(t, false);
    for (std::size_t n = 0; n < t; ++n) {
      for (std::size_t mm = 1; mm <= n; ++mm) {
        if (m.contains(mm) && prev.contains(n - mm)) {
          below[n] = true;
          break;
        }
      }
    }
    ValueSet values(std::move(below), t);
    auto apery = values.apery(e);
    out.push_back({i, std::move(values), t, std::move(apery)});
  }
  return out;
}

SemigroupIdealPower sg_power_values(const NumericalSemigroup& s, std::size_t i) {
  return sg_power_sequence(s, i).back();
}

std::size_t reduction_number_cap(std::size_t conductor, std::size_t multiplicity) {
  return 4 * conductor / multiplicity + 16;
}

std::size_t sg_reduction_number(const NumericalSemigroup& s) {
  const std::size_t e = s.multiplicity();
  const std::size_t cap = reduction_number_cap(s.conductor(), e);
  const auto powers = sg_power_sequence(s, cap + 1);
  for (std::size_t n = 0; n <= cap; ++n) {
    bool equal = true;
    for (std::size_t j = 0; j < e; ++j) {
      if (powers[n + 1].apery[j] != powers[n].apery[j] + e) {
        equal = false;
        break;
      }
    }
    if (equal) return n;
  }
  throw DefectError("reduction number exceeds the cap " + std::to_string(cap) + " for " + s.to_string());
}

std::string to_string(CICase c) {
  switch (c) {
    case CICase::a:
      return "a";
    case CICase::b:
      return "b";
    case CICase::c:
      return "c";
    case CICase::none:
      break;
  }
  return "none";
}

CIClassification sg_three_gen_ci(const NumericalSemigroup& s) {
  CIClassification out;
  const auto& gens = s.generators();
  if (gens.size() <= 2) {
    out.is_ci = true;
    out.gr_ci = true;
    out.plane = true;
    return out;
  }
  if (gens.size() > 3) {
    throw InputError("complete-intersection classification needs at most 3 minimal generators, " + s.to_string() +
                     " has " + std::to_string(gens.size()));
  }
  for (std::size_t pick = 0; pick < 3; ++pick) {
    const std::size_t z = gens[pick];
    std::vector<std::size_t> pair;
    for (std::size_t k = 0; k < 3; ++k) {
      if (k != pick) pair.push_back(gens[k]);
    }
    const std::size_t n = std::gcd(pair[0], pair[1]);
    if (n <= 1) continue;
    const std::size_t a = pair[0] / n;
    const std::size_t b = pair[1] / n;
    for (std::size_t n1 = 0; n1 * a <= z; ++n1) {
      const std::size_t rest = z - n1 * a;
      if (rest % b != 0) continue;
      CIRepresentation rep{n, a, b, n1, rest / b, CICase::none, {}, false};
      if (rep.n2 == 0) {
        rep.case_tag = CICase::a;
        rep.subcase = n < n1 ? "n<n1" : "n1<n";
        rep.gr_ci = true;
      } else if (n <= n1 + rep.n2 && n * a < z && z < n * b) {
        rep.case_tag = CICase::b;
        rep.gr_ci = true;
      } else if (n <= n1 + rep.n2 && n * b < z) {
        rep.case_tag = CICase::c;
        rep.gr_ci = true;
      }
      out.representations.push_back(std::move(rep));
    }
  }
  std::sort(out.representations.begin(), out.representations.end(),
            [](const CIRepresentation& x, const CIRepresentation& y) {
              return std::tie(x.case_tag, x.n, x.a, x.b, x.n1, x.n2) <
                     std::tie(y.case_tag, y.n, y.a, y.b, y.n1, y.n2);
            });
  out.is_ci = !out.representations.empty();
  for (std::size_t k = 0; k < out.representations.size(); ++k) {
    if (out.representations[k].gr_ci) {
      out.gr_ci = true;
      out.chosen = k;
      break;
    }
  }
  if (!out.chosen && out.is_ci) out.chosen = 0;
  return out;
}

}  // namespace apery

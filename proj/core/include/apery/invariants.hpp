#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "apery/ring.hpp"

namespace apery {

struct BcVectors {
  /// b_j = vord(w_j).
  std::vector<std::size_t> b;
  /// c_j = max { i : w_j in v(m^i + xR) }.
  std::vector<std::size_t> c;
};

BcVectors compute_bc(const CurveRing& ring, const ReductionElement& x);

struct BlowupProfile {
  /// v(R') = v(m^r) - re.
  ValueSet values;
  std::vector<std::size_t> w_prime;
  /// w'_j = w_j - a_j e.
  std::vector<std::size_t> a;
};

BlowupProfile blowup_profile(const CurveRing& ring);

/// R' = x^{-r} m^r as a subspace of k[[t]].
Subspace blowup_space(const CurveRing& ring, const ReductionElement& x);

struct Microinvariants {
  /// Sorted ascending, e entries.
  std::vector<std::size_t> multiset;
  /// d_n = length of R' / (R + x^n R') for n = 0, 1, ... until it reaches length(R'/R).
  std::vector<std::size_t> jumps;
  /// eps_j by class, present when R' has an Apery basis g_j with x^{a_j} g_j in R.
  std::optional<std::vector<std::size_t>> per_class;
};

Microinvariants microinvariants(const CurveRing& ring, const ReductionElement& x);
/// The multiset with sum_j min(eps_j, n) = jumps[n]; throws DefectError when no such multiset exists.
std::vector<std::size_t> multiset_from_jumps(const std::vector<std::size_t>& jumps, std::size_t e);

struct HilbertData {
  /// l(m^i / m^{i+1}) for i = 0..r; equals `stable` for every i > r.
  std::vector<std::size_t> hilb_r;
  std::size_t stable = 0;
  /// l((m^i + xR) / (m^{i+1} + xR)) for i = 0..r.
  std::vector<std::size_t> hilb_mod;

  std::size_t hilb_r_at(std::size_t i) const { return i < hilb_r.size() ? hilb_r[i] : stable; }
  /// Coefficients of (1 - z) Hilb_R for i = 0..r.
  std::vector<long> one_minus_z_hilb_r() const;
  /// Hilb_R(n) <= sum_{i <= n} hilb_mod_i for every n, the form in which the
  /// inequality between the two series holds for every ring.
  bool inequality_holds() const;
  /// (1 - z) Hilb_R = Hilb_{R/xR}: gr(R) is Cohen-Macaulay.
  bool equality_holds() const;
};

HilbertData hilbert(const CurveRing& ring, const ReductionElement& x);

struct InvariantProfile {
  std::size_t e = 0;
  std::size_t r = 0;
  std::string reduction;
  std::vector<std::size_t> w;
  std::vector<std::size_t> w_prime;
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  std::vector<std::size_t> c;
  Microinvariants eps;
  HilbertData hilbert;
  ValueSet blowup_values;
};

InvariantProfile invariant_profile(const CurveRing& ring, const ReductionElement& x);
/// Throws DefectError naming the first violated relation among the invariants.
void assert_profile(const InvariantProfile& p);

}  // namespace apery

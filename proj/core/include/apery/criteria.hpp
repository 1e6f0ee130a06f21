#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apery/invariants.hpp"
#include "apery/ring.hpp"

namespace apery {

struct EdWitness {
  std::size_t i = 0;
  std::size_t value = 0;
  std::size_t cls = 0;
};

/// Essential divisibility of the m-adic filtration with respect to xR.
struct EssentialDivisibilityReport {
  std::string reduction;
  /// b_j = c_j for every j; the reported verdict.
  bool holds = false;
  /// v(m^i + xR) = v(m^i) u v(xR) for i <= r+1.
  bool via_union = false;
  /// v(m^i n xR) = v(m^i) n v(xR) for i <= r+1.
  bool via_intersection = false;
  bool consistent = false;
  /// Least i, then least u in v(m^i + xR) outside v(m^i) u v(xR).
  std::optional<EdWitness> witness;
};

EssentialDivisibilityReport check_essential_divisibility(const CurveRing& ring, const ReductionElement& x);

struct LemmaRow {
  std::size_t i = 0;
  bool union_holds = false;
  bool intersection_holds = false;
};

/// For I = m^i, J = xR: v(I+J) = v(I) u v(J) iff v(I n J) = v(I) n v(J).
struct LemmaCheck {
  std::vector<LemmaRow> rows;
  bool holds = true;
};

LemmaCheck lemma_sum_intersect_check(const CurveRing& ring, const ReductionElement& x);

/// Membership of x^h f_j in m^i where Ap_j(v(m^i)) = w_j + h e.
struct BfCertificate {
  std::size_t i = 0;
  std::size_t cls = 0;
  std::size_t h = 0;
  std::size_t value = 0;
  bool member = false;
};

struct BfWitness {
  std::size_t i = 0;
  std::size_t cls = 0;
  std::size_t h = 0;
  std::size_t value = 0;
};

struct BFReport {
  bool holds = false;
  /// "certified", "witness-failed" or "no-witness-within-budget".
  std::string status;
  /// How the verdict was reached: "given-basis", "semigroup-algebra", "reduction-number",
  /// "embedding-dimension", "natural-witness", "basis-search", "reduction-search", "none".
  std::string route;
  std::string reduction;
  /// Class-indexed basis f_j.
  std::vector<std::string> basis;
  std::vector<std::size_t> basis_values;
  std::vector<std::size_t> basis_orders;
  std::vector<BfCertificate> certificates;
  /// First failing (i, j) for the reported pair; for searches, the natural witness failure.
  std::optional<BfWitness> witness;
  /// Outcome of the default reduction with the extracted Apery basis, when it was tried.
  std::optional<bool> natural_witness_holds;
  std::size_t reductions_tried = 0;
  std::size_t bases_tried = 0;
};

struct BfBudget {
  /// Candidate reductions examined by exact basis search, the default one included.
  std::size_t max_reductions = 24;
  /// Perturbation coefficients are taken from {-bound, ..., bound} \ {0}.
  long coefficient_bound = 2;
};

/// Tests Ap_e(v(m^i)) = { v(x^{h_j} f_j) } with x^{h_j} f_j in m^i for i <= r+1.
/// Basis elements may come in any order; throws InputError unless their values are the Apery set of S.
BFReport check_bf(const CurveRing& ring, const ReductionElement& x, std::span<const TruncatedSeries> basis);

/// For a fixed x, the set of admissible f_j in each class is a subspace; returns
/// a certifying basis when every class has an admissible element of value w_j.
std::optional<std::vector<TruncatedSeries>> bf_basis_search(const CurveRing& ring, const ReductionElement& x);

/// Reductions tried by the searches: generators of value e, then x + c f_s for
/// canonical elements f_s of R with e < s < c + e and small coefficients c.
std::vector<ReductionElement> candidate_reductions(const CurveRing& ring, const BfBudget& budget);

BFReport bf_auto(const CurveRing& ring, const BfBudget& budget = {});

/// Basis built by dividing Apery elements of m^{r+1} by x and re-selecting
/// inside m^i n xR until the value leaves v(xR). Nothing when a step has no element.
std::optional<std::vector<TruncatedSeries>> descent_basis(const CurveRing& ring, const ReductionElement& x);

struct CMReport {
  /// (1 - z) Hilb_R = Hilb_{R/xR}; authoritative.
  bool via_hilbert = false;
  /// a_j = b_j for all j; meaningful only when ab_applicable.
  bool via_ab = false;
  bool ab_applicable = false;
  std::vector<std::size_t> ab_failing;
  /// c_j = eps_j, compared per class when eps has a class assignment, else as multisets.
  bool via_cz = false;
  std::string cz_mode;
  std::vector<std::size_t> cz_failing;
  bool consistent = false;
  std::vector<long> one_minus_z_hilb_r;
  std::vector<std::size_t> hilb_mod;
};

CMReport cm_verdict(const InvariantProfile& profile, const BFReport& bf);
CMReport cm_verdict(const CurveRing& ring, const ReductionElement& x);

struct TransferReport {
  bool applicable = false;
  std::string reason;
  bool source_cm = false;
  /// Present when applicable and the source is CM.
  std::optional<bool> target_cm;
  std::optional<bool> hilbert_equal;
  std::string conclusion;
};

/// Same e, a and b with BF on both sides: CM and the Hilbert series carry over.
TransferReport hilbert_transfer(const CurveRing& source, const CurveRing& target, const BfBudget& budget = {});

struct CIReport {
  /// "CI", "not-CI" or "unknown".
  std::string verdict;
  /// "plane-branch", "monomial-classification", "section2-family" or "none".
  std::string route;
  std::string reason;
  std::optional<CIClassification> classification;
  /// Index into classification->representations of the case used.
  std::optional<std::size_t> representation;
  /// Values of the products g_P^i g_Q^j that formed the Apery basis.
  std::vector<std::size_t> pattern_values;
  bool bf_certified = false;
};

CIReport ci_verdict(const CurveRing& ring, const CMReport& cm, const BFReport& bf);
CIReport ci_verdict(const CurveRing& ring);

}  // namespace apery

#include "apery/analysis.hpp"

#include <atomic>
#include <chrono>
#include <set>
#include <sstream>
#include <thread>

namespace apery {
namespace {

#define APERY_JSON_DEFINE(Type, ...)                                                            \
  void to_json(json& nlohmann_json_j, const Type& nlohmann_json_t) {                            \
    NLOHMANN_JSON_EXPAND(NLOHMANN_JSON_PASTE(NLOHMANN_JSON_TO, __VA_ARGS__))                    \
  }                                                                                             \
  void from_json(const json& nlohmann_json_j, Type& nlohmann_json_t) {                          \
    NLOHMANN_JSON_EXPAND(NLOHMANN_JSON_PASTE(NLOHMANN_JSON_FROM, __VA_ARGS__))                  \
  }

std::string join(const std::vector<std::size_t>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? sep : "") + std::to_string(v[k]);
  return out;
}

std::string join(const std::vector<long>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? sep : "") + v[k];
  return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string polynomial(const std::vector<std::size_t>& coeffs) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (!out.empty()) out += " + ";
    const std::string c = coeffs[i] == 1 && i > 0 ? "" : std::to_string(coeffs[i]);
    out += i == 0 ? c : c + (i == 1 ? "z" : "z^" + std::to_string(i));
  }
  return out.empty() ? "0" : out;
}

template <typename T>
T required(const json& obj, const char* key) {
  if (!obj.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("key '") + key + "' has the wrong type");
  }
}

template <typename T>
T optional_key(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("key '") + key + "' has the wrong type");
  }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& what) {
  if (!obj.is_object()) throw InputError(what + " must be a JSON object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw InputError("unknown key '" + item.key() + "' in " + what);
  }
}

}  // namespace

void to_json(json& j, const Field& f) { j = field_to_json(f); }
void from_json(const json& j, Field& f) { f = parse_field(j); }

void to_json(json& j, const ValueSet& v) {
  j = json{{"members_below_tail", v.members_below(v.tail())}, {"tail", v.tail()}};
}

void from_json(const json& j, ValueSet& v) {
  const auto members = j.at("members_below_tail").get<std::vector<std::size_t>>();
  v = ValueSet::from_members(members, j.at("tail").get<std::size_t>());
}

void to_json(json& j, const CICase& c) { j = to_string(c); }

void from_json(const json& j, CICase& c) {
  const auto s = j.get<std::string>();
  c = s == "a" ? CICase::a : s == "b" ? CICase::b : s == "c" ? CICase::c : CICase::none;
}

APERY_JSON_DEFINE(RingEcho, field, generators, precision, semigroup, semigroup_generators, e, nu, conductor, frobenius,
                  r, apery, monomial, path)
APERY_JSON_DEFINE(BasisEntry, cls, value, order, element)
APERY_JSON_DEFINE(Microinvariants, multiset, jumps, per_class)
APERY_JSON_DEFINE(HilbertData, hilb_r, stable, hilb_mod)
APERY_JSON_DEFINE(InvariantProfile, e, r, reduction, w, w_prime, a, b, c, eps, hilbert, blowup_values)
APERY_JSON_DEFINE(EdWitness, i, value, cls)
APERY_JSON_DEFINE(EssentialDivisibilityReport, reduction, holds, via_union, via_intersection, consistent, witness)
APERY_JSON_DEFINE(LemmaRow, i, union_holds, intersection_holds)
APERY_JSON_DEFINE(LemmaCheck, rows, holds)
APERY_JSON_DEFINE(BfCertificate, i, cls, h, value, member)
APERY_JSON_DEFINE(BfWitness, i, cls, h, value)
APERY_JSON_DEFINE(BFReport, holds, status, route, reduction, basis, basis_values, basis_orders, certificates, witness,
                  natural_witness_holds, reductions_tried, bases_tried)
APERY_JSON_DEFINE(CMReport, via_hilbert, via_ab, ab_applicable, ab_failing, via_cz, cz_mode, cz_failing, consistent,
                  one_minus_z_hilb_r, hilb_mod)
APERY_JSON_DEFINE(CIRepresentation, n, a, b, n1, n2, case_tag, subcase, gr_ci)
APERY_JSON_DEFINE(CIClassification, is_ci, gr_ci, plane, representations, chosen)
APERY_JSON_DEFINE(CIReport, verdict, route, reason, classification, representation, pattern_values, bf_certified)
APERY_JSON_DEFINE(TransferReport, applicable, reason, source_cm, target_cm, hilbert_equal, conclusion)
APERY_JSON_DEFINE(AnalysisReport, label, ring, invariants, apery_basis, reduction_verified, essential_divisibility,
                  lemma, bf, given_basis_bf, cm, ci, timing_ms)
APERY_JSON_DEFINE(SemigroupReport, generators, apery, frobenius, conductor, genus, symmetric, r, power_apery, ci)
APERY_JSON_DEFINE(InstanceResult, label, generators, status, error, semigroup, e, nu, r, ed_default, ed_reductions,
                  reductions_tried, bf_holds, bf_route, bf_status, natural_witness_holds, budget_exhausted,
                  cm_hilbert, a_equals_b, a, b, eps, q1, q2, q3, note)
APERY_JSON_DEFINE(SweepSummary, instances, q1, q2, q3, bf_failed_natural, budget_exhausted, errors)
APERY_JSON_DEFINE(SweepReport, questions, instances, summary)

Field parse_field(const json& value) {
  if (value.is_object()) {
    if (value.contains("prime")) {
      reject_unknown(value, {"prime"}, "field");
      return parse_field(value.at("prime"));
    }
    reject_unknown(value, {"rational"}, "field");
    return Field::rational();
  }
  if (value.is_number_unsigned() || value.is_number_integer()) {
    const auto p = value.get<long long>();
    if (p <= 1) throw InputError("field characteristic must be a prime, got " + std::to_string(p));
    return Field::prime(static_cast<std::uint64_t>(p));
  }
  if (!value.is_string()) throw InputError("field must be \"rational\", a prime, or {\"prime\": p}");
  std::string s = value.get<std::string>();
  if (s == "rational" || s == "QQ" || s == "Q" || s == "0") return Field::rational();
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') s = s.substr(3, s.size() - 4);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError("unrecognized field '" + value.get<std::string>() + "'");
  }
  return Field::prime(std::stoull(s));
}

json field_to_json(const Field& field) {
  if (field.is_rational()) return "rational";
  return json{{"prime", field.characteristic()}};
}

std::vector<RingInput> parse_ring_inputs(const json& document) {
  std::vector<json> items;
  if (document.is_array()) {
    for (const auto& item : document) items.push_back(item);
  } else {
    items.push_back(document);
  }
  std::vector<RingInput> out;
  std::set<std::string> labels;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const json& item = items[k];
    reject_unknown(item, {"label", "field", "generators", "reduction", "apery_basis", "precision"}, "ring input");
    RingInput in;
    in.label = optional_key<std::string>(item, "label", "ring" + std::to_string(k + 1));
    if (in.label.empty()) throw InputError("ring label must be nonempty");
    if (!labels.insert(in.label).second) throw InputError("duplicate ring label '" + in.label + "'");
    if (item.contains("field")) in.field = parse_field(item.at("field"));
    in.generators = required<std::vector<std::string>>(item, "generators");
    in.reduction = optional_key<std::string>(item, "reduction", "default");
    in.apery_basis = optional_key<std::vector<std::string>>(item, "apery_basis", {});
    if (item.contains("precision") && !item.at("precision").is_null()) {
      in.precision = required<std::size_t>(item, "precision");
    }
    out.push_back(std::move(in));
  }
  return out;
}

AnalysisReport analyze(const RingInput& input, const AnalysisOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RingOptions ring_options;
  ring_options.precision = input.precision;
  const CurveRing ring = ring_build(input.field, input.generators, ring_options);
  const auto x = make_reduction(ring, input.reduction);

  AnalysisReport report;
  report.label = input.label;
  auto& echo = report.ring;
  echo.field = ring.field().to_string();
  for (const auto& g : ring.generators()) echo.generators.push_back(g.to_string());
  echo.precision = ring.precision();
  echo.semigroup = ring.semigroup().to_string();
  echo.semigroup_generators = ring.semigroup().generators();
  echo.e = ring.multiplicity();
  echo.nu = ring.embedding_dimension();
  echo.conductor = ring.conductor();
  echo.frobenius = ring.semigroup().frobenius();
  echo.r = ring.reduction_number();
  echo.apery = ring.semigroup().apery();
  echo.monomial = ring.is_monomial();
  echo.path = ring.uses_semigroup_path() ? "semigroup" : "echelon";

  report.invariants = invariant_profile(ring, x);
  assert_profile(report.invariants);

  const auto basis = apery_basis_extract(ring);
  for (std::size_t j = 0; j < basis.elements.size(); ++j) {
    report.apery_basis.push_back({j, basis.values[j], basis.orders[j], basis.elements[j].to_string()});
  }
  report.reduction_verified = verify_reduction_equality(ring, x);
  if (!report.reduction_verified) {
    throw DefectError("m^{r+1} = x m^r fails for x = " + x.to_string() + " with r = " + std::to_string(echo.r));
  }

  report.essential_divisibility = check_essential_divisibility(ring, x);
  if (!report.essential_divisibility.consistent) {
    throw DefectError("essential divisibility routes disagree for x = " + x.to_string());
  }
  report.lemma = lemma_sum_intersect_check(ring, x);
  if (!report.lemma.holds) throw DefectError("sum/intersection equivalence fails for x = " + x.to_string());

  report.bf = bf_auto(ring, options.budget);
  if (!input.apery_basis.empty()) {
    std::vector<TruncatedSeries> given;
    for (const auto& text : input.apery_basis) given.push_back(parse_series(text, ring.field(), ring.precision()));
    report.given_basis_bf = check_bf(ring, x, given);
  }
  auto certified_ed = [&](const BFReport& bf) {
    if (!bf.holds) return;
    const bool same = bf.reduction == x.to_string();
    const bool ed = same ? report.essential_divisibility.holds
                         : check_essential_divisibility(ring, make_reduction(ring, bf.reduction)).holds;
    if (!ed) throw DefectError("a BF certificate for x = " + bf.reduction + " without essential divisibility");
  };
  certified_ed(report.bf);
  if (report.given_basis_bf) certified_ed(*report.given_basis_bf);

  report.cm = cm_verdict(report.invariants, report.bf);
  if (report.cm.ab_applicable && report.cm.via_ab != report.cm.via_hilbert) {
    throw DefectError("BF certified but a = b disagrees with the Hilbert series verdict");
  }
  report.ci = ci_verdict(ring, report.cm, report.bf);
  if (report.ci.verdict == "CI" && !report.cm.via_hilbert) {
    throw DefectError("CI verdict on a ring whose associated graded ring is not Cohen-Macaulay");
  }
  if (options.timing) {
    report.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

std::vector<BatchItem> analyze_batch(const std::vector<RingInput>& inputs, const AnalysisOptions& options,
                                     std::size_t threads) {
  std::vector<BatchItem> out(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < inputs.size(); k = next++) {
      BatchItem& item = out[k];
      item.label = inputs[k].label;
      try {
        item.report = analyze(inputs[k], options);
      } catch (const InputError& err) {
        item.code = 2;
        item.error = err.what();
      } catch (const std::exception& err) {
        item.code = 3;
        item.error = err.what();
      }
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, inputs.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::string format_table(const AnalysisReport& rep) {
  std::ostringstream os;
  const auto& g = rep.ring;
  const auto& p = rep.invariants;
  os << "ring " << rep.label << ": k[[" << join(g.generators, ", ") << "]] over " << g.field << "\n";
  os << "  S = " << g.semigroup << "  e=" << g.e << "  nu=" << g.nu << "  conductor=" << g.conductor
     << "  F=" << g.frobenius << "  r=" << g.r << "  precision=" << g.precision << "  path=" << g.path << "\n";
  os << "  reduction x = " << p.reduction << (rep.reduction_verified ? "  (m^{r+1} = x m^r verified)" : "") << "\n";
  for (std::size_t j = 0; j < p.e; ++j) {
    os << "  j=" << j << ": w=" << p.w[j] << " b=" << p.b[j] << " c=" << p.c[j] << " a=" << p.a[j]
       << " w'=" << p.w_prime[j];
    if (p.eps.per_class) os << " eps=" << (*p.eps.per_class)[j];
    os << "  f=" << rep.apery_basis[j].element << " (ord " << rep.apery_basis[j].order << ")\n";
  }
  os << "  eps multiset = {" << join(p.eps.multiset) << "}" << (p.eps.per_class ? "" : "  (classes unassigned)")
     << "\n";
  os << "  Hilb_R = " << join(p.hilbert.hilb_r) << ", then " << p.hilbert.stable << " onwards\n";
  os << "  Hilb_R/xR = " << polynomial(p.hilbert.hilb_mod) << "\n";
  os << "  (1-z)Hilb_R = " << join(rep.cm.one_minus_z_hilb_r) << "\n";
  const auto& ed = rep.essential_divisibility;
  os << "  essential divisibility: " << (ed.holds ? "holds" : "fails");
  if (ed.witness) os << "  witness i=" << ed.witness->i << " u=" << ed.witness->value << " (j=" << ed.witness->cls << ")";
  os << "  routes " << (ed.consistent ? "agree" : "DISAGREE") << "\n";
  auto bf_line = [&](const char* name, const BFReport& bf) {
    os << "  " << name << ": " << (bf.holds ? "holds" : "not certified") << "  status=" << bf.status
       << "  route=" << bf.route << "  x=" << bf.reduction;
    if (bf.witness) {
      os << "  witness i=" << bf.witness->i << " j=" << bf.witness->cls << " h=" << bf.witness->h
         << " value=" << bf.witness->value;
    }
    os << "\n";
  };
  bf_line("BF", rep.bf);
  if (rep.given_basis_bf) bf_line("BF (given basis)", *rep.given_basis_bf);
  const auto& cm = rep.cm;
  os << "  CM: " << (cm.via_hilbert ? "yes" : "no") << " (Hilbert series)";
  os << "; a=b " << yes_no(cm.via_ab) << (cm.ab_applicable ? " (BF evidence)" : " (not applicable without BF)");
  os << "; c=eps " << yes_no(cm.via_cz) << " (" << cm.cz_mode << ")";
  os << "; routes " << (cm.consistent ? "agree" : "disagree") << "\n";
  os << "  CI: " << rep.ci.verdict << " via " << rep.ci.route << " (" << rep.ci.reason << ")\n";
  return os.str();
}

SemigroupReport semigroup_report(std::span<const std::size_t> generators) {
  const auto s = NumericalSemigroup::from_generators(generators);
  SemigroupReport out;
  out.generators = s.generators();
  out.apery = s.apery();
  out.frobenius = s.frobenius();
  out.conductor = s.conductor();
  out.genus = s.genus();
  out.symmetric = s.is_symmetric();
  out.r = sg_reduction_number(s);
  for (const auto& power : sg_power_sequence(s, out.r + 1)) out.power_apery.push_back(power.apery);
  if (out.generators.size() <= 3) out.ci = sg_three_gen_ci(s);
  return out;
}

std::string format_table(const SemigroupReport& rep) {
  std::ostringstream os;
  os << "S = <" << join(rep.generators) << ">  e=" << rep.apery.size() << "  F=" << rep.frobenius
     << "  conductor=" << rep.conductor << "  genus=" << rep.genus << "  symmetric=" << yes_no(rep.symmetric) << "\n";
  os << "Apery set by class:";
  for (std::size_t j = 0; j < rep.apery.size(); ++j) os << "  j=" << j << ": " << rep.apery[j];
  os << "\nreduction number r = " << rep.r << "\n";
  for (std::size_t i = 0; i < rep.power_apery.size(); ++i) {
    os << "  Ap(" << i << "M) = (" << join(rep.power_apery[i]) << ")\n";
  }
  if (!rep.ci) {
    os << "CI classification: not available for more than 3 generators\n";
    return os.str();
  }
  const auto& ci = *rep.ci;
  os << "CI: " << yes_no(ci.is_ci) << "  gr-CI: " << yes_no(ci.gr_ci) << (ci.plane ? "  (plane)" : "") << "\n";
  for (std::size_t k = 0; k < ci.representations.size(); ++k) {
    const auto& r = ci.representations[k];
    os << "  " << (ci.chosen && *ci.chosen == k ? "* " : "  ") << "n=" << r.n << " a=" << r.a << " b=" << r.b
       << " n1=" << r.n1 << " n2=" << r.n2 << " case " << to_string(r.case_tag)
       << (r.subcase.empty() ? "" : " (" + r.subcase + ")") << "\n";
  }
  return os.str();
}

FamilySpec parse_family_spec(const json& doc) {
  reject_unknown(doc, {"field", "questions", "budget", "families"}, "family spec");
  FamilySpec spec;
  if (doc.contains("field")) spec.field = parse_field(doc.at("field"));
  if (doc.contains("questions")) {
    spec.questions = required<std::vector<std::string>>(doc, "questions");
    for (const auto& q : spec.questions) {
      if (q != "Q1" && q != "Q2" && q != "Q3") throw InputError("unknown question '" + q + "'");
    }
  }
  if (doc.contains("budget")) {
    const auto& b = doc.at("budget");
    reject_unknown(b, {"max_reductions", "coefficient_bound"}, "budget");
    spec.budget.max_reductions = optional_key<std::size_t>(b, "max_reductions", spec.budget.max_reductions);
    spec.budget.coefficient_bound = optional_key<long>(b, "coefficient_bound", spec.budget.coefficient_bound);
    if (spec.budget.max_reductions == 0) throw InputError("budget.max_reductions must be positive");
  }
  const json families = optional_key<json>(doc, "families", json::array());
  if (!families.is_array()) throw InputError("'families' must be an array");
  for (const auto& fam : families) {
    const auto kind = required<std::string>(fam, "kind");
    if (kind == "monomial") {
      reject_unknown(fam, {"kind", "min_multiplicity", "max_multiplicity", "max_frobenius"}, "monomial family");
      MonomialFamily m;
      m.min_multiplicity = optional_key<std::size_t>(fam, "min_multiplicity", m.min_multiplicity);
      m.max_multiplicity = required<std::size_t>(fam, "max_multiplicity");
      m.max_frobenius = required<long>(fam, "max_frobenius");
      spec.families.push_back(m);
    } else if (kind == "explicit") {
      reject_unknown(fam, {"kind", "rings"}, "explicit family");
      ExplicitFamily ef;
      for (const auto& ring : required<json>(fam, "rings")) {
        reject_unknown(ring, {"label", "generators"}, "explicit ring");
        ExplicitRing er;
        er.generators = required<std::vector<std::string>>(ring, "generators");
        er.label = optional_key<std::string>(ring, "label", "k[[" + join(er.generators, ",") + "]]");
        ef.rings.push_back(std::move(er));
      }
      spec.families.push_back(std::move(ef));
    } else if (kind == "perturbed") {
      reject_unknown(fam, {"kind", "base", "offsets", "coefficients"}, "perturbed family");
      PerturbedFamily p;
      p.base = required<std::vector<std::size_t>>(fam, "base");
      p.offsets = required<std::vector<std::size_t>>(fam, "offsets");
      p.coefficients = optional_key<std::vector<long>>(fam, "coefficients", {-2, -1, 1, 2});
      spec.families.push_back(std::move(p));
    } else {
      throw InputError("unknown family kind '" + kind + "'");
    }
  }
  return spec;
}

std::string format_table(const SweepReport& rep) {
  std::ostringstream os;
  os << "questions: " << join(rep.questions, ",") << "\n";
  for (const auto& r : rep.instances) {
    os << r.label << "  ";
    if (r.status != "ok") {
      os << "error: " << r.error << "\n";
      continue;
    }
    os << "S=" << r.semigroup << " e=" << r.e << " r=" << r.r << " ED=" << yes_no(r.ed_default)
       << " BF=" << (r.bf_holds ? "certified" : "open") << " CM=" << yes_no(r.cm_hilbert)
       << " a=b=" << yes_no(r.a_equals_b);
    if (r.q1) os << " Q1";
    if (r.q2) os << " Q2";
    if (r.q3) os << " Q3";
    if (!r.note.empty()) os << "  [" << r.note << "]";
    os << "\n";
  }
  const auto& s = rep.summary;
  os << "instances=" << s.instances << " Q1=" << s.q1 << " Q2=" << s.q2 << " Q3=" << s.q3
     << " natural-witness-failures=" << s.bf_failed_natural << " budget-exhausted=" << s.budget_exhausted
     << " errors=" << s.errors << "\n";
  return os.str();
}

}  // namespace apery

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "apery/analysis.hpp"

namespace {

using apery::json;

constexpr int kInputError = 2;
constexpr int kDefect = 3;

json read_json(const std::string& path) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw apery::InputError("cannot open '" + path + "'");
    buffer << in.rdbuf();
  }
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& err) {
    throw apery::InputError("invalid JSON in '" + path + "': " + err.what());
  }
}

void emit_json(const json& value) { std::cout << value.dump(2) << "\n"; }

std::size_t default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

struct AnalyzeArgs {
  std::string input;
  std::vector<std::string> generators;
  std::string field = "rational";
  std::string reduction = "default";
  std::vector<std::string> basis;
  std::size_t precision = 0;
  std::string label;
  bool timing = false;
};

int run_analyze(const AnalyzeArgs& args, const apery::AnalysisOptions& options, const std::string& format,
                std::size_t threads) {
  std::vector<apery::RingInput> inputs;
  bool batch = false;
  if (!args.input.empty()) {
    if (!args.generators.empty()) throw apery::InputError("give either --input or generators, not both");
    const json doc = read_json(args.input);
    batch = doc.is_array();
    inputs = apery::parse_ring_inputs(doc);
  } else {
    if (args.generators.empty()) throw apery::InputError("no generators given");
    apery::RingInput in;
    in.label = args.label.empty() ? "ring1" : args.label;
    in.field = apery::parse_field(json(args.field));
    in.generators = args.generators;
    in.reduction = args.reduction;
    in.apery_basis = args.basis;
    if (args.precision > 0) in.precision = args.precision;
    inputs.push_back(std::move(in));
  }

  const auto items = apery::analyze_batch(inputs, options, threads);
  int code = 0;
  json out = json::array();
  for (const auto& item : items) {
    code = std::max(code, item.code);
    if (item.code != 0) {
      std::cerr << "error [" << item.label << "]: " << item.error << "\n";
      out.push_back({{"label", item.label}, {"error", item.error}, {"exit_code", item.code}});
      continue;
    }
    if (format == "json") {
      out.push_back(*item.report);
    } else {
      std::cout << apery::format_table(*item.report);
    }
  }
  if (format == "json") emit_json(batch ? out : out.at(0));
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Value-semigroup invariants of one-dimensional analytically irreducible rings"};
  app.require_subcommand(1);

  std::string format = "table";
  std::size_t threads = default_threads();
  apery::AnalysisOptions options;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}));
  };

  AnalyzeArgs aargs;
  auto* analyze = app.add_subcommand("analyze", "Analyze rings given inline or in a JSON document");
  analyze->add_option("generators", aargs.generators, "Generator expressions, e.g. t^6 t^8+t^9");
  analyze->add_option("--input,-i", aargs.input, "RingInput JSON file (object or array); - reads stdin");
  analyze->add_option("--field", aargs.field, "rational, a prime p, or GF(p)");
  analyze->add_option("--reduction", aargs.reduction, "Reduction element, or 'default'");
  analyze->add_option("--basis", aargs.basis, "Apery basis to check, one expression per class")->delimiter(',');
  analyze->add_option("--precision", aargs.precision, "Working precision override");
  analyze->add_option("--label", aargs.label, "Label for an inline ring");
  analyze->add_option("--budget", options.budget.max_reductions, "Candidate reductions tried by the BF search");
  analyze->add_option("--coefficient-bound", options.budget.coefficient_bound,
                      "Largest coefficient in perturbed reductions");
  analyze->add_option("--threads", threads, "Worker threads for batches");
  analyze->add_flag("--timing", aargs.timing, "Include wall-clock timing in reports");
  add_common(analyze);

  std::vector<std::size_t> sg_generators;
  auto* semigroup = app.add_subcommand("semigroup", "Apery sets, powers and CI classification of a semigroup");
  semigroup->add_option("generators", sg_generators, "Positive integers with gcd 1")->required();
  add_common(semigroup);

  std::string spec_path;
  std::string output_path;
  auto* sweep = app.add_subcommand("sweep", "Probe the open questions over a family of rings");
  sweep->add_option("spec", spec_path, "Family spec JSON file; - reads stdin")->required();
  sweep->add_option("--output,-o", output_path, "Write the report here instead of stdout");
  sweep->add_option("--budget", options.budget.max_reductions, "Override the spec's candidate reduction budget");
  sweep->add_option("--threads", threads, "Worker threads");
  add_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*analyze) {
      options.timing = aargs.timing;
      return run_analyze(aargs, options, format, threads);
    }
    if (*semigroup) {
      const auto report = apery::semigroup_report(sg_generators);
      if (format == "json") {
        emit_json(report);
      } else {
        std::cout << apery::format_table(report);
      }
      return 0;
    }
    auto spec = apery::parse_family_spec(read_json(spec_path));
    if (sweep->count("--budget") > 0) spec.budget.max_reductions = options.budget.max_reductions;
    const auto report = apery::question_explorer(spec, threads);
    const std::string text = format == "json" ? json(report).dump(2) + "\n" : apery::format_table(report);
    if (output_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output_path);
      if (!out) throw apery::InputError("cannot write '" + output_path + "'");
      out << text;
    }
    return report.summary.errors > 0 ? kDefect : 0;
  } catch (const apery::InputError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kInputError;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return kDefect;
  }
}

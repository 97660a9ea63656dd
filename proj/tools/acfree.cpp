// acfree: exact combinatorics of free anticommutators on the command line.
//
// Subcommands:
//   count           census of anticommutator-friendly partitions
//   enumerate       list non-crossing / interval / ac-friendly partitions
//   convert         moments <-> Boolean <-> free cumulant sequences
//   anticommutator  eta series of ab+ba from two input distributions
//   density         sample the closed-form density of the two-point example

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "acfree/anticommutator.hpp"
#include "acfree/coloring.hpp"
#include "acfree/cumulants.hpp"
#include "acfree/density.hpp"
#include "acfree/distribution.hpp"
#include "acfree/io.hpp"
#include "acfree/partition.hpp"
#include "acfree/rational.hpp"
#include "acfree/series.hpp"

namespace {

using namespace acfree;

/// Writes to --out when given, stdout otherwise.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

CensusFilter parse_filter(const std::string& name) {
  if (name == "all") return CensusFilter::all;
  if (name == "pairings") return CensusFilter::pairings;
  if (name == "even-blocks") return CensusFilter::even_blocks;
  throw CLI::ValidationError("--filter", "must be all, pairings or even-blocks");
}

int run_count(int two_n, const std::string& filter_name, bool check,
              const std::string& format, const std::string& out_path) {
  const CensusFilter filter = parse_filter(filter_name);
  const std::uint64_t count = census(two_n, filter);

  std::optional<Integer> predicted;
  if (check) {
    if (filter == CensusFilter::all) {
      const Rational coefficient = acf_census_series(two_n / 2).coeff(two_n / 2);
      predicted = Integer(boost::multiprecision::numerator(coefficient));
    } else {
      predicted = census_prediction(two_n, filter);
    }
  }
  const bool match = !predicted || *predicted == Integer(count);

  std::string text;
  if (format == "csv") {
    text = "two_n,filter,count\n" + std::to_string(two_n) + "," + filter_name + "," +
           std::to_string(count) + "\n";
  } else if (format == "json") {
    Json j{{"two_n", two_n}, {"filter", filter_name}, {"count", count}};
    if (predicted) {
      j["predicted"] = predicted->str();
      j["verdict"] = match ? "MATCH" : "MISMATCH";
    }
    text = j.dump() + "\n";
  } else {
    text = "count " + std::to_string(count) + "\n";
    if (predicted)
      text += "predicted " + predicted->str() + " " + (match ? "MATCH" : "MISMATCH") + "\n";
  }
  emit(out_path, text);
  return match ? 0 : 1;
}

int run_enumerate(int nc_n, int interval_n, int acf_n, const std::string& format,
                  const std::string& out_path) {
  std::vector<Partition> partitions;
  if (nc_n > 0) partitions = enumerate_nc(nc_n);
  else if (interval_n > 0) partitions = enumerate_interval(interval_n);
  else if (acf_n > 0) partitions = enumerate_ac_friendly(acf_n);
  else throw CLI::ValidationError("enumerate", "one of --nc, --interval, --acf is required");

  std::string text;
  if (format == "json") {
    Json j = Json::array();
    for (const Partition& p : partitions) j.push_back(to_json(p));
    text = j.dump() + "\n";
  } else {
    for (const Partition& p : partitions) text += p.to_string() + "\n";
  }
  emit(out_path, text);
  return 0;
}

std::vector<Rational> load_values(const std::string& csv, const std::string& in_path) {
  if (!csv.empty()) return parse_rational_csv(csv);
  if (in_path.empty())
    throw std::runtime_error("give the sequence with --values or --in");
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open input file: " + in_path);
  Json j;
  in >> j;
  return rationals_from_json(j.is_array() ? j : j.at("values"));
}

int run_convert(const std::string& from, const std::string& to, const std::string& csv,
                const std::string& in_path, int order, const std::string& out_path) {
  std::vector<Rational> values = load_values(csv, in_path);
  if (order > 0) {
    if (order > static_cast<int>(values.size()))
      throw std::runtime_error("requested order exceeds the input length");
    values.resize(static_cast<size_t>(order));
  }

  // pivot through moments
  MomentSequence moments{values};
  if (from == "boolean") moments = boolean_to_moments(CumulantSequence::boolean(values));
  else if (from == "free") moments = free_to_moments(CumulantSequence::free_cumulants(values));
  else if (from != "moments") throw CLI::ValidationError("--from", "must be moments, boolean or free");

  Json result;
  if (to == "moments") result = to_json(moments);
  else if (to == "boolean") result = to_json(moments_to_boolean(moments));
  else if (to == "free") result = to_json(moments_to_free(moments));
  else throw CLI::ValidationError("--to", "must be moments, boolean or free");

  emit(out_path, result.dump() + "\n");
  return 0;
}

RationalSeries load_eta(const std::string& atoms, const std::string& eta_csv, int order,
                        const char* which) {
  if (!atoms.empty()) return eta_from_moments(parse_atoms(atoms).moments(order));
  if (!eta_csv.empty()) {
    std::vector<Rational> coefficients = parse_rational_csv(eta_csv);
    coefficients.insert(coefficients.begin(), Rational(0));  // constant term
    const int csv_order = static_cast<int>(coefficients.size()) - 1;
    RationalSeries eta(csv_order, std::move(coefficients));
    if (eta.order() < order)
      throw std::runtime_error(std::string(which) + ": need eta coefficients up to the order");
    return eta.truncated(order);
  }
  throw std::runtime_error(std::string(which) + ": give either an atom list or eta coefficients");
}

Json corner_json(const SeriesMatrix& F, const char* symbol) {
  const std::string s(symbol);
  return Json{{s + "," + s, to_json(F.e[0][0])},
              {s + "," + s + "*", to_json(F.e[0][1])},
              {s + "*," + s, to_json(F.e[1][0])},
              {s + "*," + s + "*", to_json(F.e[1][1])}};
}

int run_anticommutator(const std::string& a_atoms, const std::string& b_atoms,
                       const std::string& eta_a_csv, const std::string& eta_b_csv, int order,
                       bool with_f_matrices, bool check, const std::string& out_path) {
  if (order < 1 || order > 24) throw CLI::ValidationError("--order", "must be in 1..24");
  const RationalSeries eta_a = load_eta(a_atoms, eta_a_csv, order, "--a/--eta-a");
  const RationalSeries eta_b = load_eta(b_atoms, eta_b_csv, order, "--b/--eta-b");

  const auto solution = solve_anticommutator_general(eta_a, eta_b, order);
  Json j{{"order", order},
         {"eta_ac", to_json(solution.eta_ac)},
         {"moments", to_json(moments_from_eta(solution.eta_ac).values)}};
  if (with_f_matrices)
    j["f_matrices"] =
        Json{{"a", corner_json(solution.F_a, "a")}, {"b", corner_json(solution.F_b, "b")}};

  bool match = true;
  if (check) {
    const int check_order = std::min(order, 4);  // keep the enumeration desk-scale
    const FreePairModel model(boolean_from_eta(eta_a.truncated(check_order)),
                              boolean_from_eta(eta_b.truncated(check_order)));
    Json compared = Json::array();
    for (int n = 1; n <= check_order; ++n) {
      const Rational combinatorial = anticommutator_boolean(model, n);
      match = match && combinatorial == solution.eta_ac.coeff(n);
      compared.push_back(to_string(combinatorial));
    }
    j["check"] = Json{{"orders", check_order},
                      {"combinatorial", compared},
                      {"verdict", match ? "MATCH" : "MISMATCH"}};
  }
  emit(out_path, j.dump() + "\n");
  return match ? 0 : 1;
}

int run_density(int samples, int max_moment, const std::string& out_path) {
  if (samples < 2) throw CLI::ValidationError("--samples", "need at least 2 samples");
  std::string csv = "x,f(x)\n";
  const double step = 9.0 / (samples + 1);
  char line[64];
  for (int i = 1; i <= samples; ++i) {
    double x = -1.0 + step * i;
    if (std::abs(x) < 1e-9) x += step / 2;  // keep away from the puncture at 0
    std::snprintf(line, sizeof line, "%.12g,%.12g\n", x, anticommutator_density_two_point(x));
    csv += line;
  }
  emit(out_path, csv);

  const auto report = verify_two_point_density(max_moment);
  std::printf("moment verification (quadrature vs series), tolerance 1e-6\n");
  for (const auto& row : report.rows)
    std::printf("  k=%d quadrature=%.9f series=%.9f |diff|=%.3g\n", row.k, row.quadrature,
                row.series, row.abs_error);
  std::printf("max |diff| %.3g: %s\n", report.max_abs_error, report.pass ? "pass" : "FAIL");
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact combinatorics of free anticommutators"};
  app.require_subcommand(1);

  // count
  auto* count = app.add_subcommand("count", "census of ac-friendly partitions");
  int count_two_n = 0;
  std::string count_filter = "all", count_format = "text", count_out;
  bool count_check = false;
  count->add_option("--acf", count_two_n, "ground set size 2n (even, <= 16)")->required();
  count->add_option("--filter", count_filter, "all | pairings | even-blocks");
  count->add_flag("--check,!--no-check", count_check, "compare with the predicted value");
  count->add_option("--format", count_format, "text | csv | json");
  count->add_option("--out", count_out, "output path (default stdout)");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "list partitions");
  int enum_nc = 0, enum_interval = 0, enum_acf = 0;
  std::string enum_format = "text", enum_out;
  enumerate->add_option("--nc", enum_nc, "non-crossing partitions of {1..n}");
  enumerate->add_option("--interval", enum_interval, "interval partitions of {1..n}");
  enumerate->add_option("--acf", enum_acf, "ac-friendly partitions of {1..2n}");
  enumerate->add_option("--format", enum_format, "text | json");
  enumerate->add_option("--out", enum_out, "output path (default stdout)");

  // convert
  auto* convert = app.add_subcommand("convert", "convert between sequence kinds");
  std::string convert_from, convert_to, convert_values, convert_in, convert_out;
  int convert_order = 0;
  convert->add_option("--from", convert_from, "moments | boolean | free")->required();
  convert->add_option("--to", convert_to, "moments | boolean | free")->required();
  convert->add_option("--values", convert_values, "comma-separated rationals");
  convert->add_option("--in", convert_in, "JSON input file");
  convert->add_option("--order", convert_order, "truncate the input to this order");
  convert->add_option("--out", convert_out, "output path (default stdout)");

  // anticommutator
  auto* ac = app.add_subcommand("anticommutator", "eta series of ab+ba");
  std::string ac_a, ac_b, ac_eta_a, ac_eta_b, ac_out;
  int ac_order = 8;
  bool ac_f = false, ac_check = false;
  ac->add_option("--a", ac_a, "atoms of the law of a, e.g. 0:1/2,2:1/2");
  ac->add_option("--b", ac_b, "atoms of the law of b");
  ac->add_option("--eta-a", ac_eta_a, "eta coefficients of a from degree 1, comma-separated");
  ac->add_option("--eta-b", ac_eta_b, "eta coefficients of b from degree 1, comma-separated");
  ac->add_option("--order", ac_order, "output order (<= 24)");
  ac->add_flag("--fmatrices", ac_f, "include the corner series matrices");
  ac->add_flag("--check,!--no-check", ac_check, "cross-check low orders combinatorially");
  ac->add_option("--out", ac_out, "output path (default stdout)");

  // density
  auto* density = app.add_subcommand("density", "closed-form density of the two-point example");
  int density_samples = 256, density_moments = 6;
  std::string density_out;
  density->add_option("--samples", density_samples, "number of CSV samples");
  density->add_option("--max-moment", density_moments, "verify moments up to this k");
  density->add_option("--out", density_out, "CSV output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (count->parsed())
      return run_count(count_two_n, count_filter, count_check, count_format, count_out);
    if (enumerate->parsed())
      return run_enumerate(enum_nc, enum_interval, enum_acf, enum_format, enum_out);
    if (convert->parsed())
      return run_convert(convert_from, convert_to, convert_values, convert_in, convert_order,
                         convert_out);
    if (ac->parsed())
      return run_anticommutator(ac_a, ac_b, ac_eta_a, ac_eta_b, ac_order, ac_f, ac_check, ac_out);
    if (density->parsed()) return run_density(density_samples, density_moments, density_out);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}

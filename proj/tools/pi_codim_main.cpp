#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "picodim/algebra.hpp"
#include "picodim/check.hpp"
#include "picodim/codim.hpp"
#include "picodim/symfunc.hpp"
#include "picodim/ut.hpp"
#include "picodim/witness.hpp"

using namespace picodim;
using Json = nlohmann::ordered_json;

namespace {

bool same_structure(const GradedAlgebra& a, const GradedAlgebra& b) {
  if (a.dim() != b.dim()) return false;
  if (a.parities() != b.parities()) return false;
  if (!(a.z_degree() == b.z_degree())) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a.product_entry(i, j) != b.product_entry(i, j)) return false;
  return true;
}

// The file carries the full structure table; the name doubles as the builder
// string. Rebuilding and comparing catches a file that was edited away from
// what its name promises.
std::shared_ptr<const SAlgebra> rebuild_checked(const AlgebraPtr& loaded) {
  auto S = std::make_shared<SAlgebra>(build_from_spec(loaded->name()));
  if (!same_structure(*S->algebra, *loaded))
    throw std::runtime_error("the structure table in the file does not match its "
                             "builder string \"" + loaded->name() + "\"");
  return S;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
  out << text;
}

Json element_json(const Element& e) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < e.coords().size(); ++i)
    if (!e[i].is_zero()) arr.push_back(Json::array({i, e[i].str()}));
  return arr;
}

Json partition_json(const Partition& p) {
  Json arr = Json::array();
  for (std::size_t part : p.parts()) arr.push_back(part);
  return arr;
}

Json check_json(const CheckReport& rep) {
  Json j;
  j["all_pass"] = rep.all_pass();
  j["lines"] = Json::array();
  for (const auto& line : rep.lines) {
    Json l;
    l["name"] = line.name;
    l["pass"] = line.pass;
    if (!line.detail.empty()) l["detail"] = line.detail;
    j["lines"].push_back(std::move(l));
  }
  return j;
}

std::pair<std::size_t, std::size_t> parity_split(const GradedAlgebra& alg) {
  std::size_t even = 0, odd = 0;
  for (std::size_t i = 0; i < alg.dim(); ++i)
    (alg.parity(i) == Parity::Even ? even : odd) += 1;
  return {even, odd};
}

// permutations summed by one alternated evaluation; guards the report loop
double alternation_cost(const WitnessSpec& w) {
  double cost = 1;
  for (const auto& set : w.alt_sets)
    for (std::size_t i = 2; i <= set.size(); ++i) cost *= static_cast<double>(i);
  return cost;
}

int run_build(const std::string& spec, const std::string& out_path) {
  SAlgebra S = build_from_spec(spec);
  save_algebra(*S.algebra, out_path);
  auto [even, odd] = parity_split(*S.algebra);
  std::cout << "wrote " << out_path << ": " << S.algebra->name() << ", dimension "
            << S.algebra->dim() << " (" << even << " even, " << odd << " odd)\n";
  return 0;
}

int run_verify(const std::string& path, std::size_t samples, std::uint64_t seed) {
  AlgebraPtr loaded = load_algebra(path);
  auto S = rebuild_checked(loaded);
  auto [even, odd] = parity_split(*S->algebra);
  std::cout << "algebra " << S->algebra->name() << ": dimension " << S->algebra->dim()
            << " (" << even << " even, " << odd << " odd)\n";
  std::cout << "[PASS] structure table matches its builder string\n";
  CheckReport rep = verify_structure(*S, samples, seed);
  for (const auto& line : rep.lines) {
    std::cout << (line.pass ? "[PASS] " : "[FAIL] ") << line.name;
    if (!line.detail.empty()) std::cout << ": " << line.detail;
    std::cout << "\n";
  }
  for (const auto& note : discrepancy_log(*S)) std::cout << "note: " << note << "\n";
  std::cout << "verification " << (rep.all_pass() ? "[PASS]" : "[FAIL]") << "\n";
  return rep.all_pass() ? 0 : 1;
}

int run_codim(const std::string& path, std::size_t n_max, const std::string& format,
              std::size_t threads, const std::string& out_path) {
  AlgebraPtr alg = load_algebra(path);
  CodimOptions opt;
  opt.threads = threads;
  opt.with_multiplicities = false;
  CodimTable table = codim_table(alg, alg->name(), n_max, opt);
  emit(format == "csv" ? table_csv_text(table) : table_json_text(table), out_path);
  return 0;
}

int run_cochar(const std::string& path, std::size_t n, std::size_t threads,
               const std::string& out_path) {
  AlgebraPtr alg = load_algebra(path);
  CodimOptions opt;
  opt.threads = threads;
  CodimTable table;
  table.algebra = alg->name();
  table.with_multiplicities = true;
  table.rows.push_back(graded_codimension(alg, n, opt));
  emit(table_json_text(table), out_path);
  return 0;
}

int run_witness(const std::string& path, std::size_t p, std::size_t q,
                const std::vector<std::size_t>& pad, std::uint64_t budget,
                const std::string& dump_path, const std::string& out_path) {
  AlgebraPtr loaded = load_algebra(path);
  auto S = rebuild_checked(loaded);
  WitnessSpec w = witness_W(p, q, S);
  if (!pad.empty()) w = padded_witness(w, pad[0], pad[1]);

  Json j;
  j["algebra"] = S->algebra->name();
  j["p"] = p;
  j["q"] = q;
  if (!pad.empty()) j["padded"] = Json::array({pad[0], pad[1]});
  j["description"] = w.description;
  j["degree"] = w.degree();
  j["even_degree"] = w.even_degree();

  Element plain = eval_plain(w);
  Element alt = eval_alternated(w);
  j["plain"] = Json{{"nonzero", !plain.is_zero()}, {"coords", element_json(plain)}};
  j["alternated"] = Json{{"nonzero", !alt.is_zero()}, {"coords", element_json(alt)}};

  ConsistencyReport cons = alternation_consistency(w, budget);
  j["consistency"] = Json{{"checked", cons.checked},
                          {"consistent", cons.consistent},
                          {"terms", std::to_string(cons.term_count)},
                          {"note", cons.note}};

  if (pad.empty()) {
    try {
      WitnessBoundReport b = witness_lower_bound(S, p, q);
      Json lb;
      lb["k"] = b.k;
      lb["m"] = b.m;
      lb["lambda"] = partition_json(b.lambda);
      lb["mu"] = partition_json(b.mu);
      lb["bound"] = std::to_string(b.bound);
      lb["cross_checked"] = b.cross_checked;
      if (b.cross_checked) lb["exact"] = std::to_string(b.exact);
      j["lower_bound"] = std::move(lb);
    } catch (const std::runtime_error& e) {
      j["lower_bound"] = Json{{"note", e.what()}};
    }
  }

  if (!dump_path.empty()) {
    PolyScript script = witness_script(w, budget);
    std::ofstream out(dump_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + dump_path + " for writing");
    out << poly_to_text(script);
    j["script"] = dump_path;
  }

  emit(j.dump(2) + "\n", out_path);
  return 0;
}

int run_report(const std::string& path, std::size_t n_max, const std::string& out_path,
               std::size_t threads, std::size_t samples) {
  AlgebraPtr loaded = load_algebra(path);
  auto S = rebuild_checked(loaded);
  const std::size_t t = S->t;

  Json j;
  j["algebra"] = S->algebra->name();
  j["t"] = t;
  j["involution"] = involution_name(S->kind);
  auto [even, odd] = parity_split(*S->algebra);
  j["dimension"] = Json{{"total", S->algebra->dim()}, {"even", even}, {"odd", odd}};
  const std::size_t ref = (t % 2 == 0) ? 2 * t : 2 * t - 1;
  j["reference_root"] =
      Json{{"value", std::to_string(ref)},
           {"note", "reference growth value for this family, shown for context "
                    "only; nothing is asserted about the finite root sequence"}};

  j["structure"] = check_json(verify_structure(*S, samples));

  ZIdealInfo info = z_graded_ideal(*S);
  auto [d0q, d1q] = quotient_dims(*S, info);
  j["quotient"] = Json{{"even", d0q},
                       {"odd", d1q},
                       {"ideal_codim", info.codim},
                       {"power_index", info.power_index},
                       {"left_normed_index", info.left_normed_index}};

  CodimOptions opt;
  opt.threads = threads;
  CodimTable table = codim_table(S->algebra, S->algebra->name(), n_max, opt);
  j["table"] = Json::parse(table_json_text(table));

  bool shapes_ok = true;
  for (const auto& row : table.rows)
    for (const auto& sector : row.sectors)
      shapes_ok = shapes_ok &&
                  check_ideal_vanishing(sector, d0q, d1q, info.power_index);
  j["shape_constraints"] =
      Json{{"holds", shapes_ok},
           {"note", "cells below the quotient rows are bounded by the ideal's "
                    "nilpotency index in every nonzero multiplicity"}};

  j["upper_bounds"] = Json::array();
  j["colength_bounds"] = Json::array();
  for (const auto& row : table.rows) {
    UpperBoundReport ub = upper_bound_check(*S, info, row.sectors);
    Json u;
    u["n"] = ub.n;
    u["all_hold"] = ub.all_hold;
    u["rows"] = Json::array();
    for (const auto& r : ub.rows)
      u["rows"].push_back(Json{{"k", r.k},
                               {"m", r.m},
                               {"codim", std::to_string(r.codim)},
                               {"admissible_sum", r.admissible_sum.str()},
                               {"bound", r.bound.str()},
                               {"margin", r.margin.str()},
                               {"holds", r.holds}});
    j["upper_bounds"].push_back(std::move(u));

    j["colength_bounds"].push_back(
        Json{{"n", row.n},
             {"l_gr", std::to_string(row.l_gr)},
             {"bound", colength_bound(S->algebra->dim(), row.n).str()}});
  }

  j["witness_bounds"] = Json::array();
  for (std::size_t p = 1; p <= 2; ++p)
    for (std::size_t q = 1; q <= 2; ++q) {
      Json wb;
      wb["p"] = p;
      wb["q"] = q;
      WitnessSpec w = witness_W(p, q, S);
      if (alternation_cost(w) > 2e6) {
        wb["note"] = "skipped: the alternation sums more permutations than the "
                     "report budget allows";
      } else {
        try {
          WitnessBoundReport b = witness_lower_bound(S, p, q);
          wb["k"] = b.k;
          wb["m"] = b.m;
          wb["lambda"] = partition_json(b.lambda);
          wb["mu"] = partition_json(b.mu);
          wb["bound"] = std::to_string(b.bound);
          wb["cross_checked"] = b.cross_checked;
          if (b.cross_checked) wb["exact"] = std::to_string(b.exact);
        } catch (const std::runtime_error& e) {
          wb["note"] = e.what();
        }
      }
      j["witness_bounds"].push_back(std::move(wb));
    }

  j["discrepancies"] = Json::array();
  for (const auto& note : discrepancy_log(*S)) j["discrepancies"].push_back(note);

  j["root_sequence"] = Json::array();
  for (const auto& root : root_sequence(table)) j["root_sequence"].push_back(root);

  emit(j.dump(2) + "\n", out_path);
  if (!out_path.empty()) {
    bool structure_ok = j["structure"]["all_pass"].get<bool>();
    bool bounds_ok = shapes_ok;
    for (const auto& u : j["upper_bounds"]) bounds_ok = bounds_ok && u["all_hold"].get<bool>();
    std::cout << "wrote " << out_path << "; structure "
              << (structure_ok ? "[PASS]" : "[FAIL]") << ", bounds "
              << (bounds_ok ? "[PASS]" : "[FAIL]") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification and codimension toolkit for the block "
               "triangular Lie superalgebras"};
  app.require_subcommand(1);
  int rc = 0;

  auto* build_cmd = app.add_subcommand(
      "build", "construct an algebra from a builder string and save it as JSON");
  std::string build_spec, build_out;
  build_cmd->add_option("--algebra", build_spec, "builder string, e.g. \"S(t=2,inv=orth)\"")
      ->required();
  build_cmd->add_option("--out", build_out, "output JSON path")->required();
  build_cmd->callback([&] { rc = run_build(build_spec, build_out); });

  auto* verify_cmd = app.add_subcommand(
      "verify", "run the full structural audit on a saved algebra");
  std::string verify_path;
  std::size_t verify_samples = 100;
  std::uint64_t verify_seed = 20240821;
  verify_cmd->add_option("file", verify_path, "algebra JSON file")->required();
  verify_cmd->add_option("--samples", verify_samples, "random block elements per formula");
  verify_cmd->add_option("--seed", verify_seed, "random generator seed");
  verify_cmd->callback([&] { rc = run_verify(verify_path, verify_samples, verify_seed); });

  auto* codim_cmd = app.add_subcommand(
      "codim", "graded codimension table up to a total degree");
  std::string codim_path, codim_format = "json", codim_out;
  std::size_t codim_nmax = 0, codim_threads = 1;
  codim_cmd->add_option("file", codim_path, "algebra JSON file")->required();
  codim_cmd->add_option("--n-max", codim_nmax, "largest total degree")->required();
  codim_cmd->add_option("--format", codim_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  codim_cmd->add_option("--threads", codim_threads, "worker threads");
  codim_cmd->add_option("--out", codim_out, "write here instead of stdout");
  codim_cmd->callback(
      [&] { rc = run_codim(codim_path, codim_nmax, codim_format, codim_threads, codim_out); });

  auto* cochar_cmd = app.add_subcommand(
      "cochar", "sector multiplicities for one total degree");
  std::string cochar_path, cochar_out;
  std::size_t cochar_n = 0, cochar_threads = 1;
  cochar_cmd->add_option("file", cochar_path, "algebra JSON file")->required();
  cochar_cmd->add_option("--n", cochar_n, "total degree")->required();
  cochar_cmd->add_option("--threads", cochar_threads, "worker threads");
  cochar_cmd->add_option("--out", cochar_out, "write here instead of stdout");
  cochar_cmd->callback([&] { rc = run_cochar(cochar_path, cochar_n, cochar_threads, cochar_out); });

  auto* witness_cmd = app.add_subcommand(
      "witness", "evaluate the replicated witness element w(p,q)");
  std::string witness_path, witness_dump, witness_out;
  std::size_t witness_p = 0, witness_q = 0;
  std::vector<std::size_t> witness_pad;
  std::uint64_t witness_budget = 10000000;
  witness_cmd->add_option("file", witness_path, "algebra JSON file")->required();
  witness_cmd->add_option("--p", witness_p, "odd alternating sets")->required();
  witness_cmd->add_option("--q", witness_q, "even alternating sets")->required();
  witness_cmd->add_option("--pad", witness_pad, "append i even and j odd pads")
      ->expected(2);
  witness_cmd->add_option("--budget", witness_budget,
                          "formal term budget for the consistency check");
  witness_cmd->add_option("--dump-poly", witness_dump,
                          "write the flattened polynomial script here");
  witness_cmd->add_option("--out", witness_out, "write here instead of stdout");
  witness_cmd->callback([&] {
    rc = run_witness(witness_path, witness_p, witness_q, witness_pad, witness_budget,
                     witness_dump, witness_out);
  });

  auto* report_cmd = app.add_subcommand(
      "report", "full report: table, bound checks, discrepancy log, roots");
  std::string report_path, report_out;
  std::size_t report_nmax = 5, report_threads = 1, report_samples = 100;
  report_cmd->add_option("file", report_path, "algebra JSON file")->required();
  report_cmd->add_option("--n-max", report_nmax, "largest total degree");
  report_cmd->add_option("--out", report_out, "report JSON path")->required();
  report_cmd->add_option("--threads", report_threads, "worker threads");
  report_cmd->add_option("--samples", report_samples, "random block elements per formula");
  report_cmd->callback([&] {
    rc = run_report(report_path, report_nmax, report_out, report_threads, report_samples);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

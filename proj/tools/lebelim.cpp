// lebelim: a workbench for eliminating the measure (Leb) and selector (Eps)
// constants from typed combinator terms over Cantor space.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "leb/baire.hpp"
#include "leb/branch.hpp"
#include "leb/error.hpp"
#include "leb/formula.hpp"
#include "leb/logic.hpp"
#include "leb/majorant.hpp"
#include "leb/measure.hpp"
#include "leb/normalize3.hpp"
#include "leb/parse.hpp"
#include "leb/pipeline.hpp"
#include "leb/termlib.hpp"

using namespace leb;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::vector<uint64_t> parse_bounds(const std::string& s) {
  std::vector<uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
  return out;
}

std::vector<Quant> parse_signature(const std::string& s) {
  std::vector<Quant> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "u" || item == "U")
      out.push_back(Quant::Union);
    else if (item == "i" || item == "I")
      out.push_back(Quant::Inter);
    else
      throw Error("signature entries are u or i");
  }
  return out;
}

int cmd_normalize(const std::string& file, bool strict, const EvalLimits& lim, bool json) {
  Term t = parse_term(slurp(file));
  Degree3Result res =
      normalize_degree3(t, strict ? ShapeMode::Strict : ShapeMode::Permissive, lim);
  if (json) {
    std::cout << "{\n  \"term\": \"" << res.term.to_string() << "\",\n  \"occurrences\": "
              << res.occurrences.size() << "\n}\n";
  } else {
    std::cout << "normalized: " << res.term.to_string() << "\n";
    for (size_t i = 0; i < res.occurrences.size(); ++i) {
      const auto& o = res.occurrences[i];
      std::cout << "occurrence " << i << ": kind=" << const_kind_name(o.kind) << " path=";
      for (uint8_t p : o.path) std::cout << (p ? '1' : '0');
      std::cout << "\n  argument: " << o.argument.to_string() << "\n  frees:";
      if (o.residual_frees.empty()) std::cout << " -";
      for (auto& [n, ty] : o.residual_frees) std::cout << " " << n << ":" << ty.to_string();
      std::cout << "\n";
      if (strict) std::cout << "  strict-code: " << o.strict_code.to_string() << "\n";
    }
  }
  return 0;
}

int cmd_measure(const std::string& file, const EvalLimits& lim, int brute_check,
                const std::string& bounds_s, const std::string& sig_s) {
  Term t = parse_term(slurp(file));
  if (!bounds_s.empty()) {
    ArithSetFamily fam{t, parse_signature(sig_s)};
    ArithMeasure m = measure_arithmetical(fam, parse_bounds(bounds_s), lim);
    std::cout << "measure = " << m.value.to_string() << "\n";
    if (m.cert == ArithMeasure::Cert::LowerBound)
      std::cout << "certificate: lower bound of the limit\n";
    else if (m.cert == ArithMeasure::Cert::UpperBound)
      std::cout << "certificate: upper bound of the limit\n";
    else
      std::cout << "certificate: none (alternating signature)\n";
    return 0;
  }
  Dyadic m = measure_clopen(t, lim);
  std::cout << "measure = " << m.to_string() << "\n";
  if (brute_check >= 0) {
    uint32_t k = brute_check ? (uint32_t)brute_check : (uint32_t)uniform_modulus(t, lim);
    Dyadic b = measure_bruteforce(t, k, lim);
    std::cout << "brute-force(k=" << k << ") = " << b.to_string()
              << (b == m ? "  [agrees]" : "  [MISMATCH]") << "\n";
    if (b != m) return 1;
  }
  return 0;
}

int cmd_modulus(const std::string& file, const EvalLimits& lim, bool json) {
  Term t = parse_term(slurp(file));
  BranchTree tree = branch_evaluate(t, lim);
  if (json) {
    std::cout << tree.to_json() << "\n";
  } else {
    std::cout << "modulus = " << tree.depth_bound() << "\n";
    std::cout << "leaves = " << tree.leaves().size() << "\n";
    std::cout << "static-bound = " << static_modulus_bound(t, lim) << "\n";
  }
  return 0;
}

int cmd_eliminate(const std::string& file, const PipelineOptions& opts, bool json,
                  const std::string& out_path) {
  Term t = parse_term(slurp(file));
  PipelineResult res = eliminate_lambda(t, opts);
  std::cout << (json ? res.report.to_json() : res.report.to_text());
  if (!out_path.empty()) write_file(out_path, res.term.to_string() + "\n");
  return res.report.verified() ? 0 : 1;
}

int cmd_dialectica(const std::string& file) {
  Formula f = parse_formula(slurp(file));
  DialecticaShape shape = nd_interpret(f);
  std::cout << shape.to_string() << "\n";
  return 0;
}

int cmd_baire_union(const std::string& out, const std::vector<std::string>& files) {
  std::vector<BaireWitness> parts;
  for (const auto& f : files) parts.push_back(witness_from_json(slurp(f)));
  BaireWitness w = witness_union(std::move(parts));
  std::string text = witness_to_json(w);
  if (out.empty())
    std::cout << text << "\n";
  else
    write_file(out, text);
  return 0;
}

int cmd_baire_complement(const std::string& out, const std::string& file, uint32_t depth,
                         const EvalLimits& lim) {
  BaireWitness w = witness_from_json(slurp(file));
  ComplementResult c = witness_complement(w, depth, lim);
  if (c.incomplete_interior) std::cout << "warning: interior under-approximated\n";
  std::string text = witness_to_json(c.witness);
  if (out.empty())
    std::cout << text << "\n";
  else
    write_file(out, text);
  return 0;
}

int cmd_baire_check(const std::string& file, uint32_t depth, const EvalLimits& lim) {
  BaireWitness w = witness_from_json(slurp(file));
  bool ok = true;
  for (uint64_t n = 0; n < w.h_bound(); ++n) {
    auto h = w.h_at(n);
    if (!h) continue;
    bool nd = nowhere_dense_at_depth(*h, depth, lim);
    std::cout << "H_" << n << ": " << (nd ? "nowhere dense at depth" : "DENSE CELL FOUND")
              << "\n";
    ok = ok && nd;
  }
  std::cout << (ok ? "check passed" : "check failed") << "\n";
  return ok ? 0 : 1;
}

int cmd_baire_from_term(const std::string& out, const std::string& file,
                        const EvalLimits& lim) {
  Term t = parse_term(slurp(file));
  BaireWitness w = witness_clopen(t, lim);
  std::string text = witness_to_json(w);
  if (out.empty())
    std::cout << text << "\n";
  else
    write_file(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lebelim: measure and selector elimination over Cantor space"};
  app.require_subcommand(1);

  int64_t budget = EvalLimits{}.max_steps;
  int64_t mu_bound = EvalLimits{}.mu_bound;
  app.add_option("--budget", budget, "reduction/evaluation step budget");
  app.add_option("--mu-bound", mu_bound, "mu search bound");

  std::string file, out_path, bounds_s, sig_s;
  bool strict = false, json = false;
  int brute_check = -1;
  uint32_t depth = 4;
  int samples = 100;
  uint64_t seed = 12345;
  bool inject_fault = false;
  std::vector<std::string> union_files;

  auto* norm = app.add_subcommand("normalize", "degree-3 normal form and occurrence table");
  norm->add_option("file", file)->required();
  norm->add_flag("--strict", strict, "also pack residual parameters into the oracle");
  norm->add_flag("--json", json);

  auto* meas = app.add_subcommand("measure", "exact measure of a clopen set code");
  meas->add_option("file", file)->required();
  meas->add_option("--brute-force-check", brute_check,
                   "cross-check by enumeration at 2^k (0 = use the modulus)");
  meas->add_option("--bounds", bounds_s, "truncation bounds m1,m2,... for a family term");
  meas->add_option("--signature", sig_s, "quantifier signature u,i,... for a family term");

  auto* modl = app.add_subcommand("modulus", "uniform modulus via branching evaluation");
  modl->add_option("file", file)->required();
  modl->add_flag("--json", json, "print the branch tree");

  auto* elim = app.add_subcommand("eliminate", "Leb/Eps elimination pipeline");
  elim->add_option("file", file)->required();
  elim->add_option("--bounds", bounds_s, "truncation bounds for Mu-containing codes");
  elim->add_option("--samples", samples, "verification sample count");
  elim->add_option("--seed", seed, "verification sample seed");
  elim->add_option("-o,--output", out_path, "write the output term here");
  elim->add_flag("--json", json);
  elim->add_flag("--inject-fault", inject_fault)->group("");  // testing aid

  auto* dial = app.add_subcommand("dialectica", "functional-interpretation shape");
  dial->add_option("file", file)->required();

  auto* baire = app.add_subcommand("baire", "Baire-property witnesses");
  baire->require_subcommand(1);
  auto* bu = baire->add_subcommand("union", "union of witness files");
  bu->add_option("files", union_files)->required()->expected(-1);
  bu->add_option("-o,--output", out_path);
  auto* bc = baire->add_subcommand("complement", "depth-bounded complement");
  bc->add_option("file", file)->required();
  bc->add_option("--depth", depth);
  bc->add_option("-o,--output", out_path);
  auto* bk = baire->add_subcommand("check", "nowhere-density check");
  bk->add_option("file", file)->required();
  bk->add_option("--depth", depth);
  auto* bt = baire->add_subcommand("from-term", "clopen witness of a set code");
  bt->add_option("file", file)->required();
  bt->add_option("-o,--output", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  EvalLimits lim{budget, mu_bound};
  try {
    if (norm->parsed()) return cmd_normalize(file, strict, lim, json);
    if (meas->parsed()) return cmd_measure(file, lim, brute_check, bounds_s, sig_s);
    if (modl->parsed()) return cmd_modulus(file, lim, json);
    if (elim->parsed()) {
      PipelineOptions opts;
      opts.limits = lim;
      opts.samples = samples;
      opts.seed = seed;
      opts.inject_fault = inject_fault;
      if (!bounds_s.empty()) opts.bounds = parse_bounds(bounds_s);
      return cmd_eliminate(file, opts, json, out_path);
    }
    if (dial->parsed()) return cmd_dialectica(file);
    if (baire->parsed()) {
      if (baire->get_subcommand("union")->parsed()) return cmd_baire_union(out_path, union_files);
      if (baire->get_subcommand("complement")->parsed())
        return cmd_baire_complement(out_path, file, depth, lim);
      if (baire->get_subcommand("check")->parsed()) return cmd_baire_check(file, depth, lim);
      if (baire->get_subcommand("from-term")->parsed())
        return cmd_baire_from_term(out_path, file, lim);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

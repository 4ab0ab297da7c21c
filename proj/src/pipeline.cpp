#include "leb/pipeline.hpp"

#include <random>

#include "json.hpp"
#include "leb/error.hpp"
#include "leb/measure.hpp"
#include "leb/normalize3.hpp"
#include "leb/termlib.hpp"

namespace leb {

namespace {

const Type O = Type::ground();

// substitute the bounded search for Mu throughout a term
Term debound_mu(const Term& t, uint64_t bound) {
  switch (t.tag()) {
    case Term::Tag::Var: return t;
    case Term::Tag::Const:
      if (t.const_kind() == ConstKind::Mu)
        return Term::app(tl::bounded_mu(), Term::numeral(bound));
      return t;
    case Term::Tag::App:
      return Term::app(debound_mu(t.fun(), bound), debound_mu(t.arg(), bound));
  }
  return t;
}

struct SampleSpec {
  std::vector<std::pair<std::string, Type>> inputs;  // free vars + applied args
};

}  // namespace

PipelineResult eliminate_lambda(const Term& t, const PipelineOptions& opts) {
  PipelineReport report;
  report.input = t.to_string();
  report.seed = opts.seed;

  Term cur = t;
  std::vector<std::pair<std::string, Type>> arg_vars;
  bool fault_pending = opts.inject_fault;
  for (int round = 0;; ++round) {
    if (round > 1000) throw Error("eliminate_lambda: too many rounds");
    Degree3Result norm = normalize_degree3(cur, ShapeMode::Permissive, opts.limits);
    cur = norm.term;
    if (round == 0) arg_vars = norm.arg_vars;
    if (norm.occurrences.empty()) break;

    // pick the first innermost occurrence (argument already Leb/Eps-free)
    const GOccurrence* occ = nullptr;
    for (const auto& o : norm.occurrences)
      if (o.innermost) {
        occ = &o;
        break;
      }
    if (!occ) throw NonEliminable("no occurrence with a Leb/Eps-free argument");
    if (!occ->residual_frees.empty())
      throw NonEliminable("occurrence argument has residual type-0 free variables; "
                          "per-parameter measure terms are out of scope");

    ReplacementRecord rec;
    rec.kind = occ->kind;
    rec.path = occ->path;
    rec.argument = occ->argument.to_string();

    Term replacement;
    if (occ->kind == ConstKind::Leb) {
      if (occ->argument.mentions_const(ConstKind::Mu)) {
        if (opts.bounds.empty())
          throw NonEliminable(
              "Leb argument mentions Mu; supply truncation bounds for the "
              "arithmetical route");
        uint64_t bound = opts.bounds[0];
        Term truncated = debound_mu(occ->argument, bound);
        Dyadic value = measure_clopen(truncated, opts.limits);
        rec.route = ReplacementRecord::Route::ArithApprox;
        rec.bounds = {bound};
        rec.exact = false;
        rec.value = value.to_string();
        replacement = embed_dyadic(value);
      } else {
        Dyadic value = measure_clopen(occ->argument, opts.limits);
        rec.route = ReplacementRecord::Route::ClopenExact;
        rec.value = value.to_string();
        replacement = embed_dyadic(value);
      }
    } else {
      if (occ->argument.mentions_const(ConstKind::Mu))
        throw NonEliminable(
            "Eps argument mentions Mu: selection over T0[mu] codes needs the "
            "external tree construction, which is out of scope");
      replacement = epsilon_select(occ->argument, opts.limits);
      rec.route = ReplacementRecord::Route::Epsilon;
      rec.value = replacement.to_string();
    }

    if (fault_pending) {
      // testing aid: shift the first replacement pointwise by one
      replacement = lambda_abstract(
          "x!", O,
          Term::app(Term::constant(ConstKind::Succ),
                    Term::app(replacement, Term::var("x!", O))));
      fault_pending = false;
    }

    report.replacements.push_back(rec);
    cur = cur.replace_at(occ->path, replacement);
  }

  cur = normalize_with_lifting(cur, opts.limits);
  for (auto it = arg_vars.rbegin(); it != arg_vars.rend(); ++it)
    cur = lambda_abstract(it->first, it->second, cur);
  report.output = cur.to_string();
  report.fragment_ok = cur.in_t0_mu();

  // sampled verification: the output against the semantic oracle on the
  // input; approximate replacements are compared against the same truncation
  Term verify_base = t;
  for (const auto& r : report.replacements)
    if (r.route == ReplacementRecord::Route::ArithApprox) {
      verify_base = debound_mu(verify_base, r.bounds.at(0));
      report.truncated_verification = true;
      break;
    }
  std::mt19937_64 rng(opts.seed);
  auto frees = t.free_vars();
  Type ty = t.type();
  std::vector<Type> arg_types;
  while (ty.is_arrow()) {
    arg_types.push_back(ty.arg());
    ty = ty.res();
  }

  for (int s = 0; s < opts.samples; ++s) {
    Env env;
    std::string desc;
    for (auto& [name, vt] : frees) {
      if (vt.is_ground()) {
        uint64_t v = rng() % 8;
        env.assign_nat(name, v);
        desc += name + "=" + std::to_string(v) + " ";
      } else if (vt == Type::pure(1)) {
        Oracle o;
        size_t len = rng() % 5;
        for (size_t i = 0; i < len; ++i) o.prefix.push_back(rng() % 2);
        env.assign_oracle(name, o);
        desc += name + "=oracle ";
      } else {
        throw NonEliminable("cannot sample a free variable of type " + vt.to_string());
      }
    }
    Term applied_in = verify_base, applied_out = cur;
    for (const Type& at : arg_types) {
      if (at.is_ground()) {
        uint64_t v = rng() % 8;
        applied_in = Term::app(applied_in, Term::numeral(v));
        applied_out = Term::app(applied_out, Term::numeral(v));
        desc += "arg=" + std::to_string(v) + " ";
      } else if (at == Type::pure(1)) {
        std::vector<uint8_t> bits;
        size_t len = rng() % 5;
        for (size_t i = 0; i < len; ++i) bits.push_back(rng() % 2);
        Term ot = tl::oracle_term(bits);
        applied_in = Term::app(applied_in, ot);
        applied_out = Term::app(applied_out, ot);
        desc += "arg=bits ";
      } else {
        throw NonEliminable("cannot sample an argument of type " + at.to_string());
      }
    }

    SampleCheck chk;
    chk.input_desc = desc.empty() ? "closed" : desc;
    chk.expected = evaluate_with_measure_oracle(applied_in, env, opts.limits).value;
    chk.got = evaluate(applied_out, env, opts.limits).value;
    chk.ok = chk.expected == chk.got;
    ++report.samples_checked;
    if (!chk.ok) ++report.samples_failed;
    if (!chk.ok || report.samples.size() < 5) report.samples.push_back(chk);
  }

  return {cur, std::move(report)};
}

std::string PipelineReport::to_text() const {
  std::string s;
  s += "input: " + input + "\n";
  for (size_t i = 0; i < replacements.size(); ++i) {
    const auto& r = replacements[i];
    s += "occurrence " + std::to_string(i) + ": kind=" + const_kind_name(r.kind) + " path=";
    for (uint8_t p : r.path) s += p ? '1' : '0';
    s += " route=";
    switch (r.route) {
      case ReplacementRecord::Route::ClopenExact: s += "clopen-exact"; break;
      case ReplacementRecord::Route::ArithApprox: {
        s += "arithmetical-approx bounds=";
        for (size_t b = 0; b < r.bounds.size(); ++b)
          s += (b ? "," : "") + std::to_string(r.bounds[b]);
        break;
      }
      case ReplacementRecord::Route::Epsilon: s += "epsilon"; break;
    }
    s += std::string(" value=") + r.value + (r.exact ? " (exact)" : " (approximate)");
    s += "\n  argument: " + r.argument + "\n";
  }
  s += "output: " + output + "\n";
  s += std::string("fragment: ") + (fragment_ok ? "T0[mu] ok" : "LEB/EPS REMAIN") + "\n";
  s += "verify: " + std::to_string(samples_checked - samples_failed) + "/" +
       std::to_string(samples_checked) + " samples agree (seed " + std::to_string(seed) + ")" +
       (truncated_verification ? " [against the mu-truncated input]" : "") + "\n";
  for (const auto& c : samples)
    if (!c.ok)
      s += "  MISMATCH " + c.input_desc + ": semantic=" + std::to_string(c.expected) +
           " output=" + std::to_string(c.got) + "\n";
  return s;
}

std::string PipelineReport::to_json() const {
  nlohmann::json j;
  j["input"] = input;
  j["output"] = output;
  j["fragment_ok"] = fragment_ok;
  j["seed"] = seed;
  j["samples_checked"] = samples_checked;
  j["samples_failed"] = samples_failed;
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : replacements) {
    nlohmann::json rj;
    rj["kind"] = const_kind_name(r.kind);
    std::string p;
    for (uint8_t b : r.path) p += b ? '1' : '0';
    rj["path"] = p;
    rj["argument"] = r.argument;
    rj["route"] = r.route == ReplacementRecord::Route::ClopenExact  ? "clopen-exact"
                  : r.route == ReplacementRecord::Route::ArithApprox ? "arithmetical-approx"
                                                                     : "epsilon";
    rj["value"] = r.value;
    rj["exact"] = r.exact;
    if (!r.bounds.empty()) rj["bounds"] = r.bounds;
    rs.push_back(rj);
  }
  j["replacements"] = rs;
  return j.dump(2);
}

}  // namespace leb

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leb/budget.hpp"
#include "leb/dyadic.hpp"
#include "leb/term.hpp"

namespace leb {

struct ReplacementRecord {
  ConstKind kind = ConstKind::Leb;
  Path path;
  std::string argument;
  enum class Route { ClopenExact, ArithApprox, Epsilon } route = Route::ClopenExact;
  std::string value;             // measure fraction or selected point
  std::vector<uint64_t> bounds;  // ArithApprox truncation bounds
  bool exact = true;
};

struct SampleCheck {
  std::string input_desc;
  uint64_t expected = 0;  // semantic oracle on the original term
  uint64_t got = 0;       // plain evaluation of the output term
  bool ok = false;
};

struct PipelineReport {
  std::string input;
  std::string output;
  std::vector<ReplacementRecord> replacements;
  std::vector<SampleCheck> samples;
  size_t samples_checked = 0;
  size_t samples_failed = 0;
  bool fragment_ok = false;  // output mentions neither Leb nor Eps
  // approximate runs are verified against the mu-truncated input (the exact
  // semantic oracle cannot decide those sets within any budget)
  bool truncated_verification = false;
  uint64_t seed = 0;

  std::string to_text() const;
  std::string to_json() const;
  bool verified() const { return fragment_ok && samples_failed == 0; }
};

struct PipelineOptions {
  EvalLimits limits;
  std::vector<uint64_t> bounds;  // truncation bounds for Mu-containing codes
  int samples = 100;
  uint64_t seed = 12345;
  bool inject_fault = false;  // testing aid: corrupts one replacement value
};

struct PipelineResult {
  Term term;
  PipelineReport report;
};

// The end-to-end elimination: degree-3 normalization, then innermost-first
// replacement of Leb(t0) by the real code of its measure and Eps(t0) by the
// selected point, looping until the term is Leb/Eps-free, then sampled
// verification against the semantic measure oracle. Mu-containing Leb
// arguments go through the bounded-mu truncation (approximate, recorded with
// the bounds used); Mu-containing Eps arguments are not eliminable here.
PipelineResult eliminate_lambda(const Term& t, const PipelineOptions& opts = {});

}  // namespace leb

// xrl/lint.hpp - Readability metrics and lint warnings over source + document
#pragma once

#include <string_view>
#include <vector>

#include "xrl/diagnostic.hpp"
#include "xrl/model.hpp"

namespace xrl
{

struct LintReport
{
  int node_count = 0;
  int element_count = 0;
  int line_count = 0;
  double alias_reuse_ratio = 1.0;   // aliased reference sites / all reference sites
  int max_nesting_depth = 0;
  int duplicate_literal_guids = 0;  // occurrences beyond the first, summed per GUID
  long long verbosity_chars = 0;    // bytes of source text
};

struct LintResult
{
  LintReport report;
  std::vector<Diagnostic> diagnostics;
};

/// Compute the report for a document parsed from `source` and emit
/// warnings: XRL110 duplicated GUID literals, XRL111 alias reuse ratio
/// below 0.5 with at least three reusable blocks declared, XRL112 nesting
/// deeper than six levels.
LintResult lint_readability(std::string_view source, const XrlDocument & doc);

std::string render_lint_report(const LintReport & r);
std::string lint_report_to_json(const LintReport & r);

}  // namespace xrl

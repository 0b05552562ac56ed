// xrl/diagnostic.hpp - Coded, located findings shared by parser, validator, linter, and interop
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace xrl
{

struct SourceLocation
{
  int line = 1;    // 1-based
  int column = 1;  // 1-based
};

enum class Severity { Error, Warning, Info };

const char * severity_name(Severity s);

struct Diagnostic
{
  Severity severity = Severity::Error;
  std::string code;     // registered rule code, e.g. "XRL006" or "XRL-P02"
  std::string message;
  SourceLocation loc;
  std::string path;     // document path when known; empty for in-memory sources
};

struct RuleId
{
  std::string_view code;
  std::string_view title;
  Severity default_severity;
};

/// Fixed table of every code a Diagnostic may carry.
const std::vector<RuleId> & rule_table();
const RuleId * find_rule(std::string_view code);

Diagnostic make_diag(std::string_view code, std::string message, SourceLocation loc);

/// Deterministic listing order: (line, column, code, message).
void sort_diagnostics(std::vector<Diagnostic> & diags);

bool has_errors(const std::vector<Diagnostic> & diags);

/// Line-oriented rendering: "severity code path:line:col message".
std::string render_diagnostic(const Diagnostic & d, bool color = false);
std::string render_diagnostics(const std::vector<Diagnostic> & diags, bool color = false);

/// JSON array rendering for machine consumption.
std::string diagnostics_to_json(const std::vector<Diagnostic> & diags);

}  // namespace xrl

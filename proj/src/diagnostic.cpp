// xrl/diagnostic.cpp - Rule table, ordering, and rendering of diagnostics
#include "xrl/diagnostic.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace xrl
{

const char * severity_name(Severity s)
{
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
  }
  return "?";
}

const std::vector<RuleId> & rule_table()
{
  static const std::vector<RuleId> table = {
    // Parse and binding
    {"XRL-P01", "malformed syntax", Severity::Error},
    {"XRL-P02", "alias to undefined anchor", Severity::Error},
    {"XRL-P03", "duplicate anchor", Severity::Error},
    {"XRL-P04", "merge key applied to a non-mapping", Severity::Error},
    {"XRL-P05", "unknown key", Severity::Error},
    {"XRL-P06", "section structure violation", Severity::Error},
    {"XRL-P07", "duplicate mapping key", Severity::Error},
    {"XRL-P08", "unsupported value structure", Severity::Error},
    // Semantic validation
    {"XRL001", "invalid GUID", Severity::Error},
    {"XRL002", "duplicate node name, id, or anchor", Severity::Error},
    {"XRL003", "start or end is not a declared node", Severity::Error},
    {"XRL004", "flow entry references an undeclared node", Severity::Error},
    {"XRL005", "node appears in flow more than once", Severity::Error},
    {"XRL006", "reference asymmetry between entries", Severity::Error},
    {"XRL007", "start has predecessors or end has successors", Severity::Error},
    {"XRL008", "node unreachable from start", Severity::Error},
    {"XRL009", "end unreachable from node", Severity::Error},
    {"XRL010", "action references an undefined element", Severity::Error},
    {"XRL011", "override key not declared by the element", Severity::Error},
    {"XRL012", "required parameter unresolved", Severity::Error},
    // Composite expansion
    {"XRL013", "cyclic composite reference", Severity::Error},
    {"XRL014", "placeholder names an undeclared parameter", Severity::Error},
    // Warnings
    {"XRL101", "cycle present in process flow", Severity::Warning},
    {"XRL105", "declared node absent from flow", Severity::Warning},
    // Lint
    {"XRL110", "GUID literal duplicated in source", Severity::Warning},
    {"XRL111", "low alias reuse", Severity::Warning},
    {"XRL112", "nesting too deep", Severity::Warning},
    // GAX import
    {"XRL-X01", "malformed XML", Severity::Error},
    {"XRL-X02", "GAX schema violation", Severity::Error},
    {"XRL-X03", "unresolved GAX reference", Severity::Error},
    {"XRL-X04", "invalid GUID in GAX document", Severity::Error},
  };
  return table;
}

const RuleId * find_rule(std::string_view code)
{
  for (const auto & r : rule_table())
    if (r.code == code) return &r;
  return nullptr;
}

Diagnostic make_diag(std::string_view code, std::string message, SourceLocation loc)
{
  const RuleId * rule = find_rule(code);
  Diagnostic d;
  d.severity = rule ? rule->default_severity : Severity::Error;
  d.code = std::string(code);
  d.message = std::move(message);
  d.loc = loc;
  return d;
}

void sort_diagnostics(std::vector<Diagnostic> & diags)
{
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic & a, const Diagnostic & b) {
    if (a.loc.line != b.loc.line) return a.loc.line < b.loc.line;
    if (a.loc.column != b.loc.column) return a.loc.column < b.loc.column;
    if (a.code != b.code) return a.code < b.code;
    return a.message < b.message;
  });
}

bool has_errors(const std::vector<Diagnostic> & diags)
{
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic & d) { return d.severity == Severity::Error; });
}

std::string render_diagnostic(const Diagnostic & d, bool color)
{
  std::ostringstream out;
  const char * sev = severity_name(d.severity);
  if (color) {
    const char * code_color = d.severity == Severity::Error     ? "\x1b[31m"
                              : d.severity == Severity::Warning ? "\x1b[33m"
                                                                : "\x1b[36m";
    out << code_color << sev << "\x1b[0m";
  } else {
    out << sev;
  }
  out << ' ' << d.code << ' ' << d.path << ':' << d.loc.line << ':' << d.loc.column << ' '
      << d.message;
  return out.str();
}

std::string render_diagnostics(const std::vector<Diagnostic> & diags, bool color)
{
  std::string out;
  for (const auto & d : diags) {
    out += render_diagnostic(d, color);
    out += '\n';
  }
  return out;
}

std::string diagnostics_to_json(const std::vector<Diagnostic> & diags)
{
  nlohmann::json arr = nlohmann::json::array();
  for (const auto & d : diags) {
    arr.push_back({{"severity", severity_name(d.severity)},
                   {"code", d.code},
                   {"message", d.message},
                   {"path", d.path},
                   {"line", d.loc.line},
                   {"column", d.loc.column}});
  }
  return arr.dump(2);
}

}  // namespace xrl

// xrl/lint.cpp - Readability metrics: alias reuse, duplicated GUID literals,
// nesting depth, verbosity
#include "xrl/lint.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "json.hpp"
#include "xrl/guid.hpp"
#include "xrl/yaml.hpp"

namespace xrl
{

namespace
{

struct GuidScan
{
  int duplicates = 0;          // occurrences beyond the first, summed
  int occurrences = 0;         // all GUID-shaped literals
  SourceLocation first_duplicate;
};

bool guid_boundary(char c)
{
  return !(std::isalnum(static_cast<unsigned char>(c)) || c == '-');
}

GuidScan scan_guid_literals(std::string_view source)
{
  GuidScan scan;
  std::map<std::string, int> counts;
  int line = 1, col = 1;
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (source[i] == '\n') {
      ++line;
      col = 1;
      continue;
    }
    bool at_boundary = i == 0 || guid_boundary(source[i - 1]);
    if (at_boundary && i + 36 <= source.size()) {
      std::string_view candidate = source.substr(i, 36);
      bool ends_clean = i + 36 == source.size() || guid_boundary(source[i + 36]);
      if (ends_clean && is_guid_shaped(candidate)) {
        std::string normalized = Guid::lenient(candidate).text();
        ++scan.occurrences;
        int seen = ++counts[normalized];
        if (seen > 1) {
          ++scan.duplicates;
          if (scan.duplicates == 1) scan.first_duplicate = {line, col};
        }
        // Skip past the literal (no newlines inside a GUID).
        i += 35;
        col += 36;
        continue;
      }
    }
    ++col;
  }
  return scan;
}

int count_lines(std::string_view source)
{
  if (source.empty()) return 0;
  int lines = 0;
  for (char c : source)
    if (c == '\n') ++lines;
  if (source.back() != '\n') ++lines;
  return lines;
}

}  // namespace

LintResult lint_readability(std::string_view source, const XrlDocument & doc)
{
  LintResult result;
  LintReport & r = result.report;
  r.node_count = static_cast<int>(doc.nodes.size());
  r.element_count = static_cast<int>(doc.elements.size());
  r.line_count = count_lines(source);
  r.verbosity_chars = static_cast<long long>(source.size());

  GuidScan scan = scan_guid_literals(source);
  r.duplicate_literal_guids = scan.duplicates;

  int alias_sites = 0;
  YamlParseResult tree = parse_yaml(source);
  if (tree.ok()) {
    r.max_nesting_depth = yaml_tree_depth(*tree.root);
    alias_sites = yaml_alias_count(*tree.root);
  }

  // Reference sites are alias uses plus literal repeats; a fully anchored
  // document scores 1.0.
  int literal_repeats = scan.duplicates;
  int sites = alias_sites + literal_repeats;
  r.alias_reuse_ratio = sites == 0 ? 1.0 : static_cast<double>(alias_sites) / sites;

  if (r.duplicate_literal_guids > 0) {
    result.diagnostics.push_back(make_diag(
      "XRL110",
      "GUID literal duplicated " + std::to_string(r.duplicate_literal_guids) +
        " time(s); use anchors and aliases",
      scan.first_duplicate));
  }
  int reusable_blocks = r.node_count + r.element_count;
  if (reusable_blocks >= 3 && r.alias_reuse_ratio < 0.5) {
    std::ostringstream msg;
    msg << "alias reuse ratio " << r.alias_reuse_ratio << " is below 0.5 with "
        << reusable_blocks << " reusable blocks declared";
    result.diagnostics.push_back(make_diag("XRL111", msg.str(), {1, 1}));
  }
  if (r.max_nesting_depth > 6) {
    result.diagnostics.push_back(make_diag(
      "XRL112",
      "nesting depth " + std::to_string(r.max_nesting_depth) + " exceeds 6 levels",
      tree.ok() ? tree.root->loc : SourceLocation{1, 1}));
  }
  sort_diagnostics(result.diagnostics);
  return result;
}

std::string render_lint_report(const LintReport & r)
{
  std::ostringstream out;
  out << "nodes: " << r.node_count << '\n'
      << "elements: " << r.element_count << '\n'
      << "lines: " << r.line_count << '\n'
      << "alias_reuse_ratio: " << r.alias_reuse_ratio << '\n'
      << "max_nesting_depth: " << r.max_nesting_depth << '\n'
      << "duplicate_literal_guids: " << r.duplicate_literal_guids << '\n'
      << "verbosity_chars: " << r.verbosity_chars << '\n';
  return out.str();
}

std::string lint_report_to_json(const LintReport & r)
{
  nlohmann::json j = {{"nodes", r.node_count},
                      {"elements", r.element_count},
                      {"lines", r.line_count},
                      {"alias_reuse_ratio", r.alias_reuse_ratio},
                      {"max_nesting_depth", r.max_nesting_depth},
                      {"duplicate_literal_guids", r.duplicate_literal_guids},
                      {"verbosity_chars", r.verbosity_chars}};
  return j.dump(2);
}

}  // namespace xrl

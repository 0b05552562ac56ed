#include "doctest.h"

#include <set>

#include "../support/fixtures.hpp"
#include "xrl/validate.hpp"

using namespace xrl;
using xrl_test::corpus_names;
using xrl_test::parse_fixture;
using xrl_test::read_fixture;

namespace
{

std::set<std::string> error_codes(const std::vector<Diagnostic> & diags)
{
  std::set<std::string> codes;
  for (const auto & d : diags)
    if (d.severity == Severity::Error) codes.insert(d.code);
  return codes;
}

Guid fresh_guid(int n)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "facefeed-0000-4000-8000-%012x", n);
  return *Guid::parse(buf);
}

// Single-fault mutations over the clean fixture, one per error rule. Each
// returns the document to validate; the oracle is the mutation itself.
XrlDocument mutate(const std::string & rule)
{
  XrlDocument doc = parse_fixture("s1_linear.xrl.yaml");
  const Guid start = doc.start.value;
  const Guid end = doc.end.value;

  if (rule == "XRL002") {
    doc.nodes.push_back({"launch_app", fresh_guid(2), "other_anchor", {}, {}});
  } else if (rule == "XRL003") {
    doc.start.value = fresh_guid(3);
  } else if (rule == "XRL004") {
    doc.flow[0].references_out.push_back({fresh_guid(4), {}});
  } else if (rule == "XRL005") {
    doc.flow.push_back(doc.flow[1]);
  } else if (rule == "XRL006") {
    doc.flow[0].references_out.clear();
  } else if (rule == "XRL007") {
    doc.flow[0].references_in.push_back({end, {}});
    doc.flow[2].references_out.push_back({start, {}});
  } else if (rule == "XRL008") {
    // declared, wired into the end, but nothing leads to it
    Guid extra = fresh_guid(8);
    doc.nodes.push_back({"island", extra, "island", {}, {}});
    FlowEntry fe;
    fe.node = {extra, {}};
    fe.action = doc.flow[2].action;
    fe.references_out.push_back({end, {}});
    doc.flow[2].references_in.push_back({extra, {}});
    // keep end's references_out empty so only reachability breaks
    doc.flow.push_back(fe);
  } else if (rule == "XRL009") {
    Guid extra = fresh_guid(9);
    doc.nodes.push_back({"dead_end", extra, "dead_end", {}, {}});
    FlowEntry fe;
    fe.node = {extra, {}};
    fe.action = doc.flow[1].action;
    fe.references_in.push_back({start, {}});
    doc.flow[0].references_out.push_back({extra, {}});
    doc.flow.push_back(fe);
  } else if (rule == "XRL010") {
    doc.flow[1].action.element_anchor = "missing_element";
  } else if (rule == "XRL011") {
    doc.flow[1].action.overrides.set("bogus", ScalarValue::integer(1));
  } else if (rule == "XRL012") {
    doc.flow[0].action.overrides.erase("app");  // launch.app default is null
  }
  return doc;
}

}  // namespace

TEST_CASE("validate: the whole corpus is free of error findings")
{
  for (const auto & name : corpus_names()) {
    CAPTURE(name);
    std::vector<Diagnostic> diags = validate_document(parse_fixture(name));
    CHECK_MESSAGE(error_codes(diags).empty(), name);
  }
}

TEST_CASE("validate: single-fault mutations trigger exactly their rule")
{
  const char * rules[] = {"XRL002", "XRL003", "XRL004", "XRL005", "XRL006",
                          "XRL007", "XRL008", "XRL009", "XRL010", "XRL011", "XRL012"};
  for (const char * rule : rules) {
    CAPTURE(rule);
    std::set<std::string> codes = error_codes(validate_document(mutate(rule)));
    REQUIRE_MESSAGE(codes.count(rule) == 1, rule);
    CHECK_MESSAGE(codes.size() == 1, rule);
  }
}

TEST_CASE("validate: corrupted GUID literal triggers XRL001 alone")
{
  // Source-level edit: aliases keep every reference consistent with the
  // declaration, so only the format rule fires.
  std::string source = read_fixture("s1_linear.xrl.yaml");
  std::size_t pos = source.find("5e1c7a90-33f1-4b2a-8c44-9d2e6f7a1002");
  REQUIRE(pos != std::string::npos);
  source.replace(pos, 36, "5e1c7a90-33f1-4b2a-8c44-9d2e6f7a10zz");
  ParseResult parsed = parse_document(source);
  REQUIRE(parsed.ok());
  std::set<std::string> codes = error_codes(validate_document(*parsed.document));
  CHECK(codes == std::set<std::string>{"XRL001"});
}

TEST_CASE("validate: removing one references_out entry yields exactly one XRL006")
{
  XrlDocument doc = mutate("XRL006");
  std::vector<Diagnostic> diags = validate_document(doc);
  int asymmetries = 0;
  for (const auto & d : diags)
    if (d.code == "XRL006") ++asymmetries;
  CHECK(asymmetries == 1);
  CHECK(error_codes(diags) == std::set<std::string>{"XRL006"});
}

TEST_CASE("validate: cycles warn with XRL101 and do not error")
{
  std::vector<Diagnostic> diags = validate_document(parse_fixture("cycle_retry.xrl.yaml"));
  bool warned = false;
  for (const auto & d : diags)
    if (d.code == "XRL101") warned = d.severity == Severity::Warning;
  CHECK(warned);
  CHECK(error_codes(diags).empty());
}

TEST_CASE("validate: declared node absent from flow warns with XRL105")
{
  XrlDocument doc = parse_fixture("s1_linear.xrl.yaml");
  doc.nodes.push_back({"spare_node", fresh_guid(105), "spare_node", {}, {}});
  std::vector<Diagnostic> diags = validate_document(doc);
  bool warned = false;
  for (const auto & d : diags)
    if (d.code == "XRL105" && d.severity == Severity::Warning) warned = true;
  CHECK(warned);
  CHECK(error_codes(diags).empty());
}

TEST_CASE("validate: findings are deterministically ordered and registered")
{
  XrlDocument doc = mutate("XRL007");
  std::vector<Diagnostic> a = validate_document(doc);
  std::vector<Diagnostic> b = validate_document(doc);
  CHECK(render_diagnostics(a) == render_diagnostics(b));
  for (const auto & d : a) CHECK(find_rule(d.code) != nullptr);
  for (std::size_t i = 1; i < a.size(); ++i) {
    bool ordered = a[i - 1].loc.line < a[i].loc.line ||
                   (a[i - 1].loc.line == a[i].loc.line &&
                    (a[i - 1].loc.column < a[i].loc.column ||
                     (a[i - 1].loc.column == a[i].loc.column && a[i - 1].code <= a[i].code)));
    CHECK(ordered);
  }
}

TEST_CASE("validate: composite step checks cover undefined elements and bad keys")
{
  XrlDocument doc = parse_fixture("c1_composite.xrl.yaml");
  XrlDocument broken_ref = doc;
  (*broken_ref.elements[4].steps)[0].element_anchor = "ghost";
  CHECK(error_codes(validate_document(broken_ref)) == std::set<std::string>{"XRL010"});

  XrlDocument broken_key = doc;
  (*broken_key.elements[4].steps)[0].overrides.set("nope", ScalarValue::integer(1));
  CHECK(error_codes(validate_document(broken_key)) == std::set<std::string>{"XRL011"});
}

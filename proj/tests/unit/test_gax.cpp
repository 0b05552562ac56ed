#include "doctest.h"

#include "../support/fixtures.hpp"
#include "xrl/format.hpp"
#include "xrl/gax.hpp"
#include "xrl/scenarios.hpp"
#include "xrl/sim.hpp"
#include "xrl/validate.hpp"
#include "xrl/xml.hpp"

using namespace xrl;
using xrl_test::corpus_names;
using xrl_test::parse_fixture;
using xrl_test::read_fixture;

namespace
{

int count_of(const std::string & haystack, const std::string & needle)
{
  int n = 0;
  std::size_t at = 0;
  while ((at = haystack.find(needle, at)) != std::string::npos) {
    ++n;
    ++at;
  }
  return n;
}

}  // namespace

TEST_CASE("xml: reader handles attributes, entities, comments, nesting")
{
  XmlParseResult r = parse_xml(
    "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    "<!-- top comment -->\n"
    "<a x=\"1 &amp; 2\">\n"
    "  <b>text &lt;inside&gt;</b>\n"
    "  <c/>\n"
    "</a>\n");
  REQUIRE(r.ok());
  CHECK(*r.root->attr("x") == "1 & 2");
  CHECK(r.root->child("b")->text == "text <inside>");
  CHECK(r.root->child("c")->children.empty());

  CHECK_FALSE(parse_xml("<a><b></a>").ok());
  CHECK_FALSE(parse_xml("<a foo=bar/>").ok());
  CHECK_FALSE(parse_xml("<a>&bogus;</a>").ok());
  CHECK_FALSE(parse_xml("not xml").ok());
}

TEST_CASE("xml: writer escapes and the reader inverts it")
{
  XmlElement root;
  root.name = "r";
  root.attributes.emplace_back("q", "a\"b<c>&d");
  auto child = std::make_unique<XmlElement>();
  child->name = "v";
  child->text = "5 < 6 & 7 > 2";
  root.children.push_back(std::move(child));
  std::string text = write_xml(root);
  XmlParseResult back = parse_xml(text);
  REQUIRE(back.ok());
  CHECK(*back.root->attr("q") == "a\"b<c>&d");
  CHECK(back.root->child("v")->text == "5 < 6 & 7 > 2");
}

TEST_CASE("gax: export counts for the linear fixture")
{
  std::string gax = export_gax(parse_fixture("s1_linear.xrl.yaml"));
  CHECK(count_of(gax, "<identifier ") == 3);
  CHECK(count_of(gax, "<node id=") == 3);
  CHECK(count_of(gax, "<out ref=") == 2);
  CHECK(count_of(gax, "<in ref=") == 2);
  CHECK(count_of(gax, "<boundaries ") == 1);
}

TEST_CASE("gax: composites export with a marker and step children")
{
  std::string gax = export_gax(parse_fixture("c1_composite.xrl.yaml"));
  CHECK(count_of(gax, "composite=\"true\"") == 1);
  CHECK(count_of(gax, "<step ref=\"click\"") == 2);
  CHECK(count_of(gax, "<step ref=\"type_text\"") == 3);
}

TEST_CASE("gax: an action without overrides exports self-closed")
{
  std::string gax = export_gax(parse_fixture("two_composites.xrl.yaml"));
  CHECK(gax.find("<action ref=\"logout_seq\"/>") != std::string::npos);
}

TEST_CASE("gax: import(export(d)) is semantically equal across the corpus")
{
  for (const auto & name : corpus_names()) {
    CAPTURE(name);
    XrlDocument doc = parse_fixture(name);
    ImportResult back = import_gax(export_gax(doc));
    REQUIRE_MESSAGE(back.ok(), name);
    CHECK_MESSAGE(semantic_equal(*back.document, doc), name);
    // a clean source imports to a clean document
    CHECK_MESSAGE(!has_errors(validate_document(*back.document)), name);
  }
}

TEST_CASE("gax: unresolved references and bad GUIDs are rejected")
{
  XrlDocument doc = parse_fixture("s1_linear.xrl.yaml");
  std::string gax = export_gax(doc);

  std::string broken_out = gax;
  std::size_t pos = broken_out.find("<out ref=\"");
  REQUIRE(pos != std::string::npos);
  broken_out.replace(pos, std::string("<out ref=\"").size(),
                     "<out ref=\"facefeed-0000-4000-8000-000000000001\" x=\"");
  ImportResult r1 = import_gax(broken_out);
  REQUIRE_FALSE(r1.ok());
  CHECK(r1.diagnostics.front().code == "XRL-X03");

  std::string broken_guid = gax;
  pos = broken_guid.find("5e1c7a90-33f1-4b2a-8c44-9d2e6f7a1001");
  broken_guid.replace(pos, 36, "not-a-guid-at-all-not-a-guid-at-all-");
  ImportResult r2 = import_gax(broken_guid);
  REQUIRE_FALSE(r2.ok());
  bool has_x04 = false;
  for (const auto & d : r2.diagnostics) has_x04 = has_x04 || d.code == "XRL-X04";
  CHECK(has_x04);

  ImportResult r3 = import_gax("<process><flow/></process>");
  REQUIRE_FALSE(r3.ok());
  CHECK(r3.diagnostics.front().code == "XRL-X02");

  ImportResult r4 = import_gax("<process><identifiers>");
  REQUIRE_FALSE(r4.ok());
  CHECK(r4.diagnostics.front().code == "XRL-X01");
}

TEST_CASE("gax: the hand-written process file matches the native one")
{
  std::string hand = xrl_test::read_file(xrl_test::fixture_dir() + "/gax/p1_hand.gax.xml");
  ImportResult imported = import_gax(hand);
  REQUIRE(imported.ok());
  CHECK_FALSE(has_errors(validate_document(*imported.document)));

  XrlDocument native = parse_fixture("p1_search_email.xrl.yaml");
  CHECK(semantic_equal(*imported.document, native));

  auto scenario = load_scenario("p1_search_email");
  REQUIRE(scenario.has_value());
  ExecutionTrace from_gax =
    simulate(*imported.document, scenario->env0, scenario_registry("p1_search_email"));
  ExecutionTrace from_native =
    simulate(native, scenario->env0, scenario_registry("p1_search_email"));
  CHECK(trace_to_text(from_gax) == trace_to_text(from_native));
}

TEST_CASE("gax: semantic equality ignores anchors and reference order")
{
  XrlDocument a = parse_fixture("b1_branching.xrl.yaml");

  XrlDocument renamed = a;
  for (auto & n : renamed.nodes) n.anchor += "_renamed";
  CHECK(semantic_equal(a, renamed));

  XrlDocument reordered = a;
  std::swap(reordered.flow[3].references_in[0], reordered.flow[3].references_in[1]);
  CHECK(semantic_equal(a, reordered));
  CHECK_FALSE(structurally_equal(a, reordered));  // structural order matters

  XrlDocument missing_edge = a;
  missing_edge.flow[3].references_in.pop_back();
  missing_edge.flow[2].references_out.clear();
  CHECK_FALSE(semantic_equal(a, missing_edge));
}

TEST_CASE("gax: xml export is strictly more verbose on multi-node documents")
{
  for (const auto & name : corpus_names()) {
    XrlDocument doc = parse_fixture(name);
    if (doc.nodes.size() < 3) continue;
    CAPTURE(name);
    CHECK(export_gax(doc).size() > format_canonical(doc).size());
  }
}

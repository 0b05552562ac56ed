// xrl/gax.cpp - Generic Automation XML export/import and semantic equality
#include "xrl/gax.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "xrl/scalar.hpp"
#include "xrl/xml.hpp"

namespace xrl
{

namespace
{

// Canonical unique element keys, mirroring the formatter's anchor plan.
std::vector<std::string> element_keys(const XrlDocument & doc)
{
  std::set<std::string> taken;
  std::vector<std::string> keys;
  for (const auto & n : doc.nodes) taken.insert(n.name);
  for (const auto & e : doc.elements) {
    std::string base = e.name.empty() ? std::string("element") : e.name;
    std::string candidate = base;
    int suffix = 2;
    while (!taken.insert(candidate).second) candidate = base + "_" + std::to_string(suffix++);
    keys.push_back(candidate);
  }
  return keys;
}

std::unique_ptr<XmlElement> make(const std::string & name)
{
  auto e = std::make_unique<XmlElement>();
  e->name = name;
  return e;
}

void add_param(XmlElement & parent, const ParamEntry & p)
{
  auto param = make("param");
  param->attributes.emplace_back("name", p.name);
  ScalarType t = p.value.type();
  if (t != ScalarType::Text)
    param->attributes.emplace_back("type", scalar_type_name(t));
  if (t != ScalarType::Null) param->text = p.value.to_text();
  parent.children.push_back(std::move(param));
}

}  // namespace

std::string export_gax(const XrlDocument & doc)
{
  std::vector<std::string> keys = element_keys(doc);
  std::map<std::string, std::string> key_of_anchor;
  for (std::size_t i = 0; i < doc.elements.size(); ++i)
    if (!doc.elements[i].anchor.empty()) key_of_anchor[doc.elements[i].anchor] = keys[i];

  auto ref_key = [&key_of_anchor](const std::string & anchor) {
    auto it = key_of_anchor.find(anchor);
    return it == key_of_anchor.end() ? anchor : it->second;
  };

  auto process = make("process");

  auto identifiers = make("identifiers");
  for (const auto & n : doc.nodes) {
    auto id = make("identifier");
    id->attributes.emplace_back("name", n.name);
    id->attributes.emplace_back("id", n.id.text());
    identifiers->children.push_back(std::move(id));
  }
  process->children.push_back(std::move(identifiers));

  auto elements = make("elements");
  for (std::size_t i = 0; i < doc.elements.size(); ++i) {
    const ElementDef & def = doc.elements[i];
    auto element = make("element");
    element->attributes.emplace_back("key", keys[i]);
    element->attributes.emplace_back("name", def.name);
    element->attributes.emplace_back("text", def.text);
    if (def.is_composite()) element->attributes.emplace_back("composite", "true");
    for (const auto & p : def.params.entries()) add_param(*element, p);
    if (def.steps) {
      for (const auto & step : *def.steps) {
        auto s = make("step");
        s->attributes.emplace_back("ref", ref_key(step.element_anchor));
        for (const auto & p : step.overrides.entries()) add_param(*s, p);
        element->children.push_back(std::move(s));
      }
    }
    elements->children.push_back(std::move(element));
  }
  process->children.push_back(std::move(elements));

  auto boundaries = make("boundaries");
  boundaries->attributes.emplace_back("start", doc.start.value.text());
  boundaries->attributes.emplace_back("end", doc.end.value.text());
  process->children.push_back(std::move(boundaries));

  auto flow = make("flow");
  for (const auto & f : doc.flow) {
    auto node = make("node");
    node->attributes.emplace_back("id", f.node.value.text());
    auto action = make("action");
    action->attributes.emplace_back("ref", ref_key(f.action.element_anchor));
    for (const auto & p : f.action.overrides.entries()) add_param(*action, p);
    node->children.push_back(std::move(action));
    for (const auto & r : f.references_in) {
      auto in = make("in");
      in->attributes.emplace_back("ref", r.value.text());
      node->children.push_back(std::move(in));
    }
    for (const auto & r : f.references_out) {
      auto outp = make("out");
      outp->attributes.emplace_back("ref", r.value.text());
      node->children.push_back(std::move(outp));
    }
    flow->children.push_back(std::move(node));
  }
  process->children.push_back(std::move(flow));

  return write_xml(*process);
}

namespace
{

class Importer
{
public:
  explicit Importer(const XmlElement & root) : root_(root) {}

  ImportResult run()
  {
    if (root_.name != "process") {
      error("XRL-X02", "root element must be <process>", root_.loc);
      return finish();
    }
    for (const auto & c : root_.children) {
      if (c->name != "identifiers" && c->name != "elements" && c->name != "boundaries" &&
          c->name != "flow")
        error("XRL-X02", "unexpected element <" + c->name + "> under <process>", c->loc);
    }
    const XmlElement * identifiers = root_.child("identifiers");
    const XmlElement * elements = root_.child("elements");
    const XmlElement * boundaries = root_.child("boundaries");
    const XmlElement * flow = root_.child("flow");
    if (!identifiers || !elements || !boundaries || !flow) {
      error("XRL-X02",
            "<process> requires <identifiers>, <elements>, <boundaries>, and <flow>",
            root_.loc);
      return finish();
    }
    import_identifiers(*identifiers);
    import_elements(*elements);
    import_boundaries(*boundaries);
    import_flow(*flow);
    return finish();
  }

private:
  const XmlElement & root_;
  XrlDocument doc_;
  std::vector<Diagnostic> diags_;
  std::set<std::string> node_ids_;
  std::set<std::string> element_keys_;

  void error(std::string_view code, std::string message, SourceLocation loc)
  {
    diags_.push_back(make_diag(code, std::move(message), loc));
  }

  ImportResult finish()
  {
    ImportResult result;
    sort_diagnostics(diags_);
    result.diagnostics = std::move(diags_);
    if (!has_errors(result.diagnostics)) {
      result.document = std::move(doc_);
      result.diagnostics.clear();
    }
    return result;
  }

  std::string require_attr(const XmlElement & e, const char * name)
  {
    const std::string * v = e.attr(name);
    if (!v) {
      error("XRL-X02", "<" + e.name + "> requires attribute '" + name + "'", e.loc);
      return {};
    }
    return *v;
  }

  Guid require_guid(const XmlElement & e, const char * attr_name)
  {
    std::string text = require_attr(e, attr_name);
    if (text.empty()) return Guid::lenient(text);
    auto parsed = Guid::parse(text);
    if (!parsed) {
      error("XRL-X04", "attribute '" + std::string(attr_name) + "' is not a valid GUID: '" +
                         text + "'",
            e.loc);
      return Guid::lenient(text);
    }
    return *parsed;
  }

  void import_identifiers(const XmlElement & section)
  {
    for (const auto & c : section.children) {
      if (c->name != "identifier") {
        error("XRL-X02", "unexpected element <" + c->name + "> under <identifiers>", c->loc);
        continue;
      }
      NodeDecl decl;
      decl.name = require_attr(*c, "name");
      decl.id = require_guid(*c, "id");
      decl.anchor = decl.name;
      decl.loc = c->loc;
      decl.id_loc = c->loc;
      node_ids_.insert(decl.id.text());
      doc_.nodes.push_back(std::move(decl));
    }
  }

  ScalarValue param_value(const XmlElement & p)
  {
    const std::string * type = p.attr("type");
    std::string t = type ? *type : "text";
    if (t == "text") return ScalarValue::text(p.text);
    if (t == "null") {
      if (!p.text.empty())
        error("XRL-X02", "null parameter must have no content", p.loc);
      return ScalarValue::null();
    }
    if (t == "bool") {
      if (p.text == "true") return ScalarValue::boolean(true);
      if (p.text == "false") return ScalarValue::boolean(false);
      error("XRL-X02", "bool parameter must be 'true' or 'false'", p.loc);
      return ScalarValue::null();
    }
    if (t == "int" || t == "real") {
      ScalarValue v = classify_plain_scalar(p.text);
      if (t == "int" && v.type() == ScalarType::Int) return v;
      if (t == "real" && v.type() == ScalarType::Real) return v;
      if (t == "real" && v.type() == ScalarType::Int)
        return ScalarValue::real(static_cast<double>(v.as_int()));
      error("XRL-X02", "parameter content does not match type '" + t + "'", p.loc);
      return ScalarValue::null();
    }
    error("XRL-X02", "unknown parameter type '" + t + "'", p.loc);
    return ScalarValue::null();
  }

  ParamMap import_params(const XmlElement & parent)
  {
    ParamMap map;
    for (const auto * p : parent.children_named("param")) {
      std::string name = require_attr(*p, "name");
      if (name.empty()) continue;
      if (!map.set(name, param_value(*p), p->loc))
        error("XRL-X02", "duplicate parameter '" + name + "'", p->loc);
    }
    return map;
  }

  ActionUse import_action(const XmlElement & a)
  {
    ActionUse use;
    use.loc = a.loc;
    std::string ref = require_attr(a, "ref");
    if (!ref.empty() && !element_keys_.count(ref))
      error("XRL-X03", "action ref '" + ref + "' does not name an element", a.loc);
    use.element_anchor = ref;
    use.overrides = import_params(a);
    return use;
  }

  void import_elements(const XmlElement & section)
  {
    // Two passes so steps can reference elements defined later.
    for (const auto & c : section.children) {
      if (c->name != "element") {
        error("XRL-X02", "unexpected element <" + c->name + "> under <elements>", c->loc);
        continue;
      }
      const std::string * key = c->attr("key");
      const std::string * name = c->attr("name");
      std::string k = key ? *key : (name ? *name : std::string());
      if (k.empty()) {
        error("XRL-X02", "<element> requires a key or name attribute", c->loc);
        continue;
      }
      if (!element_keys_.insert(k).second)
        error("XRL-X02", "duplicate element key '" + k + "'", c->loc);
    }
    for (const auto & c : section.children) {
      if (c->name != "element") continue;
      ElementDef def;
      def.loc = c->loc;
      const std::string * key = c->attr("key");
      def.name = require_attr(*c, "name");
      def.anchor = key ? *key : def.name;
      const std::string * text = c->attr("text");
      if (text) def.text = *text;
      def.params = import_params(*c);

      auto steps = c->children_named("step");
      const std::string * composite = c->attr("composite");
      if (!steps.empty() || (composite && *composite == "true")) {
        std::vector<ActionUse> uses;
        for (const auto * s : steps) uses.push_back(import_action(*s));
        def.steps = std::move(uses);
      }
      for (const auto & child : c->children)
        if (child->name != "param" && child->name != "step")
          error("XRL-X02", "unexpected element <" + child->name + "> under <element>",
                child->loc);
      doc_.elements.push_back(std::move(def));
    }
  }

  void import_boundaries(const XmlElement & b)
  {
    doc_.start = {require_guid(b, "start"), b.loc};
    doc_.end = {require_guid(b, "end"), b.loc};
  }

  GuidRef node_ref(const XmlElement & e, const char * attr_name)
  {
    Guid g = require_guid(e, attr_name);
    if (g.is_valid() && !node_ids_.count(g.text()))
      error("XRL-X03", "'" + g.text() + "' does not name a declared node", e.loc);
    return {g, e.loc};
  }

  void import_flow(const XmlElement & section)
  {
    for (const auto & c : section.children) {
      if (c->name != "node") {
        error("XRL-X02", "unexpected element <" + c->name + "> under <flow>", c->loc);
        continue;
      }
      FlowEntry entry;
      entry.loc = c->loc;
      entry.node = node_ref(*c, "id");
      const XmlElement * action = c->child("action");
      if (!action) {
        error("XRL-X02", "flow <node> requires an <action>", c->loc);
        continue;
      }
      entry.action = import_action(*action);
      for (const auto & child : c->children) {
        if (child->name == "in")
          entry.references_in.push_back(node_ref(*child, "ref"));
        else if (child->name == "out")
          entry.references_out.push_back(node_ref(*child, "ref"));
        else if (child->name != "action")
          error("XRL-X02", "unexpected element <" + child->name + "> under flow <node>",
                child->loc);
      }
      doc_.flow.push_back(std::move(entry));
    }
  }
};

ParamMap sorted_params(const ParamMap & params)
{
  std::vector<ParamEntry> entries(params.entries().begin(), params.entries().end());
  std::sort(entries.begin(), entries.end(),
            [](const ParamEntry & a, const ParamEntry & b) { return a.name < b.name; });
  ParamMap out;
  for (auto & e : entries) out.set(e.name, e.value);
  return out;
}

std::set<std::string> ref_set(const std::vector<GuidRef> & refs)
{
  std::set<std::string> out;
  for (const auto & r : refs) out.insert(r.value.text());
  return out;
}

}  // namespace

ImportResult import_gax(std::string_view xml_text)
{
  XmlParseResult xml = parse_xml(xml_text);
  if (!xml.ok()) {
    ImportResult result;
    result.diagnostics = std::move(xml.diagnostics);
    return result;
  }
  return Importer(*xml.root).run();
}

bool semantic_equal(const XrlDocument & a, const XrlDocument & b)
{
  if (a.nodes.size() != b.nodes.size() || a.elements.size() != b.elements.size() ||
      a.flow.size() != b.flow.size())
    return false;
  for (std::size_t i = 0; i < a.nodes.size(); ++i)
    if (a.nodes[i].name != b.nodes[i].name || a.nodes[i].id != b.nodes[i].id) return false;

  auto actions_equal = [&](const ActionUse & x, const ActionUse & y) {
    if (a.element_index(x.element_anchor) != b.element_index(y.element_anchor)) return false;
    return sorted_params(x.overrides) == sorted_params(y.overrides);
  };

  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    const ElementDef & x = a.elements[i];
    const ElementDef & y = b.elements[i];
    if (x.name != y.name || x.text != y.text) return false;
    if (sorted_params(x.params) != sorted_params(y.params)) return false;
    if (x.steps.has_value() != y.steps.has_value()) return false;
    if (x.steps) {
      if (x.steps->size() != y.steps->size()) return false;
      for (std::size_t s = 0; s < x.steps->size(); ++s)
        if (!actions_equal((*x.steps)[s], (*y.steps)[s])) return false;
    }
  }
  if (a.start.value != b.start.value || a.end.value != b.end.value) return false;
  for (std::size_t i = 0; i < a.flow.size(); ++i) {
    const FlowEntry & x = a.flow[i];
    const FlowEntry & y = b.flow[i];
    if (x.node.value != y.node.value) return false;
    if (!actions_equal(x.action, y.action)) return false;
    if (ref_set(x.references_in) != ref_set(y.references_in)) return false;
    if (ref_set(x.references_out) != ref_set(y.references_out)) return false;
  }
  return true;
}

}  // namespace xrl

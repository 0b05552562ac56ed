// xrl/parse.cpp - Bind the generic YAML tree onto the XRL document model
#include "xrl/parse.hpp"

#include <cctype>
#include <map>

#include "xrl/yaml.hpp"

namespace xrl
{

namespace
{

bool is_identifier(std::string_view s)
{
  if (s.empty()) return false;
  char c0 = s[0];
  if (!(std::isalpha(static_cast<unsigned char>(c0)) || c0 == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

class Binder
{
public:
  explicit Binder(const YamlNode & root) : root_(root) {}

  ParseResult bind()
  {
    if (root_.kind != YamlKind::Mapping) {
      error("XRL-P06", "document root must be a mapping with the sections "
                       "nodes/elements/start/end/flow",
            root_.loc);
      return finish();
    }

    static const char * kSections[] = {"nodes", "elements", "start", "end", "flow"};
    for (const auto & entry : root_.entries) {
      bool known = false;
      for (const char * s : kSections) known = known || entry.key == s;
      if (!known) error("XRL-P05", "unknown top-level key '" + entry.key + "'", entry.key_loc);
    }
    for (const char * s : kSections) {
      if (!root_.find(s))
        error("XRL-P06", std::string("missing required top-level section '") + s + "'",
              root_.loc);
    }
    if (has_errors(diags_)) return finish();

    bind_nodes(*root_.find("nodes"));
    bind_elements(*root_.find("elements"));
    doc_.start = bind_guid_ref(*root_.find("start"), "start");
    doc_.end = bind_guid_ref(*root_.find("end"), "end");
    bind_flow(*root_.find("flow"));
    return finish();
  }

private:
  const YamlNode & root_;
  XrlDocument doc_;
  std::vector<Diagnostic> diags_;
  std::map<const YamlNode *, std::string> element_by_node_;  // element map node -> anchor

  void error(std::string_view code, std::string message, SourceLocation loc)
  {
    diags_.push_back(make_diag(code, std::move(message), loc));
  }

  ParseResult finish()
  {
    ParseResult result;
    sort_diagnostics(diags_);
    result.diagnostics = std::move(diags_);
    if (!has_errors(result.diagnostics)) {
      result.document = std::move(doc_);
      result.diagnostics.clear();  // success carries no findings; validate/lint do
    }
    return result;
  }

  bool expect_kind(const YamlNode & n, YamlKind kind, const std::string & what)
  {
    if (deref(n).kind == kind) return true;
    error("XRL-P06", what, n.loc);
    return false;
  }

  void check_known_keys(const YamlNode & map, std::initializer_list<std::string_view> known)
  {
    for (const auto & e : map.entries) {
      bool ok = false;
      for (auto k : known) ok = ok || e.key == k;
      if (!ok) error("XRL-P05", "unknown key '" + e.key + "'", e.key_loc);
    }
  }

  // Scalar (or alias to one); empty string on structural failure.
  const YamlNode * scalar_of(const YamlNode & n, const std::string & what)
  {
    const YamlNode & d = deref(n);
    if (d.kind != YamlKind::Scalar) {
      error("XRL-P06", what, n.loc);
      return nullptr;
    }
    return &d;
  }

  void bind_nodes(const YamlNode & section)
  {
    if (!expect_kind(section, YamlKind::Sequence, "'nodes' must be a sequence")) return;
    for (const auto & item : deref(section).items) {
      const YamlNode & entry = deref(*item);
      if (entry.kind != YamlKind::Mapping) {
        error("XRL-P06", "node declaration must be a mapping with name and id", item->loc);
        continue;
      }
      check_known_keys(entry, {"name", "id"});
      const YamlNode * name_node = entry.find("name");
      const YamlNode * id_node = entry.find("id");
      if (!name_node || !id_node) {
        error("XRL-P06", "node declaration requires both name and id", entry.loc);
        continue;
      }
      NodeDecl decl;
      decl.loc = entry.loc;
      if (const YamlNode * s = scalar_of(*name_node, "node name must be a scalar")) {
        decl.name = s->value.to_text();
        if (!is_identifier(decl.name))
          error("XRL-P06", "node name '" + decl.name + "' is not an identifier", s->loc);
      }
      if (const YamlNode * s = scalar_of(*id_node, "node id must be a scalar")) {
        decl.id = Guid::lenient(s->raw);
        decl.id_loc = s->loc;
        decl.anchor = s->anchor;
      }
      doc_.nodes.push_back(std::move(decl));
    }
  }

  void bind_elements(const YamlNode & section)
  {
    if (!expect_kind(section, YamlKind::Sequence, "'elements' must be a sequence")) return;
    for (const auto & item : deref(section).items) {
      const YamlNode & entry = deref(*item);
      if (entry.kind != YamlKind::Mapping) {
        error("XRL-P06", "element definition must be a mapping", item->loc);
        continue;
      }
      check_known_keys(entry, {"name", "text", "params", "steps"});
      ElementDef def;
      def.loc = entry.loc;
      def.anchor = entry.anchor;

      const YamlNode * name_node = entry.find("name");
      const YamlNode * text_node = entry.find("text");
      if (!name_node || !text_node) {
        error("XRL-P06", "element definition requires name and text", entry.loc);
        continue;
      }
      if (const YamlNode * s = scalar_of(*name_node, "element name must be a scalar")) {
        def.name = s->value.to_text();
        if (!is_identifier(def.name))
          error("XRL-P06", "element name '" + def.name + "' is not an identifier", s->loc);
      }
      if (const YamlNode * s = scalar_of(*text_node, "element text must be a scalar"))
        def.text = s->value.to_text();

      if (const YamlNode * params = entry.find("params")) def.params = bind_params(*params);
      if (const YamlNode * steps = entry.find("steps")) {
        std::vector<ActionUse> uses;
        if (expect_kind(*steps, YamlKind::Sequence, "'steps' must be a sequence")) {
          for (const auto & step : deref(*steps).items) uses.push_back(bind_action(*step));
        }
        def.steps = std::move(uses);
      }
      if (!def.anchor.empty()) element_by_node_[&entry] = def.anchor;
      doc_.elements.push_back(std::move(def));
    }
  }

  ParamMap bind_params(const YamlNode & n)
  {
    ParamMap map;
    const YamlNode & d = deref(n);
    if (d.kind != YamlKind::Mapping) {
      error("XRL-P06", "params must be a mapping of scalar values", n.loc);
      return map;
    }
    for (const auto & e : d.entries) {
      if (e.key == "<<") {
        error("XRL-P05", "merge keys are only allowed in actions", e.key_loc);
        continue;
      }
      const YamlNode & v = deref(*e.value);
      if (v.kind != YamlKind::Scalar) {
        error("XRL-P08",
              "parameter '" + e.key + "' must be a scalar (nested structures are not allowed)",
              e.value->loc);
        continue;
      }
      map.set(e.key, v.value, e.key_loc);
    }
    return map;
  }

  ActionUse bind_action(const YamlNode & n)
  {
    ActionUse use;
    use.loc = n.loc;
    if (n.kind != YamlKind::Mapping) {
      error("XRL-P06", "action must be a mapping with '<<: *element'", n.loc);
      return use;
    }
    check_known_keys(n, {"<<", "params"});
    const YamlNode * merge = n.find("<<");
    if (!merge) {
      error("XRL-P06", "action requires an element reference ('<<: *element')", n.loc);
      return use;
    }
    if (merge->kind != YamlKind::Alias) {
      error("XRL-P06", "merge value must be an alias to an element definition", merge->loc);
    } else if (deref(*merge).kind != YamlKind::Mapping) {
      error("XRL-P04", "merge key applied to a non-mapping", merge->loc);
    } else {
      auto it = element_by_node_.find(&deref(*merge));
      if (it == element_by_node_.end())
        error("XRL-P06", "alias '*" + merge->alias_name + "' does not reference an element "
                         "definition",
              merge->loc);
      else
        use.element_anchor = it->second;
    }
    if (const YamlNode * params = n.find("params")) use.overrides = bind_params(*params);
    return use;
  }

  GuidRef bind_guid_ref(const YamlNode & n, const std::string & what)
  {
    GuidRef ref;
    ref.loc = n.loc;
    const YamlNode & d = deref(n);
    if (d.kind != YamlKind::Scalar) {
      error("XRL-P06", what + " must be a single node identifier", n.loc);
      return ref;
    }
    ref.value = Guid::lenient(d.raw);
    return ref;
  }

  std::vector<GuidRef> bind_refs(const YamlNode & n, const std::string & what)
  {
    std::vector<GuidRef> refs;
    const YamlNode & d = deref(n);
    if (d.kind != YamlKind::Sequence) {
      error("XRL-P06", what + " must be a sequence of node identifiers", n.loc);
      return refs;
    }
    for (const auto & item : d.items) {
      GuidRef ref = bind_guid_ref(*item, what + " entry");
      bool dup = false;
      for (const auto & prev : refs) dup = dup || prev.value == ref.value;
      if (dup)
        error("XRL-P06", "duplicate reference '" + ref.value.text() + "' in " + what,
              item->loc);
      else
        refs.push_back(std::move(ref));
    }
    return refs;
  }

  void bind_flow(const YamlNode & section)
  {
    if (!expect_kind(section, YamlKind::Sequence, "'flow' must be a sequence")) return;
    for (const auto & item : deref(section).items) {
      const YamlNode & entry = deref(*item);
      if (entry.kind != YamlKind::Mapping) {
        error("XRL-P06", "flow entry must be a mapping", item->loc);
        continue;
      }
      check_known_keys(entry, {"node", "action", "references_in", "references_out"});
      FlowEntry fe;
      fe.loc = entry.loc;
      const YamlNode * node = entry.find("node");
      const YamlNode * action = entry.find("action");
      if (!node || !action) {
        error("XRL-P06", "flow entry requires node and action", entry.loc);
        continue;
      }
      fe.node = bind_guid_ref(*node, "flow node");
      fe.action = bind_action(deref(*action).kind == YamlKind::Mapping ? deref(*action)
                                                                       : *action);
      if (const YamlNode * rin = entry.find("references_in"))
        fe.references_in = bind_refs(*rin, "references_in");
      if (const YamlNode * rout = entry.find("references_out"))
        fe.references_out = bind_refs(*rout, "references_out");

      for (const auto & r : fe.references_in)
        if (r.value == fe.node.value)
          error("XRL-P06", "node lists itself in its own references_in", r.loc);
      doc_.flow.push_back(std::move(fe));
    }
  }
};

}  // namespace

ParseResult parse_document(std::string_view source)
{
  YamlParseResult tree = parse_yaml(source);
  if (!tree.ok()) {
    ParseResult result;
    result.diagnostics = std::move(tree.diagnostics);
    return result;
  }
  Binder binder(*tree.root);
  return binder.bind();
}

}  // namespace xrl

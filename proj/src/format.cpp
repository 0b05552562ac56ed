// xrl/format.cpp - Canonical XRL emitter: fixed section order, two-space
// indent, anchors renamed to declaration names, aliases at every reuse site.
#include "xrl/format.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace xrl
{

namespace
{

bool safe_plain_text(const std::string & t)
{
  if (t.empty()) return false;
  char c0 = t[0];
  auto first_ok = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '/' ||
           c == '$';
  };
  auto rest_ok = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '/' ||
           c == '$' || c == '@' || c == '+' || c == '-';
  };
  if (!first_ok(c0)) return false;
  for (char c : t)
    if (!rest_ok(c)) return false;
  // Plain emission must re-classify as text.
  return classify_plain_scalar(t).type() == ScalarType::Text;
}

std::string quote_double(const std::string & t)
{
  std::string out = "\"";
  for (char c : t) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          static const char * digits = "0123456789abcdef";
          out += "\\x";
          out += digits[(static_cast<unsigned char>(c) >> 4) & 0xf];
          out += digits[static_cast<unsigned char>(c) & 0xf];
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
  return out;
}

/// Anchor names: declaration name, deduplicated across the shared
/// node/element namespace with numeric suffixes.
struct AnchorPlan
{
  std::map<std::string, std::string> node_anchor_by_id;      // guid text -> anchor
  std::vector<std::string> element_anchors;                  // by element index
  std::map<std::string, std::string> element_anchor_rename;  // old anchor -> new
};

AnchorPlan plan_anchors(const XrlDocument & doc)
{
  AnchorPlan plan;
  std::set<std::string> taken;
  auto claim = [&taken](const std::string & base) {
    std::string candidate = base.empty() ? std::string("unnamed") : base;
    int suffix = 2;
    while (!taken.insert(candidate).second) {
      candidate = base + "_" + std::to_string(suffix);
      ++suffix;
    }
    return candidate;
  };
  for (const auto & n : doc.nodes) {
    std::string anchor = claim(n.name);
    // First declaration wins when ids are duplicated (an XRL002 situation).
    plan.node_anchor_by_id.emplace(n.id.text(), anchor);
  }
  for (const auto & e : doc.elements) {
    std::string anchor = claim(e.name);
    plan.element_anchors.push_back(anchor);
    if (!e.anchor.empty()) plan.element_anchor_rename.emplace(e.anchor, anchor);
  }
  return plan;
}

class Emitter
{
public:
  Emitter(const XrlDocument & doc) : doc_(doc), plan_(plan_anchors(doc)) {}

  std::string run()
  {
    emit_nodes();
    emit_elements();
    out_ << "start: " << guid_use(doc_.start.value) << '\n';
    out_ << "end: " << guid_use(doc_.end.value) << '\n';
    emit_flow();
    return out_.str();
  }

private:
  const XrlDocument & doc_;
  AnchorPlan plan_;
  std::ostringstream out_;
  std::set<std::string> declared_guids_;

  // Alias after declaration; the literal (with anchor) exactly once. A
  // duplicated id (an XRL002 defect) degrades to an alias so the output
  // still re-parses.
  std::string guid_decl(const NodeDecl & n)
  {
    auto [it, inserted] = declared_guids_.insert(n.id.text());
    (void)it;
    if (!inserted) return "*" + plan_.node_anchor_by_id.at(n.id.text());
    return "&" + plan_.node_anchor_by_id.at(n.id.text()) + " " + n.id.text();
  }

  std::string guid_use(const Guid & g)
  {
    auto it = plan_.node_anchor_by_id.find(g.text());
    if (it != plan_.node_anchor_by_id.end() && declared_guids_.count(g.text()))
      return "*" + it->second;
    return g.text();  // undeclared id; left literal for validation to flag
  }

  std::string element_alias(const std::string & old_anchor)
  {
    auto it = plan_.element_anchor_rename.find(old_anchor);
    if (it == plan_.element_anchor_rename.end())
      throw std::invalid_argument("action references unknown element '" + old_anchor + "'");
    return "*" + it->second;
  }

  void emit_nodes()
  {
    if (doc_.nodes.empty()) {
      out_ << "nodes: []\n";
      return;
    }
    out_ << "nodes:\n";
    for (const auto & n : doc_.nodes) {
      out_ << "  - name: " << n.name << '\n';
      out_ << "    id: " << guid_decl(n) << '\n';
    }
  }

  void emit_params(const ParamMap & params, int indent)
  {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto & e : params.entries())
      out_ << pad << e.name << ": " << format_scalar(e.value) << '\n';
  }

  void emit_action(const ActionUse & use, int indent)
  {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    out_ << pad << "<<: " << element_alias(use.element_anchor) << '\n';
    if (!use.overrides.empty()) {
      out_ << pad << "params:\n";
      emit_params(use.overrides, indent + 2);
    }
  }

  void emit_elements()
  {
    if (doc_.elements.empty()) {
      out_ << "elements: []\n";
      return;
    }
    out_ << "elements:\n";
    for (std::size_t i = 0; i < doc_.elements.size(); ++i) {
      const ElementDef & e = doc_.elements[i];
      out_ << "  - &" << plan_.element_anchors[i] << '\n';
      out_ << "    name: " << e.name << '\n';
      out_ << "    text: " << format_scalar(ScalarValue::text(e.text)) << '\n';
      if (!e.params.empty()) {
        out_ << "    params:\n";
        emit_params(e.params, 6);
      }
      if (e.steps) {
        out_ << "    steps:\n";
        for (const auto & step : *e.steps) {
          out_ << "      - <<: " << element_alias(step.element_anchor) << '\n';
          if (!step.overrides.empty()) {
            out_ << "        params:\n";
            emit_params(step.overrides, 10);
          }
        }
      }
    }
  }

  void emit_refs(const char * key, const std::vector<GuidRef> & refs)
  {
    out_ << "    " << key << ": [";
    for (std::size_t i = 0; i < refs.size(); ++i) {
      if (i) out_ << ", ";
      out_ << guid_use(refs[i].value);
    }
    out_ << "]\n";
  }

  void emit_flow()
  {
    if (doc_.flow.empty()) {
      out_ << "flow: []\n";
      return;
    }
    out_ << "flow:\n";
    for (const auto & f : doc_.flow) {
      out_ << "  - node: " << guid_use(f.node.value) << '\n';
      out_ << "    action:\n";
      emit_action(f.action, 6);
      emit_refs("references_in", f.references_in);
      emit_refs("references_out", f.references_out);
    }
  }
};

}  // namespace

std::string format_scalar(const ScalarValue & v)
{
  switch (v.type()) {
    case ScalarType::Null: return "null";
    case ScalarType::Bool: return v.as_bool() ? "true" : "false";
    case ScalarType::Int: return std::to_string(v.as_int());
    case ScalarType::Real: return format_real(v.as_real());
    case ScalarType::Text:
      return safe_plain_text(v.as_text()) ? v.as_text() : quote_double(v.as_text());
  }
  return "null";
}

std::string format_canonical(const XrlDocument & doc)
{
  return Emitter(doc).run();
}

}  // namespace xrl

// xrl/model.cpp - ParamMap, document lookups, structural equality
#include "xrl/model.hpp"

#include <algorithm>

namespace xrl
{

bool ParamMap::set(std::string name, ScalarValue value, SourceLocation loc)
{
  for (auto & e : entries_) {
    if (e.name == name) {
      e.value = std::move(value);
      e.loc = loc;
      return false;
    }
  }
  entries_.push_back({std::move(name), std::move(value), loc});
  return true;
}

bool ParamMap::erase(std::string_view name)
{
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const ParamEntry & e) { return e.name == name; });
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

const ScalarValue * ParamMap::find(std::string_view name) const
{
  const ParamEntry * e = find_entry(name);
  return e ? &e->value : nullptr;
}

const ParamEntry * ParamMap::find_entry(std::string_view name) const
{
  for (const auto & e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

bool ParamMap::operator==(const ParamMap & o) const
{
  if (entries_.size() != o.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name != o.entries_[i].name) return false;
    if (entries_[i].value != o.entries_[i].value) return false;
  }
  return true;
}

const ElementDef * XrlDocument::find_element(std::string_view anchor) const
{
  int i = element_index(anchor);
  return i < 0 ? nullptr : &elements[static_cast<std::size_t>(i)];
}

int XrlDocument::element_index(std::string_view anchor) const
{
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].anchor == anchor) return static_cast<int>(i);
  return -1;
}

const NodeDecl * XrlDocument::find_node(const Guid & id) const
{
  for (const auto & n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

const FlowEntry * XrlDocument::find_flow(const Guid & node_id) const
{
  for (const auto & f : flow)
    if (f.node.value == node_id) return &f;
  return nullptr;
}

namespace
{

bool action_equal(const XrlDocument & da, const ActionUse & a, const XrlDocument & db,
                  const ActionUse & b)
{
  if (da.element_index(a.element_anchor) != db.element_index(b.element_anchor)) return false;
  return a.overrides == b.overrides;
}

bool refs_equal(const std::vector<GuidRef> & a, const std::vector<GuidRef> & b)
{
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].value != b[i].value) return false;
  return true;
}

}  // namespace

bool structurally_equal(const XrlDocument & a, const XrlDocument & b)
{
  if (a.nodes.size() != b.nodes.size() || a.elements.size() != b.elements.size() ||
      a.flow.size() != b.flow.size())
    return false;

  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    if (a.nodes[i].name != b.nodes[i].name) return false;
    if (a.nodes[i].id != b.nodes[i].id) return false;
  }
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    const ElementDef & x = a.elements[i];
    const ElementDef & y = b.elements[i];
    if (x.name != y.name || x.text != y.text || x.params != y.params) return false;
    if (x.steps.has_value() != y.steps.has_value()) return false;
    if (x.steps) {
      if (x.steps->size() != y.steps->size()) return false;
      for (std::size_t s = 0; s < x.steps->size(); ++s)
        if (!action_equal(a, (*x.steps)[s], b, (*y.steps)[s])) return false;
    }
  }
  if (a.start.value != b.start.value || a.end.value != b.end.value) return false;
  for (std::size_t i = 0; i < a.flow.size(); ++i) {
    const FlowEntry & x = a.flow[i];
    const FlowEntry & y = b.flow[i];
    if (x.node.value != y.node.value) return false;
    if (!action_equal(a, x.action, b, y.action)) return false;
    if (!refs_equal(x.references_in, y.references_in)) return false;
    if (!refs_equal(x.references_out, y.references_out)) return false;
  }
  return true;
}

}  // namespace xrl

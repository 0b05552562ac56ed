// xrl/model.hpp - Resolved in-memory form of one XRL process document
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xrl/diagnostic.hpp"
#include "xrl/guid.hpp"
#include "xrl/scalar.hpp"

namespace xrl
{

struct ParamEntry
{
  std::string name;
  ScalarValue value;
  SourceLocation loc;
};

/// Ordered name -> scalar mapping. Names are unique; insertion order is
/// preserved for formatting. A null value in an element definition means
/// "required, not yet supplied".
class ParamMap
{
public:
  bool set(std::string name, ScalarValue value, SourceLocation loc = {});
  bool erase(std::string_view name);
  const ScalarValue * find(std::string_view name) const;
  const ParamEntry * find_entry(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  const std::vector<ParamEntry> & entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Equality over (name, value) sequences; locations are ignored.
  bool operator==(const ParamMap & o) const;
  bool operator!=(const ParamMap & o) const { return !(*this == o); }

private:
  std::vector<ParamEntry> entries_;
};

struct NodeDecl
{
  std::string name;
  Guid id;
  std::string anchor;
  SourceLocation loc;      // of the declaration entry
  SourceLocation id_loc;   // of the id scalar
};

/// A use of an element: which definition, plus explicit parameter overrides.
struct ActionUse
{
  std::string element_anchor;
  ParamMap overrides;
  SourceLocation loc;
};

struct ElementDef
{
  std::string name;
  std::string anchor;
  std::string text;
  ParamMap params;  // defaults; null marks a required parameter
  std::optional<std::vector<ActionUse>> steps;  // present only for composites
  SourceLocation loc;

  bool is_composite() const { return steps.has_value(); }
};

/// Fully resolved action: element defaults overlaid by use-site overrides.
struct ResolvedAction
{
  std::string element_name;
  std::string text;
  ParamMap params;

  bool operator==(const ResolvedAction & o) const
  {
    return element_name == o.element_name && text == o.text && params == o.params;
  }
};

struct GuidRef
{
  Guid value;
  SourceLocation loc;
};

struct FlowEntry
{
  GuidRef node;
  ActionUse action;
  std::vector<GuidRef> references_in;
  std::vector<GuidRef> references_out;
  SourceLocation loc;
};

struct XrlDocument
{
  std::vector<NodeDecl> nodes;
  std::vector<ElementDef> elements;
  GuidRef start;
  GuidRef end;
  std::vector<FlowEntry> flow;

  const ElementDef * find_element(std::string_view anchor) const;
  int element_index(std::string_view anchor) const;  // -1 when unknown
  const NodeDecl * find_node(const Guid & id) const;
  const FlowEntry * find_flow(const Guid & node_id) const;
};

/// Equality modulo anchor spellings: anchors are canonicalized away by the
/// formatter, so round-trip comparisons must not depend on them. Element
/// references compare by the index of the referenced definition. Everything
/// else, including list order, is significant.
bool structurally_equal(const XrlDocument & a, const XrlDocument & b);

}  // namespace xrl

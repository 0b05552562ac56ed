// xrl/yaml.hpp - Block-style YAML subset: mappings, sequences, scalars, anchors,
// aliases, one-line flow collections, comments. Merge keys ("<<") surface as
// ordinary entries so the document binder can keep element identity.
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "xrl/diagnostic.hpp"
#include "xrl/scalar.hpp"

namespace xrl
{

enum class YamlKind { Scalar, Sequence, Mapping, Alias };

struct YamlNode
{
  YamlKind kind = YamlKind::Scalar;

  // Scalar
  std::string raw;     // unescaped content as written
  ScalarValue value;   // classified; quoting forces text
  bool quoted = false;

  // Sequence
  std::vector<std::shared_ptr<YamlNode>> items;

  // Mapping (insertion order preserved)
  struct Entry
  {
    std::string key;
    SourceLocation key_loc;
    std::shared_ptr<YamlNode> value;
  };
  std::vector<Entry> entries;

  // Alias
  std::string alias_name;
  std::shared_ptr<YamlNode> target;

  std::string anchor;  // set when declared with &name
  SourceLocation loc;

  const YamlNode * find(std::string_view key) const;
};

struct YamlParseResult
{
  std::shared_ptr<YamlNode> root;  // null on failure
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return root != nullptr; }
};

YamlParseResult parse_yaml(std::string_view source);

/// Follow alias indirection to the anchored node.
const YamlNode & deref(const YamlNode & n);

/// Depth of the structural tree (root mapping = 1; scalars add nothing).
/// Aliases are not traversed into their targets.
int yaml_tree_depth(const YamlNode & n);

/// Number of alias use sites in the tree.
int yaml_alias_count(const YamlNode & n);

}  // namespace xrl

// xrl/xml.hpp - Minimal strict XML reader/writer for the GAX exchange format
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xrl/diagnostic.hpp"

namespace xrl
{

struct XmlElement
{
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;  // document order
  std::vector<std::unique_ptr<XmlElement>> children;
  std::string text;  // concatenated character data
  SourceLocation loc;

  const std::string * attr(std::string_view name) const;
  const XmlElement * child(std::string_view name) const;
  std::vector<const XmlElement *> children_named(std::string_view name) const;
};

struct XmlParseResult
{
  std::unique_ptr<XmlElement> root;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return root != nullptr; }
};

/// Elements, attributes, character data, comments, an optional XML
/// declaration, and the five predefined entities. No DTD processing,
/// no CDATA, no processing instructions.
XmlParseResult parse_xml(std::string_view source);

/// Deterministic serialization: two-space indentation, attributes in stored
/// order, self-closing childless-and-textless elements, UTF-8 declaration.
std::string write_xml(const XmlElement & root);

std::string xml_escape_text(std::string_view s);
std::string xml_escape_attr(std::string_view s);

}  // namespace xrl

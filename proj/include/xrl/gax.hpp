// xrl/gax.hpp - Generic Automation XML: bidirectional XRL exchange format
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xrl/diagnostic.hpp"
#include "xrl/model.hpp"

namespace xrl
{

/// Lossless XML rendering of a document (schema: docs/gax.dtd). Ordering is
/// deterministic; element references use a document-unique key attribute.
std::string export_gax(const XrlDocument & doc);

struct ImportResult
{
  std::optional<XrlDocument> document;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return document.has_value(); }
};

/// Inverse of export_gax up to anchor naming. Rejects malformed XML
/// (XRL-X01), schema violations (XRL-X02), unresolved element/node
/// references (XRL-X03), and invalid GUIDs (XRL-X04).
ImportResult import_gax(std::string_view xml_text);

/// Equality after canonicalization, ignoring anchor names and the order of
/// references_in/references_out lists.
bool semantic_equal(const XrlDocument & a, const XrlDocument & b);

}  // namespace xrl

// xrl/parse.hpp - XRL document parser: YAML subset -> bound XrlDocument
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "xrl/diagnostic.hpp"
#include "xrl/model.hpp"

namespace xrl
{

struct ParseResult
{
  std::optional<XrlDocument> document;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return document.has_value(); }
};

/// Parse one XRL source text. On success all anchors and aliases are
/// resolved, merge keys are bound to their element definitions, and every
/// section is mapped onto the model; diagnostics are empty. On failure the
/// result carries at least one error diagnostic and no document.
ParseResult parse_document(std::string_view source);

}  // namespace xrl

// xrl/validate.hpp - Rule-based semantic validation of parsed documents
#pragma once

#include <vector>

#include "xrl/diagnostic.hpp"
#include "xrl/model.hpp"

namespace xrl
{

/// Run the fixed rule set over a parsed document and return every finding,
/// ordered by (location, code). Errors: XRL001 invalid GUID, XRL002
/// duplicate node name/id/anchor, XRL003 start/end not a declared node,
/// XRL004 flow reference to an undeclared node, XRL005 node in flow more
/// than once, XRL006 reference asymmetry, XRL007 start with predecessors or
/// end with successors, XRL008 unreachable from start, XRL009 cannot reach
/// end, XRL010 undefined element, XRL011 undeclared override key, XRL012
/// required parameter unresolved. Warnings: XRL101 cycle present, XRL105
/// declared node absent from flow.
std::vector<Diagnostic> validate_document(const XrlDocument & doc);

}  // namespace xrl

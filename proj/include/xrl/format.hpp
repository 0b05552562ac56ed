// xrl/format.hpp - Canonical XRL concrete syntax emitter
#pragma once

#include <string>

#include "xrl/model.hpp"

namespace xrl
{

/// Emit the canonical concrete syntax: fixed section order
/// nodes/elements/start/end/flow, two-space indentation, anchors on every
/// declaration, aliases at every reuse site (each GUID literal appears
/// exactly once), anchors renamed to the declared name (suffixed on
/// collision). Output re-parses to a structurally equal document and is a
/// fixpoint of format∘parse. Throws std::invalid_argument if an action
/// references an element the document does not define.
std::string format_canonical(const XrlDocument & doc);

/// Quoting/typing rules for one scalar in canonical output.
std::string format_scalar(const ScalarValue & v);

}  // namespace xrl

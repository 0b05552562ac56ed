// xrl/resolve.hpp - Action resolution (defaults overlaid by overrides) and
// composite expansion into flat basic-step lists
#pragma once

#include <optional>
#include <vector>

#include "xrl/diagnostic.hpp"
#include "xrl/model.hpp"

namespace xrl
{

struct ResolveOutcome
{
  std::optional<ResolvedAction> action;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return action.has_value(); }
};

/// Merge-then-complete semantics: the overrides map wins wholesale where a
/// key is given, then any declared key absent from the overrides takes the
/// element default. A null after completion is a missing required parameter.
/// Failure codes: XRL010 unknown element, XRL011 undeclared override key,
/// XRL012 required parameter unresolved.
ResolveOutcome resolve_action(const ActionUse & use, const std::vector<ElementDef> & elements);

struct ExpandOutcome
{
  std::optional<std::vector<ResolvedAction>> steps;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return steps.has_value(); }
};

/// Depth-first inlining of a composite's steps into an ordered list of
/// resolved basic actions. `args` are the composite's fully resolved
/// parameters; a step override whose value is exactly "$param:<name>"
/// is replaced by args[<name>]. Failure codes: XRL013 cyclic composite
/// reference, XRL014 placeholder names an undeclared parameter, plus the
/// resolve_action codes for the individual steps.
ExpandOutcome expand_composite(const ElementDef & def, const ParamMap & args,
                               const std::vector<ElementDef> & elements);

/// Convenience: expand with the composite's own defaults as arguments.
ExpandOutcome expand_composite(const ElementDef & def, const std::vector<ElementDef> & elements);

/// Exact-match placeholder detection: "$param:<name>" -> <name>.
std::optional<std::string> placeholder_param(const ScalarValue & value);

}  // namespace xrl

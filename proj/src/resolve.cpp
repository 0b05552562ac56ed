// xrl/resolve.cpp - Merge-then-complete action resolution and composite expansion
#include "xrl/resolve.hpp"

#include <set>

namespace xrl
{

namespace
{

const ElementDef * lookup(std::string_view anchor, const std::vector<ElementDef> & elements)
{
  for (const auto & e : elements)
    if (e.anchor == anchor) return &e;
  return nullptr;
}

}  // namespace

std::optional<std::string> placeholder_param(const ScalarValue & value)
{
  if (value.type() != ScalarType::Text) return std::nullopt;
  const std::string & t = value.as_text();
  constexpr std::string_view prefix = "$param:";
  if (t.size() <= prefix.size() || t.compare(0, prefix.size(), prefix) != 0)
    return std::nullopt;
  return t.substr(prefix.size());
}

ResolveOutcome resolve_action(const ActionUse & use, const std::vector<ElementDef> & elements)
{
  ResolveOutcome out;
  const ElementDef * def = lookup(use.element_anchor, elements);
  if (!def) {
    out.diagnostics.push_back(make_diag(
      "XRL010", "action references undefined element '" + use.element_anchor + "'", use.loc));
    return out;
  }

  for (const auto & e : use.overrides.entries()) {
    if (!def->params.contains(e.name)) {
      out.diagnostics.push_back(make_diag(
        "XRL011",
        "override key '" + e.name + "' is not declared by element '" + def->name + "'",
        e.loc.line ? e.loc : use.loc));
    }
  }
  if (!out.diagnostics.empty()) return out;

  ResolvedAction action;
  action.element_name = def->name;
  action.text = def->text;
  for (const auto & declared : def->params.entries()) {
    const ScalarValue * v = use.overrides.find(declared.name);
    ScalarValue value = v ? *v : declared.value;
    if (value.is_null()) {
      out.diagnostics.push_back(make_diag(
        "XRL012",
        "required parameter '" + declared.name + "' of element '" + def->name +
          "' is unsupplied",
        use.loc));
      continue;
    }
    action.params.set(declared.name, std::move(value));
  }
  if (!out.diagnostics.empty()) return out;
  out.action = std::move(action);
  return out;
}

namespace
{

bool expand_into(const ElementDef & def, const ParamMap & args,
                 const std::vector<ElementDef> & elements,
                 std::set<const ElementDef *> & in_progress,
                 std::vector<ResolvedAction> & out, std::vector<Diagnostic> & diags)
{
  if (!in_progress.insert(&def).second) {
    diags.push_back(make_diag(
      "XRL013", "cyclic composite reference through element '" + def.name + "'", def.loc));
    return false;
  }

  bool ok = true;
  for (const auto & step : *def.steps) {
    // Substitute "$param:<name>" placeholders from the composite's arguments.
    ActionUse concrete = step;
    ParamMap substituted;
    for (const auto & e : step.overrides.entries()) {
      ScalarValue value = e.value;
      if (auto param = placeholder_param(value)) {
        const ScalarValue * arg = args.find(*param);
        if (!arg) {
          diags.push_back(make_diag(
            "XRL014",
            "placeholder '$param:" + *param + "' names a parameter element '" + def.name +
              "' does not declare",
            e.loc.line ? e.loc : step.loc));
          ok = false;
          continue;
        }
        value = *arg;
      }
      substituted.set(e.name, std::move(value), e.loc);
    }
    if (!ok) break;
    concrete.overrides = std::move(substituted);

    ResolveOutcome resolved = resolve_action(concrete, elements);
    if (!resolved.ok()) {
      diags.insert(diags.end(), resolved.diagnostics.begin(), resolved.diagnostics.end());
      ok = false;
      break;
    }
    const ElementDef * target = lookup(concrete.element_anchor, elements);
    if (target && target->is_composite()) {
      if (!expand_into(*target, resolved.action->params, elements, in_progress, out, diags)) {
        ok = false;
        break;
      }
    } else {
      out.push_back(std::move(*resolved.action));
    }
  }
  in_progress.erase(&def);
  return ok;
}

}  // namespace

ExpandOutcome expand_composite(const ElementDef & def, const ParamMap & args,
                               const std::vector<ElementDef> & elements)
{
  ExpandOutcome out;
  if (!def.steps) {
    out.diagnostics.push_back(
      make_diag("XRL010", "element '" + def.name + "' is not a composite", def.loc));
    return out;
  }
  std::vector<ResolvedAction> steps;
  std::set<const ElementDef *> in_progress;
  if (expand_into(def, args, elements, in_progress, steps, out.diagnostics))
    out.steps = std::move(steps);
  return out;
}

ExpandOutcome expand_composite(const ElementDef & def, const std::vector<ElementDef> & elements)
{
  // Resolve the composite's own defaults as arguments.
  ActionUse self;
  self.element_anchor = def.anchor;
  self.loc = def.loc;
  ResolveOutcome resolved = resolve_action(self, elements);
  if (!resolved.ok()) {
    ExpandOutcome out;
    out.diagnostics = std::move(resolved.diagnostics);
    return out;
  }
  return expand_composite(def, resolved.action->params, elements);
}

}  // namespace xrl

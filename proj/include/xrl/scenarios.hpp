// xrl/scenarios.hpp - Bundled business-process scenario fixtures
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xrl/model.hpp"
#include "xrl/sim.hpp"

namespace xrl
{

/// One bundled scenario: the process document, the pre-seeded environment,
/// and the hand-constructed expected final state with its digest.
struct Scenario
{
  std::string name;
  XrlDocument doc;
  VirtualEnv env0;
  VirtualEnv expected_final;
  std::string expected_digest;  // env_digest(expected_final)
};

std::vector<std::string> scenario_names();  // p1_search_email, p2_db_report, p3_excel_crm

/// nullopt for unknown names.
std::optional<Scenario> load_scenario(std::string_view name);

/// Raw XRL source of a bundled scenario document (empty for unknown names).
std::string scenario_source(std::string_view name);

/// Builtins plus any scenario-specific extension handlers (p2_db_report
/// adds save_file; the others use the builtins unchanged).
HandlerRegistry scenario_registry(std::string_view name);

}  // namespace xrl

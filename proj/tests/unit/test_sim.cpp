#include "doctest.h"

#include "../support/fixtures.hpp"
#include "xrl/scenarios.hpp"
#include "xrl/sim.hpp"

using namespace xrl;
using xrl_test::parse_fixture;
using xrl_test::read_fixture;

namespace
{

ResolvedAction action_of(const char * element, std::initializer_list<
                                                 std::pair<std::string, ScalarValue>> kv)
{
  ResolvedAction a;
  a.element_name = element;
  for (auto & [k, v] : kv) a.params.set(k, v);
  return a;
}

}  // namespace

TEST_CASE("env: digests are stable and sensitive")
{
  VirtualEnv env;
  std::string empty_digest = env_digest(env);
  CHECK(empty_digest.size() == 16);
  CHECK(env_digest(env) == empty_digest);
  env.clipboard = "x";
  CHECK(env_digest(env) != empty_digest);

  VirtualEnv again;
  again.clipboard = "x";
  CHECK(env_digest(again) == env_digest(env));
}

TEST_CASE("registry: duplicate registration fails, builtins count ten")
{
  HandlerRegistry registry = builtin_handlers();
  CHECK(registry.size() == 10);
  CHECK_THROWS_AS(
    registry.register_handler({"click", [](const ResolvedAction &, const VirtualEnv & e,
                                           const std::vector<SuccessorInfo> &) {
                                 return HandlerOutcome::terminal(e);
                               }}),
    std::invalid_argument);

  HandlerRegistry empty;
  empty.register_handler({"click", builtin_handlers().find("click")->apply});
  CHECK(empty.size() == 1);

  CHECK(scenario_registry("p2_db_report").size() == 11);
  CHECK(scenario_registry("p1_search_email").size() == 10);
}

TEST_CASE("handlers: launch creates and focuses a window")
{
  VirtualEnv env;
  auto outcome = builtin_handlers().find("launch")->apply(
    action_of("launch", {{"app", ScalarValue::text("totalcmd")}}), env, {});
  REQUIRE_FALSE(outcome.fault.has_value());
  CHECK(outcome.env.windows.count("totalcmd") == 1);
  CHECK(outcome.env.focused_window == "totalcmd");
}

TEST_CASE("handlers: typing without focus faults")
{
  VirtualEnv env;
  auto outcome = builtin_handlers().find("type_text")->apply(
    action_of("type_text",
              {{"target", ScalarValue::text("a")}, {"value", ScalarValue::text("b")}}),
    env, {});
  REQUIRE(outcome.fault.has_value());
  CHECK(outcome.fault->find("no focused window") != std::string::npos);
}

TEST_CASE("handlers: read_value then set_clipboard($last_read) moves the value")
{
  VirtualEnv env;
  env.windows["sheet"] = {{"result", "42 items"}};
  env.focused_window = "sheet";
  HandlerRegistry registry = builtin_handlers();
  auto read = registry.find("read_value")
                ->apply(action_of("read_value", {{"target", ScalarValue::text("result")}}),
                        env, {});
  REQUIRE_FALSE(read.fault.has_value());
  auto set = registry.find("set_clipboard")
               ->apply(action_of("set_clipboard", {{"value", ScalarValue::text("$last_read")}}),
                       read.env, {});
  REQUIRE_FALSE(set.fault.has_value());
  CHECK(set.env.clipboard == "42 items");
}

TEST_CASE("handlers: set_clipboard($last_read) before any read faults")
{
  VirtualEnv env;
  auto outcome = builtin_handlers().find("set_clipboard")
                   ->apply(action_of("set_clipboard",
                                     {{"value", ScalarValue::text("$last_read")}}),
                           env, {});
  CHECK(outcome.fault.has_value());
}

TEST_CASE("simulate: linear fixture completes and records dense ordinals")
{
  ExecutionTrace t = simulate(parse_fixture("s1_linear.xrl.yaml"), {}, builtin_handlers());
  CHECK(t.outcome == Outcome::Completed);
  REQUIRE(t.steps.size() == 3);
  for (std::size_t i = 0; i < t.steps.size(); ++i)
    CHECK(t.steps[i].ordinal == static_cast<int>(i) + 1);
  CHECK(t.steps[2].element_name == "wait");
  CHECK(t.final_env.windows.at("notepad").at("close_button") == "clicked");
}

TEST_CASE("simulate: a budget of one exhausts after the first step")
{
  StepBudget budget;
  budget.max_steps = 1;
  ExecutionTrace t =
    simulate(parse_fixture("s1_linear.xrl.yaml"), {}, builtin_handlers(), budget);
  CHECK(t.outcome == Outcome::BudgetExhausted);
  CHECK(t.steps.size() == 1);
}

TEST_CASE("simulate: cyclic process terminates exactly at the budget")
{
  StepBudget budget;
  budget.max_steps = 77;
  ExecutionTrace t =
    simulate(parse_fixture("cycle_retry.xrl.yaml"), {}, builtin_handlers(), budget);
  CHECK(t.outcome == Outcome::BudgetExhausted);
  CHECK(t.steps.size() == 77);
}

TEST_CASE("simulate: goto picks exactly one branch")
{
  XrlDocument doc = parse_fixture("b1_branching.xrl.yaml");
  ExecutionTrace t = simulate(doc, {}, builtin_handlers());
  REQUIRE(t.outcome == Outcome::Completed);
  REQUIRE(t.steps.size() == 3);
  CHECK(t.steps[0].node == doc.flow[0].node.value);
  CHECK(t.steps[1].node == doc.flow[2].node.value);  // branch_right
  CHECK(t.steps[2].node == doc.flow[3].node.value);
  CHECK(t.final_env.windows.at("menu").count("right_button") == 1);
  CHECK(t.final_env.windows.at("menu").count("left_button") == 0);
}

TEST_CASE("simulate: goto naming no successor faults")
{
  XrlDocument doc = parse_fixture("b1_branching.xrl.yaml");
  doc.flow[0].action.overrides.set("goto", ScalarValue::text("no_such_node"));
  ExecutionTrace t = simulate(doc, {}, builtin_handlers());
  CHECK(t.outcome == Outcome::Faulted);
  CHECK(t.fault_message.find("no_such_node") != std::string::npos);
  CHECK(t.steps.empty());
}

TEST_CASE("simulate: missing handler is reported before the first step")
{
  ExecutionTrace t = simulate(parse_fixture("typed_params.xrl.yaml"), {}, builtin_handlers());
  CHECK(t.outcome == Outcome::Faulted);
  CHECK(t.steps.empty());
  CHECK(t.fault_message.find("configure") != std::string::npos);
}

TEST_CASE("simulate: every consecutive trace pair is a graph edge")
{
  for (const char * fixture : {"s1_linear.xrl.yaml", "b1_branching.xrl.yaml"}) {
    XrlDocument doc = parse_fixture(fixture);
    GraphOutcome g = build_graph(doc);
    REQUIRE(g.ok());
    ExecutionTrace t = simulate(doc, {}, builtin_handlers());
    REQUIRE(t.outcome == Outcome::Completed);
    auto edges = g.graph->edges();
    for (std::size_t i = 1; i < t.steps.size(); ++i)
      CHECK(edges.count({t.steps[i - 1].node, t.steps[i].node}) == 1);
  }
}

TEST_CASE("simulate: composite document equals its hand-flattened form step for step")
{
  ExecutionTrace composite =
    simulate(parse_fixture("c1_composite.xrl.yaml"), {}, builtin_handlers());
  ExecutionTrace flat = simulate(parse_fixture("c1_flat.xrl.yaml"), {}, builtin_handlers());
  REQUIRE(composite.outcome == Outcome::Completed);
  REQUIRE(flat.outcome == Outcome::Completed);
  REQUIRE(composite.steps.size() == flat.steps.size());
  for (std::size_t i = 0; i < composite.steps.size(); ++i) {
    CAPTURE(i);
    CHECK(composite.steps[i].element_name == flat.steps[i].element_name);
    CHECK(composite.steps[i].params == flat.steps[i].params);
    CHECK(composite.steps[i].env_digest == flat.steps[i].env_digest);
  }
  CHECK(env_digest(composite.final_env) == env_digest(flat.final_env));
}

TEST_CASE("simulate: identical inputs give identical traces")
{
  XrlDocument doc = parse_fixture("b1_branching.xrl.yaml");
  ExecutionTrace a = simulate(doc, {}, builtin_handlers());
  ExecutionTrace b = simulate(doc, {}, builtin_handlers());
  CHECK(trace_to_text(a) == trace_to_text(b));
  CHECK(trace_to_json(a) == trace_to_json(b));
}

TEST_CASE("scenario: p1 sends exactly the searched phrase")
{
  auto scenario = load_scenario("p1_search_email");
  REQUIRE(scenario.has_value());
  CHECK(scenario->doc.flow.size() >= 8);
  CHECK(scenario->env0.files.count("docs/q3_notes.txt") == 1);

  ExecutionTrace t = simulate(scenario->doc, scenario->env0,
                              scenario_registry("p1_search_email"));
  REQUIRE(t.outcome == Outcome::Completed);
  REQUIRE(t.final_env.sent_messages.size() == 1);
  CHECK(t.final_env.sent_messages[0].body == "quarterly synergy report");
  CHECK(env_digest(t.final_env) == scenario->expected_digest);
  CHECK(t.final_env == scenario->expected_final);
}

TEST_CASE("scenario: p2 produces the report file")
{
  auto scenario = load_scenario("p2_db_report");
  REQUIRE(scenario.has_value());
  ExecutionTrace t =
    simulate(scenario->doc, scenario->env0, scenario_registry("p2_db_report"));
  REQUIRE(t.outcome == Outcome::Completed);
  REQUIRE(t.final_env.files.count("report.pdf") == 1);
  CHECK_FALSE(t.final_env.files.at("report.pdf").empty());
  CHECK(env_digest(t.final_env) == scenario->expected_digest);
}

TEST_CASE("scenario: p3 copies the spreadsheet row into the CRM form")
{
  auto scenario = load_scenario("p3_excel_crm");
  REQUIRE(scenario.has_value());
  ExecutionTrace t =
    simulate(scenario->doc, scenario->env0, scenario_registry("p3_excel_crm"));
  REQUIRE(t.outcome == Outcome::Completed);
  const auto & crm = t.final_env.windows.at("https://crm.example.com/contacts/new");
  const auto & sheet = scenario->env0.windows.at("clients.xlsx");
  CHECK(crm.at("name_field") == sheet.at("name_cell"));
  CHECK(crm.at("email_field") == sheet.at("email_cell"));
  CHECK(crm.at("phone_field") == sheet.at("phone_cell"));
  CHECK(env_digest(t.final_env) == scenario->expected_digest);
}

TEST_CASE("scenario: unknown names are rejected; sources match the shipped fixtures")
{
  CHECK_FALSE(load_scenario("p9_unknown").has_value());
  for (const auto & name : scenario_names()) {
    CAPTURE(name);
    CHECK(scenario_source(name) == read_fixture(name + ".xrl.yaml"));
  }
}

TEST_CASE("trace: text and json renderings carry the outcome")
{
  ExecutionTrace t = simulate(parse_fixture("s1_linear.xrl.yaml"), {}, builtin_handlers());
  std::string text = trace_to_text(t);
  CHECK(text.find("outcome: completed\n") != std::string::npos);
  std::string json = trace_to_json(t);
  CHECK(json.find("\"status\": \"completed\"") != std::string::npos);
}

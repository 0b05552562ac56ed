// tools/main.cpp - xrl command line: validate, lint, fmt, graph, run, convert
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "xrl/diagnostic.hpp"
#include "xrl/format.hpp"
#include "xrl/gax.hpp"
#include "xrl/graph.hpp"
#include "xrl/lint.hpp"
#include "xrl/parse.hpp"
#include "xrl/scenarios.hpp"
#include "xrl/sim.hpp"
#include "xrl/validate.hpp"

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitParse = 2;
constexpr int kExitSimFault = 3;
constexpr int kExitUsage = 4;

bool use_color(std::ostream & stream)
{
  if (std::getenv("XRL_NO_COLOR")) return false;
  if (&stream == &std::cout) return isatty(fileno(stdout));
  if (&stream == &std::cerr) return isatty(fileno(stderr));
  return false;
}

void print_diags(const std::vector<xrl::Diagnostic> & diags, bool json, std::ostream & stream)
{
  if (json) {
    stream << xrl::diagnostics_to_json(diags) << '\n';
    return;
  }
  stream << xrl::render_diagnostics(diags, use_color(stream));
}

std::optional<std::string> read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<xrl::Diagnostic> with_path(std::vector<xrl::Diagnostic> diags,
                                       const std::string & path)
{
  for (auto & d : diags) d.path = path;
  return diags;
}

struct LoadedDoc
{
  std::string source;
  xrl::XrlDocument doc;
};

// Shared front half of every subcommand: read, parse, report. Returns the
// exit code in `code` when loading fails.
std::optional<LoadedDoc> load_document(const std::string & path, bool json,
                                       std::ostream & diag_stream, int & code)
{
  auto source = read_file(path);
  if (!source) {
    std::cerr << "error: cannot read '" << path << "'\n";
    code = kExitUsage;
    return std::nullopt;
  }
  xrl::ParseResult parsed = xrl::parse_document(*source);
  if (!parsed.ok()) {
    print_diags(with_path(std::move(parsed.diagnostics), path), json, diag_stream);
    code = kExitParse;
    return std::nullopt;
  }
  return LoadedDoc{std::move(*source), std::move(*parsed.document)};
}

int require_clean(const LoadedDoc & loaded, const std::string & path, bool json)
{
  std::vector<xrl::Diagnostic> diags = xrl::validate_document(loaded.doc);
  if (xrl::has_errors(diags)) {
    print_diags(with_path(std::move(diags), path), json, std::cerr);
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_validate(const std::string & path, bool json)
{
  int code = kExitOk;
  auto loaded = load_document(path, json, std::cout, code);
  if (!loaded) return code;
  std::vector<xrl::Diagnostic> diags =
    with_path(xrl::validate_document(loaded->doc), path);
  if (json) {
    print_diags(diags, true, std::cout);
  } else if (!diags.empty()) {
    print_diags(diags, false, std::cout);
  }
  return xrl::has_errors(diags) ? kExitValidation : kExitOk;
}

int cmd_lint(const std::string & path, bool json)
{
  int code = kExitOk;
  auto loaded = load_document(path, json, std::cout, code);
  if (!loaded) return code;
  xrl::LintResult result = xrl::lint_readability(loaded->source, loaded->doc);
  if (json) {
    std::cout << xrl::lint_report_to_json(result.report) << '\n';
    print_diags(with_path(std::move(result.diagnostics), path), true, std::cout);
  } else {
    std::cout << xrl::render_lint_report(result.report);
    print_diags(with_path(std::move(result.diagnostics), path), false, std::cout);
  }
  return kExitOk;
}

int cmd_fmt(const std::string & path, bool write, bool json)
{
  int code = kExitOk;
  auto loaded = load_document(path, json, std::cerr, code);
  if (!loaded) return code;
  std::string canonical = xrl::format_canonical(loaded->doc);
  if (write) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot write '" << path << "'\n";
      return kExitUsage;
    }
    out << canonical;
  } else {
    std::cout << canonical;
  }
  return kExitOk;
}

int cmd_graph(const std::string & path, const std::string & format, bool json)
{
  int code = kExitOk;
  auto loaded = load_document(path, json, std::cerr, code);
  if (!loaded) return code;
  if (int rc = require_clean(*loaded, path, json); rc != kExitOk) return rc;
  xrl::GraphOutcome built = xrl::build_graph(loaded->doc);
  if (!built.ok()) {
    print_diags(with_path(std::move(built.diagnostics), path), json, std::cerr);
    return kExitValidation;
  }
  std::cout << (format == "mermaid" ? xrl::export_mermaid(*built.graph)
                                    : xrl::export_dot(*built.graph));
  return kExitOk;
}

int cmd_run(const std::string & path, const std::string & scenario_env, int max_steps,
            const std::string & trace_format, bool json)
{
  int code = kExitOk;
  auto loaded = load_document(path, json, std::cerr, code);
  if (!loaded) return code;
  if (int rc = require_clean(*loaded, path, json); rc != kExitOk) return rc;

  xrl::VirtualEnv env0;
  xrl::HandlerRegistry registry = xrl::builtin_handlers();
  if (!scenario_env.empty()) {
    auto scenario = xrl::load_scenario(scenario_env);
    if (!scenario) {
      std::cerr << "error: unknown scenario '" << scenario_env << "' (expected one of:";
      for (const auto & n : xrl::scenario_names()) std::cerr << ' ' << n;
      std::cerr << ")\n";
      return kExitUsage;
    }
    env0 = scenario->env0;
    registry = xrl::scenario_registry(scenario_env);
  }

  xrl::StepBudget budget;
  budget.max_steps = max_steps;
  xrl::ExecutionTrace trace = xrl::simulate(loaded->doc, env0, registry, budget);
  std::cout << (trace_format == "json" ? xrl::trace_to_json(trace) + "\n"
                                       : xrl::trace_to_text(trace));
  return trace.outcome == xrl::Outcome::Completed ? kExitOk : kExitSimFault;
}

int cmd_convert(const std::string & path, const std::string & to, bool json)
{
  if (to == "gax") {
    int code = kExitOk;
    auto loaded = load_document(path, json, std::cerr, code);
    if (!loaded) return code;
    if (int rc = require_clean(*loaded, path, json); rc != kExitOk) return rc;
    std::cout << xrl::export_gax(loaded->doc);
    return kExitOk;
  }
  // to == "xrl": the input is a GAX file.
  auto source = read_file(path);
  if (!source) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return kExitUsage;
  }
  xrl::ImportResult imported = xrl::import_gax(*source);
  if (!imported.ok()) {
    print_diags(with_path(std::move(imported.diagnostics), path), json, std::cerr);
    return kExitParse;
  }
  std::cout << xrl::format_canonical(*imported.document);
  return kExitOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"XRL process toolchain: parse, validate, lint, format, graph, dry-run, "
               "and convert robotic process documents"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string path, graph_format = "dot", scenario_env, trace_format = "text", to;
  int max_steps = 10000;
  bool json = false, write = false;

  auto add_path = [&path](CLI::App * cmd) {
    cmd->add_option("path", path, "XRL document")->required();
  };

  CLI::App * validate = app.add_subcommand("validate", "Check a document against the rule set");
  add_path(validate);
  validate->add_flag("--json", json, "diagnostics as JSON");

  CLI::App * lint = app.add_subcommand("lint", "Readability metrics and warnings");
  add_path(lint);
  lint->add_flag("--json", json, "report and diagnostics as JSON");

  CLI::App * fmt = app.add_subcommand("fmt", "Canonically format a document");
  add_path(fmt);
  fmt->add_flag("--write", write, "rewrite the file in place");
  fmt->add_flag("--json", json, "diagnostics as JSON");

  CLI::App * graph = app.add_subcommand("graph", "Export the process graph");
  add_path(graph);
  graph->add_option("--format", graph_format, "dot or mermaid")
    ->check(CLI::IsMember({"dot", "mermaid"}));
  graph->add_flag("--json", json, "diagnostics as JSON");

  CLI::App * run = app.add_subcommand("run", "Dry-run a document in the virtual environment");
  add_path(run);
  run->add_option("--scenario-env", scenario_env, "bundled scenario environment to pre-seed");
  run->add_option("--max-steps", max_steps, "step budget")->check(CLI::PositiveNumber);
  run->add_option("--trace", trace_format, "text or json")
    ->check(CLI::IsMember({"text", "json"}));
  run->add_flag("--json", json, "diagnostics as JSON");

  CLI::App * convert = app.add_subcommand("convert", "Convert between XRL and GAX");
  add_path(convert);
  convert->add_option("--to", to, "gax or xrl")
    ->required()
    ->check(CLI::IsMember({"gax", "xrl"}));
  convert->add_flag("--json", json, "diagnostics as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    std::ostringstream help;
    int rc = app.exit(e, help, help);
    std::cerr << help.str();
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(path, json);
    if (app.got_subcommand(lint)) return cmd_lint(path, json);
    if (app.got_subcommand(fmt)) return cmd_fmt(path, write, json);
    if (app.got_subcommand(graph)) return cmd_graph(path, graph_format, json);
    if (app.got_subcommand(run))
      return cmd_run(path, scenario_env, max_steps, trace_format, json);
    if (app.got_subcommand(convert)) return cmd_convert(path, to, json);
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

// xrl/sim.cpp - Virtual desktop environment, builtin handlers, dry-run engine
#include "xrl/sim.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "xrl/hash.hpp"

namespace xrl
{

namespace
{

std::string escape_line(const std::string & s)
{
  std::string out;
  for (char c : s) {
    if (c == '\\')
      out += "\\\\";
    else if (c == '\n')
      out += "\\n";
    else
      out.push_back(c);
  }
  return out;
}

}  // namespace

std::string env_serialize(const VirtualEnv & env)
{
  std::ostringstream out;
  out << "clipboard=" << escape_line(env.clipboard) << '\n';
  out << "focus=" << (env.focused_window ? escape_line(*env.focused_window) : "-") << '\n';
  for (const auto & [path, content] : env.files)
    out << "file " << escape_line(path) << '=' << escape_line(content) << '\n';
  for (const auto & [window, fields] : env.windows)
    for (const auto & [field, value] : fields)
      out << "window " << escape_line(window) << '.' << escape_line(field) << '='
          << escape_line(value) << '\n';
  for (const auto & [key, value] : env.scratch)
    out << "scratch " << escape_line(key) << '=' << escape_line(value) << '\n';
  for (std::size_t i = 0; i < env.sent_messages.size(); ++i) {
    const Message & m = env.sent_messages[i];
    out << "sent " << i + 1 << " to=" << escape_line(m.to)
        << " subject=" << escape_line(m.subject) << " body=" << escape_line(m.body) << '\n';
  }
  return out.str();
}

std::string env_digest(const VirtualEnv & env)
{
  return to_hex16(fnv1a64(env_serialize(env)));
}

HandlerOutcome HandlerOutcome::proceed(VirtualEnv e, Guid n)
{
  HandlerOutcome out;
  out.env = std::move(e);
  out.next = std::move(n);
  return out;
}

HandlerOutcome HandlerOutcome::terminal(VirtualEnv e)
{
  HandlerOutcome out;
  out.env = std::move(e);
  return out;
}

HandlerOutcome HandlerOutcome::failure(std::string message)
{
  HandlerOutcome out;
  out.fault = std::move(message);
  return out;
}

void HandlerRegistry::register_handler(ActionHandler h)
{
  if (h.element_name.empty())
    throw std::invalid_argument("handler element name must not be empty");
  auto [it, inserted] = handlers_.emplace(h.element_name, std::move(h));
  (void)it;
  if (!inserted)
    throw std::invalid_argument("handler for element '" + it->first +
                                "' is already registered");
}

const ActionHandler * HandlerRegistry::find(std::string_view element_name) const
{
  auto it = handlers_.find(element_name);
  return it == handlers_.end() ? nullptr : &it->second;
}

std::vector<std::string> HandlerRegistry::element_names() const
{
  std::vector<std::string> names;
  names.reserve(handlers_.size());
  for (const auto & [name, h] : handlers_) names.push_back(name);
  return names;
}

HandlerOutcome choose_successor(const ResolvedAction & action, VirtualEnv env,
                                const std::vector<SuccessorInfo> & successors)
{
  if (successors.empty()) return HandlerOutcome::terminal(std::move(env));
  const ScalarValue * target = action.params.find("goto");
  if (target && !(target->type() == ScalarType::Text && target->as_text().empty())) {
    std::string wanted = target->to_text();
    for (const auto & s : successors)
      if (s.name == wanted) return HandlerOutcome::proceed(std::move(env), s.id);
    return HandlerOutcome::failure("goto target '" + wanted +
                                   "' does not name any successor node");
  }
  return HandlerOutcome::proceed(std::move(env), successors.front().id);
}

namespace
{

std::string param_text(const ResolvedAction & a, const std::string & name)
{
  const ScalarValue * v = a.params.find(name);
  return v ? v->to_text() : std::string();
}

using Successors = std::vector<SuccessorInfo>;

HandlerOutcome h_launch(const ResolvedAction & a, const VirtualEnv & env0, const Successors & s)
{
  VirtualEnv env = env0;
  std::string app = param_text(a, "app");
  env.windows.try_emplace(app);  // keeps fields of an already-open window
  env.focused_window = app;
  return choose_successor(a, std::move(env), s);
}

HandlerOutcome h_focus(const ResolvedAction & a, const VirtualEnv & env0, const Successors & s)
{
  VirtualEnv env = env0;
  std::string window = param_text(a, "window");
  if (!env.windows.count(window))
    return HandlerOutcome::failure("window '" + window + "' is not open");
  env.focused_window = window;
  return choose_successor(a, std::move(env), s);
}

HandlerOutcome h_click(const ResolvedAction & a, const VirtualEnv & env0, const Successors & s)
{
  VirtualEnv env = env0;
  if (!env.focused_window) return HandlerOutcome::failure("no focused window");
  env.windows[*env.focused_window][param_text(a, "target")] = "clicked";
  return choose_successor(a, std::move(env), s);
}

HandlerOutcome h_type_text(const ResolvedAction & a, const VirtualEnv & env0,
                           const Successors & s)
{
  VirtualEnv env = env0;
  if (!env.focused_window) return HandlerOutcome::failure("no focused window");
  env.windows[*env.focused_window][param_text(a, "target")] = param_text(a, "value");
  return choose_successor(a, std::move(env), s);
}

HandlerOutcome h_read_value(const ResolvedAction & a, const VirtualEnv & env0,
                            const Successors & s)
{
  VirtualEnv env = env0;
  if (!env.focused_window) return HandlerOutcome::failure("no focused window");
  const auto & fields = env.windows[*env.focused_window];
  std::string target = param_text(a, "target");
  auto it = fields.find(target);
  if (it == fields.end())
    return HandlerOutcome::failure("field '" + target + "' has no value in window '" +
                                   *env.focused_window + "'");
  env.scratch["_last_read"] = it->second;
  return choose_successor(a, std::move(env), s);
}

HandlerOutcome h_set_clipboard(const ResolvedAction & a, const VirtualEnv & env0,
                               const Successors & s)
{
  VirtualEnv env = env0;
  std::string value = param_text(a, "value");
  if (value == "$last_read") {
    auto it = env.scratch.find("_last_read");
    if (it == env.scratch.end())
      return HandlerOutcome::failure("no value has been read yet ($last_read is empty)");
    value = it->second;
  }
  env.clipboard = std::move(value);
  return choose_successor(a, std::move(env), s);
}

HandlerOutcome h_get_clipboard(const ResolvedAction & a, const VirtualEnv & env0,
                               const Successors & s)
{
  VirtualEnv env = env0;
  if (!env.focused_window) return HandlerOutcome::failure("no focused window");
  env.windows[*env.focused_window][param_text(a, "target")] = env.clipboard;
  return choose_successor(a, std::move(env), s);
}

HandlerOutcome h_navigate(const ResolvedAction & a, const VirtualEnv & env0,
                          const Successors & s)
{
  VirtualEnv env = env0;
  std::string url = param_text(a, "url");
  env.windows.try_emplace(url);
  env.focused_window = url;
  return choose_successor(a, std::move(env), s);
}

HandlerOutcome h_send_message(const ResolvedAction & a, const VirtualEnv & env0,
                              const Successors & s)
{
  VirtualEnv env = env0;
  Message m;
  m.to = param_text(a, "to");
  m.subject = param_text(a, "subject");
  m.body = param_text(a, "body");
  if (m.body == "$clipboard") m.body = env.clipboard;
  env.sent_messages.push_back(std::move(m));
  return choose_successor(a, std::move(env), s);
}

HandlerOutcome h_wait(const ResolvedAction & a, const VirtualEnv & env0, const Successors & s)
{
  return choose_successor(a, VirtualEnv(env0), s);
}

}  // namespace

HandlerRegistry builtin_handlers()
{
  HandlerRegistry registry;
  registry.register_handler({"launch", h_launch});
  registry.register_handler({"focus", h_focus});
  registry.register_handler({"click", h_click});
  registry.register_handler({"type_text", h_type_text});
  registry.register_handler({"read_value", h_read_value});
  registry.register_handler({"set_clipboard", h_set_clipboard});
  registry.register_handler({"get_clipboard", h_get_clipboard});
  registry.register_handler({"navigate", h_navigate});
  registry.register_handler({"send_message", h_send_message});
  registry.register_handler({"wait", h_wait});
  return registry;
}

namespace
{

ExecutionTrace fault_before_start(std::string message, const Guid & node)
{
  ExecutionTrace t;
  t.outcome = Outcome::Faulted;
  t.fault_message = std::move(message);
  t.fault_node = node;
  return t;
}

}  // namespace

ExecutionTrace run_graph(const ProcessGraph & g, const VirtualEnv & env0,
                         const HandlerRegistry & registry, StepBudget budget)
{
  // Missing handlers are reported before step one.
  for (const auto & v : g.vertices) {
    if (!registry.find(v.action.element_name))
      return fault_before_start(
        "no handler registered for element '" + v.action.element_name + "'", v.id);
  }
  if (g.index_of(g.start) < 0)
    return fault_before_start("start node has no flow entry", g.start);

  ExecutionTrace trace;
  trace.final_env = env0;
  Guid current = g.start;
  int max_steps = std::max(1, budget.max_steps);

  for (int step = 1; step <= max_steps; ++step) {
    const Vertex * vertex = g.find(current);
    if (!vertex) {
      trace.outcome = Outcome::Faulted;
      trace.fault_message = "no flow entry for node '" + current.text() + "'";
      trace.fault_node = current;
      return trace;
    }
    std::vector<SuccessorInfo> successors;
    for (const auto & s : vertex->successors) {
      const Vertex * sv = g.find(s);
      if (sv) successors.push_back({sv->id, sv->name});
    }
    const ActionHandler * handler = registry.find(vertex->action.element_name);
    HandlerOutcome outcome = handler->apply(vertex->action, trace.final_env, successors);
    if (outcome.fault) {
      trace.outcome = Outcome::Faulted;
      trace.fault_message = *outcome.fault;
      trace.fault_node = current;
      return trace;
    }
    trace.final_env = std::move(outcome.env);

    StepRecord record;
    record.ordinal = step;
    record.node = current;
    record.element_name = vertex->action.element_name;
    record.params = vertex->action.params;
    record.env_digest = xrl::env_digest(trace.final_env);
    trace.steps.push_back(std::move(record));

    if (!outcome.next) {
      if (current == g.end) {
        trace.outcome = Outcome::Completed;
      } else {
        trace.outcome = Outcome::Faulted;
        trace.fault_message = "process terminated at '" + current.text() +
                              "' before reaching the end node";
        trace.fault_node = current;
      }
      return trace;
    }
    bool legal = std::any_of(successors.begin(), successors.end(),
                             [&](const SuccessorInfo & s) { return s.id == *outcome.next; });
    if (!legal) {
      trace.outcome = Outcome::Faulted;
      trace.fault_message = "handler chose a successor that is not referenced by '" +
                            current.text() + "'";
      trace.fault_node = current;
      return trace;
    }
    current = *outcome.next;
  }
  trace.outcome = Outcome::BudgetExhausted;
  return trace;
}

ExecutionTrace simulate(const XrlDocument & doc, const VirtualEnv & env0,
                        const HandlerRegistry & registry, StepBudget budget)
{
  GraphOutcome built = build_graph(doc);
  if (!built.ok())
    return fault_before_start("document does not resolve: " +
                                (built.diagnostics.empty() ? std::string("unknown error")
                                                           : built.diagnostics.front().message),
                              doc.start.value);
  GraphOutcome expanded = expand_composites_in_graph(*built.graph, doc.elements);
  if (!expanded.ok())
    return fault_before_start(
      "composite expansion failed: " + (expanded.diagnostics.empty()
                                          ? std::string("unknown error")
                                          : expanded.diagnostics.front().message),
      doc.start.value);
  return run_graph(*expanded.graph, env0, registry, budget);
}

const char * outcome_name(Outcome o)
{
  switch (o) {
    case Outcome::Completed: return "completed";
    case Outcome::BudgetExhausted: return "budget_exhausted";
    case Outcome::Faulted: return "faulted";
  }
  return "?";
}

std::string trace_to_text(const ExecutionTrace & t)
{
  std::ostringstream out;
  for (const auto & s : t.steps) {
    out << s.ordinal << ' ' << s.node.text() << ' ' << s.element_name;
    if (!s.params.empty()) {
      out << ' ';
      bool first = true;
      for (const auto & e : s.params.entries()) {
        if (!first) out << ',';
        out << e.name << '=' << e.value.to_text();
        first = false;
      }
    }
    out << " digest=" << s.env_digest << '\n';
  }
  switch (t.outcome) {
    case Outcome::Completed: out << "outcome: completed\n"; break;
    case Outcome::BudgetExhausted:
      out << "outcome: budget_exhausted after " << t.steps.size() << " steps\n";
      break;
    case Outcome::Faulted:
      out << "outcome: faulted at " << t.fault_node.text() << ": " << t.fault_message << '\n';
      break;
  }
  return out.str();
}

namespace
{

nlohmann::json scalar_to_json(const ScalarValue & v)
{
  switch (v.type()) {
    case ScalarType::Null: return nullptr;
    case ScalarType::Bool: return v.as_bool();
    case ScalarType::Int: return v.as_int();
    case ScalarType::Real: return v.as_real();
    case ScalarType::Text: return v.as_text();
  }
  return nullptr;
}

}  // namespace

std::string trace_to_json(const ExecutionTrace & t)
{
  nlohmann::json steps = nlohmann::json::array();
  for (const auto & s : t.steps) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto & e : s.params.entries()) params[e.name] = scalar_to_json(e.value);
    steps.push_back({{"ordinal", s.ordinal},
                     {"node", s.node.text()},
                     {"element", s.element_name},
                     {"params", params},
                     {"digest", s.env_digest}});
  }
  nlohmann::json outcome = {{"status", outcome_name(t.outcome)}};
  if (t.outcome == Outcome::Faulted) {
    outcome["message"] = t.fault_message;
    outcome["node"] = t.fault_node.text();
  }
  nlohmann::json j = {{"steps", steps}, {"outcome", outcome}};
  return j.dump(2);
}

}  // namespace xrl

// xrl/sim.hpp - Deterministic dry-run engine over a virtual desktop environment
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xrl/graph.hpp"
#include "xrl/model.hpp"

namespace xrl
{

struct Message
{
  std::string to;
  std::string subject;
  std::string body;
  bool operator==(const Message & o) const = default;
};

/// Simulated desktop state. All containers are deterministically ordered;
/// `scratch` holds dataflow cells such as "_last_read".
struct VirtualEnv
{
  std::map<std::string, std::map<std::string, std::string>> windows;
  std::string clipboard;
  std::map<std::string, std::string> files;
  std::optional<std::string> focused_window;
  std::vector<Message> sent_messages;
  std::map<std::string, std::string> scratch;

  bool operator==(const VirtualEnv & o) const = default;
};

/// Canonical line-oriented serialization; the digest is FNV-1a 64 over it,
/// rendered as 16 lowercase hex digits.
std::string env_serialize(const VirtualEnv & env);
std::string env_digest(const VirtualEnv & env);

struct SuccessorInfo
{
  Guid id;
  std::string name;  // node name, matched against the `goto` parameter
};

struct HandlerOutcome
{
  VirtualEnv env;
  std::optional<Guid> next;  // nullopt = terminal
  std::optional<std::string> fault;

  static HandlerOutcome proceed(VirtualEnv e, Guid n);
  static HandlerOutcome terminal(VirtualEnv e);
  static HandlerOutcome failure(std::string message);
};

/// Pure function of (action, env, successors); no clock, no randomness.
struct ActionHandler
{
  std::string element_name;
  std::function<HandlerOutcome(const ResolvedAction &, const VirtualEnv &,
                               const std::vector<SuccessorInfo> &)>
    apply;
};

class HandlerRegistry
{
public:
  /// Throws std::invalid_argument on duplicate element names.
  void register_handler(ActionHandler h);
  const ActionHandler * find(std::string_view element_name) const;
  std::size_t size() const { return handlers_.size(); }
  std::vector<std::string> element_names() const;

private:
  std::map<std::string, ActionHandler, std::less<>> handlers_;
};

/// The ten basic elements: launch, focus, click, type_text, read_value,
/// set_clipboard, get_clipboard, navigate, send_message, wait.
HandlerRegistry builtin_handlers();

/// Default successor policy shared by the builtin handlers: a non-empty
/// `goto` parameter selects the successor with that node name, otherwise
/// the first successor; no successors means terminal.
HandlerOutcome choose_successor(const ResolvedAction & action, VirtualEnv env,
                                const std::vector<SuccessorInfo> & successors);

struct StepBudget
{
  int max_steps = 10000;
};

struct StepRecord
{
  int ordinal = 0;  // dense from 1
  Guid node;
  std::string element_name;
  ParamMap params;
  std::string env_digest;
};

enum class Outcome { Completed, BudgetExhausted, Faulted };

struct ExecutionTrace
{
  std::vector<StepRecord> steps;
  Outcome outcome = Outcome::Faulted;
  std::string fault_message;  // set when faulted
  Guid fault_node;            // set when faulted
  VirtualEnv final_env;
};

/// Dry-run a validated document: composites are expanded, handlers are
/// pre-checked, then execution walks successor choices from start until the
/// end node completes, a handler faults, or the budget runs out. Identical
/// inputs produce identical traces.
ExecutionTrace simulate(const XrlDocument & doc, const VirtualEnv & env0,
                        const HandlerRegistry & registry, StepBudget budget = {});

/// Engine core over an already-expanded graph.
ExecutionTrace run_graph(const ProcessGraph & g, const VirtualEnv & env0,
                         const HandlerRegistry & registry, StepBudget budget = {});

std::string trace_to_text(const ExecutionTrace & t);
std::string trace_to_json(const ExecutionTrace & t);
const char * outcome_name(Outcome o);

}  // namespace xrl

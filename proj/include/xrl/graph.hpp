// xrl/graph.hpp - Process graph construction, analysis, composite expansion,
// and flowchart exporters (DOT, Mermaid)
#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xrl/diagnostic.hpp"
#include "xrl/model.hpp"

namespace xrl
{

struct Vertex
{
  Guid id;
  std::string name;
  ResolvedAction action;
  std::vector<Guid> successors;  // declared order; drives "first successor"
};

struct ProcessGraph
{
  std::vector<Vertex> vertices;  // flow declaration order
  Guid start;
  Guid end;

  int index_of(const Guid & id) const;             // -1 when absent
  const Vertex * find(const Guid & id) const;
  std::set<std::pair<Guid, Guid>> edges() const;   // deduplicated pair view
  std::size_t edge_count() const { return edges().size(); }
};

struct GraphOutcome
{
  std::optional<ProcessGraph> graph;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return graph.has_value(); }
};

/// One vertex per flow entry; edge (A,B) iff B is in A's references_out and
/// B itself has a flow entry. Actions are resolved against the element
/// definitions; resolution failures propagate as diagnostics (they cannot
/// occur after clean validation).
GraphOutcome build_graph(const XrlDocument & doc);

struct TraversalReport
{
  std::set<Guid> reachable;      // forward closure from start
  std::set<Guid> co_reachable;   // backward closure from end
  std::vector<std::vector<Guid>> cycles;  // elementary cycles, canonical rotation
  std::optional<std::vector<Guid>> topological_order;  // present iff acyclic
};

TraversalReport analyze(const ProcessGraph & g);

/// Replace every composite-action vertex with the linear chain of its
/// expanded basic actions. Incoming edges attach to the chain head,
/// outgoing to the tail; a zero-step composite is bypassed. Generated
/// vertices get deterministic Guids derived from (parent Guid, step index).
GraphOutcome expand_composites_in_graph(const ProcessGraph & g,
                                        const std::vector<ElementDef> & elements);

/// Deterministic Guid for expansion-generated vertices: two FNV-1a 64-bit
/// passes over "<parent>/<index>" with distinct offset bases, rendered in
/// 8-4-4-4-12 form.
Guid derive_guid(const Guid & parent, int step_index);

std::string export_dot(const ProcessGraph & g);
std::string export_mermaid(const ProcessGraph & g);

}  // namespace xrl

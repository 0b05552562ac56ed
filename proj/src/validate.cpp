// xrl/validate.cpp - Fixed semantic rule set over a parsed document
#include "xrl/validate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "xrl/guid.hpp"
#include "xrl/resolve.hpp"

namespace xrl
{

namespace
{

struct Checker
{
  const XrlDocument & doc;
  std::vector<Diagnostic> out;

  std::set<std::string> declared_ids;   // node id texts, including invalid ones
  std::map<std::string, int> flow_of;   // node id text -> first flow index
  bool graph_integrity = true;          // false once XRL003/XRL004 fired

  void emit(std::string_view code, std::string message, SourceLocation loc)
  {
    out.push_back(make_diag(code, std::move(message), loc));
  }

  void run()
  {
    collect();
    check_guids();        // XRL001
    check_duplicates();   // XRL002, XRL005
    check_boundaries();   // XRL003, XRL007
    check_references();   // XRL004, XRL006
    check_reachability(); // XRL008, XRL009, XRL101
    check_actions();      // XRL010, XRL011, XRL012
    check_unused();       // XRL105
    sort_diagnostics(out);
  }

  void collect()
  {
    for (const auto & n : doc.nodes) declared_ids.insert(n.id.text());
    for (std::size_t i = 0; i < doc.flow.size(); ++i)
      flow_of.emplace(doc.flow[i].node.value.text(), static_cast<int>(i));
  }

  void check_guid(const Guid & g, SourceLocation loc, const std::string & what)
  {
    if (g.is_valid()) return;
    emit("XRL001", "invalid GUID '" + g.text() + "' in " + what + ": " +
                     guid_format_error(g.text()),
         loc);
  }

  void check_guids()
  {
    for (const auto & n : doc.nodes)
      check_guid(n.id, n.id_loc.line ? n.id_loc : n.loc, "node '" + n.name + "'");
    check_guid(doc.start.value, doc.start.loc, "start");
    check_guid(doc.end.value, doc.end.loc, "end");
    for (const auto & f : doc.flow) {
      check_guid(f.node.value, f.node.loc, "flow node");
      for (const auto & r : f.references_in) check_guid(r.value, r.loc, "references_in");
      for (const auto & r : f.references_out) check_guid(r.value, r.loc, "references_out");
    }
  }

  void check_duplicates()
  {
    std::set<std::string> names, ids, anchors;
    for (const auto & n : doc.nodes) {
      if (!names.insert(n.name).second)
        emit("XRL002", "duplicate node name '" + n.name + "'", n.loc);
      if (!ids.insert(n.id.text()).second)
        emit("XRL002", "duplicate node id '" + n.id.text() + "'", n.loc);
      if (!n.anchor.empty() && !anchors.insert(n.anchor).second)
        emit("XRL002", "duplicate anchor '" + n.anchor + "'", n.loc);
    }
    // Element anchors share the namespace.
    for (const auto & e : doc.elements) {
      if (!e.anchor.empty() && !anchors.insert(e.anchor).second)
        emit("XRL002", "duplicate anchor '" + e.anchor + "'", e.loc);
    }

    std::set<std::string> seen;
    for (const auto & f : doc.flow) {
      if (!seen.insert(f.node.value.text()).second)
        emit("XRL005", "node '" + f.node.value.text() + "' appears in flow more than once",
             f.loc);
    }
  }

  void check_boundaries()
  {
    auto check = [&](const GuidRef & ref, const char * what) {
      if (!ref.value.is_valid()) return;  // XRL001 already covers it
      if (!declared_ids.count(ref.value.text())) {
        emit("XRL003", std::string(what) + " '" + ref.value.text() + "' is not a declared node",
             ref.loc);
        graph_integrity = false;
      }
    };
    check(doc.start, "start");
    check(doc.end, "end");

    for (const auto & f : doc.flow) {
      if (f.node.value == doc.start.value && !f.references_in.empty())
        emit("XRL007", "start node has nonempty references_in", f.loc);
      if (f.node.value == doc.end.value && !f.references_out.empty())
        emit("XRL007", "end node has nonempty references_out", f.loc);
    }
  }

  void check_references()
  {
    auto check_declared = [&](const GuidRef & ref, const char * what) {
      if (!ref.value.is_valid()) return;
      if (!declared_ids.count(ref.value.text())) {
        emit("XRL004",
             std::string(what) + " references undeclared node '" + ref.value.text() + "'",
             ref.loc);
        graph_integrity = false;
      }
    };
    for (const auto & f : doc.flow) {
      check_declared(f.node, "flow entry");
      for (const auto & r : f.references_in) check_declared(r, "references_in");
      for (const auto & r : f.references_out) check_declared(r, "references_out");
    }

    // Symmetry is checked only against nodes that have a flow entry; a
    // missing counterpart entry is a different defect (XRL004/XRL105).
    for (const auto & f : doc.flow) {
      for (const auto & r : f.references_out) {
        auto it = flow_of.find(r.value.text());
        if (it == flow_of.end()) continue;
        const FlowEntry & target = doc.flow[static_cast<std::size_t>(it->second)];
        bool mirrored = std::any_of(
          target.references_in.begin(), target.references_in.end(),
          [&](const GuidRef & back) { return back.value == f.node.value; });
        if (!mirrored)
          emit("XRL006",
               "'" + r.value.text() + "' is in references_out of '" + f.node.value.text() +
                 "' but the reverse references_in entry is missing",
               r.loc);
      }
      for (const auto & r : f.references_in) {
        auto it = flow_of.find(r.value.text());
        if (it == flow_of.end()) continue;
        const FlowEntry & source = doc.flow[static_cast<std::size_t>(it->second)];
        bool mirrored = std::any_of(
          source.references_out.begin(), source.references_out.end(),
          [&](const GuidRef & fwd) { return fwd.value == f.node.value; });
        if (!mirrored)
          emit("XRL006",
               "'" + r.value.text() + "' is in references_in of '" + f.node.value.text() +
                 "' but the reverse references_out entry is missing",
               r.loc);
      }
    }
  }

  // Adjacency over the union of out-edges and reversed in-edges, so a
  // single asymmetry (already an XRL006) cannot fake unreachability.
  std::vector<std::vector<int>> union_adjacency(bool reversed) const
  {
    std::vector<std::vector<int>> adj(doc.flow.size());
    auto add = [&](int from, int to) {
      auto & list = adj[static_cast<std::size_t>(reversed ? to : from)];
      int v = reversed ? from : to;
      if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
    };
    for (std::size_t i = 0; i < doc.flow.size(); ++i) {
      for (const auto & r : doc.flow[i].references_out) {
        auto it = flow_of.find(r.value.text());
        if (it != flow_of.end()) add(static_cast<int>(i), it->second);
      }
      for (const auto & r : doc.flow[i].references_in) {
        auto it = flow_of.find(r.value.text());
        if (it != flow_of.end()) add(it->second, static_cast<int>(i));
      }
    }
    return adj;
  }

  static std::vector<bool> closure(const std::vector<std::vector<int>> & adj, int from)
  {
    std::vector<bool> seen(adj.size(), false);
    if (from < 0) return seen;
    std::vector<int> stack{from};
    seen[static_cast<std::size_t>(from)] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
      }
    }
    return seen;
  }

  void check_reachability()
  {
    if (doc.flow.empty()) return;
    if (!graph_integrity) return;  // undeclared boundary/reference: closure is meaningless

    auto idx_of = [&](const Guid & g) {
      auto it = flow_of.find(g.text());
      return it == flow_of.end() ? -1 : it->second;
    };
    auto fwd = union_adjacency(false);
    auto bwd = union_adjacency(true);
    auto reachable = closure(fwd, idx_of(doc.start.value));
    auto co_reachable = closure(bwd, idx_of(doc.end.value));

    for (std::size_t i = 0; i < doc.flow.size(); ++i) {
      if (!reachable[i])
        emit("XRL008",
             "node '" + doc.flow[i].node.value.text() + "' is unreachable from start",
             doc.flow[i].loc);
      if (!co_reachable[i])
        emit("XRL009", "end is unreachable from node '" + doc.flow[i].node.value.text() + "'",
             doc.flow[i].loc);
    }

    // Cycle warning: any vertex on a cycle in the union graph.
    std::vector<int> color(doc.flow.size(), 0);
    std::vector<int> stack, cycle_start;
    bool has_cycle = false;
    SourceLocation cycle_loc;
    std::function<void(int)> dfs = [&](int v) {
      color[static_cast<std::size_t>(v)] = 1;
      for (int w : fwd[static_cast<std::size_t>(v)]) {
        if (has_cycle) return;
        if (color[static_cast<std::size_t>(w)] == 0) {
          dfs(w);
        } else if (color[static_cast<std::size_t>(w)] == 1) {
          has_cycle = true;
          cycle_loc = doc.flow[static_cast<std::size_t>(w)].loc;
          return;
        }
      }
      color[static_cast<std::size_t>(v)] = 2;
    };
    for (std::size_t i = 0; i < doc.flow.size() && !has_cycle; ++i)
      if (color[i] == 0) dfs(static_cast<int>(i));
    if (has_cycle) emit("XRL101", "process flow contains a cycle", cycle_loc);
  }

  void check_actions()
  {
    for (const auto & f : doc.flow) {
      ResolveOutcome r = resolve_action(f.action, doc.elements);
      out.insert(out.end(), r.diagnostics.begin(), r.diagnostics.end());
    }
    // Step-level checks for composites: element existence and override keys.
    // Required-parameter completion is use-site dependent and is checked by
    // expansion.
    for (const auto & e : doc.elements) {
      if (!e.steps) continue;
      for (const auto & step : *e.steps) {
        const ElementDef * target = doc.find_element(step.element_anchor);
        if (!target) {
          emit("XRL010",
               "step references undefined element '" + step.element_anchor + "'",
               step.loc);
          continue;
        }
        for (const auto & ov : step.overrides.entries()) {
          if (!target->params.contains(ov.name))
            emit("XRL011",
                 "override key '" + ov.name + "' is not declared by element '" +
                   target->name + "'",
                 ov.loc.line ? ov.loc : step.loc);
        }
      }
    }
  }

  void check_unused()
  {
    for (const auto & n : doc.nodes) {
      if (!flow_of.count(n.id.text()))
        emit("XRL105", "declared node '" + n.name + "' does not appear in flow", n.loc);
    }
  }
};

}  // namespace

std::vector<Diagnostic> validate_document(const XrlDocument & doc)
{
  Checker checker{doc, {}, {}, {}, true};
  checker.run();
  return checker.out;
}

}  // namespace xrl

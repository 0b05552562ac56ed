// xrl/graph.cpp - Process graph: build, analyze, expand composites, export
#include "xrl/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

#include "xrl/hash.hpp"
#include "xrl/resolve.hpp"

namespace xrl
{

int ProcessGraph::index_of(const Guid & id) const
{
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return static_cast<int>(i);
  return -1;
}

const Vertex * ProcessGraph::find(const Guid & id) const
{
  int i = index_of(id);
  return i < 0 ? nullptr : &vertices[static_cast<std::size_t>(i)];
}

std::set<std::pair<Guid, Guid>> ProcessGraph::edges() const
{
  std::set<std::pair<Guid, Guid>> out;
  for (const auto & v : vertices)
    for (const auto & s : v.successors)
      if (index_of(s) >= 0) out.emplace(v.id, s);
  return out;
}

GraphOutcome build_graph(const XrlDocument & doc)
{
  GraphOutcome out;
  ProcessGraph g;
  g.start = doc.start.value;
  g.end = doc.end.value;

  std::vector<Diagnostic> diags;
  for (const auto & f : doc.flow) {
    ResolveOutcome r = resolve_action(f.action, doc.elements);
    if (!r.ok()) {
      diags.insert(diags.end(), r.diagnostics.begin(), r.diagnostics.end());
      continue;
    }
    Vertex v;
    v.id = f.node.value;
    const NodeDecl * decl = doc.find_node(f.node.value);
    v.name = decl ? decl->name : f.node.value.text();
    v.action = std::move(*r.action);
    for (const auto & ref : f.references_out) {
      bool dup = std::any_of(v.successors.begin(), v.successors.end(),
                             [&](const Guid & s) { return s == ref.value; });
      // Successors keep declaration order; edges to nodes without a flow
      // entry are dropped (validation reports them separately).
      if (!dup && doc.find_flow(ref.value)) v.successors.push_back(ref.value);
    }
    g.vertices.push_back(std::move(v));
  }
  if (!diags.empty()) {
    sort_diagnostics(diags);
    out.diagnostics = std::move(diags);
    return out;
  }
  out.graph = std::move(g);
  return out;
}

namespace
{

std::vector<std::vector<int>> adjacency(const ProcessGraph & g)
{
  std::vector<std::vector<int>> adj(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    for (const auto & s : g.vertices[i].successors) {
      int j = g.index_of(s);
      if (j >= 0) adj[i].push_back(j);
    }
  return adj;
}

std::set<Guid> closure(const ProcessGraph & g, const std::vector<std::vector<int>> & adj,
                       int from)
{
  std::set<Guid> seen;
  if (from < 0) return seen;
  std::vector<bool> visited(adj.size(), false);
  std::vector<int> stack{from};
  visited[static_cast<std::size_t>(from)] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    seen.insert(g.vertices[static_cast<std::size_t>(v)].id);
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!visited[static_cast<std::size_t>(w)]) {
        visited[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<std::vector<int>> reversed(const std::vector<std::vector<int>> & adj)
{
  std::vector<std::vector<int>> rev(adj.size());
  for (std::size_t i = 0; i < adj.size(); ++i)
    for (int j : adj[i]) rev[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
  return rev;
}

// Johnson's elementary-circuit enumeration. Each cycle starts at its
// smallest vertex index, which canonicalizes rotation; the cycle list is
// sorted lexicographically.
class CycleEnumerator
{
public:
  explicit CycleEnumerator(const std::vector<std::vector<int>> & adj) : adj_(adj)
  {
    n_ = static_cast<int>(adj.size());
    blocked_.assign(static_cast<std::size_t>(n_), false);
    block_map_.assign(static_cast<std::size_t>(n_), {});
  }

  std::vector<std::vector<int>> run()
  {
    for (root_ = 0; root_ < n_; ++root_) {
      std::fill(blocked_.begin(), blocked_.end(), false);
      for (auto & b : block_map_) b.clear();
      circuit(root_);
    }
    std::sort(cycles_.begin(), cycles_.end());
    return cycles_;
  }

private:
  const std::vector<std::vector<int>> & adj_;
  int n_ = 0;
  int root_ = 0;
  std::vector<bool> blocked_;
  std::vector<std::vector<int>> block_map_;
  std::vector<int> stack_;
  std::vector<std::vector<int>> cycles_;

  void unblock(int v)
  {
    blocked_[static_cast<std::size_t>(v)] = false;
    for (int w : block_map_[static_cast<std::size_t>(v)])
      if (blocked_[static_cast<std::size_t>(w)]) unblock(w);
    block_map_[static_cast<std::size_t>(v)].clear();
  }

  bool circuit(int v)
  {
    bool found = false;
    stack_.push_back(v);
    blocked_[static_cast<std::size_t>(v)] = true;
    for (int w : adj_[static_cast<std::size_t>(v)]) {
      if (w < root_) continue;  // only consider the subgraph induced by >= root
      if (w == root_) {
        cycles_.push_back(stack_);
        found = true;
      } else if (!blocked_[static_cast<std::size_t>(w)]) {
        if (circuit(w)) found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (int w : adj_[static_cast<std::size_t>(v)]) {
        if (w < root_) continue;
        auto & bm = block_map_[static_cast<std::size_t>(w)];
        if (std::find(bm.begin(), bm.end(), v) == bm.end()) bm.push_back(v);
      }
    }
    stack_.pop_back();
    return found;
  }
};

}  // namespace

TraversalReport analyze(const ProcessGraph & g)
{
  TraversalReport report;
  auto adj = adjacency(g);
  report.reachable = closure(g, adj, g.index_of(g.start));
  report.co_reachable = closure(g, reversed(adj), g.index_of(g.end));

  for (const auto & cycle : CycleEnumerator(adj).run()) {
    std::vector<Guid> ids;
    ids.reserve(cycle.size());
    for (int v : cycle) ids.push_back(g.vertices[static_cast<std::size_t>(v)].id);
    report.cycles.push_back(std::move(ids));
  }

  if (report.cycles.empty()) {
    // Kahn's algorithm with an index min-heap for a deterministic order.
    std::vector<int> in_degree(g.vertices.size(), 0);
    for (const auto & list : adj)
      for (int w : list) ++in_degree[static_cast<std::size_t>(w)];
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (std::size_t i = 0; i < in_degree.size(); ++i)
      if (in_degree[i] == 0) ready.push(static_cast<int>(i));
    std::vector<Guid> order;
    while (!ready.empty()) {
      int v = ready.top();
      ready.pop();
      order.push_back(g.vertices[static_cast<std::size_t>(v)].id);
      for (int w : adj[static_cast<std::size_t>(v)])
        if (--in_degree[static_cast<std::size_t>(w)] == 0) ready.push(w);
    }
    report.topological_order = std::move(order);
  }
  return report;
}

Guid derive_guid(const Guid & parent, int step_index)
{
  std::string seed = parent.text() + "/" + std::to_string(step_index);
  std::uint64_t hi = fnv1a64(seed, kFnvOffset);
  std::uint64_t lo = fnv1a64(seed, 0x9e3779b97f4a7c15ull);
  std::string hex = to_hex16(hi) + to_hex16(lo);
  std::string out = hex.substr(0, 8) + "-" + hex.substr(8, 4) + "-" + hex.substr(12, 4) + "-" +
                    hex.substr(16, 4) + "-" + hex.substr(20, 12);
  return *Guid::parse(out);
}

GraphOutcome expand_composites_in_graph(const ProcessGraph & g,
                                        const std::vector<ElementDef> & elements)
{
  GraphOutcome out;
  auto def_by_name = [&elements](const std::string & name) -> const ElementDef * {
    for (const auto & e : elements)
      if (e.name == name) return &e;
    return nullptr;
  };

  ProcessGraph result;
  result.start = g.start;
  result.end = g.end;

  // head/tail of the replacement chain per original vertex
  std::vector<Guid> head(g.vertices.size()), tail(g.vertices.size());
  std::vector<bool> bypassed(g.vertices.size(), false);
  std::vector<std::vector<Vertex>> chains(g.vertices.size());

  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const Vertex & v = g.vertices[i];
    const ElementDef * def = def_by_name(v.action.element_name);
    if (!def || !def->is_composite()) {
      Vertex copy = v;
      copy.successors.clear();
      chains[i].push_back(std::move(copy));
      head[i] = tail[i] = v.id;
      continue;
    }
    ExpandOutcome expanded = expand_composite(*def, v.action.params, elements);
    if (!expanded.ok()) {
      out.diagnostics = std::move(expanded.diagnostics);
      return out;
    }
    if (expanded.steps->empty()) {
      bypassed[i] = true;
      continue;
    }
    for (std::size_t s = 0; s < expanded.steps->size(); ++s) {
      Vertex step;
      step.id = derive_guid(v.id, static_cast<int>(s));
      step.name = v.name + "." + std::to_string(s + 1);
      step.action = (*expanded.steps)[s];
      chains[i].push_back(std::move(step));
    }
    head[i] = chains[i].front().id;
    tail[i] = chains[i].back().id;
  }

  // A bypassed vertex splices its single successor into incoming edges.
  std::function<std::optional<Guid>(int, std::size_t)> landing =
    [&](int idx, std::size_t depth) -> std::optional<Guid> {
    if (depth > g.vertices.size()) return std::nullopt;  // bypass cycle
    if (!bypassed[static_cast<std::size_t>(idx)]) return head[static_cast<std::size_t>(idx)];
    const Vertex & v = g.vertices[static_cast<std::size_t>(idx)];
    if (v.successors.size() != 1) return std::nullopt;
    int next = g.index_of(v.successors[0]);
    if (next < 0) return std::nullopt;
    return landing(next, depth + 1);
  };

  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (bypassed[i]) continue;
    // Chain-internal edges.
    for (std::size_t s = 0; s + 1 < chains[i].size(); ++s)
      chains[i][s].successors.push_back(chains[i][s + 1].id);
    // Original outgoing edges leave from the tail.
    Vertex & last = chains[i].back();
    for (const auto & succ : g.vertices[i].successors) {
      int j = g.index_of(succ);
      if (j < 0) continue;
      std::optional<Guid> target = landing(j, 0);
      if (!target) {
        out.diagnostics.push_back(make_diag(
          "XRL013",
          "zero-step composite at '" + g.vertices[static_cast<std::size_t>(j)].name +
            "' cannot be bypassed unambiguously",
          {1, 1}));
        return out;
      }
      last.successors.push_back(*target);
    }
    for (auto & vert : chains[i]) result.vertices.push_back(std::move(vert));
  }

  auto remap_boundary = [&](const Guid & boundary, bool is_start) -> std::optional<Guid> {
    int idx = g.index_of(boundary);
    if (idx < 0) return boundary;
    if (!bypassed[static_cast<std::size_t>(idx)])
      return is_start ? head[static_cast<std::size_t>(idx)]
                      : tail[static_cast<std::size_t>(idx)];
    return landing(idx, 0);
  };
  auto new_start = remap_boundary(g.start, true);
  auto new_end = remap_boundary(g.end, false);
  if (!new_start || !new_end) {
    out.diagnostics.push_back(
      make_diag("XRL013", "zero-step composite at a boundary cannot be bypassed", {1, 1}));
    return out;
  }
  result.start = *new_start;
  result.end = *new_end;
  out.graph = std::move(result);
  return out;
}

namespace
{

std::string dot_escape(const std::string & s)
{
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string mermaid_escape(const std::string & s)
{
  std::string out;
  for (char c : s) {
    if (c == '"')
      out += "#quot;";
    else
      out.push_back(c);
  }
  return out;
}

}  // namespace

std::string export_dot(const ProcessGraph & g)
{
  std::ostringstream out;
  out << "digraph process {\n";
  out << "  rankdir=TB;\n";
  for (const auto & v : g.vertices) {
    std::string label = dot_escape(v.name) + "\\n" + dot_escape(v.action.element_name);
    out << "  \"" << v.id.text() << "\" [label=\"" << label << "\"";
    if (v.id == g.start)
      out << ", shape=oval, style=bold";
    else if (v.id == g.end)
      out << ", shape=oval, peripheries=2";
    else
      out << ", shape=box";
    out << "];\n";
  }
  for (const auto & v : g.vertices)
    for (const auto & s : v.successors)
      if (g.index_of(s) >= 0)
        out << "  \"" << v.id.text() << "\" -> \"" << s.text() << "\";\n";
  out << "}\n";
  return out.str();
}

std::string export_mermaid(const ProcessGraph & g)
{
  std::ostringstream out;
  out << "flowchart TD\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const Vertex & v = g.vertices[i];
    std::string label = mermaid_escape(v.name) + "<br/>" + mermaid_escape(v.action.element_name);
    out << "  n" << i;
    if (v.id == g.start)
      out << "([\"" << label << "\"])";
    else if (v.id == g.end)
      out << "(((\"" << label << "\")))";
    else
      out << "[\"" << label << "\"]";
    out << '\n';
  }
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    for (const auto & s : g.vertices[i].successors) {
      int j = g.index_of(s);
      if (j >= 0) out << "  n" << i << " --> n" << j << '\n';
    }
  return out.str();
}

}  // namespace xrl

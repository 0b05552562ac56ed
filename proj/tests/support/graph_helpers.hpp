// tests/support/graph_helpers.hpp - Build ProcessGraph values from oracle graphs
#pragma once

#include <string>

#include "oracles.hpp"
#include "xrl/graph.hpp"

namespace xrl_test
{

inline xrl::Guid test_guid(int index)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "00000000-0000-4000-8000-%012x", index + 1);
  return *xrl::Guid::parse(buf);
}

inline xrl::ProcessGraph to_process_graph(const OracleGraph & g, int start = 0, int end = -1)
{
  xrl::ProcessGraph out;
  if (end < 0) end = g.n - 1;
  for (int i = 0; i < g.n; ++i) {
    xrl::Vertex v;
    v.id = test_guid(i);
    v.name = "v" + std::to_string(i);
    v.action.element_name = "wait";
    for (const auto & [a, b] : g.edges)
      if (a == i) v.successors.push_back(test_guid(b));
    out.vertices.push_back(std::move(v));
  }
  out.start = test_guid(start);
  out.end = test_guid(end);
  return out;
}

}  // namespace xrl_test

#pragma once

// Built-in instances used by tests, the CLI generator and the bench suite.

#include "cfvc/graph.hpp"
#include "cfvc/reduction.hpp"
#include "cfvc/verify.hpp"

namespace cfvc::fixtures {

Graph path(int n);
Graph cycle(int n);
Graph complete_bipartite(int left, int right);
Graph star(int leaves);

/// Non-monotonicity example: vertices v1, v2, v2', v3, u, v, v5, v6, v7, v8
/// (indices 0..9). u and v are false twins, as are v2 and v2'.
namespace fig1 {
inline constexpr Vertex v1 = 0, v2 = 1, v2p = 2, v3 = 3, u = 4, v = 5, v5 = 6, v6 = 7, v7 = 8, v8 = 9;
}
Graph fig1_graph();
/// fig1_graph() without u (9 vertices; later vertices shift down by one).
Graph fig1_minus_u();
/// A strong cfvc 3-coloring of fig1_graph() (labels 1,2,3 as colors 0,1,2).
Coloring fig1_coloring();

/// Six variables u..z, clauses {u,v,x}, {w,y}, {w,x,z}, {v,x,y,z}.
PositiveCnf sample_formula();

}  // namespace cfvc::fixtures

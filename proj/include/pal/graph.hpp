#pragma once
// Finite reflexive graphs with bitset adjacency rows, plus the path helpers
// the morphism layer is built on.  Path vertices are kept in path order
// ("canonical"): vertex i is adjacent to j iff |i-j| <= 1.
#include "pal/bits.hpp"
#include <vector>
#include <string>
#include <optional>
#include <cstdint>

namespace pal {

struct Graph {
    int n = 0;
    std::vector<Bits> adj; // reflexive + symmetric rows

    Graph() = default;
    explicit Graph(int n_);

    void add_edge(int i, int j);
    bool adjacent(int i, int j) const { return adj[i].test(j); }

    // non-loop edges as (i, j) with i < j
    std::vector<std::pair<int, int>> edge_list() const;
    int edge_count() const; // number of non-loop edges

    // |neighbourhood| - 1 (loops ignored): 0 or 1 on path ends
    int order_of(int v) const { return adj[v].count() - 1; }

    bool operator==(const Graph& o) const { return n == o.n && adj == o.adj; }

    // path of length len (len+1 vertices), canonical order
    static Graph path(int len);

    bool is_canonical_path() const;
    // order witness if this graph is a path in some vertex order
    std::optional<std::vector<int>> path_order() const;

    uint64_t hash() const;
};

struct PathStats {
    int length = 0;                 // edge count
    std::vector<int> ends;          // vertices of order <= 1
    std::vector<int> order;         // per-vertex order
};
PathStats path_stats(const Graph& p);

// Induced subpath [a, b] of a canonical path, as a canonical path.
Graph subpath(const Graph& p, int a, int b);

// Clique path: singletons and edges of a canonical path P_len ordered by
// comparability; vertex 2k is {k}, vertex 2k+1 is {k, k+1}.  A canonical
// path of length 2*len.
Graph clique_path(const Graph& p);
// Members of clique-path vertex x of P_len: {x/2} when even, else {x/2, x/2+1}.
std::vector<int> clique_members(int x);

struct Partition {
    // block index per vertex; blocks numbered 0..k-1
    std::vector<int> block_of;
    int blocks = 0;
};

// Quotient graph: blocks adjacent iff some members are adjacent.
Graph quotient(const Graph& g, const Partition& part);

// Canonical product adjacency on pairs (a, b), pairs indexed a*(q.n)+b:
// (a,b) ~ (a',b') iff a~a' and b~b'.  Strict variant: one coordinate equal,
// the other adjacent.
Graph product_graph(const Graph& p, const Graph& q, bool strict);

} // namespace pal

#include "pal/graph.hpp"
#include <stdexcept>
#include <algorithm>

namespace pal {

Graph::Graph(int n_) : n(n_), adj(n_, Bits(n_)) {
    for (int i = 0; i < n; ++i) adj[i].set(i); // reflexive
}

void Graph::add_edge(int i, int j) {
    adj[i].set(j);
    adj[j].set(i);
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = adj[i].next(i); j >= 0; j = adj[i].next(j))
            out.push_back({i, j});
    return out;
}

int Graph::edge_count() const {
    int c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = adj[i].next(i); j >= 0; j = adj[i].next(j)) ++c;
    return c;
}

Graph Graph::path(int len) {
    Graph g(len + 1);
    for (int i = 0; i < len; ++i) g.add_edge(i, i + 1);
    return g;
}

bool Graph::is_canonical_path() const {
    if (n == 0) return false;
    for (int i = 0; i < n; ++i) {
        Bits want(n);
        if (i > 0) want.set(i - 1);
        want.set(i);
        if (i + 1 < n) want.set(i + 1);
        if (!(adj[i] == want)) return false;
    }
    return true;
}

std::optional<std::vector<int>> Graph::path_order() const {
    if (n == 0) return std::nullopt;
    if (n == 1) {
        if (adj[0].count() != 1) return std::nullopt;
        return std::vector<int>{0};
    }
    int start = -1;
    for (int v = 0; v < n; ++v) {
        int d = order_of(v);
        if (d == 1 && start < 0) start = v;
        if (d == 0 || d > 2) return std::nullopt;
    }
    if (start < 0) return std::nullopt; // cycle
    std::vector<int> order;
    order.reserve(n);
    int prev = -1, cur = start;
    while (true) {
        order.push_back(cur);
        int nxt = -1;
        for (int w = adj[cur].first(); w >= 0; w = adj[cur].next(w))
            if (w != cur && w != prev) {
                if (nxt >= 0) return std::nullopt;
                nxt = w;
            }
        if (nxt < 0) break;
        prev = cur;
        cur = nxt;
    }
    if ((int)order.size() != n) return std::nullopt; // disconnected
    return order;
}

uint64_t Graph::hash() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    mix((uint64_t)n);
    for (const auto& row : adj)
        for (size_t w = 0; w < row.words().size(); ++w) mix(row.words()[w]);
    return h;
}

PathStats path_stats(const Graph& p) {
    PathStats st;
    st.length = p.edge_count();
    st.order.resize(p.n);
    for (int v = 0; v < p.n; ++v) {
        st.order[v] = p.order_of(v);
        if (st.order[v] <= 1) st.ends.push_back(v);
    }
    return st;
}

Graph subpath(const Graph& p, int a, int b) {
    if (a > b) std::swap(a, b);
    if (!(0 <= a && b < p.n)) throw std::invalid_argument("subpath range");
    return Graph::path(b - a);
}

Graph clique_path(const Graph& p) {
    if (!p.is_canonical_path()) throw std::invalid_argument("clique_path wants a canonical path");
    int len = p.n - 1;
    return Graph::path(2 * len);
}

std::vector<int> clique_members(int x) {
    if (x % 2 == 0) return {x / 2};
    return {x / 2, x / 2 + 1};
}

Graph quotient(const Graph& g, const Partition& part) {
    Graph q(part.blocks);
    for (int i = 0; i < g.n; ++i)
        for (int j = g.adj[i].first(); j >= 0; j = g.adj[i].next(j))
            q.add_edge(part.block_of[i], part.block_of[j]);
    return q;
}

Graph product_graph(const Graph& p, const Graph& q, bool strict) {
    Graph g(p.n * q.n);
    for (int a = 0; a < p.n; ++a)
        for (int b = 0; b < q.n; ++b)
            for (int a2 = p.adj[a].first(); a2 >= 0; a2 = p.adj[a].next(a2))
                for (int b2 = q.adj[b].first(); b2 >= 0; b2 = q.adj[b].next(b2)) {
                    if (strict && a2 != a && b2 != b) continue;
                    g.add_edge(a * q.n + b, a2 * q.n + b2);
                }
    return g;
}

} // namespace pal

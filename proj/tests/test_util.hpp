#pragma once
// Shared helpers for the test binaries: small random generators and literal
// re-implementations of the relation calculus used as oracles.
#include "pal/graph.hpp"
#include "pal/rel.hpp"
#include "pal/rng.hpp"
#include <vector>

namespace test_util {

using pal::Bits;
using pal::Graph;
using pal::Rel;
using pal::Rng;

inline Graph random_graph(Rng& rng, int min_n, int max_n, uint32_t edge_percent = 40) {
    int n = rng.range(min_n, max_n);
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.below(100) < edge_percent) g.add_edge(i, j);
    return g;
}

inline Rel random_rel(Rng& rng, const Graph& dom, const Graph& cod,
                      uint32_t pair_percent = 35) {
    Rel r(dom, cod);
    for (int c = 0; c < cod.n; ++c)
        for (int d = 0; d < dom.n; ++d)
            if (rng.below(100) < pair_percent) r.add(c, d);
    return r;
}

inline Bits random_subset(Rng& rng, int n, uint32_t percent = 50) {
    Bits b(n);
    for (int i = 0; i < n; ++i)
        if (rng.below(100) < percent) b.set(i);
    return b;
}

// ---- literal oracles (straight quantifier loops, no bitset shortcuts) ----

inline Bits image_oracle(const Rel& r, const Bits& w) {
    Bits out(r.cod.n);
    for (int y = 0; y < r.cod.n; ++y)
        for (int x = 0; x < r.dom.n; ++x)
            if (w.test(x) && r.has(y, x)) out.set(y);
    return out;
}

inline Bits preimage_oracle(const Rel& r, const Bits& z) {
    Bits out(r.dom.n);
    for (int x = 0; x < r.dom.n; ++x)
        for (int y = 0; y < r.cod.n; ++y)
            if (z.test(y) && r.has(y, x)) out.set(x);
    return out;
}

inline Bits demonic_image_oracle(const Rel& r, const Bits& w) {
    Bits out(r.cod.n);
    for (int y = 0; y < r.cod.n; ++y) {
        bool all = true;
        for (int x = 0; x < r.dom.n; ++x)
            if (w.test(x) && !r.has(y, x)) all = false;
        if (all) out.set(y);
    }
    return out;
}

inline Bits demonic_preimage_oracle(const Rel& r, const Bits& z) {
    Bits out(r.dom.n);
    for (int x = 0; x < r.dom.n; ++x) {
        bool all = true;
        for (int y = 0; y < r.cod.n; ++y)
            if (z.test(y) && !r.has(y, x)) all = false;
        if (all) out.set(x);
    }
    return out;
}

inline Rel compose_oracle(const Rel& s, const Rel& r) {
    Rel out(r.dom, s.cod);
    for (int z = 0; z < s.cod.n; ++z)
        for (int x = 0; x < r.dom.n; ++x)
            for (int y = 0; y < r.cod.n; ++y)
                if (s.has(z, y) && r.has(y, x)) out.add(z, x);
    return out;
}

inline Rel demonic_compose_oracle(const Rel& s, const Rel& r) {
    Rel out(r.dom, s.cod);
    for (int z = 0; z < s.cod.n; ++z)
        for (int x = 0; x < r.dom.n; ++x) {
            bool any = false, all = true;
            for (int y = 0; y < r.cod.n; ++y) {
                if (!r.has(y, x)) continue;
                any = true;
                if (!s.has(z, y)) all = false;
            }
            if (any && all) out.add(z, x);
        }
    return out;
}

inline Rel codemonic_compose_oracle(const Rel& s, const Rel& r) {
    Rel out(r.dom, s.cod);
    for (int z = 0; z < s.cod.n; ++z)
        for (int x = 0; x < r.dom.n; ++x) {
            bool any = false, all = true;
            for (int y = 0; y < r.cod.n; ++y) {
                if (!s.has(z, y)) continue;
                any = true;
                if (!r.has(y, x)) all = false;
            }
            if (any && all) out.add(z, x);
        }
    return out;
}

// thick-vertex relation from P_{n} to P_{n-1} doubling cod vertex i-1/i:
// k < i maps to {k}; k == i maps to {i-1, i}; k > i maps to {k-1}
inline Rel thick_step(int n, int i) {
    Rel r(Graph::path(n), Graph::path(n - 1));
    for (int k = 0; k < i; ++k) r.add(k, k);
    r.add(i - 1, i);
    r.add(i, i);
    for (int k = i + 1; k <= n; ++k) r.add(k - 1, k);
    return r;
}

// edge-collapsing function from P_n to P_{n-1}: k maps to k for k <= m,
// else k-1
inline Rel drop_step(int n, int m) {
    std::vector<int> f(n + 1);
    for (int k = 0; k <= n; ++k) f[k] = k <= m ? k : k - 1;
    return pal::from_function(Graph::path(n), Graph::path(n - 1), f);
}

inline Rel reversal(int n) {
    std::vector<int> f(n + 1);
    for (int k = 0; k <= n; ++k) f[k] = n - k;
    return pal::from_function(Graph::path(n), Graph::path(n), f);
}

// random composite of valid path morphisms, codomain fixed at P_start_len
inline Rel random_path_morphism(Rng& rng, int start_len, int steps) {
    Rel cur = pal::identity(Graph::path(start_len));
    for (int s = 0; s < steps; ++s) {
        int len = cur.dom.n - 1;
        if (len == 0) { // only one way up from a singleton
            cur = pal::compose(cur, drop_step(1, 0));
            continue;
        }
        switch (rng.below(3)) {
        case 0: { // widen domain with a thick vertex
            int i = (int)rng.range(1, len);
            cur = pal::compose(cur, thick_step(len + 1, i));
            break;
        }
        case 1: { // widen domain with an edge collapse
            int m = (int)rng.range(0, len);
            cur = pal::compose(cur, drop_step(len + 1, m));
            break;
        }
        default:
            cur = pal::compose(cur, reversal(len));
            break;
        }
    }
    return cur;
}

} // namespace test_util

#pragma once
// Relation calculus over finite reflexive graphs.  A relation from Q to R is
// stored as a boolean matrix with rows indexed by cod vertices and columns by
// dom vertices; all images and compositions are bitwise row operations.
// Quantifier conventions: exists over the empty set is false, forall over the
// empty set is true.
#include "pal/graph.hpp"
#include <vector>
#include <utility>

namespace pal {

struct Rel {
    Graph dom, cod;
    std::vector<Bits> rows; // rows[y] = {x : y related to x}, over dom
    std::vector<Bits> cols; // cols[x] = {y : y related to x}, over cod

    Rel() = default;
    Rel(Graph dom_, Graph cod_);

    void add(int c, int d);
    void remove(int c, int d);
    bool has(int c, int d) const { return rows[c].test(d); }
    int pair_count() const;
    std::vector<std::pair<int, int>> pairs() const; // (cod, dom), sorted

    bool operator==(const Rel& o) const {
        return dom == o.dom && cod == o.cod && rows == o.rows;
    }
};

Rel identity(const Graph& g);
Rel full_relation(const Graph& dom, const Graph& cod);
// f[x] = image vertex of dom vertex x
Rel from_function(const Graph& dom, const Graph& cod, const std::vector<int>& f);
Rel from_pairs(const Graph& dom, const Graph& cod,
               const std::vector<std::pair<int, int>>& cod_dom_pairs);

// w is a set of dom vertices; result over cod: {y : exists x in w related}
Bits image(const Rel& r, const Bits& w);
// z over cod; result over dom
Bits preimage(const Rel& r, const Bits& z);
// {y : w subseteq y's row}; empty w yields all of cod
Bits demonic_image(const Rel& r, const Bits& w);
// {x : z subseteq x's column}; empty z yields all of dom
Bits demonic_preimage(const Rel& r, const Bits& z);

Rel inverse(const Rel& r);
// intersect pairs with z x w (w over dom, z over cod); graphs unchanged
Rel restrict(const Rel& r, const Bits& w, const Bits& z);

// s after r: requires r.cod == s.dom (structural equality)
Rel compose(const Rel& s, const Rel& r);
// pairs (z, x) with x's r-column non-empty and contained in z's s-row
Rel demonic_compose(const Rel& s, const Rel& r);
// inverse(demonic_compose(inverse(r), inverse(s)))
Rel codemonic_compose(const Rel& s, const Rel& r);

bool subrel(const Rel& a, const Rel& b); // same graphs, pairs(a) subseteq pairs(b)
bool is_function(const Rel& r);          // every dom column a singleton

struct MorphismReport {
    bool surjective = false;      // every cod vertex has a non-empty row
    bool co_surjective = false;   // every dom vertex has a non-empty column
    bool co_injective = false;    // every cod vertex y has x with column {y}
    bool co_bijective = false;
    bool edge_preserving = false; // adjacent dom vertices have pairwise adjacent images
    bool edge_witnessing = false; // every cod edge (loops included) covered by one column
    bool edge_injective = false;  // dom edges carry distinct singleton columns
    bool end_preserving = false;  // every cod end r has a dom end with column {r}
    bool is_function = false;
    bool proper_applicable = false; // both graphs canonical paths
    bool proper = false;          // no proper dom subpath keeps the restriction valid
};
MorphismReport check_morphism(const Rel& r);

// membership in the path category: co-bijective and edge-preserving
bool in_P(const Rel& r);

// Tangledness of a co-bijective edge-preserving relation between canonical
// paths: every pair of subpaths S, T of dom with connected union satisfies
// S subseteq T's saturation or vice versa.  is_tangled runs the interval
// reduction in O(n^2 log n); the bruteforce variant scans all subpath pairs.
bool is_tangled(const Rel& r);
bool is_tangled_bruteforce(const Rel& r);

struct QuotientResult {
    Graph graph; // block graph
    Rel map;     // surjective edge-preserving function from base to blocks
};
bool valid_partition(const Graph& g, const Partition& part);
QuotientResult quotient_with_map(const Graph& g, const Partition& part);

} // namespace pal

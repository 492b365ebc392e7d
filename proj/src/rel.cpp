#include "pal/rel.hpp"
#include <stdexcept>
#include <algorithm>

namespace pal {

Rel::Rel(Graph dom_, Graph cod_) : dom(std::move(dom_)), cod(std::move(cod_)) {
    rows.assign(cod.n, Bits(dom.n));
    cols.assign(dom.n, Bits(cod.n));
}

void Rel::add(int c, int d) {
    rows[c].set(d);
    cols[d].set(c);
}

void Rel::remove(int c, int d) {
    rows[c].reset(d);
    cols[d].reset(c);
}

int Rel::pair_count() const {
    int k = 0;
    for (const auto& row : rows) k += row.count();
    return k;
}

std::vector<std::pair<int, int>> Rel::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int c = 0; c < cod.n; ++c)
        for (int d = rows[c].first(); d >= 0; d = rows[c].next(d)) out.push_back({c, d});
    return out;
}

Rel identity(const Graph& g) {
    Rel r(g, g);
    for (int v = 0; v < g.n; ++v) r.add(v, v);
    return r;
}

Rel full_relation(const Graph& dom, const Graph& cod) {
    Rel r(dom, cod);
    for (int c = 0; c < cod.n; ++c)
        for (int d = 0; d < dom.n; ++d) r.add(c, d);
    return r;
}

Rel from_function(const Graph& dom, const Graph& cod, const std::vector<int>& f) {
    if ((int)f.size() != dom.n) throw std::invalid_argument("function size mismatch");
    Rel r(dom, cod);
    for (int d = 0; d < dom.n; ++d) r.add(f[d], d);
    return r;
}

Rel from_pairs(const Graph& dom, const Graph& cod,
               const std::vector<std::pair<int, int>>& cod_dom_pairs) {
    Rel r(dom, cod);
    for (auto [c, d] : cod_dom_pairs) {
        if (c < 0 || c >= cod.n || d < 0 || d >= dom.n)
            throw std::invalid_argument("pair out of range");
        r.add(c, d);
    }
    return r;
}

Bits image(const Rel& r, const Bits& w) {
    if (w.size() != r.dom.n) throw std::invalid_argument("image: wrong vertex set");
    Bits out(r.cod.n);
    for (int y = 0; y < r.cod.n; ++y)
        if (r.rows[y].intersects(w)) out.set(y);
    return out;
}

Bits preimage(const Rel& r, const Bits& z) {
    if (z.size() != r.cod.n) throw std::invalid_argument("preimage: wrong vertex set");
    Bits out(r.dom.n);
    for (int x = 0; x < r.dom.n; ++x)
        if (r.cols[x].intersects(z)) out.set(x);
    return out;
}

Bits demonic_image(const Rel& r, const Bits& w) {
    if (w.size() != r.dom.n) throw std::invalid_argument("demonic_image: wrong vertex set");
    Bits out(r.cod.n);
    for (int y = 0; y < r.cod.n; ++y)
        if (w.subset_of(r.rows[y])) out.set(y);
    return out;
}

Bits demonic_preimage(const Rel& r, const Bits& z) {
    if (z.size() != r.cod.n) throw std::invalid_argument("demonic_preimage: wrong vertex set");
    Bits out(r.dom.n);
    for (int x = 0; x < r.dom.n; ++x)
        if (z.subset_of(r.cols[x])) out.set(x);
    return out;
}

Rel inverse(const Rel& r) {
    Rel v(r.cod, r.dom);
    v.rows = r.cols;
    v.cols = r.rows;
    return v;
}

Rel restrict(const Rel& r, const Bits& w, const Bits& z) {
    if (w.size() != r.dom.n || z.size() != r.cod.n)
        throw std::invalid_argument("restrict: wrong vertex sets");
    Rel v(r.dom, r.cod);
    for (int c = z.first(); c >= 0; c = z.next(c)) {
        Bits row = r.rows[c];
        row &= w;
        for (int d = row.first(); d >= 0; d = row.next(d)) v.add(c, d);
    }
    return v;
}

static void require_composable(const Rel& s, const Rel& r, const char* what) {
    if (!(r.cod == s.dom)) throw std::invalid_argument(std::string(what) + ": middle graph mismatch");
}

Rel compose(const Rel& s, const Rel& r) {
    require_composable(s, r, "compose");
    Rel out(r.dom, s.cod);
    for (int z = 0; z < s.cod.n; ++z)
        for (int x = 0; x < r.dom.n; ++x)
            if (s.rows[z].intersects(r.cols[x])) out.add(z, x);
    return out;
}

Rel demonic_compose(const Rel& s, const Rel& r) {
    require_composable(s, r, "demonic_compose");
    Rel out(r.dom, s.cod);
    for (int x = 0; x < r.dom.n; ++x) {
        if (r.cols[x].none()) continue;
        for (int z = 0; z < s.cod.n; ++z)
            if (r.cols[x].subset_of(s.rows[z])) out.add(z, x);
    }
    return out;
}

Rel codemonic_compose(const Rel& s, const Rel& r) {
    require_composable(s, r, "codemonic_compose");
    return inverse(demonic_compose(inverse(r), inverse(s)));
}

bool subrel(const Rel& a, const Rel& b) {
    if (!(a.dom == b.dom) || !(a.cod == b.cod)) return false;
    for (int c = 0; c < a.cod.n; ++c)
        if (!a.rows[c].subset_of(b.rows[c])) return false;
    return true;
}

bool is_function(const Rel& r) {
    for (int x = 0; x < r.dom.n; ++x)
        if (r.cols[x].count() != 1) return false;
    return true;
}

MorphismReport check_morphism(const Rel& r) {
    MorphismReport rep;
    const int dn = r.dom.n, cn = r.cod.n;

    rep.surjective = true;
    for (int y = 0; y < cn && rep.surjective; ++y)
        if (r.rows[y].none()) rep.surjective = false;

    rep.co_surjective = true;
    for (int x = 0; x < dn && rep.co_surjective; ++x)
        if (r.cols[x].none()) rep.co_surjective = false;

    // witnesses[y] = dom vertices whose column is exactly {y}
    std::vector<Bits> witnesses(cn, Bits(dn));
    for (int x = 0; x < dn; ++x)
        if (r.cols[x].count() == 1) witnesses[r.cols[x].first()].set(x);
    rep.co_injective = true;
    for (int y = 0; y < cn && rep.co_injective; ++y)
        if (witnesses[y].none()) rep.co_injective = false;
    rep.co_bijective = rep.co_surjective && rep.co_injective;

    rep.edge_preserving = true;
    for (int x = 0; x < dn && rep.edge_preserving; ++x)
        for (int x2 = r.dom.adj[x].next(x - 1); x2 >= 0 && rep.edge_preserving;
             x2 = r.dom.adj[x].next(x2)) {
            // x2 runs over neighbours >= x, loops included
            for (int y = r.cols[x].first(); y >= 0; y = r.cols[x].next(y))
                if (!r.cols[x2].subset_of(r.cod.adj[y])) {
                    rep.edge_preserving = false;
                    break;
                }
        }

    rep.edge_witnessing = true;
    for (int y = 0; y < cn && rep.edge_witnessing; ++y)
        for (int y2 = r.cod.adj[y].next(y - 1); y2 >= 0; y2 = r.cod.adj[y].next(y2))
            if (!r.rows[y].intersects(r.rows[y2])) {
                rep.edge_witnessing = false;
                break;
            }

    rep.edge_injective = true;
    for (int x = 0; x < dn && rep.edge_injective; ++x)
        for (int x2 = r.dom.adj[x].next(x); x2 >= 0; x2 = r.dom.adj[x].next(x2)) {
            if (r.cols[x].count() != 1 || r.cols[x2].count() != 1 ||
                r.cols[x].first() == r.cols[x2].first()) {
                rep.edge_injective = false;
                break;
            }
        }

    rep.end_preserving = true;
    for (int y = 0; y < cn && rep.end_preserving; ++y) {
        if (r.cod.order_of(y) > 1) continue;
        bool found = false;
        for (int x = witnesses[y].first(); x >= 0; x = witnesses[y].next(x))
            if (r.dom.order_of(x) <= 1) {
                found = true;
                break;
            }
        if (!found) rep.end_preserving = false;
    }

    rep.is_function = is_function(r);

    rep.proper_applicable = r.dom.is_canonical_path() && r.cod.is_canonical_path();
    if (rep.proper_applicable) {
        // A restriction to a subpath stays edge-preserving and co-surjective and
        // its validity is monotone under enlarging the subpath, so the two
        // maximal proper subpaths [0, n-2] and [1, n-1] decide properness.
        auto restriction_valid = [&](int a, int b) {
            for (int y = 0; y < cn; ++y) {
                bool hit = false;
                for (int x = witnesses[y].first(); x >= 0; x = witnesses[y].next(x))
                    if (a <= x && x <= b) {
                        hit = true;
                        break;
                    }
                if (!hit) return false;
            }
            return true;
        };
        rep.proper = dn == 1 ||
                     (!restriction_valid(0, dn - 2) && !restriction_valid(1, dn - 1));
    }
    return rep;
}

bool in_P(const Rel& r) {
    auto rep = check_morphism(r);
    return rep.co_bijective && rep.edge_preserving;
}

namespace {

struct TangledInput {
    int n = 0;
    std::vector<int> lo, hi; // column interval of each dom vertex
};

TangledInput tangled_input(const Rel& r) {
    if (!r.dom.is_canonical_path() || !r.cod.is_canonical_path())
        throw std::domain_error("is_tangled: both graphs must be canonical paths");
    auto rep = check_morphism(r);
    if (!rep.co_bijective || !rep.edge_preserving)
        throw std::domain_error("is_tangled: relation must be co-bijective and edge-preserving");
    TangledInput in;
    in.n = r.dom.n;
    in.lo.resize(in.n);
    in.hi.resize(in.n);
    for (int x = 0; x < in.n; ++x) {
        // columns of an edge-preserving relation into a path are cliques,
        // hence intervals of at most two vertices
        in.lo[x] = r.cols[x].first();
        int h = in.lo[x];
        for (int y = h; y >= 0; y = r.cols[x].next(y)) h = y;
        in.hi[x] = h;
    }
    return in;
}

// sparse-table range minimum / maximum
struct Rmq {
    std::vector<std::vector<int>> mn, mx;
    void build(const std::vector<int>& lo, const std::vector<int>& hi) {
        int n = (int)lo.size();
        int lg = 1;
        while ((1 << lg) < n) ++lg;
        mn.assign(lg + 1, std::vector<int>(n));
        mx.assign(lg + 1, std::vector<int>(n));
        mn[0] = hi; // min over colhi
        mx[0] = lo; // max over collo
        for (int k = 1; k <= lg; ++k)
            for (int i = 0; i + (1 << k) <= n; ++i) {
                mn[k][i] = std::min(mn[k - 1][i], mn[k - 1][i + (1 << (k - 1))]);
                mx[k][i] = std::max(mx[k - 1][i], mx[k - 1][i + (1 << (k - 1))]);
            }
    }
    int min_hi(int a, int b) const { // min of colhi over [a, b]
        int k = 31 - __builtin_clz((unsigned)(b - a + 1));
        return std::min(mn[k][a], mn[k][b - (1 << k) + 1]);
    }
    int max_lo(int a, int b) const { // max of collo over [a, b]
        int k = 31 - __builtin_clz((unsigned)(b - a + 1));
        return std::max(mx[k][a], mx[k][b - (1 << k) + 1]);
    }
};

} // namespace

bool is_tangled(const Rel& r) {
    TangledInput in = tangled_input(r);
    const int n = in.n;
    if (n == 1) return true;
    Rmq rmq;
    rmq.build(in.lo, in.hi);

    // second table with the roles swapped: min of collo, max of colhi,
    // which gives the image interval of a dom interval
    Rmq img;
    img.build(in.hi, in.lo);

    auto image_of = [&](int a, int b) {
        return std::pair<int, int>{img.min_hi(a, b), img.max_lo(a, b)};
    };
    // S = [a, b] fails to be inside the saturation of a set with image [c, d]
    // iff some x in S has column interval disjoint from [c, d]
    auto escapes = [&](int a, int b, int c, int d) {
        return rmq.min_hi(a, b) < c || rmq.max_lo(a, b) > d;
    };
    // first x > b whose column interval is disjoint from [c, d]; -1 if none
    auto first_bad_right = [&](int b, int c, int d) {
        int best = -1;
        if (b + 1 < n) {
            // smallest prefix [b+1, m] with min colhi < c
            if (rmq.min_hi(b + 1, n - 1) < c) {
                int a = b + 1, z = n - 1;
                while (a < z) {
                    int m = (a + z) / 2;
                    if (rmq.min_hi(b + 1, m) < c) z = m;
                    else a = m + 1;
                }
                best = a;
            }
            if (rmq.max_lo(b + 1, n - 1) > d) {
                int a = b + 1, z = n - 1;
                while (a < z) {
                    int m = (a + z) / 2;
                    if (rmq.max_lo(b + 1, m) > d) z = m;
                    else a = m + 1;
                }
                if (best < 0 || a < best) best = a;
            }
        }
        return best;
    };
    auto first_bad_left = [&](int a, int c, int d) {
        int best = -1;
        if (a - 1 >= 0) {
            if (rmq.min_hi(0, a - 1) < c) {
                int lo2 = 0, z = a - 1;
                while (lo2 < z) {
                    int m = (lo2 + z + 1) / 2;
                    if (rmq.min_hi(m, a - 1) < c) lo2 = m;
                    else z = m - 1;
                }
                best = lo2;
            }
            if (rmq.max_lo(0, a - 1) > d) {
                int lo2 = 0, z = a - 1;
                while (lo2 < z) {
                    int m = (lo2 + z + 1) / 2;
                    if (rmq.max_lo(m, a - 1) > d) lo2 = m;
                    else z = m - 1;
                }
                if (best < 0 || lo2 > best) best = lo2;
            }
        }
        return best;
    };

    // A violating pair (S, T) with connected union always shrinks to one where
    // T is the minimal interval beside S reaching the nearest vertex whose
    // column misses the image of S, so scanning those candidates suffices.
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            auto [c, d] = image_of(a, b);
            int x0 = first_bad_right(b, c, d);
            if (x0 >= 0) {
                auto [tc, td] = image_of(b + 1, x0);
                if (escapes(a, b, tc, td)) return false;
            }
            int x1 = first_bad_left(a, c, d);
            if (x1 >= 0) {
                auto [tc, td] = image_of(x1, a - 1);
                if (escapes(a, b, tc, td)) return false;
            }
        }
    return true;
}

bool is_tangled_bruteforce(const Rel& r) {
    tangled_input(r); // validate preconditions
    const int n = r.dom.n;
    // saturation of [a, b]: preimage of image
    std::vector<std::vector<Bits>> sat(n);
    Bits all_dom(n);
    for (int i = 0; i < n; ++i) all_dom.set(i);
    for (int a = 0; a < n; ++a) {
        sat[a].reserve(n - a);
        Bits w(n);
        for (int b = a; b < n; ++b) {
            w.set(b);
            sat[a].push_back(preimage(r, image(r, w)));
        }
    }
    auto contained = [&](int a, int b, const Bits& s) {
        for (int x = a; x <= b; ++x)
            if (!s.test(x)) return false;
        return true;
    };
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = c; d < n; ++d) {
                    if (std::max(a, c) > std::min(b, d) + 1) continue; // union disconnected
                    if (!contained(a, b, sat[c][d - c]) && !contained(c, d, sat[a][b - a]))
                        return false;
                }
    return true;
}

bool valid_partition(const Graph& g, const Partition& part) {
    if ((int)part.block_of.size() != g.n || part.blocks <= 0) return false;
    std::vector<int> seen(part.blocks, 0);
    for (int v = 0; v < g.n; ++v) {
        int b = part.block_of[v];
        if (b < 0 || b >= part.blocks) return false;
        seen[b] = 1;
    }
    for (int b = 0; b < part.blocks; ++b)
        if (!seen[b]) return false;
    return true;
}

QuotientResult quotient_with_map(const Graph& g, const Partition& part) {
    if (!valid_partition(g, part)) throw std::invalid_argument("invalid partition");
    QuotientResult qr;
    qr.graph = quotient(g, part);
    qr.map = Rel(g, qr.graph);
    for (int v = 0; v < g.n; ++v) qr.map.add(part.block_of[v], v);
    return qr;
}

} // namespace pal

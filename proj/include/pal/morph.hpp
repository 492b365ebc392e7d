#pragma once
// Structure theory of co-bijective edge-preserving relations between
// canonical paths: turning numbers, classification, prime decomposition of
// surjective edge-preserving functions, the clique functor, subfactor
// extraction against tangled relations, and tangled-relation synthesis.
#include "pal/rel.hpp"
#include <optional>
#include <stdexcept>
#include <cstdint>

namespace pal {

enum class MorphTag {
    Isomorphism,
    Simple,
    Hook,
    ProperSnake,
    ImproperSnake,
    HigherTurning,
    NonEdgeInjective,
};
const char* morph_tag_name(MorphTag t);

struct MorphismClass {
    MorphTag tag;
    std::optional<int> turning;
};

// thrown when a primality search would need intermediate paths beyond the
// caller's bound; distinct from a definite composite verdict
struct PrimeSearchInconclusive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// number of length-two dom subpaths on which f restricts to a turn;
// requires an edge-injective function between canonical paths
int turning_number(const Rel& f);

// f as a value vector; throws unless f is a function
std::vector<int> function_values(const Rel& f);

// maximal dom intervals on which the edge-injective function is injective
std::vector<std::pair<int, int>> injective_stretches(const std::vector<int>& f);

enum class SimpleVariant { Lax, Strict };
// edge-collapsing morphism from P_{n+1} onto P_n: k maps to k for k <= m,
// else to k-1.  The strict variant drops the two boundary vertices and is a
// non-co-surjective subrelation kept for comparison.
Rel make_simple(int n, int m, SimpleVariant variant = SimpleVariant::Lax);
// vertex-doubling relation from P_{n+1} onto P_n: k below i maps to {k},
// i maps to {i-1, i}, k above i maps to {k-1}; a proper simple relation
Rel thick_simple(int n, int i);
Rel make_hook(int m, int n);       // from P_{m+n} onto P_n, one turn
Rel make_snake(int l, int m, int n); // from P_{l+m+n} onto P_{l-m+n}, two turns
Rel path_reversal(int len);

MorphismClass classify(const Rel& f);

// every co-bijective edge-preserving relation between the two canonical paths
std::vector<Rel> enumerate_homset(const Graph& dom, const Graph& cod);

// exhaustive: no factorization through a strictly intermediate path length
// with both factors non-isomorphisms; lengths beyond bound raise
// PrimeSearchInconclusive
bool is_prime_bruteforce(const Rel& f, int bound);

struct PrimeFactor {
    Rel rel;
    MorphTag tag; // Simple, Hook or ProperSnake
};
struct PrimeFactorization {
    std::vector<PrimeFactor> factors; // outermost (codomain side) first
    // a leftover isomorphism when the input had no prime part to absorb it
    // into (identity is omitted); composition order: residual outermost
    std::optional<Rel> residual_iso;
};

// prime decomposition of a surjective edge-preserving function between paths
PrimeFactorization decompose_in_F(const Rel& f);
// composition of the factorization, for recomposition checks
Rel recompose(const PrimeFactorization& pf, const Graph& dom_if_empty);

// clique-path functor on morphisms: X maps to the image of X
Rel clique_functor(const Rel& r);
// membership relation from clique_path(p) onto p
Rel membership_morphism(const Graph& p);
// chain of vertex-doubling simples composing to membership_morphism(p),
// outermost first
std::vector<Rel> membership_factorization(const Graph& p);

// Left-subfactor extractions: each returns m with compose(given, m) a
// subrelation of the tangled target (or of the supplied composition), m
// co-bijective edge-preserving.  Every call re-verifies its post-condition.
Rel snake_subfactor(const Rel& s, const Rel& t);
Rel hook_subfactor(const Rel& h, const Rel& t);
Rel proper_simple_subfactor(const Rel& p, const Rel& t);
// target is compose(outer, inner); both factors must be edge-witnessing
Rel improper_simple_subfactor(const Rel& p, const Rel& outer, const Rel& inner);

// domain size of the synthesized tangled relation onto P_n
int64_t tangled_domain_size(int n);
// tangled relation onto the target path, validated before returning; the
// seed is recorded in the CLI interface but the construction is canonical
Rel build_tangled(const Graph& target, uint64_t seed);

// vertex budget for synthesized domains, from PSEUDOARC_LAB_MAX_VERTICES
// (default 4096)
int vertex_limit();

} // namespace pal

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nckdv {

// Stable graph with vertex genus labels, unordered multi-edges (self-loops
// allowed) and numbered legs. Edges are stored as vertex pairs (u <= v);
// the half-edge picture is implicit: every edge contributes one half-edge
// to each endpoint and every leg one half-edge to its vertex.
struct StableGraph {
    std::vector<int> genus;                  // per vertex
    std::vector<std::pair<int, int>> edges;  // pairs with u <= v, list sorted
    std::vector<int> leg_vertex;             // leg i (0-based) sits at this vertex

    int vertex_count() const { return static_cast<int>(genus.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    // First Betti number E - V + 1; meaningful for connected graphs.
    int h1() const { return edge_count() - vertex_count() + 1; }
    // Total genus sum g(v) + h1.
    int total_genus() const;
    // Legs plus edge ends at v; a self-loop counts twice.
    int valence(int v) const;

    friend auto operator<=>(const StableGraph&, const StableGraph&) = default;
};

// Minimum over vertex relabelings of the serialized graph. Legs keep their
// labels; only their vertex assignment is relabeled.
StableGraph canonical_form(const StableGraph& graph);

// All stable graphs of genus g with n legs up to isomorphism, canonical and
// sorted. A nonzero seed shuffles the internal vertex labels before
// canonicalization, which must not change the result.
std::vector<StableGraph> enumerate(int g, int n, unsigned seed = 0);

// Order of the automorphism group fixing legs, genus labels and incidence;
// half-edge swaps of self-loops and permutations of parallel edges count.
long aut_order(const StableGraph& graph);

// Number of functions from half-edges to Z/r with leg values a_i mod r,
// edge halves summing to 0 mod r and vertex sums 0 mod r.
long weighting_count(const StableGraph& graph, const std::vector<long>& a, long r);

// {"genus":[...],"edges":[[u,v],...],"legs":[...],"h1":k}
std::string to_json(const StableGraph& graph);

}  // namespace nckdv

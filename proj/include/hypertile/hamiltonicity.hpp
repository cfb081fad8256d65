#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypertile/hypergraph.hpp"

namespace hypertile {

// Ordered vertex sequence read as an ell-path of a k-graph: edges are the
// k-windows starting at multiples of k - ell.
struct EllPath {
    int ell = 1;
    std::vector<int> vertices;

    int edge_count(int k) const;
    std::vector<Edge> edges(int k) const;  // each window sorted
    std::vector<int> beginning() const;    // first ell vertices, in order
    std::vector<int> ending() const;       // last ell vertices, in order
};

// Cyclic ordering; window i starts at position i(k - ell) and wraps around.
struct EllCycle {
    int ell = 1;
    std::vector<int> vertices;

    int edge_count(int k) const;
    std::vector<Edge> edges(int k) const;
};

std::vector<std::string> path_violations(const Hypergraph& h, const EllPath& p);
bool validate_ell_path(const Hypergraph& h, const EllPath& p);
// With `spanning`, the cycle must also contain every vertex of h.
std::vector<std::string> cycle_violations(const Hypergraph& h, const EllCycle& c, bool spanning = false);
bool validate_ell_cycle(const Hypergraph& h, const EllCycle& c, bool spanning = false);

struct HamiltonSearch {
    std::optional<EllCycle> cycle;
    bool exhausted = false;  // true when absence is certified
    std::size_t nodes = 0;
};

constexpr std::size_t kDefaultNodeLimit = 50'000'000;

// Backtracking over windows with vertex 0 pinned to one of the first k - ell
// positions. Throws ParameterError unless (k - ell) | n.
HamiltonSearch exact_hamilton_ell_cycle(const Hypergraph& h, int ell, std::size_t node_limit = kDefaultNodeLimit);

// k classes; the first k - 2ell have t vertices, the others (t+1)/2, and every
// edge of p meets each class once. Needs ell < k/2 and an odd edge count t.
std::vector<VertexSet> color_partition(const EllPath& p, int k);

// 1-based colour of position j (0-based) in the periodic colouring above.
int partition_color(int j, int k, int ell);

struct GreedyPathResult {
    std::optional<EllPath> path;
    int target_edges = 0;     // smallest odd t >= ceil(eps m / 2)
    std::size_t pruned_edges = 0;
    Rational density;         // e(H) / m^k
    int start_edges_tried = 0;
};

// Greedy ell-path in a k-partite host with parts `parts` (each of size m)
// following the class pattern of color_partition. Throws PreconditionError
// if e(H) < eps m^k or some edge is not crossing.
GreedyPathResult greedy_kpartite_path(const Hypergraph& h, const std::vector<VertexSet>& parts, int ell,
                                      const Rational& eps);

struct ConnectResult {
    std::optional<EllPath> path;
    std::size_t nodes = 0;
};

// Shortest ell-path with ordered ends s and t using at most `vertex_budget`
// vertices; interior vertices come from `allowed` (all vertices if empty).
ConnectResult short_connect(const Hypergraph& h, const std::vector<int>& s, const std::vector<int>& t,
                            int vertex_budget, const VertexSet& allowed = {});

// True iff some ell-path on V(p) plus `set` has the same ordered ends as p.
bool absorbs(const Hypergraph& h, const EllPath& p, const VertexSet& set);

// b-vertex ell-paths disjoint from `set` that absorb it. Paths are counted as
// edge sequences with ordered ends, so reorderings inside a block of vertices
// lying in the same windows are not counted twice.
std::size_t count_absorbing_paths(const Hypergraph& h, const VertexSet& set, int ell, int b);

struct AbsorberGadget {
    int k = 0, ell = 0;
    VertexSet s;                 // the absorbed set
    VertexSet x;                 // vertices of P
    std::vector<int> classes;    // class (0..k-1) of each vertex 0..|S|+|X|-1
    std::vector<Edge> edges;
    std::vector<int> p;          // P as a vertex sequence
    std::vector<int> q;          // Q as a vertex sequence
    int order() const { return static_cast<int>(s.size() + x.size()); }
    int b() const { return static_cast<int>(x.size()); }
};

struct GadgetSearch {
    std::optional<AbsorberGadget> gadget;
    std::size_t candidates = 0;
    bool exhausted = false;
};

// Smallest gadget by order, then lexicographically least Q. Throws
// ParameterError when (k - ell) divides k.
GadgetSearch search_absorber_gadget(int k, int ell, int size_cap, std::size_t node_limit = kDefaultNodeLimit);

// Checks the six gadget properties and k-partiteness directly from the
// fields; each entry names the failed property.
std::vector<std::string> gadget_violations(const AbsorberGadget& g);

struct PipelineParams {
    Rational reservoir_frac{1, 4};
    std::size_t good_threshold = 1;
    std::uint64_t seed = 0;
    int absorbers = 2;
    int attempts = 8;
    int connect_budget = 0;  // 0: 8k^5
};

struct PipelineReport {
    std::optional<EllCycle> cycle;
    std::string failed_stage;  // empty on success
    std::vector<std::string> log;
    int attempts_used = 0;
    int absorber_order = 0;
    int leftover = 0;           // |R''| in the last attempt
    int good_sets = 0;
    int leftover_sets = 0;
    bool degree_condition = false;  // minimum degree condition for the good-set graph on R''
};

// Desk-scale absorbing construction of a Hamilton ell-cycle. Every returned
// cycle has been validated.
PipelineReport absorb_pipeline(const Hypergraph& h, int ell, const PipelineParams& params = {});

}  // namespace hypertile

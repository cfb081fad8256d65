#pragma once

#include <string>

#include "hypertile/hypergraph.hpp"

namespace hypertile {

// Two k-edges sharing exactly b vertices, on 2k-b vertices. Vertices 0..k-b-1
// are private to the first edge, k-b..k-1 are shared.
Pattern y_pattern(int k, int b);

// All k-sets meeting {0..s-1}.
Hypergraph covering_construction(int n, int k, int s);

// Complete k-graph on k(s+1)-1 vertices.
Hypergraph clique_construction(int k, int s);

struct SpaceBarrier {
    Hypergraph graph;
    VertexSet a;  // every edge meets a; a = {0..|a|-1}
    int t = 0;    // n / (k - ell)
};

// n vertices, |A| = ceil(t/2) - 1 with t = n/(k-ell); edges are all k-sets meeting A.
SpaceBarrier space_barrier(int n, int k, int ell);

// Erdos-Renyi style k-graph: each k-set kept with probability num/den.
Hypergraph random_hypergraph(int n, int k, std::uint64_t num, std::uint64_t den, Rng& rng);

enum class ThresholdFamily {
    Auto,
    Codegree,           // d = k-1
    CodegreeMinusOne,   // d = k-2, ell < k/2
    Proven,             // the two proven ranges below d = k-2
    Conjectured,        // k-ell <= d <= k-1, ell < k/2
    SpaceBarrierLower,  // lower bound from the space barrier, any 1 <= d <= k-1
};

struct ThresholdQuery {
    int k = 0;
    int d = 0;
    int ell = 0;
    ThresholdFamily family = ThresholdFamily::Auto;
};

struct ThresholdResult {
    Rational value;
    std::string formula_id;
};

ThresholdFamily parse_threshold_family(const std::string& name);

// Asymptotic minimum d-degree density forcing a Hamilton ell-cycle. Throws
// RangeError naming the violated hypothesis.
ThresholdResult dirac_threshold(const ThresholdQuery& q);

// 1 - (1 - 1/(2(k-ell)))^(k-d)
Rational space_barrier_density(int k, int d, int ell);

// Smallest n for which the edge threshold below is asserted:
// (2(2k-b)^2+1)(k-1)s + s.
long tiling_edge_threshold_min_n(int k, int b, int s);

// C(n,k) - C(n-s+1,k) + C(n-1,k-1) + C(n-1,k-2)(2k-b)s: edge count forcing a
// Y_{k,b}-tiling of size s. Refuses n below the valid range unless forced.
BigInt tiling_edge_threshold(int n, int k, int b, int s, bool force = false);

// max{C(k(s+1)-1,k), C(n,k)-C(n-s,k)}: the two matching extremal counts.
BigInt matching_extremal_bound(int n, int k, int s);

// max{C((2k-b)(s+1)-1,k), C(n,k)-C(n-s,k)}: leading terms only; the o(n^k)
// correction has no explicit constant and is not modelled.
BigInt y_tiling_extremal_bound(int n, int k, int b, int s);

}  // namespace hypertile

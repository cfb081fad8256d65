#pragma once

#include <cstddef>
#include <vector>

#include "hypertile/hypergraph.hpp"

namespace hypertile {

// Weights on vertex sets (edges of some hypergraph) with every vertex load <= 1.
struct RationalWeighting {
    std::vector<VertexSet> sets;
    std::vector<Rational> weights;
    Rational size;

    // Indices with nonzero weight.
    std::vector<std::size_t> support() const;
};

// Weights on vertices with every edge of the target receiving total >= 1.
struct CoverWeighting {
    std::vector<Rational> weights;  // indexed by vertex
    Rational total;
};

struct FractionalMatching {
    Rational value;
    RationalWeighting weighting;
    CoverWeighting dual;  // optimal cover read off the final tableau
};

struct FractionalCover {
    Rational value;
    CoverWeighting cover;
};

constexpr std::size_t kDefaultMaxColumns = 200000;

// Per-vertex load of w; empty string if w is a fractional matching on n vertices.
std::string matching_violation(const RationalWeighting& w, int n);
// Empty string if c covers every edge of h.
std::string cover_violation(const CoverWeighting& c, const Hypergraph& h);

FractionalMatching max_fractional_matching(const Hypergraph& h, std::size_t max_columns = kDefaultMaxColumns);
FractionalCover min_fractional_cover(const Hypergraph& h);

// p-graph on V(h) with one edge per vertex set spanning a copy of f.
Hypergraph auxiliary_copy_hypergraph(const Hypergraph& h, const Pattern& f);

FractionalMatching max_fractional_f_tiling(const Hypergraph& h, const Pattern& f,
                                           std::size_t max_columns = kDefaultMaxColumns);

struct PerfectFractionalTiling {
    bool exists = false;
    Rational value;
    Rational target;            // n / p
    RationalWeighting tiling;   // optimal fractional tiling
    CoverWeighting dual;        // cover of the copy hypergraph; total < target when !exists
};

PerfectFractionalTiling perfect_fractional_tiling_exists(const Hypergraph& h, const Pattern& f);

struct CoverTransfer {
    VertexSet l;                  // the d vertices of smallest weight
    std::vector<Rational> averaged;  // input weights with the d smallest replaced by their average
    Rational x;                   // smallest averaged weight
    std::vector<Rational> mapped;    // (averaged - x) / (1 - p x), indexed by vertex
    CoverWeighting restricted;    // mapped weights on V \ L, indexed by position in `rest`
    VertexSet rest;
    Rational bound;               // n / p
    // Edges checked: edges of the copy hypergraph through L, copies of the
    // smaller Y in the link of L, and sets completing L to a threshold edge.
    std::size_t copy_link_edges = 0;
    std::size_t small_copy_edges = 0;
    std::size_t threshold_link_edges = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

// Transfers a cover omega of the Y_{k,b}-copy hypergraph of h with total below
// n/(2k-b) to a cover of the link of its d lightest vertices, and checks it.
CoverTransfer cover_transfer(const Hypergraph& h, int k, int b, int d, const std::vector<Rational>& omega);

}  // namespace hypertile

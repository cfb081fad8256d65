#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hypertile/common.hpp"

namespace hypertile {

class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    std::size_t size() const { return bits_; }
    std::size_t count() const;
    bool any() const;
    Bitset& operator&=(const Bitset& o);

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            for (std::uint64_t x = words_[w]; x; x &= x - 1) f(w * 64 + lowest_bit(x));
        }
    }

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

using Edge = std::vector<int>;

// Immutable k-uniform hypergraph on vertices 0..n-1. Edges are ascending,
// the edge list is sorted and duplicate-free.
class Hypergraph {
public:
    Hypergraph() = default;
    // Sorts the input; throws ParameterError on bad arity, range or duplicates.
    Hypergraph(int k, int n, std::vector<Edge> edges);

    static Hypergraph complete(int n, int k);

    int k() const { return k_; }
    int n() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t i) const { return edges_[i]; }

    // Index of an ascending k-set in the edge list, or -1.
    int find_edge(const Edge& sorted) const;
    bool has_edge(const Edge& sorted) const { return find_edge(sorted) >= 0; }

    // Bitset over edge indices of the edges containing v.
    const Bitset& incidence(int v) const { return incidence_[v]; }

    // Word masks are available when n <= 64; the search-heavy solvers need them.
    bool fits_mask() const { return n_ <= 64; }
    std::uint64_t edge_mask(std::size_t i) const { return masks_[i]; }
    const std::vector<std::uint64_t>& edge_masks() const { return masks_; }
    bool has_edge_mask(std::uint64_t m) const;

    bool operator==(const Hypergraph& o) const {
        return k_ == o.k_ && n_ == o.n_ && edges_ == o.edges_;
    }

private:
    int k_ = 1;
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<Bitset> incidence_;
    std::vector<std::uint64_t> masks_;
    std::vector<std::uint64_t> sorted_masks_;
};

// A small hypergraph used as a tiling unit.
struct Pattern {
    int k = 0;
    int p = 0;
    std::vector<Edge> edges;
    std::string label;

    static Pattern make(int k, int p, std::vector<Edge> edges, std::string label);
    static Pattern single_edge(int k);
};

struct Placement {
    int pattern = 0;            // index into the pattern list of the owner
    VertexSet image;            // ascending host vertices
    std::vector<int> witness;   // host edge indices, one per pattern edge
};

struct Relabeled {
    Hypergraph graph;
    std::vector<int> index_map;  // new vertex -> original vertex
};

std::size_t degree(const Hypergraph& h, const VertexSet& s);
std::size_t min_d_degree(const Hypergraph& h, int d);
Relabeled link(const Hypergraph& h, const VertexSet& l);
Relabeled induced(const Hypergraph& h, const VertexSet& w);

// Every vertex set of size p spanning a (not necessarily induced) copy of f,
// once per set, in ascending order of the set.
std::vector<Placement> copies_of(const Hypergraph& h, const Pattern& f);

// Calls f(combination) for all r-subsets of {0..n-1} in lexicographic order.
template <class F>
void for_each_combination(int n, int r, F&& f) {
    if (r < 0 || r > n) return;
    std::vector<int> c(r);
    for (int i = 0; i < r; ++i) c[i] = i;
    while (true) {
        f(static_cast<const std::vector<int>&>(c));
        int i = r - 1;
        while (i >= 0 && c[i] == n - r + i) --i;
        if (i < 0) return;
        ++c[i];
        for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
    }
}

Hypergraph read_hg(std::istream& in);
Hypergraph read_hg_file(const std::filesystem::path& path);
void write_hg(std::ostream& out, const Hypergraph& h);
void write_hg_file(const std::filesystem::path& path, const Hypergraph& h);

}  // namespace hypertile

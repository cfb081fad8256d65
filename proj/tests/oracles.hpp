#pragma once

// Brute-force reference implementations. None of these call into the search
// code they are compared against.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "hypertile/hamiltonicity.hpp"
#include "hypertile/hypergraph.hpp"

namespace oracle {

using hypertile::Edge;
using hypertile::Hypergraph;
using hypertile::Pattern;
using hypertile::VertexSet;

inline bool has_edge(const Hypergraph& h, Edge e) {
    std::sort(e.begin(), e.end());
    const auto& es = h.edges();
    return std::find(es.begin(), es.end(), e) != es.end();
}

// Does the vertex set `s` (|s| = f.p) span a copy of f? Tries every bijection.
inline bool spans_copy(const Hypergraph& h, const VertexSet& s, const Pattern& f) {
    std::vector<int> perm(s.begin(), s.end());
    std::sort(perm.begin(), perm.end());
    do {
        bool all = true;
        for (const auto& fe : f.edges) {
            Edge img;
            for (int v : fe) img.push_back(perm[v]);
            if (!has_edge(h, img)) {
                all = false;
                break;
            }
        }
        if (all) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline std::vector<VertexSet> copy_sets(const Hypergraph& h, const Pattern& f) {
    std::vector<VertexSet> out;
    std::vector<bool> pick(h.n(), false);
    std::fill(pick.begin(), pick.begin() + std::min(f.p, h.n()), true);
    if (f.p > h.n()) return out;
    do {
        VertexSet s;
        for (int v = 0; v < h.n(); ++v)
            if (pick[v]) s.push_back(v);
        if (spans_copy(h, s, f)) out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(out.begin(), out.end());
    return out;
}

struct TilingValue {
    int covered = 0;
    int count = 0;
    int two_edge = 0;  // members from patterns with two edges
};

// Maximum (covered, two-edge members) over families of pairwise disjoint
// copies drawn from several patterns, by plain recursion.
inline TilingValue max_tiling(const Hypergraph& h, const std::vector<Pattern>& patterns) {
    struct Item {
        std::uint64_t mask;
        int size;
        bool two;
    };
    std::vector<Item> items;
    for (const auto& f : patterns)
        for (const auto& s : copy_sets(h, f)) {
            std::uint64_t m = 0;
            for (int v : s) m |= std::uint64_t{1} << v;
            items.push_back({m, static_cast<int>(s.size()), f.edges.size() == 2});
        }
    TilingValue best;
    auto better = [](const TilingValue& a, const TilingValue& b) {
        return a.covered != b.covered ? a.covered > b.covered : a.two_edge > b.two_edge;
    };
    std::function<void(std::size_t, std::uint64_t, TilingValue)> rec = [&](std::size_t i, std::uint64_t used,
                                                                          TilingValue cur) {
        if (better(cur, best)) best = cur;
        for (std::size_t j = i; j < items.size(); ++j) {
            if (items[j].mask & used) continue;
            TilingValue next = cur;
            next.covered += items[j].size;
            next.count += 1;
            next.two_edge += items[j].two;
            rec(j + 1, used | items[j].mask, next);
        }
    };
    rec(0, 0, {});
    return best;
}

inline int max_matching_size(const Hypergraph& h) {
    return max_tiling(h, {Pattern::single_edge(h.k())}).count;
}

// Hamilton ell-cycle by trying every vertex order.
inline bool has_hamilton_cycle(const Hypergraph& h, int ell) {
    const int n = h.n(), k = h.k(), step = k - ell;
    if (n % step != 0 || n < k) return false;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    do {
        // rotations by multiples of k - ell are redundant: vertex 0 sits in the first window step
        if (std::find(order.begin(), order.end(), 0) - order.begin() >= step) continue;
        bool ok = true;
        for (int i = 0; i < n / step && ok; ++i) {
            Edge e;
            for (int j = 0; j < k; ++j) e.push_back(order[(i * step + j) % n]);
            ok = has_edge(h, e);
        }
        if (ok) return true;
    } while (std::next_permutation(order.begin(), order.end()));
    return false;
}

// Independent statement check for an ell-cycle given as a vertex order.
inline bool is_hamilton_cycle(const Hypergraph& h, int ell, const std::vector<int>& order) {
    const int n = h.n(), k = h.k(), step = k - ell;
    if (static_cast<int>(order.size()) != n || n % step != 0) return false;
    std::set<int> seen(order.begin(), order.end());
    if (static_cast<int>(seen.size()) != n || *seen.begin() != 0 || *seen.rbegin() != n - 1) return false;
    std::set<Edge> windows;
    for (int i = 0; i < n / step; ++i) {
        Edge e;
        for (int j = 0; j < k; ++j) e.push_back(order[(i * step + j) % n]);
        if (!has_edge(h, e)) return false;
        std::sort(e.begin(), e.end());
        windows.insert(e);
    }
    return static_cast<int>(windows.size()) == n / step;
}

// Failed gadget properties, recomputed from the raw fields: size at most k^4,
// P an ell-path spanning X, Q an ell-path spanning S and X with P's ordered
// ends, |S| = k - ell, no edge with two S-vertices, no class with two
// S-vertices, every edge meeting each class once.
inline std::vector<int> gadget_failures(const hypertile::AbsorberGadget& g) {
    std::vector<int> bad;
    const int k = g.k, ell = g.ell, step = k - ell;
    const int order = static_cast<int>(g.s.size() + g.x.size());
    if (order > k * k * k * k) bad.push_back(1);
    std::set<Edge> es;
    for (auto e : g.edges) {
        std::sort(e.begin(), e.end());
        es.insert(e);
    }
    auto path_ok = [&](const std::vector<int>& seq, std::set<int> span) {
        if (std::set<int>(seq.begin(), seq.end()) != span || seq.size() != span.size()) return false;
        if (seq.size() < static_cast<std::size_t>(k) || (seq.size() - ell) % step != 0) return false;
        for (std::size_t i = 0; i + k <= seq.size(); i += step) {
            Edge e(seq.begin() + static_cast<long>(i), seq.begin() + static_cast<long>(i + k));
            std::sort(e.begin(), e.end());
            if (!es.count(e)) return false;
        }
        return true;
    };
    const std::set<int> xs(g.x.begin(), g.x.end()), ss(g.s.begin(), g.s.end());
    std::set<int> both = xs;
    both.insert(ss.begin(), ss.end());
    if (!path_ok(g.p, xs)) bad.push_back(2);
    const bool ends = g.p.size() >= static_cast<std::size_t>(ell) && g.q.size() >= static_cast<std::size_t>(ell) &&
                      std::equal(g.p.begin(), g.p.begin() + ell, g.q.begin()) &&
                      std::equal(g.p.end() - ell, g.p.end(), g.q.end() - ell);
    if (!path_ok(g.q, both) || !ends) bad.push_back(3);
    if (static_cast<int>(ss.size()) != step || both.size() != static_cast<std::size_t>(order)) bad.push_back(4);
    for (const auto& e : es) {
        int c = 0;
        for (int v : e) c += static_cast<int>(ss.count(v));
        if (c > 1) {
            bad.push_back(5);
            break;
        }
    }
    if (static_cast<int>(g.classes.size()) != order) {
        bad.push_back(6);
        return bad;
    }
    std::set<int> s_classes;
    for (int v : ss) s_classes.insert(g.classes[v]);
    bool partite = s_classes.size() == ss.size();
    for (const auto& e : es) {
        std::set<int> cl;
        for (int v : e) cl.insert(g.classes[v]);
        partite = partite && static_cast<int>(cl.size()) == k;
    }
    if (!partite) bad.push_back(6);
    return bad;
}

}  // namespace oracle

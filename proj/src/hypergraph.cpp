#include "hypertile/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hypertile {

std::size_t Bitset::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += popcount(w);
    return c;
}

bool Bitset::any() const {
    for (auto w : words_)
        if (w) return true;
    return false;
}

Bitset& Bitset::operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

Hypergraph::Hypergraph(int k, int n, std::vector<Edge> edges) : k_(k), n_(n), edges_(std::move(edges)) {
    if (k < 1) throw ParameterError("uniformity must be at least 1");
    if (n < 0) throw ParameterError("vertex count must be non-negative");
    for (auto& e : edges_) {
        if (static_cast<int>(e.size()) != k) throw ParameterError("edge of wrong size");
        std::sort(e.begin(), e.end());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n) throw ParameterError("edge vertex out of range");
            if (i && e[i] == e[i - 1]) throw ParameterError("edge with repeated vertex");
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw ParameterError("duplicate edge");
    incidence_.assign(n, Bitset(edges_.size()));
    for (std::size_t i = 0; i < edges_.size(); ++i)
        for (int v : edges_[i]) incidence_[v].set(i);
    if (fits_mask()) {
        masks_.reserve(edges_.size());
        for (const auto& e : edges_) masks_.push_back(mask_of(e));
        sorted_masks_ = masks_;
        std::sort(sorted_masks_.begin(), sorted_masks_.end());
    }
}

Hypergraph Hypergraph::complete(int n, int k) {
    std::vector<Edge> edges;
    for_each_combination(n, k, [&](const std::vector<int>& c) { edges.push_back(c); });
    return Hypergraph(k, n, std::move(edges));
}

int Hypergraph::find_edge(const Edge& sorted) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), sorted);
    if (it == edges_.end() || *it != sorted) return -1;
    return static_cast<int>(it - edges_.begin());
}

bool Hypergraph::has_edge_mask(std::uint64_t m) const {
    return std::binary_search(sorted_masks_.begin(), sorted_masks_.end(), m);
}

Pattern Pattern::make(int k, int p, std::vector<Edge> edges, std::string label) {
    if (p > 2 * k) throw ParameterError("pattern has more than 2k vertices");
    Hypergraph check(k, p, edges);  // validates arity, range, duplicates
    return Pattern{k, p, check.edges(), std::move(label)};
}

Pattern Pattern::single_edge(int k) {
    Edge e(k);
    for (int i = 0; i < k; ++i) e[i] = i;
    return make(k, k, {e}, "edge");
}

namespace {

void check_vertex_set(const Hypergraph& h, const VertexSet& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || s[i] >= h.n()) throw ParameterError("vertex out of range");
        if (i && s[i] <= s[i - 1]) throw ParameterError("vertex set must be ascending and distinct");
    }
}

Bitset edges_containing(const Hypergraph& h, const VertexSet& s) {
    if (s.empty()) {
        Bitset all(h.num_edges());
        for (std::size_t i = 0; i < h.num_edges(); ++i) all.set(i);
        return all;
    }
    Bitset acc = h.incidence(s[0]);
    for (std::size_t i = 1; i < s.size(); ++i) acc &= h.incidence(s[i]);
    return acc;
}

Relabeled relabel(const Hypergraph& h, int k, const std::vector<int>& keep, const std::vector<Edge>& old_edges) {
    std::vector<int> pos(h.n(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    edges.reserve(old_edges.size());
    for (const auto& e : old_edges) {
        Edge ne;
        for (int v : e) ne.push_back(pos[v]);
        edges.push_back(std::move(ne));
    }
    return {Hypergraph(k, static_cast<int>(keep.size()), std::move(edges)), keep};
}

}  // namespace

std::size_t degree(const Hypergraph& h, const VertexSet& s) {
    if (static_cast<int>(s.size()) > h.k()) throw ArityError("degree: |S| exceeds the uniformity");
    check_vertex_set(h, s);
    if (s.empty()) return h.num_edges();
    return edges_containing(h, s).count();
}

std::size_t min_d_degree(const Hypergraph& h, int d) {
    if (d < 0 || d > h.k()) throw ArityError("min_d_degree: d must lie in [0, k]");
    if (d == 0) return h.num_edges();
    if (d > h.n()) return 0;
    std::size_t best = SIZE_MAX;
    for_each_combination(h.n(), d, [&](const std::vector<int>& s) {
        if (best == 0) return;
        best = std::min(best, edges_containing(h, s).count());
    });
    return best;
}

Relabeled link(const Hypergraph& h, const VertexSet& l) {
    if (static_cast<int>(l.size()) >= h.k()) throw ArityError("link: |L| must be below the uniformity");
    check_vertex_set(h, l);
    std::vector<int> keep;
    for (int v = 0; v < h.n(); ++v)
        if (!std::binary_search(l.begin(), l.end(), v)) keep.push_back(v);
    std::vector<Edge> rest;
    edges_containing(h, l).for_each([&](std::size_t i) {
        Edge e;
        for (int v : h.edge(i))
            if (!std::binary_search(l.begin(), l.end(), v)) e.push_back(v);
        rest.push_back(std::move(e));
    });
    return relabel(h, h.k() - static_cast<int>(l.size()), keep, rest);
}

Relabeled induced(const Hypergraph& h, const VertexSet& w) {
    check_vertex_set(h, w);
    std::vector<char> in(h.n(), 0);
    for (int v : w) in[v] = 1;
    std::vector<Edge> inside;
    for (const auto& e : h.edges())
        if (std::all_of(e.begin(), e.end(), [&](int v) { return in[v]; })) inside.push_back(e);
    return relabel(h, h.k(), w, inside);
}

namespace {

struct CopySearch {
    const Hypergraph& h;
    const Pattern& f;
    std::vector<int> order;                     // pattern vertices in assignment order
    std::vector<std::vector<int>> complete_at;  // pattern edges whose last vertex is order[i]
    std::vector<std::vector<int>> anchor;       // earlier pattern vertices sharing an edge with order[i]
    std::vector<int> image;                     // pattern vertex -> host vertex
    std::vector<char> used;
    std::map<VertexSet, Placement> found;

    CopySearch(const Hypergraph& host, const Pattern& pat) : h(host), f(pat) {
        const int p = f.p;
        std::vector<int> deg(p, 0), rank(p, -1);
        for (const auto& e : f.edges)
            for (int v : e) ++deg[v];
        // Greedy degeneracy-style order: most connections to placed vertices first.
        for (int step = 0; step < p; ++step) {
            int best = -1, best_links = -1;
            for (int v = 0; v < p; ++v) {
                if (rank[v] >= 0) continue;
                int links = 0;
                for (const auto& e : f.edges)
                    if (std::count(e.begin(), e.end(), v))
                        for (int u : e)
                            if (u != v && rank[u] >= 0) ++links;
                if (best < 0 || links > best_links || (links == best_links && deg[v] > deg[best])) {
                    best = v;
                    best_links = links;
                }
            }
            rank[best] = step;
            order.push_back(best);
        }
        complete_at.resize(p);
        anchor.resize(p);
        for (std::size_t ei = 0; ei < f.edges.size(); ++ei) {
            int last = 0;
            for (int v : f.edges[ei]) last = std::max(last, rank[v]);
            complete_at[last].push_back(static_cast<int>(ei));
        }
        for (int i = 0; i < p; ++i) {
            const int v = order[i];
            std::vector<int> best;
            for (const auto& e : f.edges) {
                if (!std::count(e.begin(), e.end(), v)) continue;
                std::vector<int> earlier;
                for (int u : e)
                    if (rank[u] < i) earlier.push_back(u);
                if (earlier.size() > best.size()) best = earlier;
            }
            anchor[i] = best;
        }
        image.assign(p, -1);
        used.assign(h.n(), 0);
    }

    Edge host_edge(int ei) const {
        Edge e;
        for (int v : f.edges[ei]) e.push_back(image[v]);
        std::sort(e.begin(), e.end());
        return e;
    }

    void run(int depth) {
        if (depth == f.p) {
            VertexSet img(image.begin(), image.end());
            std::sort(img.begin(), img.end());
            if (found.count(img)) return;
            Placement pl;
            pl.image = img;
            for (std::size_t ei = 0; ei < f.edges.size(); ++ei) pl.witness.push_back(h.find_edge(host_edge(ei)));
            found.emplace(img, std::move(pl));
            return;
        }
        std::vector<int> candidates;
        if (anchor[depth].empty()) {
            for (int v = 0; v < h.n(); ++v)
                if (!used[v]) candidates.push_back(v);
        } else {
            VertexSet fixed;
            for (int u : anchor[depth]) fixed.push_back(image[u]);
            std::sort(fixed.begin(), fixed.end());
            std::vector<char> mark(h.n(), 0);
            edges_containing(h, fixed).for_each([&](std::size_t i) {
                for (int v : h.edge(i)) mark[v] = 1;
            });
            for (int v = 0; v < h.n(); ++v)
                if (mark[v] && !used[v]) candidates.push_back(v);
        }
        const int pv = order[depth];
        for (int c : candidates) {
            image[pv] = c;
            used[c] = 1;
            bool ok = true;
            for (int ei : complete_at[depth])
                if (!h.has_edge(host_edge(ei))) {
                    ok = false;
                    break;
                }
            if (ok) run(depth + 1);
            used[c] = 0;
        }
        image[pv] = -1;
    }
};

}  // namespace

std::vector<Placement> copies_of(const Hypergraph& h, const Pattern& f) {
    if (f.k != h.k()) throw ArityError("copies_of: pattern uniformity differs from host");
    std::vector<Placement> out;
    if (f.p > h.n()) return out;
    CopySearch search(h, f);
    search.run(0);
    out.reserve(search.found.size());
    for (auto& [img, pl] : search.found) out.push_back(std::move(pl));
    return out;
}

Hypergraph read_hg(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_header = false;
    int k = 0, n = 0;
    long m = 0;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<long> nums;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                long v = std::stol(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                nums.push_back(v);
            } catch (const std::exception&) {
                throw ParseError(lineno, "not an integer: '" + tok + "'");
            }
        }
        if (nums.empty()) continue;
        if (!have_header) {
            if (nums.size() != 3) throw ParseError(lineno, "header must be 'k n m'");
            if (nums[0] < 1 || nums[1] < 0 || nums[2] < 0) throw ParseError(lineno, "invalid header values");
            k = static_cast<int>(nums[0]);
            n = static_cast<int>(nums[1]);
            m = nums[2];
            have_header = true;
            continue;
        }
        if (static_cast<long>(edges.size()) == m) throw ParseError(lineno, "more edge lines than declared");
        if (static_cast<int>(nums.size()) != k)
            throw ParseError(lineno, "edge has " + std::to_string(nums.size()) + " vertices, expected " + std::to_string(k));
        Edge e;
        for (std::size_t i = 0; i < nums.size(); ++i) {
            if (nums[i] < 0 || nums[i] >= n)
                throw ParseError(lineno, "vertex " + std::to_string(nums[i]) + " out of range [0," + std::to_string(n) + ")");
            if (i && nums[i] <= nums[i - 1]) throw ParseError(lineno, "edge vertices must be strictly ascending");
            e.push_back(static_cast<int>(nums[i]));
        }
        if (!seen.insert(e).second) throw ParseError(lineno, "duplicate edge");
        edges.push_back(std::move(e));
    }
    if (!have_header) throw ParseError(lineno, "missing header");
    if (static_cast<long>(edges.size()) != m)
        throw ParseError(lineno, "declared " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    return Hypergraph(k, n, std::move(edges));
}

Hypergraph read_hg_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_hg(in);
}

void write_hg(std::ostream& out, const Hypergraph& h) {
    out << h.k() << ' ' << h.n() << ' ' << h.num_edges() << '\n';
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
        out << '\n';
    }
}

void write_hg_file(const std::filesystem::path& path, const Hypergraph& h) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_hg(out, h);
}

}  // namespace hypertile

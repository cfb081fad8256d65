#include "hypertile/hamiltonicity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace hypertile {

namespace {

std::vector<Edge> windows(const std::vector<int>& seq, int k, int stride, bool cyclic) {
    std::vector<Edge> out;
    const int len = static_cast<int>(seq.size());
    const int count = cyclic ? (stride > 0 ? len / stride : 0) : (len >= k ? (len - k) / stride + 1 : 0);
    for (int i = 0; i < count; ++i) {
        Edge e;
        for (int j = 0; j < k; ++j) e.push_back(seq[(i * stride + j) % len]);
        std::sort(e.begin(), e.end());
        out.push_back(std::move(e));
    }
    return out;
}

void check_ell(int k, int ell) {
    if (ell < 1 || ell >= k) throw ParameterError("need 1 <= ell < k");
}

// Fills a sequence of positions window by window. Window i covers positions
// i*s .. i*s+k-1 (mod length when cyclic). Each step picks a host edge through
// the already placed vertices of the window and places its other vertices.
// Positions lying in exactly the same windows are interchangeable, so unless
// marked ordered they are filled in increasing vertex order.
class WindowFill {
public:
    WindowFill(const Hypergraph& h, int ell, int length, bool cyclic)
        : h_(h), k_(h.k()), s_(h.k() - ell), ell_(ell), length_(length), cyclic_(cyclic), seq_(length, -1),
          ordered_(length, 0) {
        count_ = cyclic ? length / s_ : (length - ell) / s_;
        std::vector<std::vector<int>> member(length);
        for (int i = 0; i < count_; ++i)
            for (int j = 0; j < k_; ++j) member[pos(i, j)].push_back(i);
        std::map<std::vector<int>, int> ids;
        group_.resize(length);
        for (int p = 0; p < length; ++p) group_[p] = ids.emplace(member[p], static_cast<int>(ids.size())).first->second;
        future_.assign(count_ + 1, 0);
        for (int i = count_ - 1; i >= 0; --i) {
            future_[i] = future_[i + 1];
            if (i + 1 < count_)
                for (int j = 0; j < k_; ++j) future_[i] |= std::uint64_t{1} << pos(i + 1, j);
        }
        incident_.resize(h.n());
        for (int v = 0; v < h.n(); ++v) h.incidence(v).for_each([&](std::size_t e) { incident_[v].push_back(static_cast<int>(e)); });
        allowed_ = h.n() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << h.n()) - 1;
    }

    void fix(int p, int v) {
        seq_[p] = v;
        used_ |= std::uint64_t{1} << v;
        ordered_[p] = 1;
    }
    void set_ordered(int p) { ordered_[p] = 1; }
    void set_allowed(std::uint64_t mask) { allowed_ = mask; }
    void set_spanning(bool on) { spanning_ = on; }
    void set_node_limit(std::size_t limit) { node_limit_ = limit; }

    // Calls done(seq) for each completed sequence until it returns true.
    bool run(const std::function<bool(const std::vector<int>&)>& done) {
        done_ = &done;
        return step(0);
    }

    std::size_t nodes() const { return nodes_; }
    bool limit_hit() const { return limit_hit_; }
    int windows_count() const { return count_; }

private:
    int pos(int i, int j) const { return cyclic_ ? (i * s_ + j) % length_ : i * s_ + j; }

    bool coverable_rest(int i) const {
        std::uint64_t reach = allowed_ & ~used_;
        const std::uint64_t need = reach;
        for (std::uint64_t f = future_[i]; f; f &= f - 1) {
            const int p = lowest_bit(f);
            if (seq_[p] >= 0) reach |= std::uint64_t{1} << seq_[p];
        }
        for (std::uint64_t m = need; m; m &= m - 1) {
            const int v = lowest_bit(m);
            bool ok = false;
            for (int e : incident_[v])
                if ((h_.edge_mask(e) & ~reach) == 0) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        return true;
    }

    bool step(int i) {
        if (nodes_ >= node_limit_) {
            limit_hit_ = true;
            return false;
        }
        ++nodes_;
        if (i == count_) return (*done_)(seq_);
        std::uint64_t known = 0;
        std::vector<int> fresh;
        for (int j = 0; j < k_; ++j) {
            const int p = pos(i, j);
            if (seq_[p] >= 0) known |= std::uint64_t{1} << seq_[p];
            else fresh.push_back(p);
        }
        if (fresh.empty()) return h_.has_edge_mask(known) && step(i + 1);
        const std::uint64_t avail = allowed_ & ~used_;
        std::vector<std::uint64_t> rests;
        auto consider = [&](std::uint64_t m) {
            if ((m & known) != known) return;
            const std::uint64_t rest = m & ~known;
            if ((rest & ~avail) == 0 && popcount(rest) == static_cast<int>(fresh.size())) rests.push_back(rest);
        };
        if (known) {
            int pivot = -1;
            for (std::uint64_t m = known; m; m &= m - 1) {
                const int v = lowest_bit(m);
                if (pivot < 0 || incident_[v].size() < incident_[pivot].size()) pivot = v;
            }
            for (int e : incident_[pivot]) consider(h_.edge_mask(e));
        } else {
            for (auto m : h_.edge_masks()) consider(m);
        }
        for (auto rest : rests) {
            std::vector<int> verts = members_of(rest);
            do {
                bool canonical = true;
                for (std::size_t a = 0; a < fresh.size() && canonical; ++a)
                    for (std::size_t b = a + 1; b < fresh.size() && canonical; ++b)
                        if (!ordered_[fresh[a]] && !ordered_[fresh[b]] && group_[fresh[a]] == group_[fresh[b]] &&
                            verts[a] > verts[b])
                            canonical = false;
                if (!canonical) continue;
                for (std::size_t a = 0; a < fresh.size(); ++a) seq_[fresh[a]] = verts[a];
                used_ |= rest;
                const bool go = !spanning_ || coverable_rest(i);
                if (go && step(i + 1)) return true;
                used_ &= ~rest;
                for (int p : fresh) seq_[p] = -1;
                if (limit_hit_) return false;
            } while (std::next_permutation(verts.begin(), verts.end()));
        }
        return false;
    }

    const Hypergraph& h_;
    int k_, s_, ell_, length_;
    bool cyclic_;
    int count_ = 0;
    std::vector<int> seq_;
    std::vector<char> ordered_;
    std::vector<int> group_;
    std::vector<std::uint64_t> future_;
    std::vector<std::vector<int>> incident_;
    std::uint64_t used_ = 0;
    std::uint64_t allowed_ = 0;
    bool spanning_ = false;
    std::size_t node_limit_ = kDefaultNodeLimit;
    std::size_t nodes_ = 0;
    bool limit_hit_ = false;
    const std::function<bool(const std::vector<int>&)>* done_ = nullptr;
};

std::uint64_t all_vertices(int n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

int EllPath::edge_count(int k) const {
    const int len = static_cast<int>(vertices.size());
    return len >= k ? (len - ell) / (k - ell) : 0;
}

std::vector<Edge> EllPath::edges(int k) const { return windows(vertices, k, k - ell, false); }

std::vector<int> EllPath::beginning() const {
    return {vertices.begin(), vertices.begin() + std::min<std::size_t>(ell, vertices.size())};
}

std::vector<int> EllPath::ending() const {
    return {vertices.end() - std::min<std::size_t>(ell, vertices.size()), vertices.end()};
}

int EllCycle::edge_count(int k) const { return static_cast<int>(vertices.size()) / (k - ell); }

std::vector<Edge> EllCycle::edges(int k) const { return windows(vertices, k, k - ell, true); }

std::vector<std::string> path_violations(const Hypergraph& h, const EllPath& p) {
    std::vector<std::string> out;
    const int k = h.k();
    if (p.ell < 1 || p.ell >= k) return {"ell outside [1, k-1]"};
    const int len = static_cast<int>(p.vertices.size());
    if (len < k) out.push_back("fewer than k vertices");
    if (len % (k - p.ell) != p.ell % (k - p.ell)) out.push_back("length is not ell mod (k - ell)");
    std::set<int> seen;
    for (int v : p.vertices) {
        if (v < 0 || v >= h.n()) out.push_back("vertex " + std::to_string(v) + " out of range");
        else if (!seen.insert(v).second) out.push_back("vertex " + std::to_string(v) + " repeated");
    }
    if (!out.empty()) return out;
    for (const auto& e : p.edges(k))
        if (!h.has_edge(e)) out.push_back("window is not an edge");
    return out;
}

bool validate_ell_path(const Hypergraph& h, const EllPath& p) { return path_violations(h, p).empty(); }

std::vector<std::string> cycle_violations(const Hypergraph& h, const EllCycle& c, bool spanning) {
    std::vector<std::string> out;
    const int k = h.k();
    if (c.ell < 1 || c.ell >= k) return {"ell outside [1, k-1]"};
    const int len = static_cast<int>(c.vertices.size());
    const int s = k - c.ell;
    if (len < k) out.push_back("fewer than k vertices");
    if (len % s != 0) out.push_back("length not divisible by k - ell");
    std::set<int> seen;
    for (int v : c.vertices) {
        if (v < 0 || v >= h.n()) out.push_back("vertex " + std::to_string(v) + " out of range");
        else if (!seen.insert(v).second) out.push_back("vertex " + std::to_string(v) + " repeated");
    }
    if (spanning && static_cast<int>(seen.size()) != h.n()) out.push_back("cycle does not span the host");
    if (!out.empty()) return out;
    const auto es = c.edges(k);
    if (static_cast<int>(es.size()) != len / s) out.push_back("edge count differs from n/(k - ell)");
    std::set<Edge> distinct(es.begin(), es.end());
    if (distinct.size() != es.size()) out.push_back("repeated edge");
    for (const auto& e : es)
        if (!h.has_edge(e)) out.push_back("window is not an edge");
    if (2 * c.ell <= k) {
        std::map<int, int> deg;
        for (const auto& e : es)
            for (int v : e)
                if (++deg[v] > 2) {
                    out.push_back("vertex " + std::to_string(v) + " lies in more than two edges");
                }
    }
    return out;
}

bool validate_ell_cycle(const Hypergraph& h, const EllCycle& c, bool spanning) {
    return cycle_violations(h, c, spanning).empty();
}

HamiltonSearch exact_hamilton_ell_cycle(const Hypergraph& h, int ell, std::size_t node_limit) {
    const int k = h.k();
    check_ell(k, ell);
    const int s = k - ell;
    if (h.n() % s != 0) throw ParameterError("exact_hamilton_ell_cycle: (k - ell) must divide n");
    if (!h.fits_mask()) throw GuardError("exact_hamilton_ell_cycle: at most 64 vertices");
    HamiltonSearch out;
    if (h.n() < k) {
        out.exhausted = true;
        return out;
    }
    bool complete = true;
    for (int offset = 0; offset < s && !out.cycle; ++offset) {
        WindowFill fill(h, ell, h.n(), true);
        fill.fix(offset, 0);
        fill.set_spanning(true);
        fill.set_node_limit(node_limit > out.nodes ? node_limit - out.nodes : 0);
        fill.run([&](const std::vector<int>& seq) {
            EllCycle c{ell, seq};
            if (!validate_ell_cycle(h, c, true)) return false;
            out.cycle = c;
            return true;
        });
        out.nodes += fill.nodes();
        complete = complete && !fill.limit_hit();
    }
    out.exhausted = !out.cycle && complete;
    return out;
}

int partition_color(int j, int k, int ell) {
    if (j < k) return j + 1;
    const int s = k - ell;
    const int r = (j - k) % (2 * s);
    const int a = k - 2 * ell;
    if (r < a) return r + 1;
    if (r < a + ell) return a + (r - a) + 1;
    if (r < 2 * a + ell) return r - a - ell + 1;
    return k - ell + (r - 2 * a - ell) + 1;
}

std::vector<VertexSet> color_partition(const EllPath& p, int k) {
    const int ell = p.ell;
    check_ell(k, ell);
    if (2 * ell >= k) throw PreconditionError("color_partition: need ell < k/2");
    const int s = k - ell;
    const int len = static_cast<int>(p.vertices.size());
    if (len < k || (len - ell) % s != 0) throw PreconditionError("color_partition: not an ell-path length");
    const int t = (len - ell) / s;
    if (t % 2 == 0) throw PreconditionError("color_partition: edge count must be odd");
    std::vector<VertexSet> classes(k);
    for (int j = 0; j < len; ++j) classes[partition_color(j, k, ell) - 1].push_back(p.vertices[j]);
    for (auto& c : classes) std::sort(c.begin(), c.end());
    for (int i = 0; i < t; ++i) {
        std::vector<int> hit(k, 0);
        for (int j = 0; j < k; ++j) ++hit[partition_color(i * s + j, k, ell) - 1];
        if (std::any_of(hit.begin(), hit.end(), [](int x) { return x != 1; }))
            throw std::logic_error("color_partition: window is not rainbow");
    }
    return classes;
}

GreedyPathResult greedy_kpartite_path(const Hypergraph& h, const std::vector<VertexSet>& parts, int ell,
                                      const Rational& eps) {
    const int k = h.k();
    check_ell(k, ell);
    if (2 * ell >= k) throw ParameterError("greedy_kpartite_path: need ell < k/2");
    if (static_cast<int>(parts.size()) != k) throw ParameterError("greedy_kpartite_path: need k parts");
    if (!h.fits_mask()) throw GuardError("greedy_kpartite_path: at most 64 vertices");
    if (eps <= 0) throw ParameterError("greedy_kpartite_path: eps must be positive");
    const int m = static_cast<int>(parts[0].size());
    std::vector<int> part_of(h.n(), -1);
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(parts[i].size()) != m) throw ParameterError("greedy_kpartite_path: parts differ in size");
        for (int v : parts[i]) {
            if (v < 0 || v >= h.n() || part_of[v] >= 0) throw ParameterError("greedy_kpartite_path: parts overlap");
            part_of[v] = i;
        }
    }
    for (const auto& e : h.edges()) {
        std::uint64_t seen = 0;
        for (int v : e)
            if (part_of[v] >= 0) seen |= std::uint64_t{1} << part_of[v];
        if (popcount(seen) != k) throw PreconditionError("greedy_kpartite_path: host edge is not crossing");
    }
    GreedyPathResult out;
    BigInt mk = 1;
    for (int i = 0; i < k; ++i) mk *= m;
    out.density = Rational(BigInt(static_cast<long>(h.num_edges())), mk);
    out.density.canonicalize();
    if (out.density < eps)
        throw PreconditionError("greedy_kpartite_path: density " + to_string(out.density) + " below eps " +
                                to_string(eps));

    // Remove edges through crossing ell-sets of small positive degree until stable.
    BigInt mkl = 1;
    for (int i = 0; i < k - ell; ++i) mkl *= m;
    const Rational low = eps * Rational(mkl) / Rational(2 * binomial(k, ell));
    std::vector<char> alive(h.num_edges(), 1);
    for (bool changed = true; changed;) {
        changed = false;
        std::map<std::uint64_t, long> deg;
        for (std::size_t e = 0; e < h.num_edges(); ++e) {
            if (!alive[e]) continue;
            for_each_combination(k, ell, [&](const std::vector<int>& c) {
                std::uint64_t m2 = 0;
                for (int i : c) m2 |= std::uint64_t{1} << h.edge(e)[i];
                ++deg[m2];
            });
        }
        for (const auto& [set, d] : deg) {
            if (Rational(d) >= low) continue;
            for (std::size_t e = 0; e < h.num_edges(); ++e)
                if (alive[e] && (h.edge_mask(e) & set) == set) {
                    alive[e] = 0;
                    ++out.pruned_edges;
                    changed = true;
                }
        }
    }

    mpz_class need;
    const Rational half = eps * m / 2;
    mpz_cdiv_q(need.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
    int t = std::max(1, static_cast<int>(need.get_si()));
    if (t % 2 == 0) ++t;
    out.target_edges = t;
    const int s = k - ell;

    for (std::size_t start = 0; start < h.num_edges(); ++start) {
        if (!alive[start]) continue;
        ++out.start_edges_tried;
        std::vector<int> seq(k);
        for (int j = 0; j < k; ++j)
            for (int v : h.edge(start))
                if (part_of[v] == partition_color(j, k, ell) - 1) seq[j] = v;
        std::uint64_t used = h.edge_mask(start);
        int edges = 1;
        while (edges < t) {
            const int base = edges * s;
            std::uint64_t end = 0;
            for (int j = 0; j < ell; ++j) end |= std::uint64_t{1} << seq[base + j];
            bool extended = false;
            for (std::size_t e = 0; e < h.num_edges() && !extended; ++e) {
                if (!alive[e] || (h.edge_mask(e) & end) != end || (h.edge_mask(e) & ~end & used)) continue;
                for (int j = ell; j < k; ++j) {
                    const int want = partition_color(base + j, k, ell) - 1;
                    for (int v : h.edge(e))
                        if (part_of[v] == want) seq.push_back(v);
                }
                used |= h.edge_mask(e);
                ++edges;
                extended = true;
            }
            if (!extended) break;
        }
        if (edges < t) continue;
        EllPath p{ell, seq};
        if (!validate_ell_path(h, p)) throw std::logic_error("greedy_kpartite_path produced an invalid path");
        out.path = p;
        return out;
    }
    return out;
}

ConnectResult short_connect(const Hypergraph& h, const std::vector<int>& s, const std::vector<int>& t,
                            int vertex_budget, const VertexSet& allowed) {
    const int k = h.k();
    const int ell = static_cast<int>(s.size());
    check_ell(k, ell);
    if (t.size() != s.size()) throw ParameterError("short_connect: ends differ in size");
    if (!h.fits_mask()) throw GuardError("short_connect: at most 64 vertices");
    std::set<int> ends(s.begin(), s.end());
    ends.insert(t.begin(), t.end());
    if (static_cast<int>(ends.size()) != 2 * ell) throw ParameterError("short_connect: ends must be disjoint");
    for (int v : ends)
        if (v < 0 || v >= h.n()) throw ParameterError("short_connect: end vertex out of range");
    const int step = k - ell;
    std::uint64_t pool = allowed.empty() ? all_vertices(h.n()) : mask_of(allowed);
    for (int v : ends) pool &= ~(std::uint64_t{1} << v);
    ConnectResult out;
    for (int r = 1; ell + r * step <= vertex_budget; ++r) {
        const int len = ell + r * step;
        if (len < 2 * ell) continue;
        if (len > 64) break;
        WindowFill fill(h, ell, len, false);
        for (int j = 0; j < ell; ++j) {
            fill.fix(j, s[j]);
            fill.fix(len - ell + j, t[j]);
        }
        fill.set_allowed(pool);
        fill.run([&](const std::vector<int>& seq) {
            out.path = EllPath{ell, seq};
            return true;
        });
        out.nodes += fill.nodes();
        if (out.path) return out;
    }
    return out;
}

namespace {

std::optional<std::vector<int>> absorbing_sequence(const Hypergraph& h, const std::vector<int>& p, int ell,
                                                   const VertexSet& set) {
    const int len = static_cast<int>(p.size() + set.size());
    if (len > 64 || static_cast<int>(p.size()) < 2 * ell) return std::nullopt;
    WindowFill fill(h, ell, len, false);
    for (int j = 0; j < ell; ++j) {
        fill.fix(j, p[j]);
        fill.fix(len - ell + j, p[p.size() - ell + j]);
    }
    std::uint64_t pool = mask_of(set);
    for (std::size_t j = ell; j + ell < p.size(); ++j) pool |= std::uint64_t{1} << p[j];
    fill.set_allowed(pool);
    std::optional<std::vector<int>> q;
    fill.run([&](const std::vector<int>& seq) {
        q = seq;
        return true;
    });
    return q;
}

}  // namespace

bool absorbs(const Hypergraph& h, const EllPath& p, const VertexSet& set) {
    const int s = h.k() - p.ell;
    if (static_cast<int>(set.size()) % s != 0) return false;
    for (int v : set)
        if (std::find(p.vertices.begin(), p.vertices.end(), v) != p.vertices.end()) return false;
    return absorbing_sequence(h, p.vertices, p.ell, set).has_value();
}

std::size_t count_absorbing_paths(const Hypergraph& h, const VertexSet& set, int ell, int b) {
    const int k = h.k();
    check_ell(k, ell);
    const int s = k - ell;
    if (static_cast<int>(set.size()) != s) throw ParameterError("count_absorbing_paths: need |S| = k - ell");
    if (!h.fits_mask()) throw GuardError("count_absorbing_paths: at most 64 vertices");
    if (b < k || b % s != ell % s || b + s > h.n()) return 0;
    WindowFill fill(h, ell, b, false);
    for (int j = 0; j < ell; ++j) {
        fill.set_ordered(j);
        fill.set_ordered(b - ell + j);
    }
    fill.set_allowed(all_vertices(h.n()) & ~mask_of(set));
    std::size_t count = 0;
    fill.run([&](const std::vector<int>& seq) {
        if (absorbing_sequence(h, seq, ell, set)) ++count;
        return false;
    });
    return count;
}

namespace {

bool rainbow_coloring(int k, int order, const std::vector<Edge>& edges, const VertexSet& s, std::vector<int>& cls) {
    cls.assign(order, -1);
    std::vector<std::vector<int>> through(order);
    for (std::size_t e = 0; e < edges.size(); ++e)
        for (int v : edges[e]) through[v].push_back(static_cast<int>(e));
    std::function<bool(int, int)> go = [&](int v, int used) -> bool {
        if (v == order) return true;
        for (int c = 0; c < std::min(k, used + 1); ++c) {
            bool ok = true;
            for (int e : through[v])
                for (int u : edges[e])
                    if (u != v && cls[u] == c) ok = false;
            if (std::binary_search(s.begin(), s.end(), v))
                for (int u : s)
                    if (u != v && cls[u] == c) ok = false;
            if (!ok) continue;
            cls[v] = c;
            if (go(v + 1, std::max(used, c + 1))) return true;
            cls[v] = -1;
        }
        return false;
    };
    return go(0, 0);
}

}  // namespace

GadgetSearch search_absorber_gadget(int k, int ell, int size_cap, std::size_t node_limit) {
    if (k < 3) throw ParameterError("search_absorber_gadget: need k >= 3");
    check_ell(k, ell);
    const int s = k - ell;
    if (k % s == 0) throw ParameterError("search_absorber_gadget: unsupported parameters, (k - ell) divides k");
    long cap = size_cap;
    const long k4 = static_cast<long>(k) * k * k * k;
    cap = std::min(cap, k4);
    GadgetSearch out;
    std::size_t nodes = 0;
    bool truncated = false;
    int b = k;
    while (b % s != ell % s) ++b;
    for (; b + s <= cap; b += s) {
        const int len = b + s;
        std::vector<int> p(b);
        for (int i = 0; i < b; ++i) p[i] = i;
        const auto p_edges = windows(p, k, s, false);
        std::vector<int> q(len, -1);
        for (int j = 0; j < ell; ++j) {
            q[j] = j;
            q[len - ell + j] = b - ell + j;
        }
        std::vector<int> pool;
        for (int v = ell; v < b - ell; ++v) pool.push_back(v);
        for (int v = b; v < b + s; ++v) pool.push_back(v);
        std::vector<char> taken(len, 0);
        VertexSet sset;
        for (int v = b; v < b + s; ++v) sset.push_back(v);
        std::optional<AbsorberGadget> found;

        auto window_ok = [&](int pos) {
            // Checks every window of Q that ends at position pos.
            for (int i = 0; i * s + k - 1 < len; ++i) {
                if (i * s + k - 1 != pos) continue;
                int count = 0;
                for (int j = 0; j < k; ++j) count += q[i * s + j] >= b;
                if (count > 1) return false;
            }
            return true;
        };
        std::function<bool(int, int)> place = [&](int pos, int next_s) -> bool {
            if (++nodes > node_limit) {
                truncated = true;
                return true;
            }
            if (pos == len - ell) {
                for (int j = len - ell; j < len; ++j)
                    if (!window_ok(j)) return false;
                ++out.candidates;
                std::vector<Edge> edges = p_edges;
                for (auto& e : windows(q, k, s, false)) edges.push_back(e);
                std::sort(edges.begin(), edges.end());
                edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
                std::vector<int> cls;
                if (!rainbow_coloring(k, len, edges, sset, cls)) return false;
                AbsorberGadget g;
                g.k = k;
                g.ell = ell;
                g.s = sset;
                g.x = p;
                g.classes = cls;
                g.edges = edges;
                g.p = p;
                g.q = q;
                found = g;
                return true;
            }
            for (int v : pool) {
                if (taken[v]) continue;
                if (v >= b && v != next_s) continue;  // S vertices appear in increasing order
                q[pos] = v;
                taken[v] = 1;
                if (window_ok(pos) && place(pos + 1, v >= b ? next_s + 1 : next_s)) return true;
                taken[v] = 0;
                q[pos] = -1;
            }
            return false;
        };
        place(ell, b);
        if (found) {
            out.gadget = found;
            return out;
        }
        if (truncated) return out;
    }
    out.exhausted = true;
    return out;
}

std::vector<std::string> gadget_violations(const AbsorberGadget& g) {
    std::vector<std::string> out;
    const int k = g.k, ell = g.ell;
    if (k < 3 || ell < 1 || ell >= k) return {"parameters: need k >= 3 and 1 <= ell < k"};
    const int step = k - ell;
    const int order = static_cast<int>(g.s.size() + g.x.size());

    if (static_cast<long>(order) > static_cast<long>(k) * k * k * k) out.push_back("property 1: more than k^4 vertices");

    std::vector<int> role(order, -1);  // 0 = X, 1 = S
    bool partition_ok = static_cast<int>(g.s.size()) == step;
    for (int v : g.x) {
        if (v < 0 || v >= order || role[v] != -1) partition_ok = false;
        else role[v] = 0;
    }
    for (int v : g.s) {
        if (v < 0 || v >= order || role[v] != -1) partition_ok = false;
        else role[v] = 1;
    }
    if (!partition_ok) out.push_back("property 2: S and X are not disjoint with |S| = k - ell covering all vertices");

    std::set<Edge> edge_set;
    for (auto e : g.edges) {
        std::sort(e.begin(), e.end());
        edge_set.insert(e);
    }
    auto is_path_on = [&](const std::vector<int>& seq, const std::vector<int>& span) {
        const int len = static_cast<int>(seq.size());
        if (len < k || (len - ell) % step != 0) return false;
        std::vector<int> a = seq, b = span;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b || std::adjacent_find(a.begin(), a.end()) != a.end()) return false;
        for (int start = 0; start + k <= len; start += step) {
            Edge e(seq.begin() + start, seq.begin() + start + k);
            std::sort(e.begin(), e.end());
            if (!edge_set.count(e)) return false;
        }
        return true;
    };
    if (!is_path_on(g.p, g.x)) out.push_back("property 3: P is not an ell-path of the gadget spanning X");
    std::vector<int> all = g.x;
    all.insert(all.end(), g.s.begin(), g.s.end());
    bool q_ok = is_path_on(g.q, all) && g.p.size() >= static_cast<std::size_t>(ell);
    if (q_ok)
        for (int j = 0; j < ell; ++j)
            q_ok = q_ok && g.q[j] == g.p[j] && g.q[g.q.size() - ell + j] == g.p[g.p.size() - ell + j];
    if (!q_ok) out.push_back("property 4: Q is not an ell-path on S and X with the ordered ends of P");

    for (const auto& e : edge_set) {
        int in_s = 0;
        for (int v : e) in_s += v >= 0 && v < order && role[v] == 1;
        if (in_s > 1) {
            out.push_back("property 5: an edge contains two vertices of S");
            break;
        }
    }
    if (static_cast<int>(g.classes.size()) != order) {
        out.push_back("property 6: class list does not cover the vertices");
        return out;
    }
    std::set<int> s_classes;
    for (int v : g.s)
        if (v >= 0 && v < order && !s_classes.insert(g.classes[v]).second) {
            out.push_back("property 6: a class contains two vertices of S");
            break;
        }
    for (const auto& e : edge_set) {
        std::set<int> cls;
        bool ok = static_cast<int>(e.size()) == k;
        for (int v : e) {
            if (v < 0 || v >= order || g.classes[v] < 0 || g.classes[v] >= k) ok = false;
            else cls.insert(g.classes[v]);
        }
        if (!ok || static_cast<int>(cls.size()) != k) {
            out.push_back("k-partite: an edge does not meet every class once");
            break;
        }
    }
    return out;
}

namespace {

struct Attempt {
    std::vector<int> cycle;                 // cyclic sequence covering everything but the leftover
    std::vector<std::pair<int, EllPath>> absorbers;  // position in cycle, segment
    std::string failed;
    std::vector<std::string> log;
};

// First ell-path on `length` vertices from `pool` starting at `first`.
std::optional<std::vector<int>> some_path(const Hypergraph& h, int ell, int length, int first, std::uint64_t pool,
                                          const std::function<bool(const std::vector<int>&)>& accept) {
    WindowFill fill(h, ell, length, false);
    fill.fix(0, first);
    fill.set_allowed(pool);
    fill.set_node_limit(200000);
    std::optional<std::vector<int>> got;
    fill.run([&](const std::vector<int>& seq) {
        if (!accept(seq)) return false;
        got = seq;
        return true;
    });
    return got;
}

}  // namespace

PipelineReport absorb_pipeline(const Hypergraph& h, int ell, const PipelineParams& params) {
    const int k = h.k();
    check_ell(k, ell);
    const int s = k - ell;
    const int n = h.n();
    if (n % s != 0) throw ParameterError("absorb_pipeline: (k - ell) must divide n");
    if (!h.fits_mask()) throw GuardError("absorb_pipeline: at most 64 vertices");
    if (params.attempts < 1 || params.absorbers < 1) throw ParameterError("absorb_pipeline: need attempts, absorbers >= 1");
    PipelineReport rep;
    const GadgetSearch gs = search_absorber_gadget(k, ell, static_cast<int>(std::min<long>(64, 1L * k * k * k * k)));
    if (!gs.gadget) {
        rep.failed_stage = "absorbing-path";
        rep.log.push_back("no absorber gadget found");
        return rep;
    }
    const int b = gs.gadget->b();
    rep.absorber_order = b;
    const int budget = params.connect_budget > 0 ? params.connect_budget : std::min(n, 8 * k * k * k * k * k);
    Rng rng(params.seed);
    const std::uint64_t everything = all_vertices(n);

    for (int attempt = 0; attempt < params.attempts; ++attempt) {
        rep.attempts_used = attempt + 1;
        const std::string tag = "attempt " + std::to_string(attempt) + ": ";
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[v] = v;
        rng.shuffle(order);

        // Build an absorbing path: absorber segments joined by short connections.
        std::uint64_t used = 0;
        std::vector<EllPath> segments;
        for (int a = 0; a < params.absorbers; ++a) {
            std::optional<std::vector<int>> seg;
            for (int first : order) {
                if ((used >> first) & 1) continue;
                const std::uint64_t pool = everything & ~used & ~(std::uint64_t{1} << first);
                seg = some_path(h, ell, b, first, pool, [&](const std::vector<int>& seq) {
                    const std::uint64_t rest = pool & ~mask_of(normalized(seq));
                    bool any = false;
                    for_each_combination(n, s, [&](const std::vector<int>& c) {
                        if (any || (mask_of(c) & ~rest)) return;
                        any = absorbing_sequence(h, seq, ell, c).has_value();
                    });
                    return any;
                });
                if (seg) break;
            }
            if (!seg) break;
            used |= mask_of(normalized(*seg));
            segments.push_back(EllPath{ell, *seg});
        }
        if (static_cast<int>(segments.size()) < params.absorbers) {
            rep.failed_stage = "absorbing-path";
            rep.log.push_back(tag + "found only " + std::to_string(segments.size()) + " absorber segments");
            continue;
        }
        std::vector<int> p0 = segments[0].vertices;
        std::vector<int> starts{0};
        bool joined = true;
        for (std::size_t a = 1; a < segments.size() && joined; ++a) {
            const auto conn = short_connect(h, EllPath{ell, p0}.ending(), segments[a].beginning(), budget,
                                            members_of(everything & ~used));
            if (!conn.path) {
                joined = false;
                break;
            }
            const auto& cv = conn.path->vertices;
            p0.insert(p0.end(), cv.begin() + ell, cv.end() - ell);
            for (int v : cv) used |= std::uint64_t{1} << v;
            starts.push_back(static_cast<int>(p0.size()));
            p0.insert(p0.end(), segments[a].vertices.begin(), segments[a].vertices.end());
        }
        if (!joined) {
            rep.failed_stage = "absorbing-path";
            rep.log.push_back(tag + "could not connect absorber segments");
            continue;
        }
        rep.log.push_back(tag + "absorbing path on " + std::to_string(p0.size()) + " vertices");

        // Choose a reservoir.
        mpz_class want;
        const Rational rsize = params.reservoir_frac * n;
        mpz_cdiv_q(want.get_mpz_t(), rsize.get_num_mpz_t(), rsize.get_den_mpz_t());
        std::uint64_t reservoir = 0;
        int r = 0;
        for (int v : order)
            if (!((used >> v) & 1) && r < want.get_si()) {
                reservoir |= std::uint64_t{1} << v;
                ++r;
            }
        rep.log.push_back(tag + "reservoir of " + std::to_string(r) + " vertices");

        // Cover the rest greedily by disjoint ell-paths.
        std::uint64_t cover_pool = everything & ~used & ~reservoir;
        std::vector<std::vector<int>> paths;
        while (true) {
            std::optional<std::size_t> start;
            for (std::size_t e = 0; e < h.num_edges() && !start; ++e)
                if ((h.edge_mask(e) & ~cover_pool) == 0) start = e;
            if (!start) break;
            std::vector<int> path = h.edge(*start);
            cover_pool &= ~h.edge_mask(*start);
            while (true) {
                std::uint64_t end = 0;
                for (int j = 0; j < ell; ++j) end |= std::uint64_t{1} << path[path.size() - ell + j];
                std::optional<std::size_t> next;
                for (std::size_t e = 0; e < h.num_edges() && !next; ++e) {
                    const std::uint64_t m = h.edge_mask(e);
                    if ((m & end) == end && ((m & ~end) & ~cover_pool) == 0) next = e;
                }
                if (!next) break;
                for (int v : members_of(h.edge_mask(*next) & ~end)) path.push_back(v);
                cover_pool &= ~h.edge_mask(*next);
            }
            paths.push_back(std::move(path));
        }
        rep.log.push_back(tag + "path cover with " + std::to_string(paths.size()) + " paths, " +
                          std::to_string(popcount(cover_pool)) + " vertices left");

        // Connect all paths into one cycle through the reservoir.
        std::uint64_t spare = reservoir;
        std::vector<int> cycle = p0;
        std::vector<int> current_end = EllPath{ell, p0}.ending();
        bool connected = true;
        auto connect_to = [&](const std::vector<int>& target_begin) -> std::optional<std::vector<int>> {
            const auto conn = short_connect(h, current_end, target_begin, budget, members_of(spare));
            if (!conn.path) return std::nullopt;
            return conn.path->vertices;
        };
        for (std::size_t i = 0; i < paths.size() && connected; ++i) {
            std::vector<int> path = paths[i];
            auto conn = connect_to(EllPath{ell, path}.beginning());
            if (!conn) {
                std::reverse(path.begin(), path.end());
                conn = connect_to(EllPath{ell, path}.beginning());
            }
            if (!conn) {
                connected = false;
                break;
            }
            cycle.insert(cycle.end(), conn->begin() + ell, conn->end() - ell);
            for (int v : *conn) spare &= ~(std::uint64_t{1} << v);
            cycle.insert(cycle.end(), path.begin(), path.end());
            current_end = EllPath{ell, path}.ending();
        }
        if (connected) {
            auto conn = connect_to(EllPath{ell, p0}.beginning());
            if (!conn) connected = false;
            else {
                cycle.insert(cycle.end(), conn->begin() + ell, conn->end() - ell);
                for (int v : *conn) spare &= ~(std::uint64_t{1} << v);
            }
        }
        if (!connected) {
            rep.failed_stage = "connect";
            rep.log.push_back(tag + "could not connect the paths through the reservoir");
            continue;
        }

        // Absorb the leftover.
        const std::uint64_t leftover = everything & ~mask_of(normalized(cycle));
        const VertexSet rest = members_of(leftover);
        rep.leftover = static_cast<int>(rest.size());
        rep.leftover_sets = rep.leftover / s;
        std::vector<VertexSet> good;
        std::vector<int> good_deg(n, 0);
        for_each_combination(static_cast<int>(rest.size()), s, [&](const std::vector<int>& c) {
            VertexSet set;
            for (int i : c) set.push_back(rest[i]);
            if (count_absorbing_paths(h, set, ell, b) >= params.good_threshold) {
                good.push_back(set);
                for (int v : set) ++good_deg[v];
            }
        });
        rep.good_sets = static_cast<int>(good.size());
        {
            const Rational need = Rational(s - 1, s) * Rational(binomial(static_cast<long>(rest.size()) - 1, s - 1));
            bool ok = true;
            for (int v : rest) ok = ok && Rational(good_deg[v]) >= need;
            rep.degree_condition = ok;
        }
        rep.log.push_back(tag + std::to_string(rest.size()) + " leftover vertices, " + std::to_string(good.size()) +
                          " good sets, degree condition " + (rep.degree_condition ? "met" : "not met"));
        if (static_cast<int>(rest.size()) % s != 0) throw std::logic_error("absorb_pipeline: leftover not divisible");
        if (rep.leftover_sets > static_cast<int>(segments.size())) {
            rep.failed_stage = "absorb";
            rep.log.push_back(tag + "more leftover sets than absorbers");
            continue;
        }
        // Perfect matching of good sets on the leftover, each set assigned to a
        // distinct absorber that absorbs it.
        std::vector<int> assigned(segments.size(), -1);
        std::vector<std::vector<int>> replacement(segments.size());
        std::function<bool(std::uint64_t)> match = [&](std::uint64_t open) -> bool {
            if (!open) return true;
            const int v = lowest_bit(open);
            for (std::size_t g = 0; g < good.size(); ++g) {
                const std::uint64_t gm = mask_of(good[g]);
                if (!((gm >> v) & 1) || (gm & ~open)) continue;
                for (std::size_t a = 0; a < segments.size(); ++a) {
                    if (assigned[a] >= 0) continue;
                    auto q = absorbing_sequence(h, segments[a].vertices, ell, good[g]);
                    if (!q) continue;
                    assigned[a] = static_cast<int>(g);
                    replacement[a] = *q;
                    if (match(open & ~gm)) return true;
                    assigned[a] = -1;
                }
            }
            return false;
        };
        if (!match(leftover)) {
            rep.failed_stage = "absorb";
            rep.log.push_back(tag + "no assignment of good sets to absorbers");
            continue;
        }
        for (int a = static_cast<int>(segments.size()) - 1; a >= 0; --a) {
            if (assigned[a] < 0) continue;
            const int at = starts[a];
            cycle.erase(cycle.begin() + at, cycle.begin() + at + b);
            cycle.insert(cycle.begin() + at, replacement[a].begin(), replacement[a].end());
        }
        EllCycle result{ell, cycle};
        if (auto bad = cycle_violations(h, result, true); !bad.empty()) {
            rep.failed_stage = "validate";
            rep.log.push_back(tag + "assembled cycle failed validation: " + bad.front());
            continue;
        }
        rep.cycle = result;
        rep.failed_stage.clear();
        rep.log.push_back(tag + "Hamilton cycle validated");
        return rep;
    }
    return rep;
}

}  // namespace hypertile

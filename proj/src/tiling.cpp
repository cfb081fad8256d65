#include "hypertile/tiling.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hypertile/constructions.hpp"
#include "hypertile/small_graph.hpp"

namespace hypertile {

namespace {

int pattern_class(const Pattern& p) {
    if (p.edges.size() == 2) return 1;  // counts towards m1
    if (p.edges.size() == 1) return 2;  // counts towards m2
    return 0;
}

void require_masks(const Hypergraph& h) {
    if (!h.fits_mask()) throw GuardError("tiling solvers support at most 64 vertices");
}

struct Item {
    std::uint64_t mask;
    int pattern;
    int size;
    bool counts_m1;
    Placement placement;
};

// Exhaustive branch and bound over vertex-disjoint items. Vertices are decided
// in increasing order: the lowest undecided vertex is either covered by an item
// whose minimum it is, or left uncovered. Items at a vertex are tried in
// lexicographic order of their images, so the search visits placement lists
// in lexicographic order; the first list reaching the optimal key is kept.
class PackingSearch {
public:
    PackingSearch(int n, std::vector<Item> items, int m1_unit) : n_(n), items_(std::move(items)), m1_unit_(m1_unit) {
        std::sort(items_.begin(), items_.end(),
                  [](const Item& a, const Item& b) { return a.placement.image < b.placement.image; });
        by_min_.assign(n_, {});
        std::vector<char> reach(n_ + 1, 0);
        reach[0] = 1;
        std::set<int> sizes;
        for (std::size_t i = 0; i < items_.size(); ++i) {
            by_min_[items_[i].placement.image.front()].push_back(static_cast<int>(i));
            coverable_ |= items_[i].mask;
            sizes.insert(items_[i].size);
        }
        for (int r = 1; r <= n_; ++r)
            for (int s : sizes)
                if (s <= r && reach[r - s]) reach[r] = 1;
        granular_.assign(n_ + 1, 0);
        for (int r = 1; r <= n_; ++r) granular_[r] = reach[r] ? r : granular_[r - 1];
    }

    void run() { dfs(0, 0, 0); }

    const std::vector<int>& best() const { return best_; }
    std::size_t nodes() const { return nodes_; }
    const std::vector<Item>& items() const { return items_; }

private:
    long key(int covered, int m1) const { return static_cast<long>(covered) * (n_ + 1) + m1; }

    void dfs(std::uint64_t decided, int covered, int m1) {
        ++nodes_;
        if (key(covered, m1) > best_key_) {
            best_key_ = key(covered, m1);
            best_ = cur_;
        }
        const std::uint64_t free = coverable_ & ~decided;
        if (!free) return;
        const int r = popcount(free);
        const long bound = key(covered + granular_[r], m1 + (m1_unit_ ? r / m1_unit_ : 0));
        if (bound <= best_key_) return;
        const int v = lowest_bit(free);
        for (int idx : by_min_[v]) {
            const Item& it = items_[idx];
            if (it.mask & decided) continue;
            cur_.push_back(idx);
            dfs(decided | it.mask, covered + it.size, m1 + (it.counts_m1 ? 1 : 0));
            cur_.pop_back();
        }
        dfs(decided | (std::uint64_t{1} << v), covered, m1);
    }

    int n_;
    std::vector<Item> items_;
    int m1_unit_;
    std::vector<std::vector<int>> by_min_;
    std::uint64_t coverable_ = 0;
    std::vector<int> granular_;
    long best_key_ = -1;
    std::vector<int> best_, cur_;
    std::size_t nodes_ = 0;
};

TilingReport solve(const Hypergraph& h, std::vector<Pattern> patterns) {
    require_masks(h);
    std::vector<Item> items;
    int m1_unit = 0;
    for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
        const bool m1 = pattern_class(patterns[pi]) == 1;
        if (m1) m1_unit = m1_unit ? std::min(m1_unit, patterns[pi].p) : patterns[pi].p;
        for (auto& pl : copies_of(h, patterns[pi])) {
            pl.pattern = static_cast<int>(pi);
            items.push_back({mask_of(pl.image), static_cast<int>(pi), patterns[pi].p, m1, std::move(pl)});
        }
    }
    PackingSearch search(h.n(), std::move(items), m1_unit);
    search.run();
    std::vector<Placement> chosen;
    for (int idx : search.best()) chosen.push_back(search.items()[idx].placement);
    TilingReport rep = make_tiling(h, std::move(patterns), std::move(chosen));
    rep.nodes_expanded = search.nodes();
    rep.exhausted = true;
    return rep;
}

}  // namespace

TilingReport make_tiling(const Hypergraph& h, std::vector<Pattern> patterns, std::vector<Placement> placements) {
    TilingReport rep;
    rep.patterns = std::move(patterns);
    rep.placements = std::move(placements);
    std::sort(rep.placements.begin(), rep.placements.end(),
              [](const Placement& a, const Placement& b) { return a.image < b.image; });
    std::vector<char> covered(h.n(), 0);
    for (const auto& pl : rep.placements) {
        if (pl.pattern < 0 || pl.pattern >= static_cast<int>(rep.patterns.size()))
            throw ParameterError("placement refers to an unknown pattern");
        const int cls = pattern_class(rep.patterns[pl.pattern]);
        if (cls == 1) ++rep.m1;
        if (cls == 2) ++rep.m2;
        for (int v : pl.image) {
            if (v < 0 || v >= h.n()) throw ParameterError("placement vertex out of range");
            covered[v] = 1;
        }
        rep.covered += static_cast<int>(pl.image.size());
    }
    for (int v = 0; v < h.n(); ++v)
        if (!covered[v]) rep.uncovered.push_back(v);
    auto problems = tiling_violations(h, rep);
    if (!problems.empty()) throw ParameterError("invalid tiling: " + problems.front());
    return rep;
}

std::vector<std::string> tiling_violations(const Hypergraph& h, const TilingReport& t) {
    std::vector<std::string> out;
    std::vector<int> owner(h.n(), -1);
    int covered = 0;
    for (std::size_t i = 0; i < t.placements.size(); ++i) {
        const auto& pl = t.placements[i];
        const Pattern& f = t.patterns.at(pl.pattern);
        if (static_cast<int>(pl.image.size()) != f.p) out.push_back("placement " + std::to_string(i) + " has wrong size");
        for (int v : pl.image) {
            if (owner[v] >= 0) out.push_back("vertex " + std::to_string(v) + " covered twice");
            owner[v] = static_cast<int>(i);
        }
        covered += static_cast<int>(pl.image.size());
        if (pl.witness.size() != f.edges.size()) {
            out.push_back("placement " + std::to_string(i) + " witness count differs from pattern");
            continue;
        }
        // The witness edges must be host edges inside the image, and some
        // bijection image <-> pattern must carry pattern edges onto them.
        std::vector<std::uint64_t> host;
        bool ok = true;
        for (int w : pl.witness) {
            if (w < 0 || w >= static_cast<int>(h.num_edges())) {
                ok = false;
                break;
            }
            host.push_back(mask_of(h.edge(w)));
        }
        const std::uint64_t img = mask_of(pl.image);
        for (auto m : host) ok = ok && (m & ~img) == 0;
        if (ok) {
            std::vector<int> perm(f.p);
            for (int j = 0; j < f.p; ++j) perm[j] = j;
            bool realized = false;
            do {
                bool all = true;
                for (std::size_t e = 0; e < f.edges.size() && all; ++e) {
                    std::uint64_t m = 0;
                    for (int pv : f.edges[e]) m |= std::uint64_t{1} << pl.image[perm[pv]];
                    all = m == host[e];
                }
                realized = all;
            } while (!realized && std::next_permutation(perm.begin(), perm.end()));
            ok = realized;
        }
        if (!ok) out.push_back("placement " + std::to_string(i) + " is not witnessed by host edges");
    }
    if (covered != t.covered) out.push_back("covered count mismatch");
    if (covered + static_cast<int>(t.uncovered.size()) != h.n()) out.push_back("covered + |U| differs from n");
    for (int v : t.uncovered)
        if (owner[v] >= 0) out.push_back("vertex " + std::to_string(v) + " both covered and uncovered");
    return out;
}

TilingReport max_matching(const Hypergraph& h) { return solve(h, {Pattern::single_edge(h.k())}); }

TilingReport max_f_tiling(const Hypergraph& h, const Pattern& f) {
    if (f.k != h.k()) throw ArityError("max_f_tiling: pattern uniformity differs from host");
    return solve(h, {f});
}

TilingReport max_ye_tiling(const Hypergraph& h, int max_n) {
    if (h.k() != 3) throw ArityError("max_ye_tiling: host must be 3-uniform");
    if (h.n() > max_n)
        throw GuardError("max_ye_tiling: n = " + std::to_string(h.n()) + " exceeds the guard " + std::to_string(max_n));
    return solve(h, {y_pattern(3, 2), Pattern::single_edge(3)});
}

MemberType member_type(const TilingReport& t, int member) {
    const Pattern& f = t.patterns.at(t.placements.at(member).pattern);
    if (f.k == 3 && f.p == 3 && f.edges.size() == 1) return MemberType::E;
    if (f.k == 3 && f.p == 4 && f.edges.size() == 2) return MemberType::Y;
    return MemberType::Other;
}

const char* member_type_name(MemberType m) {
    switch (m) {
        case MemberType::E: return "E";
        case MemberType::Y: return "Y";
        default: return "?";
    }
}

int DerivedGraph::count(const std::string& label) const {
    return static_cast<int>(std::count_if(edges.begin(), edges.end(), [&](const DerivedEdge& e) { return e.label == label; }));
}

int DerivedGraph::offset(int part) const {
    int off = 0;
    for (int i = 0; i < part; ++i) off += static_cast<int>(parts[i].size());
    return off;
}

int DerivedGraph::local_vertices() const { return offset(static_cast<int>(parts.size())); }

std::vector<std::uint64_t> DerivedGraph::local_masks(int a, int b) const {
    std::vector<std::uint64_t> out;
    for (const auto& e : edges) {
        if (!((e.part_u == a && e.part_v == b) || (e.part_u == b && e.part_v == a)) && a >= 0) continue;
        auto local = [&](int v, int p) {
            const auto& part = parts[p];
            return offset(p) + static_cast<int>(std::lower_bound(part.begin(), part.end(), v) - part.begin());
        };
        out.push_back((std::uint64_t{1} << local(e.u, e.part_u)) | (std::uint64_t{1} << local(e.v, e.part_v)));
    }
    return out;
}

std::vector<std::uint64_t> DerivedGraph::local_masks() const { return local_masks(-1, -1); }

DerivedGraph derived_link_graph(const Hypergraph& h, const TilingReport& t, const std::vector<int>& members,
                                int threshold) {
    if (h.k() != 3) throw ArityError("derived_link_graph: host must be 3-uniform");
    if (threshold < 1) throw ParameterError("derived_link_graph: threshold must be positive");
    std::set<int> distinct(members.begin(), members.end());
    if (distinct.size() != members.size()) throw ParameterError("derived_link_graph: members overlap");
    DerivedGraph g;
    g.members = members;
    std::vector<MemberType> types;
    for (int m : members) {
        if (m < 0 || m >= t.size()) throw ParameterError("derived_link_graph: member out of range");
        g.parts.push_back(t.placements[m].image);
        types.push_back(member_type(t, m));
    }
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            std::string label = std::string(member_type_name(types[a])) + member_type_name(types[b]);
            if (label == "YE") label = "EY";
            for (int i : g.parts[a])
                for (int j : g.parts[b]) {
                    int w = 0;
                    for (int u : t.uncovered) {
                        Edge e{i, j, u};
                        std::sort(e.begin(), e.end());
                        if (h.has_edge(e)) ++w;
                    }
                    if (w >= threshold) {
                        DerivedEdge de;
                        de.u = std::min(i, j);
                        de.v = std::max(i, j);
                        de.part_u = i < j ? static_cast<int>(a) : static_cast<int>(b);
                        de.part_v = i < j ? static_cast<int>(b) : static_cast<int>(a);
                        de.label = label;
                        de.witnesses = w;
                        g.edges.push_back(de);
                    }
                }
        }
    return g;
}

Rational EdgeClasses::d1_asymptotic_bound() const {
    return Rational(m1) * (u * (u - 1) / 2) + Rational(3 * m2 * u) / 2;
}

Rational EdgeClasses::d1_bound() const {
    const long pairs = static_cast<long>(u) * (u - 1) / 2;
    return Rational(m1) * std::max(pairs, 4L * u) + Rational(3 * m2 * u) / 2;
}

EdgeClasses classify_edges(const Hypergraph& h, const TilingReport& t) {
    if (h.k() != 3) throw ArityError("classify_edges: host must be 3-uniform");
    EdgeClasses c;
    c.m1 = t.m1;
    c.m2 = t.m2;
    c.u = static_cast<int>(t.uncovered.size());
    std::vector<int> owner(h.n(), -1);
    std::vector<MemberType> type(t.size());
    for (int i = 0; i < t.size(); ++i) {
        type[i] = member_type(t, i);
        for (int v : t.placements[i].image) owner[v] = i;
    }
    for (const auto& e : h.edges()) {
        std::vector<int> ms;
        for (int v : e)
            if (owner[v] >= 0) ms.push_back(owner[v]);
        std::sort(ms.begin(), ms.end());
        const bool distinct = std::adjacent_find(ms.begin(), ms.end()) == ms.end();
        int ys = 0, others = 0;
        for (int m : ms) {
            if (type[m] == MemberType::Y) ++ys;
            if (type[m] == MemberType::Other) ++others;
        }
        switch (ms.size()) {
            case 0: ++c.d0; break;
            case 1: ++c.d1; break;
            case 2:
                ++c.d2;
                if (!distinct || others) ++c.remainder_d2;
                else if (ys == 0) ++c.eeu;
                else if (ys == 1) ++c.eyu;
                else ++c.yyu;
                break;
            default:
                ++c.d3;
                if (!distinct || others) ++c.remainder_d3;
                else if (ys == 0) ++c.eee;
                else if (ys == 1) ++c.eey;
                else if (ys == 2) ++c.eyy;
                else ++c.yyy;
        }
    }
    return c;
}

namespace {

bool is_star(const std::vector<std::uint64_t>& edges) {
    if (edges.empty()) return true;
    std::uint64_t common = ~std::uint64_t{0};
    for (auto e : edges) common &= e;
    return common != 0;
}

}  // namespace

PairRecord audit_pair(const Hypergraph& h, const TilingReport& t, int a, int b, int threshold) {
    PairRecord rec;
    rec.members = {a, b};
    const MemberType ta = member_type(t, a), tb = member_type(t, b);
    rec.type = std::string(member_type_name(ta)) + member_type_name(tb);
    if (rec.type == "YE") rec.type = "EY";
    DerivedGraph g = derived_link_graph(h, t, {a, b}, threshold);
    rec.g_edges = static_cast<int>(g.edges.size());
    auto masks = g.local_masks();
    if (ta == MemberType::E || tb == MemberType::E) {
        const int other = static_cast<int>(ta == MemberType::E ? g.parts[1].size() : g.parts[0].size());
        if (!is_star(masks)) {
            rec.violated = true;
            rec.reason = "pair graph with a 3-vertex member is neither empty nor a star";
        } else if (rec.g_edges > other) {
            rec.violated = true;
            rec.reason = "pair graph exceeds |V2| edges";
        }
    } else if (has_packing(masks, 3)) {
        rec.violated = true;
        rec.reason = "pair graph of two Y members has a matching of size 3";
    }
    return rec;
}

namespace {

TripleRecord audit_triple(const Hypergraph& h, const TilingReport& t, std::array<int, 3> ms, int threshold) {
    TripleRecord rec;
    rec.members = ms;
    std::array<MemberType, 3> ty{};
    for (int i = 0; i < 3; ++i) ty[i] = member_type(t, ms[i]);
    std::string type;
    for (auto m : ty) type += member_type_name(m);
    std::sort(type.begin(), type.end());  // "EEE","EEY","EYY","YYY"
    rec.type = type;
    DerivedGraph g = derived_link_graph(h, t, {ms[0], ms[1], ms[2]}, threshold);
    rec.g_edges = static_cast<int>(g.edges.size());
    rec.ey_edges = g.count("EY");
    std::vector<char> part(h.n(), -1);
    for (int i = 0; i < 3; ++i)
        for (int v : g.parts[i]) part[v] = static_cast<char>(i);
    for (const auto& e : h.edges()) {
        int seen = 0;
        for (int v : e)
            if (part[v] >= 0) seen |= 1 << part[v];
        if (seen == 7) ++rec.q_edges;
    }
    const int ge = rec.g_edges;
    auto all = g.local_masks();
    if (type == "EEE") {
        if (ge == 0) rec.case_id = 1, rec.cap = 27;
        else if (has_packing(all, 2)) rec.case_id = 3, rec.cap = 19;
        else rec.case_id = 2, rec.cap = 21;
    } else if (type == "EEY") {
        std::vector<std::uint64_t> ey;
        for (std::size_t i = 0; i < g.edges.size(); ++i)
            if (g.edges[i].label == "EY") ey.push_back(all[i]);
        if (ey.empty()) rec.case_id = 1, rec.cap = 36;
        else if (has_packing(ey, 2)) rec.case_id = 3, rec.cap = 24;
        else rec.case_id = 2, rec.cap = 30;
    } else if (type == "EYY") {
        if (ge == 0) rec.case_id = 1, rec.cap = 48;
        else if (rec.ey_edges <= 6) rec.case_id = 2, rec.cap = 39;
        else if (rec.ey_edges <= 8) rec.case_id = 3, rec.cap = 36;
        else rec.case_id = 0, rec.cap = 48, rec.violated = true;
    } else if (type == "YYY") {
        if (ge == 0) rec.case_id = 1, rec.cap = 64;
        else if (ge <= 16) rec.case_id = 2, rec.cap = 52;
        else if (ge == 17) rec.case_id = 3, rec.cap = 48;
        else if (ge <= 20) {
            rec.case_id = 4;
            rec.cap = 40;
            bool any = false;
            for (auto c : covers_of_size(all, 3, g.local_vertices())) {
                any = true;
                bool spread = true;
                for (int p = 0; p < 3; ++p) {
                    const std::uint64_t pm = ((std::uint64_t{1} << g.parts[p].size()) - 1) << g.offset(p);
                    spread = spread && popcount(c & pm) == 1;
                }
                if (spread) rec.cap = 37;
            }
            if (!any) rec.violated = true;
        } else if (ge == 21) rec.case_id = 5, rec.cap = 37;
        else rec.case_id = 0, rec.cap = 64, rec.violated = true;
    } else {
        throw PreconditionError("audit_triple_bounds: members must be single edges or Y copies");
    }
    if (rec.q_edges > rec.cap) rec.violated = true;
    return rec;
}

}  // namespace

TripleAudit audit_triple_bounds(const Hypergraph& h, const TilingReport& t, int threshold) {
    if (h.k() != 3) throw ArityError("audit_triple_bounds: host must be 3-uniform");
    if (auto problems = tiling_violations(h, t); !problems.empty())
        throw PreconditionError("audit_triple_bounds: invalid tiling: " + problems.front());
    for (int i = 0; i < t.size(); ++i)
        if (member_type(t, i) == MemberType::Other)
            throw PreconditionError("audit_triple_bounds: members must be single edges or Y copies");
    const TilingReport best = max_ye_tiling(h, 64);
    if (t.covered < best.covered)
        throw PreconditionError("audit_triple_bounds: tiling covers " + std::to_string(t.covered) +
                                " vertices but the maximum is " + std::to_string(best.covered));
    TripleAudit audit;
    const int m = t.size();
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            audit.pairs.push_back(audit_pair(h, t, a, b, threshold));
            if (audit.pairs.back().violated) ++audit.pair_violations;
        }
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) {
                audit.triples.push_back(audit_triple(h, t, {a, b, c}, threshold));
                if (audit.triples.back().violated) ++audit.triple_violations;
            }
    return audit;
}

}  // namespace hypertile

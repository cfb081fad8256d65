#include <map>

#include "doctest.h"
#include "hypertile/constructions.hpp"
#include "hypertile/verifier.hpp"
#include "oracles.hpp"

using namespace hypertile;

namespace {

// All crossing k-tuples of parts with the given sizes; part i occupies a
// consecutive block of vertex numbers.
std::vector<Edge> crossing(const std::vector<int>& sizes) {
    std::vector<Edge> out{{}};
    int offset = 0;
    for (int s : sizes) {
        std::vector<Edge> next;
        for (const auto& e : out)
            for (int v = 0; v < s; ++v) {
                auto f = e;
                f.push_back(offset + v);
                next.push_back(f);
            }
        out = next;
        offset += s;
    }
    return out;
}

int matching_number(const std::vector<Edge>& edges) {
    int best = 0;
    std::function<void(std::size_t, std::uint64_t, int)> rec = [&](std::size_t i, std::uint64_t used, int size) {
        best = std::max(best, size);
        for (std::size_t j = i; j < edges.size(); ++j) {
            std::uint64_t m = 0;
            for (int v : edges[j]) m |= std::uint64_t{1} << v;
            if (!(m & used)) rec(j + 1, used | m, size + 1);
        }
    };
    rec(0, 0, 0);
    return best;
}

// Exhaustive maximum over every edge subset of the crossing tuples.
long brute_partite_max(const std::vector<int>& sizes, int max_matching) {
    const auto all = crossing(sizes);
    long best = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << all.size()); ++s) {
        if (popcount(s) <= best) continue;
        std::vector<Edge> chosen;
        for (std::size_t i = 0; i < all.size(); ++i)
            if (s >> i & 1) chosen.push_back(all[i]);
        if (matching_number(chosen) <= max_matching) best = popcount(s);
    }
    return best;
}

bool two_disjoint_y_oracle(const ColoredBipartiteGraph& g) {
    const auto q = g.to_hypergraph();
    const auto sets = oracle::copy_sets(q, y_pattern(3, 2));
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if ((mask_of(sets[i]) & mask_of(sets[j])) == 0) return true;
    return false;
}

using Code = std::uint64_t;

// Part-respecting relabelling of a 48-bit tripartite code by brute force.
Code relabel(Code code, const std::array<int, 3>& part_perm, const std::array<std::array<int, 4>, 3>& vperm) {
    std::vector<Edge> edges;
    for (const auto& e : tripartite_edges(code)) {
        Edge f;
        for (int v : e) {
            const int p = v / 4, i = v % 4;
            f.push_back(4 * part_perm[p] + vperm[p][i]);
        }
        std::sort(f.begin(), f.end());
        edges.push_back(f);
    }
    return tripartite_code(edges);
}

Code brute_canonical(Code code) {
    std::array<int, 3> pp{0, 1, 2};
    Code best = ~Code{0};
    std::array<int, 4> id{0, 1, 2, 3};
    do {
        std::array<std::array<int, 4>, 3> vp{id, id, id};
        do {
            do {
                do {
                    best = std::min(best, relabel(code, pp, vp));
                } while (std::next_permutation(vp[2].begin(), vp[2].end()));
            } while (std::next_permutation(vp[1].begin(), vp[1].end()));
        } while (std::next_permutation(vp[0].begin(), vp[0].end()));
    } while (std::next_permutation(pp.begin(), pp.end()));
    return best;
}

std::vector<Edge> pair_edges(const std::vector<Edge>& edges, int a, int b) {
    std::vector<Edge> out;
    for (const auto& e : edges)
        if (e[0] / 4 == a && e[1] / 4 == b) out.push_back(e);
    return out;
}

bool member_oracle(const std::vector<Edge>& edges) {
    for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}})
        if (matching_number(pair_edges(edges, a, b)) > 2) return false;
    return matching_number(edges) <= 3;
}

bool cross_matching_oracle(const std::vector<Edge>& edges) {
    const auto x = pair_edges(edges, 0, 1), y = pair_edges(edges, 0, 2), z = pair_edges(edges, 1, 2);
    for (const auto& a : x)
        for (const auto& b : y)
            for (const auto& c : z) {
                std::set<int> s{a[0], a[1], b[0], b[1], c[0], c[1]};
                if (s.size() == 6) return true;
            }
    return false;
}

bool cover_oracle(const std::vector<Edge>& edges, int size) {
    bool found = false;
    for_each_combination(12, size, [&](const std::vector<int>& c) {
        if (found) return;
        bool all = true;
        for (const auto& e : edges)
            all = all && (std::count(c.begin(), c.end(), e[0]) || std::count(c.begin(), c.end(), e[1]));
        found = all;
    });
    return found;
}

BigInt choose(long n, long k) {
    if (k < 0 || n < k) return 0;
    BigInt r = 1;
    for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

TEST_SUITE("verifier") {

TEST_CASE("partite matching bounds against exhaustive oracles") {
    struct Case {
        int k, n, t;
        long value;
    };
    for (const auto& c : {Case{2, 2, 1, 2}, Case{2, 3, 1, 3}, Case{3, 2, 1, 4}, Case{2, 3, 2, 6}, Case{2, 4, 1, 4}}) {
        const auto cert = verify_partite_matching_bound(c.k, c.n, c.t);
        CAPTURE(c.k);
        CAPTURE(c.n);
        CHECK(cert.maximum == c.value);
        CHECK(cert.maximum == brute_partite_max(std::vector<int>(c.k, c.n), c.t));
        CHECK(cert.exhaustive);
        CHECK(cert.holds);
        CHECK(cert.witness_valid);
        CHECK(static_cast<long>(cert.witness.size()) == cert.maximum);
        CHECK(matching_number(cert.witness) <= c.t);
    }
    CHECK_THROWS_AS(verify_partite_matching_bound(3, 4, 1), GuardError);
}

TEST_CASE("3-partite matching bound") {
    const auto c22 = verify_three_partite_matching_bound(2, 2);
    CHECK(c22.maximum == 4);
    CHECK(c22.bound == 4);
    CHECK(c22.maximum == brute_partite_max({2, 2, 2}, 1));
    const auto c23 = verify_three_partite_matching_bound(2, 3);
    CHECK(c23.maximum <= 6);
    CHECK(c23.maximum == brute_partite_max({2, 2, 3}, 1));
    CHECK(c23.holds);

    // a star through one vertex has no two disjoint edges
    std::vector<Edge> star;
    for (const auto& e : crossing({2, 2, 2}))
        if (e[0] == 0) star.push_back(e);
    CHECK(star.size() == 4);
    CHECK(matching_number(star) == 1);
    CHECK(matching_number(c22.witness) == 1);
    CHECK_THROWS_AS(verify_three_partite_matching_bound(3, 3), GuardError);
    CHECK_THROWS_AS(verify_three_partite_matching_bound(3, 2), ParameterError);
}

TEST_CASE("two disjoint Y detection matches the direct oracle") {
    Rng rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        const int t = 3 + static_cast<int>(rng.below(2));
        const std::uint32_t full = (std::uint32_t{1} << (4 * t)) - 1;
        ColoredBipartiteGraph g{t, static_cast<std::uint32_t>(rng.next()) & full,
                                static_cast<std::uint32_t>(rng.next()) & full};
        if (trial % 3 == 0) g.blue &= static_cast<std::uint32_t>(rng.next());
        CHECK(has_two_disjoint_y(g) == two_disjoint_y_oracle(g));
        CHECK(static_cast<int>(g.to_hypergraph().num_edges()) == g.e_r() + g.e_b());
    }
    for (int t : {3, 4}) {
        const ColoredBipartiteGraph all_red{t, (std::uint32_t{1} << (4 * t)) - 1, 0};
        CHECK_FALSE(has_two_disjoint_y(all_red));
        CHECK_FALSE(two_disjoint_y_oracle(all_red));
        CHECK(all_red.e_r() == 4 * t);
    }
}

TEST_CASE("two disjoint Y maxima") {
    for (int t : {3, 4}) {
        const auto c = verify_two_disjoint_y(t);
        CHECK(c.maximum == 5 * t);
        CHECK(c.holds);
        CHECK(c.exhaustive);
        CHECK(c.witness_valid);
        const Hypergraph q(3, 6 + t, c.witness);
        CHECK(static_cast<long>(q.num_edges()) == c.maximum);
        const auto sets = oracle::copy_sets(q, y_pattern(3, 2));
        bool disjoint = false;
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = i + 1; j < sets.size(); ++j)
                disjoint = disjoint || (mask_of(sets[i]) & mask_of(sets[j])) == 0;
        CHECK_FALSE(disjoint);
    }
    // above the maximum every sampled configuration has two disjoint Y
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        ColoredBipartiteGraph g{3, 0, 0};
        std::vector<int> slots(24);
        std::iota(slots.begin(), slots.end(), 0);
        rng.shuffle(slots);
        for (int i = 0; i < 16; ++i) (slots[i] < 12 ? g.red : g.blue) |= std::uint32_t{1} << (slots[i] % 12);
        CHECK(two_disjoint_y_oracle(g));
    }
    CHECK_THROWS_AS(verify_two_disjoint_y(5), ParameterError);
}

TEST_CASE("tripartite claims") {
    const auto r = verify_tripartite_claims();
    CHECK(r.max_edges.maximum == 21);
    CHECK(r.max_edges.holds);
    CHECK(r.cross_matching.holds);
    CHECK(r.cross_matching.maximum == 0);
    CHECK(r.small_cover.holds);
    CHECK(r.small_cover.maximum == 0);

    std::size_t total = 0;
    for (const auto& [e, count] : r.classes_by_edges) {
        CHECK(e >= 17);
        CHECK(e <= 21);
        total += count;
    }
    CHECK(total == r.canonical_forms.size());
    CHECK(r.classes_by_edges.at(21) == 1);

    std::set<Code> forms(r.canonical_forms.begin(), r.canonical_forms.end());
    CHECK(forms.size() == r.canonical_forms.size());

    std::map<int, std::size_t> by_edges;
    for (Code code : r.canonical_forms) {
        const auto edges = tripartite_edges(code);
        by_edges[static_cast<int>(edges.size())]++;
        CHECK(tripartite_code(edges) == code);
        CHECK(member_oracle(edges));
        CHECK(cross_matching_oracle(edges));
        if (edges.size() >= 18 && edges.size() <= 20) CHECK(cover_oracle(edges, 3));
        if (edges.size() == 21) {
            // one vertex per part covering every edge, each pair graph a 7-edge double star
            CHECK(cover_oracle(edges, 3));
            for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}}) CHECK(pair_edges(edges, a, b).size() == 7);
        }

        // closure: deleting an edge or adding one inside the family stays in the list
        for (std::size_t i = 0; i < edges.size() && edges.size() > 17; ++i) {
            auto fewer = edges;
            fewer.erase(fewer.begin() + static_cast<long>(i));
            CHECK(forms.count(tripartite_canonical_form(tripartite_code(fewer))));
        }
        for (int bit = 0; bit < 48; ++bit) {
            if (code >> bit & 1) continue;
            const auto more = tripartite_edges(code | Code{1} << bit);
            if (member_oracle(more)) CHECK(forms.count(tripartite_canonical_form(code | Code{1} << bit)));
        }
    }
    CHECK(by_edges == r.classes_by_edges);
}

TEST_CASE("tripartite classes are pairwise non-isomorphic") {
    const auto r = verify_tripartite_claims();
    // bucket by an invariant (sorted per-vertex degree profiles), then compare
    // brute-force minimum codes inside each bucket
    std::map<std::vector<int>, std::vector<Code>> buckets;
    for (Code code : r.canonical_forms) {
        std::vector<int> profile;
        const auto edges = tripartite_edges(code);
        for (int v = 0; v < 12; ++v) {
            std::array<int, 3> d{};
            for (const auto& e : edges)
                if (e[0] == v || e[1] == v) ++d[(e[0] == v ? e[1] : e[0]) / 4];
            std::sort(d.begin(), d.end());
            profile.push_back(d[0] * 100 + d[1] * 10 + d[2]);
        }
        std::sort(profile.begin(), profile.end());
        buckets[profile].push_back(code);
    }
    std::size_t compared = 0;
    for (const auto& [profile, codes] : buckets) {
        if (codes.size() < 2) continue;
        std::set<Code> minima;
        for (Code c : codes) minima.insert(brute_canonical(c));
        CHECK(minima.size() == codes.size());
        compared += codes.size();
    }
    MESSAGE("classes compared by brute force: " << compared << " of " << r.canonical_forms.size());

    // the form is invariant under random part-respecting relabellings
    Rng rng(12);
    for (Code code : r.canonical_forms) {
        std::vector<int> pv{0, 1, 2};
        rng.shuffle(pv);
        std::array<int, 3> pp{pv[0], pv[1], pv[2]};
        std::array<std::array<int, 4>, 3> vp{};
        for (auto& row : vp) {
            std::vector<int> v{0, 1, 2, 3};
            rng.shuffle(v);
            std::copy(v.begin(), v.end(), row.begin());
        }
        CHECK(tripartite_canonical_form(relabel(code, pp, vp)) == code);
    }
}

TEST_CASE("ledger chain and binomial identity") {
    const auto m = verify_master_inequality();
    CHECK(m.certificate.holds);
    CHECK(m.certificate.bound == Rational(127, 384));
    CHECK(m.identity_holds);
    CHECK(m.identity_points == 100);
    CHECK(m.grid == 1024);
    CHECK(m.steps.size() == 6);
    for (const auto& s : m.steps) {
        CAPTURE(s.name);
        CHECK(s.holds);
        if (s.equality) CHECK(s.lhs == s.rhs);
        else CHECK(s.min_difference >= 0);
    }
    // independent evaluation at (1,0) and (0,1) of the final bound step
    const auto& last = m.steps.back();
    for (auto [a, b] : {std::pair{1, 0}, {0, 1}}) {
        const Rational lhs = last.lhs[0] * a * a * a + last.lhs[1] * a * a * b + last.lhs[2] * a * b * b + last.lhs[3] * b * b * b;
        const Rational rhs = last.rhs[0] * a * a * a + last.rhs[1] * a * a * b + last.rhs[2] * a * b * b + last.rhs[3] * b * b * b;
        CHECK(rhs - lhs >= 0);
    }
    for (long a = 0; a < 10; ++a)
        for (long b = 0; b < 10; ++b)
            CHECK(choose(a + b, 3) == choose(a, 3) + choose(b, 3) + choose(a, 2) * b + choose(b, 2) * a);
}

TEST_CASE("ledger audit") {
    const auto l = sample_audit_ledger(30, 13, 7);
    CHECK(l.trials == 30);
    CHECK(l.identity_exact == 30);
    CHECK(l.d1_bound_holds == 30);
    CHECK_THROWS_AS(sample_audit_ledger(1, 17, 7), ParameterError);

    const auto again = sample_audit_ledger(30, 13, 7, 2);
    CHECK(again.remainder_total == l.remainder_total);
    CHECK(again.log == l.log);
}

TEST_CASE("derived-graph audit") {
    const auto small = sample_audit_fact64(20, 14, 7);
    CHECK(small.violations == 0);
    CHECK(small.trials == 20);
    const auto big = sample_audit_fact64(8, 18, 7);
    CHECK(big.violations == 0);
    CHECK(big.pairs_checked > 0);
    CHECK(big.nonempty_pairs > 0);
    CHECK_THROWS_AS(sample_audit_fact64(1, 21, 7), ParameterError);

    // an instance with |U| below the threshold: every pair skipped
    const auto tiny = sample_audit_fact64(4, 8, 3);
    CHECK(tiny.pairs_checked == 0);
    CHECK(tiny.instances_skipped == 4);
    CHECK_FALSE(tiny.log.empty());
}

}  // TEST_SUITE

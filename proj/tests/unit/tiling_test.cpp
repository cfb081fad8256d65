#include "doctest.h"
#include "hypertile/constructions.hpp"
#include "hypertile/tiling.hpp"
#include "oracles.hpp"

using namespace hypertile;

namespace {

Placement edge_placement(const Hypergraph& h, Edge e) {
    return {0, e, {h.find_edge(e)}};
}

Placement y_placement(const Hypergraph& h, Edge a, Edge b) {
    VertexSet img = a;
    img.insert(img.end(), b.begin(), b.end());
    return {1, normalized(img), {h.find_edge(a), h.find_edge(b)}};
}

std::vector<Pattern> ye_patterns() { return {Pattern::single_edge(3), y_pattern(3, 2)}; }

int objective(const TilingReport& t) { return t.covered; }

}  // namespace

TEST_SUITE("tiling") {

TEST_CASE("max_matching examples") {
    CHECK(max_matching(Hypergraph::complete(5, 3)).size() == 1);
    const auto cov = max_matching(covering_construction(9, 3, 2));
    CHECK(cov.size() == 2);
    CHECK(cov.exhausted);
    CHECK(max_matching(Hypergraph(3, 7, {})).size() == 0);
}

TEST_CASE("max_f_tiling examples") {
    const auto y = y_pattern(3, 2);
    CHECK(max_f_tiling(space_barrier(8, 3, 1).graph, y).size() == 1);
    CHECK(max_f_tiling(Hypergraph::complete(8, 3), y).size() == 2);
    CHECK(max_f_tiling(Hypergraph(3, 6, {{0, 1, 2}, {3, 4, 5}}), y).size() == 0);
    CHECK_THROWS_AS(max_f_tiling(Hypergraph::complete(5, 2), y), ArityError);
}

TEST_CASE("max_ye_tiling examples") {
    const auto k7 = max_ye_tiling(Hypergraph::complete(7, 3));
    CHECK(k7.covered == 7);
    CHECK(k7.m1 == 1);
    CHECK(k7.m2 == 1);
    const auto one = max_ye_tiling(Hypergraph(3, 3, {{0, 1, 2}}));
    CHECK(one.covered == 3);
    CHECK(one.m1 == 0);
    CHECK(one.m2 == 1);
    const auto y = max_ye_tiling(Hypergraph(3, 4, {{0, 1, 2}, {1, 2, 3}}));
    CHECK(y.covered == 4);
    CHECK(y.m1 == 1);
    CHECK_THROWS_AS(max_ye_tiling(Hypergraph::complete(5, 4)), ArityError);
    CHECK_THROWS_AS(max_ye_tiling(Hypergraph(3, 30, {})), GuardError);
}

TEST_CASE("solvers agree with the brute-force oracle") {
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 6 + static_cast<int>(rng.below(4));
        const auto h = random_hypergraph(n, 3, 1 + rng.below(4), 10, rng);
        CAPTURE(trial);
        CHECK(max_matching(h).size() == oracle::max_matching_size(h));
        CHECK(max_f_tiling(h, y_pattern(3, 2)).size() == oracle::max_tiling(h, {y_pattern(3, 2)}).count);
        CHECK(max_f_tiling(h, y_pattern(3, 1)).size() == oracle::max_tiling(h, {y_pattern(3, 1)}).count);
        const auto ye = max_ye_tiling(h);
        const auto best = oracle::max_tiling(h, ye_patterns());
        CHECK(ye.covered == best.covered);
        CHECK(ye.m1 == best.two_edge);
        CHECK(ye.exhausted);
    }
}

TEST_CASE("tiling invariants") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 7 + static_cast<int>(rng.below(6));
        const auto h = random_hypergraph(n, 3, 1 + rng.below(5), 20, rng);
        const auto t = max_ye_tiling(h);
        CHECK(tiling_violations(h, t).empty());
        CHECK(t.covered == 4 * t.m1 + 3 * t.m2);
        CHECK(t.covered + static_cast<int>(t.uncovered.size()) == n);
        CHECK(induced(h, t.uncovered).graph.num_edges() == 0);

        const auto c = classify_edges(h, t);
        CHECK(c.d1 + c.d2 + c.d3 == static_cast<long>(h.num_edges()));
        CHECK(c.d0 == 0);
        CHECK(c.ledger_identity_holds());
        CHECK(Rational(c.d1) <= c.d1_bound());

        // adding an edge never lowers the optimum
        std::vector<Edge> missing;
        for_each_combination(n, 3, [&](const std::vector<int>& e) {
            if (!h.has_edge(e)) missing.push_back(e);
        });
        if (!missing.empty()) {
            auto edges = h.edges();
            edges.push_back(missing[rng.below(missing.size())]);
            const Hypergraph bigger(3, n, edges);
            CHECK(objective(max_ye_tiling(bigger)) >= objective(t));
            CHECK(max_matching(bigger).size() >= max_matching(h).size());
            CHECK(max_f_tiling(bigger, y_pattern(3, 2)).size() >= max_f_tiling(h, y_pattern(3, 2)).size());
        }
        // deleting a vertex costs at most one member
        const int v = static_cast<int>(rng.below(n));
        VertexSet keep;
        for (int u = 0; u < n; ++u)
            if (u != v) keep.push_back(u);
        CHECK(objective(max_ye_tiling(induced(h, keep).graph)) >= objective(t) - 4);
    }
}

TEST_CASE("make_tiling rejects overlaps and bad witnesses") {
    const Hypergraph h(3, 6, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}});
    CHECK_THROWS_AS(make_tiling(h, ye_patterns(), {edge_placement(h, {0, 1, 2}), edge_placement(h, {2, 3, 4})}),
                    ParameterError);
    CHECK_THROWS_AS(make_tiling(h, ye_patterns(), {{0, {3, 4, 5}, {0}}}), ParameterError);
    const auto ok = make_tiling(h, ye_patterns(), {y_placement(h, {0, 1, 2}, {1, 2, 3})});
    CHECK(ok.m1 == 1);
    CHECK(ok.uncovered == VertexSet{4, 5});
}

TEST_CASE("derived graph without (2,1) edges is empty") {
    const Hypergraph h(3, 9, {{0, 1, 2}, {3, 4, 5}});
    const auto t = max_ye_tiling(h);
    const auto g = derived_link_graph(h, t, {0, 1}, 1);
    CHECK(g.edges.empty());
    CHECK_THROWS_AS(derived_link_graph(h, t, {0, 0}, 1), ParameterError);
}

TEST_CASE("derived graph counts witnesses") {
    // members {0,1,2}, {3,4,5}; uncovered 6..9 all complete the pair 0-3
    std::vector<Edge> edges{{0, 1, 2}, {3, 4, 5}};
    for (int u = 6; u < 10; ++u) edges.push_back({0, 3, u});
    const Hypergraph h(3, 10, edges);
    const auto t = make_tiling(h, ye_patterns(), {edge_placement(h, {0, 1, 2}), edge_placement(h, {3, 4, 5})});
    const auto g4 = derived_link_graph(h, t, {0, 1}, 4);
    REQUIRE(g4.edges.size() == 1);
    CHECK(g4.edges[0].u == 0);
    CHECK(g4.edges[0].v == 3);
    CHECK(g4.edges[0].witnesses == 4);
    CHECK(g4.edges[0].label == "EE");
    CHECK(derived_link_graph(h, t, {0, 1}, 5).edges.empty());
}

TEST_CASE("classify_edges bookkeeping") {
    const Hypergraph empty(3, 6, {});
    const auto c0 = classify_edges(empty, max_ye_tiling(empty));
    CHECK(c0.d0 + c0.d1 + c0.d2 + c0.d3 == 0);
    CHECK(c0.ledger_identity_holds());

    // one Y: both edges lie inside the member and land in the remainder
    const Hypergraph y(3, 4, {{0, 1, 2}, {1, 2, 3}});
    const auto cy = classify_edges(y, max_ye_tiling(y));
    CHECK(cy.d3 == 2);
    CHECK(cy.remainder_d3 == 2);
    CHECK(cy.eee + cy.eey + cy.eyy + cy.yyy == 0);
    CHECK(cy.ledger_identity_holds());

    // one Y, one disjoint edge, and {0,4,5} meeting the edge member twice
    const Hypergraph ye(3, 8, {{0, 1, 2}, {1, 2, 3}, {4, 5, 6}, {0, 4, 5}});
    const auto t = max_ye_tiling(ye);
    REQUIRE(t.m1 == 1);
    REQUIRE(t.m2 == 1);
    const auto c = classify_edges(ye, t);
    CHECK(c.d3 == 4);
    CHECK(c.remainder_d3 == 4);
    CHECK(c.ledger_identity_holds());
}

TEST_CASE("triple audit caps") {
    // three disjoint Y copies: derived graph empty, cap 64
    std::vector<Edge> ys;
    for (int b = 0; b < 12; b += 4) {
        ys.push_back({b, b + 1, b + 2});
        ys.push_back({b + 1, b + 2, b + 3});
    }
    const Hypergraph h(3, 14, ys);
    const auto a = audit_triple_bounds(h, max_ye_tiling(h));
    REQUIRE(a.triples.size() == 1);
    CHECK(a.triples[0].type == "YYY");
    CHECK(a.triples[0].case_id == 1);
    CHECK(a.triples[0].cap == 64);
    CHECK(a.triple_violations == 0);

    // three edges whose derived graph has a 2-matching: cap 19
    const Hypergraph e(3, 11, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 9}, {4, 6, 10}});
    const auto t = make_tiling(e, ye_patterns(),
                               {edge_placement(e, {0, 1, 2}), edge_placement(e, {3, 4, 5}), edge_placement(e, {6, 7, 8})});
    const auto b = audit_triple_bounds(e, t, 1);
    REQUIRE(b.triples.size() == 1);
    CHECK(b.triples[0].type == "EEE");
    CHECK(b.triples[0].case_id == 3);
    CHECK(b.triples[0].cap == 19);
    CHECK(b.triple_violations == 0);
    CHECK(b.pair_violations == 0);
}

TEST_CASE("audit refuses a tiling that is not maximum") {
    const auto k8 = Hypergraph::complete(8, 3);
    const auto t = make_tiling(k8, ye_patterns(), {edge_placement(k8, {0, 1, 2})});
    CHECK_THROWS_AS(audit_triple_bounds(k8, t), PreconditionError);
}

TEST_CASE("pair audit on random maximum tilings") {
    Rng rng(23);
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const auto h = random_hypergraph(12, 3, 1 + rng.below(3), 10, rng);
        const auto t = max_ye_tiling(h);
        const auto a = audit_triple_bounds(h, t);
        CHECK(a.pair_violations == 0);
        CHECK(a.triple_violations == 0);
        checked += static_cast<int>(a.pairs.size());
    }
    CHECK(checked > 0);
}

}  // TEST_SUITE

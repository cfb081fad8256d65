#pragma once

#include <array>
#include <string>
#include <vector>

#include "hypertile/hypergraph.hpp"

namespace hypertile {

// A vertex-disjoint family of placements. Patterns with two edges count towards
// m1, single edges towards m2.
struct TilingReport {
    std::vector<Pattern> patterns;
    std::vector<Placement> placements;  // sorted by image
    int m1 = 0;
    int m2 = 0;
    int covered = 0;
    VertexSet uncovered;
    std::size_t nodes_expanded = 0;
    bool exhausted = false;  // optimality certified by exhausting the search

    int size() const { return static_cast<int>(placements.size()); }
};

TilingReport max_matching(const Hypergraph& h);
TilingReport max_f_tiling(const Hypergraph& h, const Pattern& f);

constexpr int kDefaultYeMaxN = 24;

// Mixed tiling by Y_{3,2} copies and single edges maximizing covered vertices,
// then m1, then the lexicographically smallest placement list.
TilingReport max_ye_tiling(const Hypergraph& h, int max_n = kDefaultYeMaxN);

// Builds a report from explicit placements (pattern ids index `patterns`);
// validates disjointness and witnesses.
TilingReport make_tiling(const Hypergraph& h, std::vector<Pattern> patterns, std::vector<Placement> placements);

// Empty list if t is a valid tiling of h, otherwise human-readable problems.
std::vector<std::string> tiling_violations(const Hypergraph& h, const TilingReport& t);

enum class MemberType { E, Y, Other };
MemberType member_type(const TilingReport& t, int member);
const char* member_type_name(MemberType m);

struct DerivedEdge {
    int u = 0, v = 0;            // host vertices, u < v
    int part_u = 0, part_v = 0;  // positions in DerivedGraph::members
    std::string label;           // "EE", "EY" or "YY"
    int witnesses = 0;           // number of w in U with uvw an edge
};

// Multipartite 2-graph on the members' vertex sets: a cross pair is an edge iff
// at least `threshold` uncovered vertices complete it to an edge of h.
struct DerivedGraph {
    std::vector<int> members;
    std::vector<VertexSet> parts;
    std::vector<DerivedEdge> edges;

    int count(const std::string& label) const;
    // Edges between parts a and b as masks over the local numbering (part i
    // occupies bits [offset(i), offset(i)+|part i|)).
    std::vector<std::uint64_t> local_masks() const;
    std::vector<std::uint64_t> local_masks(int a, int b) const;
    int offset(int part) const;
    int local_vertices() const;
};

constexpr int kDefaultDerivedThreshold = 8;

DerivedGraph derived_link_graph(const Hypergraph& h, const TilingReport& t, const std::vector<int>& members,
                                int threshold = kDefaultDerivedThreshold);

// Edges of h classified by how they meet the covered set. d0..d3 count edges
// with 0..3 covered vertices. Cross-class counts use member types; edges with
// two covered vertices in one member land in the remainder buckets.
struct EdgeClasses {
    long d0 = 0, d1 = 0, d2 = 0, d3 = 0;
    long yyu = 0, eyu = 0, eeu = 0;
    long eee = 0, eey = 0, eyy = 0, yyy = 0;
    long remainder_d2 = 0;  // (2,1) edges with both covered vertices in one member
    long remainder_d3 = 0;  // (3,0) edges meeting some member twice
    int m1 = 0, m2 = 0;
    int u = 0;

    long y1() const { return 2 * eee + eeu; }
    long y2() const { return 2 * eey + eeu + eyu; }
    long y3() const { return 2 * eyy + eyu; }
    long y4() const { return 2 * yyy + 2 * yyu; }
    long remainder() const { return 2 * (remainder_d2 + remainder_d3); }
    // 2(|D2|+|D3|) = y1+y2+y3+y4+remainder, counted independently on both sides.
    bool ledger_identity_holds() const { return 2 * (d2 + d3) == y1() + y2() + y3() + y4() + remainder(); }

    // m1*C(|U|,2) + 3*m2*|U|/2; valid once C(|U|,2) >= 4|U|, i.e. |U| >= 9.
    Rational d1_asymptotic_bound() const;
    // m1*max{C(|U|,2), 4|U|} + 3*m2*|U|/2; valid for every maximum tiling.
    Rational d1_bound() const;
};

EdgeClasses classify_edges(const Hypergraph& h, const TilingReport& t);

struct TripleRecord {
    std::array<int, 3> members{};
    std::string type;   // member types sorted, e.g. "EEY"
    int g_edges = 0;
    int ey_edges = 0;
    int q_edges = 0;    // edges of h with one vertex in each member
    int case_id = 0;
    int cap = 0;
    bool violated = false;
};

struct PairRecord {
    std::array<int, 2> members{};
    std::string type;
    int g_edges = 0;
    bool violated = false;
    std::string reason;
};

struct TripleAudit {
    std::vector<TripleRecord> triples;
    std::vector<PairRecord> pairs;
    int triple_violations = 0;
    int pair_violations = 0;
};

// Checks the per-pair structure of the derived graph and the per-triple caps on
// e(Q) for a maximum {Y,E}-tiling. Throws PreconditionError if t is not maximum.
TripleAudit audit_triple_bounds(const Hypergraph& h, const TilingReport& t,
                                int threshold = kDefaultDerivedThreshold);

// Pair checks only: if a member has 3 vertices the pair graph is empty or a
// star with at most |other| edges; two Y members give no matching of size 3.
PairRecord audit_pair(const Hypergraph& h, const TilingReport& t, int a, int b, int threshold);

}  // namespace hypertile

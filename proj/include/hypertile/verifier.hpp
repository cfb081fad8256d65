#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hypertile/hypergraph.hpp"

namespace hypertile {

struct VerificationCertificate {
    std::string statement;
    std::string search_space;
    long maximum = 0;        // exact maximum found (or the checked quantity)
    Rational bound;          // the claimed upper bound
    bool holds = false;
    bool exhaustive = false;
    std::vector<Edge> witness;
    bool witness_valid = false;
    std::size_t nodes = 0;
    double seconds = 0;
    std::vector<std::string> notes;
};

// Exact maximum edge count of a k-partite k-graph with n vertices per class
// and no matching of size t+1, compared with t n^(k-1). Exhaustive unless
// k*n > 9, where it throws GuardError; `heuristic` lifts the guard and runs
// the same search under a node limit.
VerificationCertificate verify_partite_matching_bound(int k, int n, int t, bool heuristic = false);

// Parts (a, a, b), b >= a >= 2, no matching of size a; bound (a-1)ab.
// Guard: a*a*b <= 18.
VerificationCertificate verify_three_partite_matching_bound(int a, int b, bool heuristic = false);

// A red/blue colouring of the pairs between h_0..h_{t-1} and g_0..g_3; bit
// 4i+j stands for the pair h_i g_j. Red pairs are the edges a_1 h_i g_j of
// the 3-graph Q, blue pairs the edges a_2 h_i g_j.
struct ColoredBipartiteGraph {
    int t = 3;
    std::uint32_t red = 0;
    std::uint32_t blue = 0;

    int e_r() const { return __builtin_popcount(red); }
    int e_b() const { return __builtin_popcount(blue); }
    // Q on a_1 = 0, a_2 = 1, h_i = 2 + i, g_j = 2 + t + j.
    Hypergraph to_hypergraph() const;
};

// Checked directly on Q: true iff Q contains two vertex-disjoint Y_{3,2}.
bool has_two_disjoint_y(const ColoredBipartiteGraph& g);

// Maximum e(Q) over Q with parts (2, t, 4) and no two disjoint Y_{3,2}, for
// t in {3, 4}; bound 5t.
VerificationCertificate verify_two_disjoint_y(int t, int jobs = 0);

// Tripartite graphs on three parts of size 4 (vertices 0-3, 4-7, 8-11) where
// every pair graph has matching number at most 2 and the whole graph at most 3.
struct TripartiteClaims {
    VerificationCertificate max_edges;       // maximum 21, three centres covering all edges
    VerificationCertificate cross_matching;  // every member with e >= 17
    VerificationCertificate small_cover;     // every member with 18 <= e <= 20
    std::map<int, std::size_t> classes_by_edges;  // isomorphism classes with e >= 17
    std::vector<std::uint64_t> canonical_forms;   // one per class, ascending
    std::size_t labelled_graphs = 0;              // family members visited
    double seconds = 0;
};

TripartiteClaims verify_tripartite_claims(int jobs = 0);

// 48-bit code of a tripartite graph given by its edges (bits 0-15: parts 1-2,
// 16-31: parts 1-3, 32-47: parts 2-3; bit 4i+j within each block).
std::uint64_t tripartite_code(const std::vector<Edge>& edges);
std::vector<Edge> tripartite_edges(std::uint64_t code);
// Code of a fixed relabelling chosen from isomorphism invariants; two graphs
// get the same form iff some part-respecting relabelling maps one to the other.
std::uint64_t tripartite_canonical_form(std::uint64_t code);

// Exact check of the chain bounding the D_1 + D_2 + D_3 ledger by
// 127/384 (M_1 + M_2)^3, on cubic leading parts.
struct ChainStep {
    std::string name;
    std::array<Rational, 4> lhs;  // coefficients of M1^3, M1^2 M2, M1 M2^2, M2^3
    std::array<Rational, 4> rhs;
    bool equality = false;        // step claims equality of leading parts
    bool holds = false;
    Rational min_difference;      // min of rhs - lhs over the grid
};

struct MasterInequality {
    VerificationCertificate certificate;
    std::vector<ChainStep> steps;
    int grid = 0;
    int identity_points = 0;
    bool identity_holds = false;
};

MasterInequality verify_master_inequality(int grid = 1024);

struct Fact64Audit {
    int trials = 0;
    int instances_skipped = 0;   // |U| below the threshold: no pair can be checked
    long pairs_checked = 0;
    long pairs_skipped = 0;
    long nonempty_pairs = 0;     // checked pairs whose derived graph has an edge
    int violations = 0;
    std::vector<std::string> log;
    double seconds = 0;
};

// Random 3-graphs (even trials) and random subgraphs of the two-vertex
// barrier (odd trials); a maximum {Y,E}-tiling and the per-pair structure of the
// derived graph at threshold 8. Throws ParameterError for n > 20.
Fact64Audit sample_audit_fact64(int trials, int n, std::uint64_t seed, int jobs = 0);

struct LedgerAudit {
    int trials = 0;
    int identity_exact = 0;
    int d1_bound_holds = 0;
    long remainder_total = 0;
    std::vector<std::string> log;
    double seconds = 0;
};

// Random 3-graphs; checks 2(|D2|+|D3|) = y1+y2+y3+y4+R exactly and the D1
// bound. Throws ParameterError for n > 16.
LedgerAudit sample_audit_ledger(int trials, int n, std::uint64_t seed, int jobs = 0);

}  // namespace hypertile

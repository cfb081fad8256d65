#include "hypertile/constructions.hpp"

#include <algorithm>

namespace hypertile {

Pattern y_pattern(int k, int b) {
    if (k < 1 || b < 0 || b >= k) throw ParameterError("y_pattern: need 0 <= b < k");
    Edge first, second;
    for (int i = 0; i < k; ++i) first.push_back(i);
    for (int i = k - b; i < 2 * k - b; ++i) second.push_back(i);
    return Pattern::make(k, 2 * k - b, {first, second},
                         "Y" + std::to_string(k) + "," + std::to_string(b));
}

Hypergraph covering_construction(int n, int k, int s) {
    if (k < 1 || k > n) throw ParameterError("covering_construction: need 1 <= k <= n");
    if (s < 0 || s > n) throw ParameterError("covering_construction: need 0 <= s <= n");
    std::vector<Edge> edges;
    for_each_combination(n, k, [&](const std::vector<int>& c) {
        if (c[0] < s) edges.push_back(c);
    });
    return Hypergraph(k, n, std::move(edges));
}

Hypergraph clique_construction(int k, int s) {
    if (k < 2 || s < 0) throw ParameterError("clique_construction: need k >= 2, s >= 0");
    return Hypergraph::complete(k * (s + 1) - 1, k);
}

SpaceBarrier space_barrier(int n, int k, int ell) {
    if (ell < 1 || ell >= k) throw ParameterError("space_barrier: need 1 <= ell < k");
    if (n < 0 || n % (k - ell) != 0) throw ParameterError("space_barrier: k-ell must divide n");
    SpaceBarrier sb;
    sb.t = n / (k - ell);
    const int a = std::max(0, (sb.t + 1) / 2 - 1);
    for (int i = 0; i < a; ++i) sb.a.push_back(i);
    sb.graph = n >= k ? covering_construction(n, k, a) : Hypergraph(k, n, {});
    return sb;
}

Hypergraph random_hypergraph(int n, int k, std::uint64_t num, std::uint64_t den, Rng& rng) {
    std::vector<Edge> edges;
    for_each_combination(n, k, [&](const std::vector<int>& c) {
        if (rng.chance(num, den)) edges.push_back(c);
    });
    return Hypergraph(k, n, std::move(edges));
}

ThresholdFamily parse_threshold_family(const std::string& name) {
    if (name == "auto") return ThresholdFamily::Auto;
    if (name == "codegree") return ThresholdFamily::Codegree;
    if (name == "codegree-minus-one") return ThresholdFamily::CodegreeMinusOne;
    if (name == "proven") return ThresholdFamily::Proven;
    if (name == "conjectured") return ThresholdFamily::Conjectured;
    if (name == "space-barrier") return ThresholdFamily::SpaceBarrierLower;
    throw ParameterError("unknown threshold family '" + name + "'");
}

Rational space_barrier_density(int k, int d, int ell) {
    Rational base = 1 - Rational(1, 2 * (k - ell));
    Rational p = 1;
    for (int i = 0; i < k - d; ++i) p *= base;
    return 1 - p;
}

namespace {

void require(bool ok, const std::string& hypothesis) {
    if (!ok) throw RangeError("hypothesis violated: " + hypothesis);
}

bool in_proven_range(int k, int d, int ell) {
    const bool first = k >= 3 && k - ell <= d && d < 2 * ell && 2 * ell <= k - 1 &&
                       2 * k - 2 * ell >= (2 * (2 * k - 2 * ell - d) * (2 * k - 2 * ell - d) + 1) * (k - d - 1) + 1;
    const bool second = k % 2 == 1 && k >= 7 && 2 * ell == k - 1 && d == k - 3;
    return first || second;
}

}  // namespace

ThresholdResult dirac_threshold(const ThresholdQuery& q) {
    const int k = q.k, d = q.d, ell = q.ell;
    require(1 <= ell && ell < k, "1 <= ell < k");
    require(0 <= d && d <= k - 1, "0 <= d <= k-1");
    ThresholdFamily fam = q.family;
    if (fam == ThresholdFamily::Auto) {
        if (d == k - 1) fam = ThresholdFamily::Codegree;
        else if (d == k - 2 && 2 * ell < k) fam = ThresholdFamily::CodegreeMinusOne;
        else fam = ThresholdFamily::Proven;
    }
    switch (fam) {
        case ThresholdFamily::Codegree: {
            require(d == k - 1, "d = k-1");
            if (k % (k - ell) == 0) return {Rational(1, 2), "codegree:divisible"};
            const int blocks = (k + (k - ell) - 1) / (k - ell);
            return {Rational(1, blocks * (k - ell)), "codegree:non-divisible"};
        }
        case ThresholdFamily::CodegreeMinusOne:
            require(k >= 3, "k >= 3");
            require(2 * ell < k, "ell < k/2");
            require(d == k - 2, "d = k-2");
            return {space_barrier_density(k, d, ell), "codegree-minus-one"};
        case ThresholdFamily::Proven:
            require(in_proven_range(k, d, ell),
                    "k >= 3, k-ell <= d < 2ell <= k-1 and 2k-2ell >= (2(2k-2ell-d)^2+1)(k-d-1)+1, "
                    "or k odd >= 7, ell = (k-1)/2, d = k-3");
            return {space_barrier_density(k, d, ell), "proven"};
        case ThresholdFamily::Conjectured:
            require(k >= 3, "k >= 3");
            require(2 * ell < k, "ell < k/2");
            require(k - ell <= d && d <= k - 1, "k-ell <= d <= k-1");
            return {space_barrier_density(k, d, ell), "conjectured"};
        case ThresholdFamily::SpaceBarrierLower:
            require(k >= 3, "k >= 3");
            require(2 * ell < k, "ell < k/2");
            require(1 <= d && d <= k - 1, "1 <= d <= k-1");
            return {space_barrier_density(k, d, ell), "space-barrier-lower-bound"};
        case ThresholdFamily::Auto:
            break;
    }
    throw RangeError("unreachable threshold family");
}

long tiling_edge_threshold_min_n(int k, int b, int s) {
    const long p = 2L * k - b;
    return (2 * p * p + 1) * (k - 1) * s + s;
}

BigInt tiling_edge_threshold(int n, int k, int b, int s, bool force) {
    if (k < 3) throw RangeError("hypothesis violated: k >= 3");
    if (b < 1 || b > k - 1) throw RangeError("hypothesis violated: 1 <= b <= k-1");
    if (s < 0) throw RangeError("hypothesis violated: s >= 0");
    if (!force && n < tiling_edge_threshold_min_n(k, b, s))
        throw RangeError("hypothesis violated: n >= (2(2k-b)^2+1)(k-1)s+s = " +
                         std::to_string(tiling_edge_threshold_min_n(k, b, s)));
    return binomial(n, k) - binomial(n - s + 1, k) + binomial(n - 1, k - 1) +
           binomial(n - 1, k - 2) * (2 * k - b) * s;
}

BigInt matching_extremal_bound(int n, int k, int s) {
    BigInt a = binomial(static_cast<long>(k) * (s + 1) - 1, k);
    BigInt c = binomial(n, k) - binomial(n - s, k);
    return a > c ? a : c;
}

BigInt y_tiling_extremal_bound(int n, int k, int b, int s) {
    BigInt a = binomial(static_cast<long>(2 * k - b) * (s + 1) - 1, k);
    BigInt c = binomial(n, k) - binomial(n - s, k);
    return a > c ? a : c;
}

}  // namespace hypertile

#include "hypertile/fractional.hpp"

#include <algorithm>
#include <numeric>

#include "hypertile/constructions.hpp"
#include "hypertile/lp.hpp"

namespace hypertile {

std::vector<std::size_t> RationalWeighting::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (sgn(weights[i]) != 0) out.push_back(i);
    return out;
}

std::string matching_violation(const RationalWeighting& w, int n) {
    std::vector<Rational> load(n, 0);
    Rational total = 0;
    for (std::size_t i = 0; i < w.sets.size(); ++i) {
        if (w.weights[i] < 0 || w.weights[i] > 1) return "weight outside [0,1]";
        total += w.weights[i];
        for (int v : w.sets[i]) load[v] += w.weights[i];
    }
    for (int v = 0; v < n; ++v)
        if (load[v] > 1) return "vertex " + std::to_string(v) + " has load " + to_string(load[v]);
    if (total != w.size) return "size differs from the sum of weights";
    return {};
}

std::string cover_violation(const CoverWeighting& c, const Hypergraph& h) {
    if (static_cast<int>(c.weights.size()) != h.n()) return "cover has the wrong number of weights";
    Rational total = 0;
    for (const auto& w : c.weights) {
        if (w < 0) return "negative cover weight";
        total += w;
    }
    if (total != c.total) return "total differs from the sum of weights";
    for (std::size_t i = 0; i < h.num_edges(); ++i) {
        Rational s = 0;
        for (int v : h.edge(i)) s += c.weights[v];
        if (s < 1) return "edge " + std::to_string(i) + " receives " + to_string(s);
    }
    return {};
}

FractionalMatching max_fractional_matching(const Hypergraph& h, std::size_t max_columns) {
    if (h.num_edges() > max_columns)
        throw GuardError("fractional LP has " + std::to_string(h.num_edges()) + " columns, above the guard " +
                         std::to_string(max_columns));
    LinearProgram lp;
    lp.num_vars = static_cast<int>(h.num_edges());
    lp.objective.assign(lp.num_vars, 1);
    lp.rows.resize(h.n());
    for (auto& r : lp.rows) r.rhs = 1;
    for (std::size_t e = 0; e < h.num_edges(); ++e)
        for (int v : h.edge(e)) lp.rows[v].coeffs.emplace_back(static_cast<int>(e), 1);
    const LpSolution sol = maximize(lp);
    if (sol.status != LpStatus::Optimal) throw std::logic_error("fractional matching LP not optimal");

    FractionalMatching out;
    out.value = sol.value;
    out.weighting.sets = h.edges();
    out.weighting.weights = sol.x;
    out.weighting.size = std::accumulate(sol.x.begin(), sol.x.end(), Rational(0));
    out.dual.weights = sol.duals;
    out.dual.total = std::accumulate(sol.duals.begin(), sol.duals.end(), Rational(0));
    if (!matching_violation(out.weighting, h.n()).empty() || !cover_violation(out.dual, h).empty() ||
        out.weighting.size != out.value || out.dual.total != out.value)
        throw std::logic_error("fractional matching certificate failed to verify");
    return out;
}

FractionalCover min_fractional_cover(const Hypergraph& h) {
    LinearProgram lp;
    lp.num_vars = h.n();
    lp.objective.assign(h.n(), -1);
    for (const auto& e : h.edges()) {
        LinearProgram::Row r;
        for (int v : e) r.coeffs.emplace_back(v, 1);
        r.sense = Sense::GreaterEq;
        r.rhs = 1;
        lp.rows.push_back(std::move(r));
    }
    const LpSolution sol = maximize(lp);
    if (sol.status != LpStatus::Optimal) throw std::logic_error("fractional cover LP not optimal");
    FractionalCover out;
    out.value = -sol.value;
    out.cover.weights = sol.x;
    out.cover.total = std::accumulate(sol.x.begin(), sol.x.end(), Rational(0));
    if (!cover_violation(out.cover, h).empty() || out.cover.total != out.value)
        throw std::logic_error("fractional cover failed to verify");
    return out;
}

Hypergraph auxiliary_copy_hypergraph(const Hypergraph& h, const Pattern& f) {
    if (f.k != h.k()) throw ArityError("auxiliary_copy_hypergraph: pattern uniformity differs from host");
    std::vector<Edge> edges;
    if (f.p <= h.n())
        for (auto& pl : copies_of(h, f)) edges.push_back(std::move(pl.image));
    return Hypergraph(f.p, h.n(), std::move(edges));
}

FractionalMatching max_fractional_f_tiling(const Hypergraph& h, const Pattern& f, std::size_t max_columns) {
    return max_fractional_matching(auxiliary_copy_hypergraph(h, f), max_columns);
}

PerfectFractionalTiling perfect_fractional_tiling_exists(const Hypergraph& h, const Pattern& f) {
    const Hypergraph aux = auxiliary_copy_hypergraph(h, f);
    const FractionalMatching m = max_fractional_matching(aux);
    PerfectFractionalTiling out;
    out.value = m.value;
    out.target = Rational(h.n(), f.p);
    out.target.canonicalize();
    out.exists = m.value == out.target;
    out.tiling = m.weighting;
    out.dual = m.dual;
    return out;
}

CoverTransfer cover_transfer(const Hypergraph& h, int k, int b, int d, const std::vector<Rational>& omega) {
    if (h.k() != k) throw ArityError("cover_transfer: host uniformity differs from k");
    if (k < 3 || b < 1 || b > k - 1) throw ParameterError("cover_transfer: need k >= 3 and 1 <= b <= k-1");
    if (d < 1 || d >= b) throw ParameterError("cover_transfer: need 1 <= d < b");
    const int n = h.n();
    const int p = 2 * k - b;
    if (static_cast<int>(omega.size()) != n) throw ParameterError("cover_transfer: one weight per vertex required");
    const Hypergraph copies = auxiliary_copy_hypergraph(h, y_pattern(k, b));

    CoverTransfer out;
    out.bound = Rational(n, p);
    out.bound.canonicalize();
    CoverWeighting input{omega, std::accumulate(omega.begin(), omega.end(), Rational(0))};
    if (auto why = cover_violation(input, copies); !why.empty())
        throw PreconditionError("cover_transfer: input is not a cover of the copy hypergraph: " + why);
    if (input.total >= out.bound)
        throw PreconditionError("cover_transfer: total " + to_string(input.total) + " is not below n/p = " +
                                to_string(out.bound));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int c) { return omega[a] < omega[c]; });
    out.l.assign(order.begin(), order.begin() + d);
    std::sort(out.l.begin(), out.l.end());
    Rational avg = 0;
    for (int v : out.l) avg += omega[v];
    avg /= d;
    out.averaged = omega;
    for (int v : out.l) out.averaged[v] = avg;
    out.x = *std::min_element(out.averaged.begin(), out.averaged.end());
    const Rational scale = 1 - p * out.x;
    if (sgn(scale) <= 0) throw std::logic_error("cover_transfer: smallest weight is not below 1/p");
    out.mapped.resize(n);
    for (int v = 0; v < n; ++v) out.mapped[v] = (out.averaged[v] - out.x) / scale;

    std::vector<char> in_l(n, 0);
    for (int v : out.l) in_l[v] = 1;
    for (int v = 0; v < n; ++v)
        if (!in_l[v]) {
            out.rest.push_back(v);
            out.restricted.weights.push_back(out.mapped[v]);
            out.restricted.total += out.mapped[v];
        }
    if (out.restricted.total >= out.bound)
        out.failures.push_back("transferred total " + to_string(out.restricted.total) + " is not below n/p");
    for (int v : out.l)
        if (sgn(out.mapped[v]) != 0) out.failures.push_back("vertex of L keeps nonzero weight");

    auto mapped_sum = [&](const VertexSet& s) {
        Rational t = 0;
        for (int v : s)
            if (!in_l[v]) t += out.mapped[v];
        return t;
    };
    const std::uint64_t lmask = mask_of(out.l);
    for (std::size_t e = 0; e < copies.num_edges(); ++e) {
        if ((copies.edge_mask(e) & lmask) != lmask) continue;
        ++out.copy_link_edges;
        if (mapped_sum(copies.edge(e)) < 1)
            out.failures.push_back("copy edge through L is not covered after the transfer");
    }

    const Relabeled lk = link(h, out.l);
    const Pattern small = y_pattern(k - d, b - d);
    if (small.p <= lk.graph.n())
        for (const auto& pl : copies_of(lk.graph, small)) {
            ++out.small_copy_edges;
            VertexSet s;
            for (int v : pl.image) s.push_back(lk.index_map[v]);
            VertexSet full = s;
            full.insert(full.end(), out.l.begin(), out.l.end());
            std::sort(full.begin(), full.end());
            if (!copies.has_edge(full)) out.failures.push_back("copy in the link does not extend to a copy through L");
            if (mapped_sum(s) < 1) out.failures.push_back("copy in the link of L is not covered after the transfer");
        }

    Rational lsum = 0;
    for (int v : out.l) lsum += out.averaged[v];
    const int rest_size = static_cast<int>(out.rest.size());
    for_each_combination(rest_size, p - d, [&](const std::vector<int>& c) {
        Rational s = lsum;
        for (int i : c) s += out.averaged[out.rest[i]];
        if (s < 1) return;
        ++out.threshold_link_edges;
        Rational t = 0;
        for (int i : c) t += out.mapped[out.rest[i]];
        if (t < 1) out.failures.push_back("threshold link edge is not covered after the transfer");
    });
    return out;
}

}  // namespace hypertile

#include "hypertile/small_graph.hpp"

#include <algorithm>

#include "hypertile/common.hpp"

namespace hypertile {

namespace {

// Branch on the lowest point still covered by an available set: either it stays
// unused or one of the sets through it is taken.
int best_packing(const std::vector<std::uint64_t>& sets, std::uint64_t blocked, int target, int have) {
    std::uint64_t live = 0;
    for (auto s : sets)
        if (!(s & blocked)) live |= s;
    if (!live) return have;
    int best = have;
    const int v = lowest_bit(live);
    for (auto s : sets) {
        if ((s & blocked) || !((s >> v) & 1)) continue;
        best = std::max(best, best_packing(sets, blocked | s, target, have + 1));
        if (best >= target) return best;
    }
    best = std::max(best, best_packing(sets, blocked | (std::uint64_t{1} << v), target, have));
    return best;
}

}  // namespace

int packing_number(const std::vector<std::uint64_t>& sets) { return best_packing(sets, 0, 1 << 30, 0); }

bool has_packing(const std::vector<std::uint64_t>& sets, int size) {
    if (size <= 0) return true;
    return best_packing(sets, 0, size, 0) >= size;
}

namespace {

bool cover_search(const std::vector<std::uint64_t>& sets, std::uint64_t chosen, int left) {
    for (auto s : sets) {
        if (s & chosen) continue;
        if (left == 0) return false;
        // Some point of this uncovered set must be chosen.
        for (std::uint64_t x = s; x; x &= x - 1) {
            if (cover_search(sets, chosen | (x & -x), left - 1)) return true;
        }
        return false;
    }
    return true;
}

}  // namespace

bool has_cover(const std::vector<std::uint64_t>& sets, int size) { return cover_search(sets, 0, size); }

std::vector<std::uint64_t> covers_of_size(const std::vector<std::uint64_t>& sets, int size, int points) {
    std::vector<std::uint64_t> out;
    if (size > points) return out;
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
        std::uint64_t c = 0;
        for (int i : idx) c |= std::uint64_t{1} << i;
        if (std::all_of(sets.begin(), sets.end(), [&](std::uint64_t s) { return (s & c) != 0; })) out.push_back(c);
        int i = size - 1;
        while (i >= 0 && idx[i] == points - size + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

}  // namespace hypertile

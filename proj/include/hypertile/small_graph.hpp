#pragma once

#include <cstdint>
#include <vector>

namespace hypertile {

// Helpers for set systems on at most 64 points, each set given as a bit mask.

// Largest number of pairwise disjoint sets.
int packing_number(const std::vector<std::uint64_t>& sets);

// True iff some `size` sets are pairwise disjoint.
bool has_packing(const std::vector<std::uint64_t>& sets, int size);

// True iff some set of at most `size` points meets every set.
bool has_cover(const std::vector<std::uint64_t>& sets, int size);

// Every cover by exactly `size` of the points 0..points-1, as masks, in
// lexicographic order of the point lists.
std::vector<std::uint64_t> covers_of_size(const std::vector<std::uint64_t>& sets, int size, int points);

}  // namespace hypertile

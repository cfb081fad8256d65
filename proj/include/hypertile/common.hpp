#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hypertile {

using Rational = mpq_class;
using BigInt = mpz_class;

// Ascending, duplicate-free list of vertex indices.
using VertexSet = std::vector<int>;

struct ArityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parameters outside the hypotheses of a formula; the message names the hypothesis.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

// Instance-size guards (max-n, max-columns, ...).
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

// "p/q" with the denominator always present.
std::string to_string(const Rational& q);

BigInt binomial(long n, long k);
std::int64_t binomial64(int n, int k);

VertexSet normalized(VertexSet s);

inline int popcount(std::uint64_t x) { return __builtin_popcountll(x); }
inline int lowest_bit(std::uint64_t x) { return __builtin_ctzll(x); }

std::uint64_t mask_of(const VertexSet& s);
VertexSet members_of(std::uint64_t mask);

// Seeded generator whose integer outputs are identical on every platform
// (std:: distributions are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t next() { return gen_(); }
    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    // True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 gen_;
};

// Worker count from HYPERTILE_JOBS, defaulting to 1.
int default_jobs();

// Runs body(i) for i in [0, count) on up to `jobs` threads. Results must be
// written to per-index slots so the outcome does not depend on scheduling.
void parallel_for(int count, int jobs, const std::function<void(int)>& body);

}  // namespace hypertile

#ifndef MINORANT_PERMUTATIONS_HPP
#define MINORANT_PERMUTATIONS_HPP

#include <cstdint>
#include <vector>

#include "minorant/rng.hpp"

namespace minorant {

// Cycle counts of a permutation of [n]: count_by_length[j] = K_{n,j} for
// j = 1..n (index 0 unused). Always satisfies sum_j j K_{n,j} = n.
struct CycleCounts {
  std::uint64_t n = 0;
  std::vector<std::uint32_t> count_by_length;

  std::uint64_t total_cycles() const;
  std::uint64_t weighted_sum() const;  // sum_j j * K_{n,j}
};

// Nonincreasing cycle lengths Z_{n,1} >= Z_{n,2} >= ...; sums to n.
struct RankedCycles {
  std::vector<std::uint64_t> lengths;
};

// Truncated view of the independent Poisson(1/j) sequence, j = 1..n.
struct PoissonCounts {
  std::vector<std::uint32_t> count_by_length;  // index j, [0] unused
};

// Truncated, sorted Poisson-Dirichlet(1) weights; residual is the stick mass
// not covered by the kept atoms, so sum(weights) + residual == 1.
struct PDWeights {
  std::vector<double> weights;
  double residual = 0.0;
};

// Exact cycle counts of a uniform permutation via the sequential record
// construction: position i opens a new cycle with probability 1/i, and the
// gaps between the opening positions (plus the n+1 boundary) are the cycle
// lengths.
CycleCounts sample_cycle_counts(std::uint64_t n, RngStream& rng);

// Ranked cycle lengths sampled directly (same construction, no dense counts).
RankedCycles sample_ranked_cycles(std::uint64_t n, RngStream& rng);

// Feller coupling: cycle counts K_{n,j} and Poisson(1/j) counts P_j built on
// one Bernoulli(1/i) indicator sequence. The sequence is extended past n by
// gap-jumps to the horizon where the expected number of uncounted spacings
// (bounded by sum_{i > H} 1/i^2) drops below tol.
std::pair<CycleCounts, PoissonCounts> sample_feller_coupled(
    std::uint64_t n, RngStream& rng, double tol = 1e-6);

RankedCycles rank_cycles(const CycleCounts& counts);
CycleCounts counts_from_ranked(const RankedCycles& ranked, std::uint64_t n);

// Stick-breaking GEM(1) extended until the unbroken mass drops below tol,
// sorted nonincreasingly, truncated to the K largest atoms; the dropped mass
// (including the unbroken remainder) is reported as residual.
PDWeights sample_pd1(std::size_t k, double tol, RngStream& rng);

// Exact rational q = num/den.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct CycleCountMoments {
  Rational mean;           // E K_{n,j} = 1/j
  Rational factorial2;     // E K_{n,j}(K_{n,j}-1) = 1{2j<=n}/j^2
  Rational cross;          // E K_{n,j} K_{n,k} = 1{j+k<=n}/(jk)
};

// Exact first and second moments of cycle counts; requires j != k.
CycleCountMoments exact_count_moments(std::uint64_t n, std::uint64_t j,
                                      std::uint64_t k);

// E sum_k {n Z_k} for PD(1) weights Z: exactly
// 1 + sum_{k=1}^{n-1} (1 - k log((k+1)/k)), which grows like (1/2) log n.
double pd_fractional_part_mean(std::uint64_t n);

}  // namespace minorant

#endif  // MINORANT_PERMUTATIONS_HPP

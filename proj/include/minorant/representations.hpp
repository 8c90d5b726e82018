#ifndef MINORANT_REPRESENTATIONS_HPP
#define MINORANT_REPRESENTATIONS_HPP

#include <cstdint>

#include "minorant/increments.hpp"
#include "minorant/permutations.hpp"
#include "minorant/rng.hpp"

namespace minorant {

// Length excess of one face of horizontal length len whose height increment
// is s: sqrt(len^2 + s^2) - len, evaluated in the cancellation-free form
// s^2 / (len + sqrt(len^2 + s^2)). Always in [0, s^2/(2 len)].
double face_excess(double len, double s);

// Draws S_len, the sum of len fresh increments of the law. Blocks are always
// fresh and independent of the cycle structure they are attached to.
double sample_block_sum(const IncrementLaw& law, std::uint64_t len,
                        RngStream& rng);

// sum_k (sqrt(Z_k^2 + S_{k,Z_k}^2) - Z_k) over the ranked cycle lengths,
// with independent block sums; distributed as L_n(minorant) - n.
double surrogate_rep1(const RankedCycles& cycles, const IncrementLaw& law,
                      RngStream& rng);

// Same sum grouped by cycle length: sum_j sum_{i<=K_{n,j}}
// (sqrt(j^2 + S_{i,j}^2) - j).
double surrogate_rep2(const CycleCounts& counts, const IncrementLaw& law,
                      RngStream& rng);

// One draw of eta_j = sqrt(j^2 + S_j^2) - j.
double eta(std::uint64_t j, const IncrementLaw& law, RngStream& rng);

// Poissonized sums driven by one shared family of Poisson(1/j) counts and a
// shared first block per j:
//   V_n      = sum_j sum_{i<=P_j} (sqrt(j^2+S_{i,j}^2) - j)
//   W_n      = the P_j = 1 terms only
//   W'_n     = sum_j S_{1,j}^2/(2j) 1{P_j = 1}
// The coupling makes V_n >= W_n >= 0 hold per sample, not just in law.
struct PoissonizedSums {
  double v = 0.0;
  double w = 0.0;
  double w_prime = 0.0;
};

PoissonizedSums poissonized_sums(std::uint64_t n, const IncrementLaw& law,
                                 RngStream& rng);

}  // namespace minorant

#endif  // MINORANT_REPRESENTATIONS_HPP

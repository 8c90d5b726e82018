#include "minorant/representations.hpp"

#include <cmath>
#include <stdexcept>

namespace minorant {

double face_excess(double len, double s) {
  return s * s / (len + std::sqrt(len * len + s * s));
}

double sample_block_sum(const IncrementLaw& law, std::uint64_t len,
                        RngStream& rng) {
  double s = 0.0;
  for (std::uint64_t i = 0; i < len; ++i) s += sample_increment(law, rng);
  return s;
}

double surrogate_rep1(const RankedCycles& cycles, const IncrementLaw& law,
                      RngStream& rng) {
  double total = 0.0;
  for (std::uint64_t len : cycles.lengths) {
    total += face_excess(static_cast<double>(len),
                         sample_block_sum(law, len, rng));
  }
  return total;
}

double surrogate_rep2(const CycleCounts& counts, const IncrementLaw& law,
                      RngStream& rng) {
  double total = 0.0;
  for (std::size_t j = 1; j < counts.count_by_length.size(); ++j) {
    for (std::uint32_t i = 0; i < counts.count_by_length[j]; ++i) {
      total += face_excess(static_cast<double>(j),
                           sample_block_sum(law, j, rng));
    }
  }
  return total;
}

double eta(std::uint64_t j, const IncrementLaw& law, RngStream& rng) {
  if (j < 1) throw std::invalid_argument("eta: j must be >= 1");
  return face_excess(static_cast<double>(j), sample_block_sum(law, j, rng));
}

namespace {

// Poisson(lambda) by inverse transform; lambda <= 1 here so the expected
// number of iterations is about 1 + lambda.
std::uint32_t sample_poisson(double lambda, RngStream& rng) {
  double u = rng.uniform01();
  double p = std::exp(-lambda);
  std::uint32_t k = 0;
  double cum = p;
  while (u > cum) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cum += p;
    if (k > 200) break;  // cumulative rounding guard; P is astronomically small
  }
  return k;
}

}  // namespace

PoissonizedSums poissonized_sums(std::uint64_t n, const IncrementLaw& law,
                                 RngStream& rng) {
  if (n < 1) throw std::invalid_argument("poissonized_sums: n must be >= 1");
  PoissonizedSums out;
  for (std::uint64_t j = 1; j <= n; ++j) {
    const std::uint32_t pj = sample_poisson(1.0 / static_cast<double>(j), rng);
    if (pj == 0) continue;
    const double jd = static_cast<double>(j);
    const double s1 = sample_block_sum(law, j, rng);
    const double first = face_excess(jd, s1);
    out.v += first;
    if (pj == 1) {
      out.w += first;
      out.w_prime += s1 * s1 / (2.0 * jd);
    }
    for (std::uint32_t i = 1; i < pj; ++i) {
      out.v += face_excess(jd, sample_block_sum(law, j, rng));
    }
  }
  return out;
}

}  // namespace minorant

#include "minorant/permutations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "minorant/numerics.hpp"

namespace minorant {

std::uint64_t CycleCounts::total_cycles() const {
  std::uint64_t total = 0;
  for (std::size_t j = 1; j < count_by_length.size(); ++j) {
    total += count_by_length[j];
  }
  return total;
}

std::uint64_t CycleCounts::weighted_sum() const {
  std::uint64_t total = 0;
  for (std::size_t j = 1; j < count_by_length.size(); ++j) {
    total += j * count_by_length[j];
  }
  return total;
}

namespace {

// Positions of 1s in the independent Bernoulli(1/i) sequence restricted to
// [1, n]; position 1 is always a 1.
void bernoulli_one_positions(std::uint64_t n, RngStream& rng,
                             std::vector<std::uint64_t>& out) {
  out.clear();
  out.push_back(1);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (rng.uniform01() * static_cast<double>(i) < 1.0) out.push_back(i);
  }
}

}  // namespace

CycleCounts sample_cycle_counts(std::uint64_t n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_cycle_counts: n must be >= 1");
  CycleCounts cc;
  cc.n = n;
  cc.count_by_length.assign(n + 1, 0);
  std::uint64_t prev = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (rng.uniform01() * static_cast<double>(i) < 1.0) {
      ++cc.count_by_length[i - prev];
      prev = i;
    }
  }
  ++cc.count_by_length[n + 1 - prev];
  return cc;
}

RankedCycles sample_ranked_cycles(std::uint64_t n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_ranked_cycles: n >= 1");
  RankedCycles rc;
  std::uint64_t prev = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (rng.uniform01() * static_cast<double>(i) < 1.0) {
      rc.lengths.push_back(i - prev);
      prev = i;
    }
  }
  rc.lengths.push_back(n + 1 - prev);
  std::sort(rc.lengths.begin(), rc.lengths.end(),
            std::greater<std::uint64_t>());
  return rc;
}

std::pair<CycleCounts, PoissonCounts> sample_feller_coupled(std::uint64_t n,
                                                            RngStream& rng,
                                                            double tol) {
  if (n < 1) throw std::invalid_argument("sample_feller_coupled: n >= 1");
  if (!(tol > 0.0) || tol >= 1.0) {
    throw std::invalid_argument("sample_feller_coupled: tol in (0,1)");
  }
  // Expected number of spacings starting past H is below sum_{i>H} 1/i^2,
  // so H = ceil(1/tol) suffices.
  const std::uint64_t horizon =
      n + static_cast<std::uint64_t>(std::ceil(1.0 / tol));

  std::vector<std::uint64_t> ones;
  bernoulli_one_positions(n, rng, ones);

  CycleCounts cc;
  cc.n = n;
  cc.count_by_length.assign(n + 1, 0);
  for (std::size_t t = 1; t < ones.size(); ++t) {
    ++cc.count_by_length[ones[t] - ones[t - 1]];
  }
  ++cc.count_by_length[n + 1 - ones.back()];

  PoissonCounts pc;
  pc.count_by_length.assign(n + 1, 0);
  for (std::size_t t = 1; t < ones.size(); ++t) {
    const std::uint64_t gap = ones[t] - ones[t - 1];
    if (gap <= n) ++pc.count_by_length[gap];
  }
  // Past position n the 1s are sparse; jump directly from one to the next.
  // Zeros are independent Bernoulli, so given a 1 at position i and zeros
  // revealed up to position m >= i, the next 1 lies at m + F with
  // P(F > j) = m/(m + j), i.e. F = ceil(m U/(1-U)). The first jump starts
  // from m = n (positions after the last 1 up to n are known zeros);
  // afterwards m is the previous 1 itself.
  std::uint64_t pos = ones.back();
  std::uint64_t known_zero_until = n;
  while (pos <= horizon) {
    const double u = rng.uniform01();
    const double base = static_cast<double>(known_zero_until);
    const double gapf = std::max(1.0, std::ceil(base * u / (1.0 - u)));
    // Guard the astronomically unlikely overflow of the inverse transform;
    // such a jump exceeds n and lands past the horizon anyway.
    if (gapf > 1e18) break;
    const std::uint64_t next =
        known_zero_until + static_cast<std::uint64_t>(gapf);
    const std::uint64_t gap = next - pos;
    if (gap <= n) ++pc.count_by_length[gap];
    pos = next;
    known_zero_until = next;
  }
  return {std::move(cc), std::move(pc)};
}

RankedCycles rank_cycles(const CycleCounts& counts) {
  RankedCycles rc;
  rc.lengths.reserve(counts.total_cycles());
  for (std::size_t j = counts.count_by_length.size(); j-- > 1;) {
    for (std::uint32_t i = 0; i < counts.count_by_length[j]; ++i) {
      rc.lengths.push_back(j);
    }
  }
  return rc;
}

CycleCounts counts_from_ranked(const RankedCycles& ranked, std::uint64_t n) {
  CycleCounts cc;
  cc.n = n;
  cc.count_by_length.assign(n + 1, 0);
  for (std::uint64_t len : ranked.lengths) {
    if (len < 1 || len > n) {
      throw std::invalid_argument("counts_from_ranked: length out of range");
    }
    ++cc.count_by_length[len];
  }
  if (cc.weighted_sum() != n) {
    throw std::invalid_argument("counts_from_ranked: lengths do not sum to n");
  }
  return cc;
}

PDWeights sample_pd1(std::size_t k, double tol, RngStream& rng) {
  if (k < 1) throw std::invalid_argument("sample_pd1: K must be >= 1");
  if (!(tol > 0.0) || tol >= 1.0) {
    throw std::invalid_argument("sample_pd1: tol in (0,1)");
  }
  std::vector<double> atoms;
  double remaining = 1.0;
  while (remaining >= tol) {
    const double v = rng.uniform01();
    atoms.push_back(remaining * v);
    remaining *= (1.0 - v);
  }
  std::sort(atoms.begin(), atoms.end(), std::greater<double>());
  PDWeights pd;
  if (atoms.size() > k) atoms.resize(k);
  pd.weights = std::move(atoms);
  double kept = 0.0;
  for (double w : pd.weights) kept += w;
  pd.residual = std::max(0.0, 1.0 - kept);
  return pd;
}

CycleCountMoments exact_count_moments(std::uint64_t n, std::uint64_t j,
                                      std::uint64_t k) {
  if (j < 1 || j > n || k < 1 || k > n) {
    throw std::invalid_argument("exact_count_moments: need 1 <= j,k <= n");
  }
  if (j == k) {
    throw std::invalid_argument(
        "exact_count_moments: cross moment requires j != k");
  }
  CycleCountMoments m;
  m.mean = {1, static_cast<std::int64_t>(j)};
  m.factorial2 = 2 * j <= n
                     ? Rational{1, static_cast<std::int64_t>(j * j)}
                     : Rational{0, 1};
  m.cross = j + k <= n ? Rational{1, static_cast<std::int64_t>(j * k)}
                       : Rational{0, 1};
  return m;
}

double pd_fractional_part_mean(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("pd_fractional_part_mean: n >= 1");
  // 1 + sum_{k=1}^{n-1} (1 - k log((k+1)/k)), compensated summation.
  double total = 1.0;
  double block = 0.0;
  double carry = 0.0;
  for (std::uint64_t k = 1; k < n; ++k) {
    const double term =
        1.0 - static_cast<double>(k) * std::log1p(1.0 / static_cast<double>(k));
    const double y = term - carry;
    const double t = block + y;
    carry = (t - block) - y;
    block = t;
  }
  return total + block;
}

}  // namespace minorant

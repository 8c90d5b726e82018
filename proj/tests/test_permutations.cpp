#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "minorant/permutations.hpp"
#include "minorant/stats.hpp"
#include "oracles.hpp"

using namespace minorant;

namespace {

// Cycle type (lengths sorted nonincreasingly) of an explicit permutation.
std::vector<int> cycle_type(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::vector<int> lengths;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    int len = 0;
    std::size_t c = s;
    while (!seen[c]) {
      seen[c] = true;
      c = static_cast<std::size_t>(perm[c]);
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<int>());
  return lengths;
}

// Exact distribution over cycle types of the uniform permutation of [n],
// by full enumeration of n! permutations.
std::map<std::vector<int>, double> exact_type_distribution(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::vector<int>, long long> counts;
  long long total = 0;
  do {
    ++counts[cycle_type(perm)];
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::map<std::vector<int>, double> probs;
  for (const auto& [type, c] : counts) {
    probs[type] = static_cast<double>(c) / static_cast<double>(total);
  }
  return probs;
}

std::vector<int> type_of_counts(const CycleCounts& cc) {
  std::vector<int> lengths;
  for (std::size_t j = 1; j < cc.count_by_length.size(); ++j) {
    for (std::uint32_t i = 0; i < cc.count_by_length[j]; ++i) {
      lengths.push_back(static_cast<int>(j));
    }
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<int>());
  return lengths;
}

double chi_square(const std::map<std::vector<int>, double>& expected,
                  const std::map<std::vector<int>, long long>& observed,
                  long long n) {
  double stat = 0.0;
  for (const auto& [type, p] : expected) {
    const double e = p * static_cast<double>(n);
    const auto it = observed.find(type);
    const double o =
        it == observed.end() ? 0.0 : static_cast<double>(it->second);
    stat += (o - e) * (o - e) / e;
  }
  return stat;
}

}  // namespace

TEST_CASE("n = 1 has the unique fixed-point permutation") {
  RngStream rng(1, 0);
  for (int i = 0; i < 50; ++i) {
    const CycleCounts cc = sample_cycle_counts(1, rng);
    CHECK(cc.count_by_length[1] == 1);
    CHECK(cc.total_cycles() == 1);
  }
}

TEST_CASE("every sample satisfies sum_j j K_nj = n") {
  RngStream rng(2, 0);
  for (int rep = 0; rep < 500; ++rep) {
    const std::uint64_t n = 1 + (rng.next_u64() % 300);
    const CycleCounts cc = sample_cycle_counts(n, rng);
    CHECK(cc.weighted_sum() == n);
  }
}

TEST_CASE("n = 3 cycle type probabilities match the 6-permutation table") {
  const auto acc = accumulate_replications(
      [](RngStream& rng, std::span<double> out) {
        const CycleCounts cc = sample_cycle_counts(3, rng);
        if (cc.count_by_length[3] == 1) out[0] += 1.0;       // one 3-cycle
        else if (cc.count_by_length[1] == 3) out[1] += 1.0;  // identity
        else out[2] += 1.0;                                  // transposition
      },
      3, 300000, 12345);
  const double n = 300000.0;
  CHECK(acc[0] / n == doctest::Approx(2.0 / 6.0).epsilon(0.02));
  CHECK(acc[1] / n == doctest::Approx(1.0 / 6.0).epsilon(0.02));
  CHECK(acc[2] / n == doctest::Approx(3.0 / 6.0).epsilon(0.02));
}

TEST_CASE("n = 7 cycle types match exhaustive enumeration of 5040") {
  const auto expected = exact_type_distribution(7);
  // sanity of the oracle itself: 15 partitions of 7, probabilities sum to 1
  CHECK(expected.size() == 15);
  double mass = 0.0;
  for (const auto& [t, p] : expected) mass += p;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));

  const std::uint64_t reps = 1000000;
  RngStream rng(777, 0);
  std::map<std::vector<int>, long long> observed;
  for (std::uint64_t i = 0; i < reps; ++i) {
    ++observed[type_of_counts(sample_cycle_counts(7, rng))];
  }
  // chi-square over 15 cells, df = 14: 1% critical value 29.14
  CHECK(chi_square(expected, observed, reps) < 29.14);
}

TEST_CASE("feller coupling produces the same cycle-type law at n = 6") {
  const auto expected = exact_type_distribution(6);
  const std::uint64_t reps = 400000;
  RngStream rng(778, 0);
  std::map<std::vector<int>, long long> via_crt, via_feller;
  for (std::uint64_t i = 0; i < reps; ++i) {
    ++via_crt[type_of_counts(sample_cycle_counts(6, rng))];
  }
  for (std::uint64_t i = 0; i < reps; ++i) {
    ++via_feller[type_of_counts(sample_feller_coupled(6, rng).first)];
  }
  // 11 partitions of 6, df = 10: 1% critical value 23.21
  CHECK(chi_square(expected, via_crt, reps) < 23.21);
  CHECK(chi_square(expected, via_feller, reps) < 23.21);
}

TEST_CASE("E K_nj = 1/j at n = 20") {
  const std::uint64_t n = 20, reps = 1000000;
  const auto acc = accumulate_replications(
      [n](RngStream& rng, std::span<double> out) {
        const CycleCounts cc = sample_cycle_counts(n, rng);
        for (std::uint64_t j = 1; j <= n; ++j) {
          const double k = cc.count_by_length[j];
          out[j - 1] += k;
          out[n + j - 1] += k * k;
        }
      },
      2 * n, reps, 4242);
  for (std::uint64_t j = 1; j <= n; ++j) {
    const double mean = acc[j - 1] / static_cast<double>(reps);
    const double var =
        acc[n + j - 1] / static_cast<double>(reps) - mean * mean;
    const double se = std::sqrt(var / static_cast<double>(reps));
    CHECK(std::abs(mean - 1.0 / static_cast<double>(j)) < 5.0 * se + 1e-9);
  }
}

TEST_CASE("feller coupling satisfies the marginal and joint L1 bounds") {
  for (std::uint64_t n : {std::uint64_t{10}, std::uint64_t{100},
                          std::uint64_t{1000}}) {
    const std::uint64_t reps = 100000;
    const auto acc = accumulate_replications(
        [n](RngStream& rng, std::span<double> out) {
          const auto [cc, pc] = sample_feller_coupled(n, rng);
          double joint = 0.0;
          for (std::uint64_t j = 1; j <= n; ++j) {
            const double d =
                std::abs(static_cast<double>(cc.count_by_length[j]) -
                         static_cast<double>(pc.count_by_length[j]));
            out[j - 1] += d;
            out[n + j - 1] += d * d;
            joint += d;
          }
          out[2 * n] += joint;
        },
        2 * n + 1, reps, 555 + n);
    const double bound = 2.0 / static_cast<double>(n + 1);
    for (std::uint64_t j = 1; j <= n; ++j) {
      const double mean = acc[j - 1] / static_cast<double>(reps);
      const double var =
          std::max(0.0, acc[n + j - 1] / static_cast<double>(reps) -
                            mean * mean);
      const double se = std::sqrt(var / static_cast<double>(reps));
      CHECK(mean <= bound + 5.0 * se);
    }
    CHECK(acc[2 * n] / static_cast<double>(reps) < 2.0);
  }
}

TEST_CASE("feller poisson marginals have mean 1/j") {
  const std::uint64_t n = 12, reps = 300000;
  const auto acc = accumulate_replications(
      [n](RngStream& rng, std::span<double> out) {
        const PoissonCounts pc = sample_feller_coupled(n, rng).second;
        for (std::uint64_t j = 1; j <= n; ++j) {
          const double k = pc.count_by_length[j];
          out[j - 1] += k;
          out[n + j - 1] += k * k;
        }
      },
      2 * n, reps, 991);
  for (std::uint64_t j = 1; j <= n; ++j) {
    const double lambda = 1.0 / static_cast<double>(j);
    const double mean = acc[j - 1] / static_cast<double>(reps);
    const double var =
        std::max(0.0, acc[n + j - 1] / static_cast<double>(reps) - mean * mean);
    const double se = std::sqrt(var / static_cast<double>(reps));
    CHECK(std::abs(mean - lambda) < 5.0 * se + 1e-9);
    // Poisson: variance equals the mean
    CHECK(std::abs(var - lambda) < 10.0 * se + 0.01 * lambda);
  }
}

TEST_CASE("rank_cycles and the round trip back to counts") {
  CycleCounts cc;
  cc.n = 5;
  cc.count_by_length = {0, 2, 0, 1, 0, 0};  // two 1-cycles, one 3-cycle
  const RankedCycles rc = rank_cycles(cc);
  REQUIRE(rc.lengths.size() == 3);
  CHECK(rc.lengths[0] == 3);
  CHECK(rc.lengths[1] == 1);
  CHECK(rc.lengths[2] == 1);
  const CycleCounts back = counts_from_ranked(rc, 5);
  CHECK(back.count_by_length == cc.count_by_length);

  RngStream rng(9, 0);
  const CycleCounts one = sample_cycle_counts(1, rng);
  const RankedCycles r1 = rank_cycles(one);
  REQUIRE(r1.lengths.size() == 1);
  CHECK(r1.lengths[0] == 1);
}

TEST_CASE("sample_pd1 atoms are sorted and account for all mass") {
  RngStream rng(21, 0);
  for (int rep = 0; rep < 2000; ++rep) {
    const PDWeights pd = sample_pd1(64, 1e-9, rng);
    double total = pd.residual;
    CHECK(pd.residual >= 0.0);
    for (std::size_t i = 0; i < pd.weights.size(); ++i) {
      CHECK(pd.weights[i] > 0.0);
      if (i) CHECK(pd.weights[i] <= pd.weights[i - 1]);
      total += pd.weights[i];
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
  // aggressive truncation still reports the dropped mass
  for (int rep = 0; rep < 200; ++rep) {
    const PDWeights pd = sample_pd1(2, 1e-9, rng);
    CHECK(pd.weights.size() <= 2);
    double total = pd.residual;
    for (double w : pd.weights) total += w;
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("GEM(1) moment identity: sum_k E Z_k^s = 1/s") {
  const double svals[3] = {0.5, 2.0, 3.0};
  const std::uint64_t reps = 200000;
  const auto acc = accumulate_replications(
      [&svals](RngStream& rng, std::span<double> out) {
        const PDWeights pd = sample_pd1(64, 1e-9, rng);
        for (int i = 0; i < 3; ++i) {
          double v = std::pow(pd.residual, svals[i]);
          for (double w : pd.weights) v += std::pow(w, svals[i]);
          out[2 * i] += v;
          out[2 * i + 1] += v * v;
        }
      },
      6, reps, 31337);
  for (int i = 0; i < 3; ++i) {
    const double mean = acc[2 * i] / static_cast<double>(reps);
    const double var =
        std::max(0.0, acc[2 * i + 1] / static_cast<double>(reps) - mean * mean);
    const double se = std::sqrt(var / static_cast<double>(reps));
    CHECK(std::abs(mean - 1.0 / svals[i]) < 5.0 * se + 1e-12);
  }
}

TEST_CASE("largest PD atom agrees with a high-precision GEM oracle") {
  // oracle: independent GEM run at tol = 1e-15, sorted by hand
  const std::uint64_t reps = 100000;
  const EmpiricalSample via_pd = run_replications(
      [](RngStream& rng) { return sample_pd1(64, 1e-9, rng).weights[0]; },
      reps, 606);
  const EmpiricalSample via_oracle = run_replications(
      [](RngStream& rng) {
        double remaining = 1.0;
        double best = 0.0;
        while (remaining >= 1e-15) {
          const double v = rng.uniform01();
          best = std::max(best, remaining * v);
          remaining *= (1.0 - v);
        }
        return best;
      },
      reps, 707);
  const MomentSummary a = summarize_moments(via_pd.values);
  const MomentSummary b = summarize_moments(via_oracle.values);
  const double se = std::hypot(a.mean_stderr, b.mean_stderr);
  CHECK(std::abs(a.mean - b.mean) < 5.0 * se);
  // E Z_1 for PD(1) is the Golomb-Dickman constant, about 0.6243
  CHECK(a.mean == doctest::Approx(0.62432998854).epsilon(0.01));
  CHECK(ks_two_sample(via_pd, via_oracle).pass);
}

TEST_CASE("ranked cycle lengths over n converge to PD(1)") {
  const std::uint64_t n = 100000, reps = 10000;
  const auto perm = run_replications_multi(
      [n](RngStream& rng, std::span<double> out) {
        const RankedCycles rc = sample_ranked_cycles(n, rng);
        out[0] = static_cast<double>(rc.lengths[0]) / static_cast<double>(n);
        out[1] = rc.lengths.size() > 1
                     ? static_cast<double>(rc.lengths[1]) /
                           static_cast<double>(n)
                     : 0.0;
      },
      2, reps, 808);
  const auto gem = run_replications_multi(
      [](RngStream& rng, std::span<double> out) {
        const PDWeights pd = sample_pd1(64, 1e-9, rng);
        out[0] = pd.weights[0];
        out[1] = pd.weights.size() > 1 ? pd.weights[1] : 0.0;
      },
      2, reps, 909);
  CHECK(ks_two_sample(perm[0], gem[0]).pass);
  CHECK(ks_two_sample(perm[1], gem[1]).pass);
}

TEST_CASE("exact cycle count moments") {
  const CycleCountMoments a = exact_count_moments(10, 3, 4);
  CHECK(a.mean.num == 1);
  CHECK(a.mean.den == 3);
  CHECK(a.factorial2.num == 1);
  CHECK(a.factorial2.den == 9);
  CHECK(a.cross.num == 1);
  CHECK(a.cross.den == 12);

  const CycleCountMoments b = exact_count_moments(10, 6, 3);
  CHECK(b.factorial2.num == 0);  // 2j > n
  CHECK(b.cross.num == 1);       // 6 + 3 <= 10

  const CycleCountMoments c = exact_count_moments(5, 2, 4);
  CHECK(c.cross.num == 0);  // j + k > n

  CHECK_THROWS_AS(exact_count_moments(10, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(exact_count_moments(10, 0, 3), std::invalid_argument);
}

TEST_CASE("empirical second moments match the exact count moments") {
  const std::uint64_t n = 10, reps = 1000000;
  const auto acc = accumulate_replications(
      [n](RngStream& rng, std::span<double> out) {
        const CycleCounts cc = sample_cycle_counts(n, rng);
        const double k3 = cc.count_by_length[3];
        const double k4 = cc.count_by_length[4];
        const double k6 = cc.count_by_length[6];
        out[0] += k3 * (k3 - 1.0);
        out[1] += k3 * k4;
        out[2] += k6 * (k6 - 1.0);
        out[3] += k6 * k4;  // 6 + 4 = 10 <= n
      },
      4, reps, 515151);
  const double r = static_cast<double>(reps);
  CHECK(acc[0] / r == doctest::Approx(1.0 / 9.0).epsilon(0.05));
  CHECK(acc[1] / r == doctest::Approx(1.0 / 12.0).epsilon(0.05));
  CHECK(acc[2] / r == doctest::Approx(0.0).scale(1.0));  // 2*6 > 10
  CHECK(acc[3] / r == doctest::Approx(1.0 / 24.0).epsilon(0.06));
}

TEST_CASE("pd_fractional_part_mean closed form") {
  CHECK(pd_fractional_part_mean(1) == 1.0);
  CHECK(pd_fractional_part_mean(2) ==
        doctest::Approx(1.0 + (1.0 - std::log(2.0))).epsilon(1e-12));
  CHECK(pd_fractional_part_mean(2) == doctest::Approx(1.306852819).epsilon(1e-9));

  // quadrature cross-check of the integral form at n = 10
  double integral = 0.0;
  for (int k = 0; k < 10; ++k) {
    integral += oracles::simpson(
        [k](double y) {
          return (y - static_cast<double>(k)) / y;
        },
        k == 0 ? 1e-12 : static_cast<double>(k), static_cast<double>(k + 1),
        1e-12);
  }
  CHECK(pd_fractional_part_mean(10) ==
        doctest::Approx(integral).epsilon(1e-6));

  // growth ~ (1/2) log n, with the documented O(1) offset; at n = 1e6 the
  // exact value sits near 7.83, i.e. ratio ~ 1.13
  const double v = pd_fractional_part_mean(1000000);
  CHECK(v > 7.7);
  CHECK(v < 7.95);
  CHECK(v / (0.5 * std::log(1e6)) == doctest::Approx(1.133).epsilon(0.01));
}

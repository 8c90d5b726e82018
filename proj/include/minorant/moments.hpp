#ifndef MINORANT_MOMENTS_HPP
#define MINORANT_MOMENTS_HPP

#include <cstdint>
#include <vector>

#include "minorant/increments.hpp"
#include "minorant/rng.hpp"

namespace minorant {

// g(x) = x^2/2 - sqrt(1+x^2) + 1 for x >= 0, evaluated through the
// algebraically equal form x^4 / (2 (1 + sqrt(1+x^2))^2) near zero so the
// x^4/8 regime is computed without cancellation.
double g(double x);

enum class MomentMethod { enumeration, quadrature, monte_carlo };

struct EtaMoments {
  std::uint64_t j = 0;
  double mean = 0.0;    // E eta_j
  double second = 0.0;  // E eta_j^2
  MomentMethod method = MomentMethod::monte_carlo;
  double error_bound = 0.0;  // stderr for MC, resolution bound otherwise
};

// E eta_j and E eta_j^2 for eta_j = sqrt(j^2 + S_j^2) - j.
//  - lattice laws (rademacher, integer discrete_pm): exact enumeration of S_j
//  - centered Gaussian: quadrature against the N(0, j sigma^2) density
//  - anything else: Monte Carlo with mc_reps draws and tracked stderr
EtaMoments eta_moments(const IncrementLaw& law, std::uint64_t j,
                       std::uint64_t mc_reps = 200000,
                       std::uint64_t seed = 0x6D6F6D656E747Bull);

// E g(|S_j| / j) computed directly from the law of S_j (enumeration for
// lattice laws, quadrature for the centered Gaussian, otherwise MC). Serves
// as the independent side of the identities
//   sigma^2/2 - E eta_j = j E g(|S_j|/j),  E eta_j^2 = 2 j^2 E g(|S_j|/j).
double expected_g(const IncrementLaw& law, std::uint64_t j,
                  std::uint64_t mc_reps = 200000,
                  std::uint64_t seed = 0x672D726F757465ull);

// Precomputed eta moment tables for j = 1..n_max with O(n) evaluation of the
// exact length moment formulas
//   E L_n - n   = sum_{j<=n} E eta_j / j
//   Var L_n     = sum_{j<=n} E eta_j^2 / j
//                 - sum_{j,k <= n, j+k > n} E eta_j E eta_k / (jk)
// (the double sum includes the j = k diagonal).
class EtaMomentTable {
 public:
  // mc_budget: target number of increment draws per j for MC-backed laws
  // (reps_j = max(64, mc_budget / j)); ignored for exact backbones.
  EtaMomentTable(const IncrementLaw& law, std::uint64_t n_max,
                 std::uint64_t seed = 0x6D6F6D656E747Bull,
                 std::uint64_t mc_budget = 1u << 22, unsigned workers = 0);

  std::uint64_t n_max() const { return n_max_; }
  MomentMethod method() const { return method_; }
  double eta_mean(std::uint64_t j) const { return mean_[j]; }
  double eta_second(std::uint64_t j) const { return second_[j]; }

  double mean_length(std::uint64_t n) const;
  double variance_length(std::uint64_t n) const;
  // The subtracted double-sum term of the variance formula.
  double variance_correction(std::uint64_t n) const;

  // Approximate MC noise on mean_length / variance_length (0 for exact
  // backbones; the correction-term contribution is neglected).
  double mean_length_stderr(std::uint64_t n) const;
  double variance_length_stderr(std::uint64_t n) const;

 private:
  std::uint64_t n_max_;
  MomentMethod method_;
  std::vector<double> mean_, second_, se_mean_, se_second_;
  std::vector<long double> prefix_a_, prefix_s_;  // sums of mean/j, second/j
  std::vector<long double> prefix_se2_a_, prefix_se2_s_;
};

// Convenience single-shot forms of the Lemma formulas above. For repeated
// evaluation over an n-grid build an EtaMomentTable once instead.
double mean_length(const IncrementLaw& law, std::uint64_t n);
double variance_length(const IncrementLaw& law, std::uint64_t n);

// 0.02 n^3 P(|xi| >= 2n) from the law's analytic tail.
double variance_lower_bound(const IncrementLaw& law, std::uint64_t n);

struct LipschitzCheck {
  double lhs = 0.0;     // MC estimate of E|eta_i - eta_j|, coupled walks
  double rhs = 0.0;     // (2 + E|xi|) |i - j|
  double stderr_ = 0.0;
};

LipschitzCheck lipschitz_check(const IncrementLaw& law, std::uint64_t i,
                               std::uint64_t j, std::uint64_t reps = 100000,
                               std::uint64_t seed = 0x6C6970736368ull);

}  // namespace minorant

#endif  // MINORANT_MOMENTS_HPP

#ifndef MINORANT_LIMITS_HPP
#define MINORANT_LIMITS_HPP

#include <cstdint>
#include <utility>

#include "minorant/increments.hpp"
#include "minorant/permutations.hpp"
#include "minorant/rng.hpp"

namespace minorant {

// Gaussian limit of the finite-variance CLT: N(0, 3 sigma^4 / 4).
double sample_limit_T1(double sigma, RngStream& rng);

struct CenteringT1 {
  double general = 0.0;     // n + sum_{j<=n} sigma_j^2 / (2j)
  double simplified = 0.0;  // n + (sigma^2/2) log n
};

CenteringT1 centering_T1(const IncrementLaw& law, std::uint64_t n);

// Random series limit (1/2) sum_k Z_k^(2/alpha - 1) X_k^2 with PD(1) weights
// Z and i.i.d. X_k ~ S(alpha, p - q, 1); the stable marginal at a PD atom is
// drawn through self-similarity rather than path simulation. tail_bound is
// the reported residual-mass contribution bound
// (1/2) residual^(2/alpha - 1) max_k X_k^2.
struct T2Draw {
  double value = 0.0;
  double tail_bound = 0.0;
};

T2Draw sample_limit_T2(double alpha, double p, double q, std::size_t k,
                       double tol, RngStream& rng);

// Same series evaluated on given PD weights (test hook for degenerate
// weight configurations).
T2Draw limit_T2_series(const PDWeights& pd, double alpha, double beta,
                       RngStream& rng);

// Path-functional limit of the infinite-mean regime:
// (S_alpha(1) - 2 inf S_alpha, 2 sup S_alpha - S_alpha(1)) over [0,1],
// approximated by an m-step exactly-stable random-walk skeleton. The
// skeleton underestimates sup and overestimates inf; resolution m and the
// refinement KS check quantify that bias.
std::pair<double, double> sample_limit_T3(double alpha, double p, double q,
                                          std::uint64_t m, RngStream& rng);

// Nonzero-mean limit mu/sqrt(1+mu^2) * S_alpha(1); alpha = 2 uses
// S_2(1) = N(0, sigma^2) with sigma = sigma_or_scale.
double sample_limit_T5(double mu, double stable_alpha, double sigma_or_scale,
                       RngStream& rng, double beta = 0.0);

// Length of the convex minorant of the Cauchy process (c S_1(t)) on [0,1],
// approximated by an m-step standard Cauchy walk with space scaled by c/m.
double sample_limit_critical(double c, std::uint64_t m, RngStream& rng);

}  // namespace minorant

#endif  // MINORANT_LIMITS_HPP

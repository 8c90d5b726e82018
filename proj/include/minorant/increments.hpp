#ifndef MINORANT_INCREMENTS_HPP
#define MINORANT_INCREMENTS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "minorant/geometry.hpp"
#include "minorant/rng.hpp"

namespace minorant {

enum class Regime { A, B, C, APrime, BPrime, Critical };

std::string to_string(Regime r);

// Increment law catalog. Laws are value objects carrying their analytic
// moments; construct through the factory functions so the cached quantities
// stay consistent.
//
//   gaussian(mu, sigma)       N(mu, sigma^2)
//   rademacher()              +-1 with probability 1/2
//   uniform(lo, hi)           uniform on [lo, hi]
//   pareto(alpha, p, q)       two-sided Pareto, P(X > x) = p x^-alpha and
//                             P(X < -x) = q x^-alpha for x >= 1; centered to
//                             mean 0 when alpha > 1. alpha > 2 is allowed and
//                             gives a finite-variance heavy-tail law.
//   stable(alpha, beta, c)    exactly alpha-stable, S(alpha, beta, c) in the
//                             "1" parameterization with zero shift (strictly
//                             stable for alpha != 1); alpha = 2 is N(0, 2c^2).
//   cauchy()                  standard symmetric Cauchy
//   pareto_log_tail()         symmetric, |xi| >= e with P(|xi| > x) =
//                             e^2/(x log x)^2: finite variance but
//                             E xi^2 log+|xi| = infinity.
//   discrete_pm(values)       uniform on {+-v : v in values} (lattice laws
//                             for exact enumeration oracles)
//   constant(c)               degenerate at c (test hook)
//
// shifted(delta) adds a deterministic drift, moving regime A laws to A' and
// regime B laws to B'.
struct IncrementLaw {
  enum class Kind {
    Gaussian,
    Rademacher,
    Uniform,
    Pareto,
    Stable,
    Cauchy,
    ParetoLogTail,
    DiscretePM,
    Constant,
  };

  Kind kind;
  double a = 0.0;  // Gaussian mu; Uniform lo; Pareto/Stable alpha; Constant c
  double b = 0.0;  // Gaussian sigma; Uniform hi; Pareto p; Stable beta
  double c = 0.0;  // Pareto q; Stable scale
  std::vector<double> atoms;  // DiscretePM positive support points
  double shift = 0.0;

  // Cached analytic quantities (NaN when undefined, inf when infinite).
  double mean = 0.0;
  double variance = 0.0;
  double mean_abs = 0.0;            // E|xi|
  bool e2log_finite = true;         // E xi^2 log+ |xi| < inf
  bool e3_finite = true;            // E |xi|^3 < inf
  bool has_analytic_tail = false;   // tail_prob available

  static IncrementLaw gaussian(double mu, double sigma);
  static IncrementLaw rademacher();
  static IncrementLaw uniform(double lo, double hi);
  static IncrementLaw pareto(double alpha, double p, double q);
  static IncrementLaw stable(double alpha, double beta, double scale);
  static IncrementLaw cauchy();
  static IncrementLaw pareto_log_tail();
  static IncrementLaw discrete_pm(std::vector<double> values);
  static IncrementLaw constant(double c);

  IncrementLaw shifted(double delta) const;

  // Short deterministic descriptor, e.g. "gaussian(0,1)".
  std::string name() const;

  // P(|xi| >= t); throws for laws without a closed-form tail.
  double tail_prob(double t) const;
};

// Normalization a_n and S_alpha such that S(n t)/a_n converges to S_alpha.
struct NormalizationPlan {
  std::function<double(std::uint64_t)> a_n;
  double index = 0.0;  // regular-variation index 1/alpha
  std::string notes;
};

double sample_increment(const IncrementLaw& law, RngStream& rng);

WalkPath sample_walk(const IncrementLaw& law, std::uint64_t n, RngStream& rng);

// Cumulative sums of n fresh draws written into out[0..n] with out[0] = 0.
void sample_walk_into(const IncrementLaw& law, std::uint64_t n, RngStream& rng,
                      std::vector<double>& out);

NormalizationPlan normalization(const IncrementLaw& law);

// Var(xi 1{|xi| <= sqrt(n)}) for regime A laws, computed in closed form.
double truncated_variance(const IncrementLaw& law, std::uint64_t n);

Regime classify_regime(const IncrementLaw& law);

// Draw of S(alpha, beta, scale) in the "1" parameterization with zero shift
// (Chambers-Mallows-Stuck). In this parameterization sums renormalize as
// S_n / n^(1/alpha) =d S_1 for alpha != 1, alpha = 2 reduces to N(0, 2c^2),
// and tail weights (p, q) of an attracted law map to beta = p - q.
double sample_stable(double alpha, double beta, double scale, RngStream& rng);

// E|X|^r for X ~ S(alpha, beta, 1), 0 < r < alpha (Zolotarev's formula).
double stable_abs_moment(double alpha, double beta, double r);

}  // namespace minorant

#endif  // MINORANT_INCREMENTS_HPP

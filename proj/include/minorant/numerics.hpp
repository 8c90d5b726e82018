#ifndef MINORANT_NUMERICS_HPP
#define MINORANT_NUMERICS_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>

namespace minorant {

// Pairwise (tree) summation; error grows like O(log n * eps) instead of
// O(n * eps), which keeps lengths accurate at n = 1e7.
double pairwise_sum(std::span<const double> xs);

// Adaptive Simpson on [a,b] to the given relative tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-11);

// E[f(|N|)] for a standard normal N; integrates 2*phi(t)*f(t) over t >= 0.
double gauss_abs_expectation(const std::function<double(double)>& f,
                             double rel_tol = 1e-11);

inline double normal_pdf(double x) {
  return 0.3989422804014326779399461 * std::exp(-0.5 * x * x);
}

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865475244008444);
}

// P(|N| > x) for standard normal, x >= 0.
inline double normal_two_sided_tail(double x) {
  return std::erfc(x * 0.7071067811865475244008444);
}

}  // namespace minorant

#endif  // MINORANT_NUMERICS_HPP

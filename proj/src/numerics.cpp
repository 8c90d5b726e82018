#include "minorant/numerics.hpp"

#include <vector>

namespace minorant {

namespace {

double pairwise_sum_rec(const double* xs, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += xs[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum_rec(xs, h) + pairwise_sum_rec(xs + h, n - h);
}

struct SimpsonPanel {
  double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f,
                const SimpsonPanel& p, double tol, int depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, m, p.fa, flm, p.fm);
  const double right = simpson(m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
         adaptive(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
  return pairwise_sum_rec(xs.data(), xs.size());
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson(a, b, fa, fm, fb);
  // Seed the absolute tolerance from a coarse estimate of the integral scale.
  const double scale = std::max(std::abs(whole), 1e-300);
  return adaptive(f, {a, b, fa, fm, fb, whole}, rel_tol * scale, 48);
}

double gauss_abs_expectation(const std::function<double(double)>& f,
                             double rel_tol) {
  // phi(12) ~ 2e-32; contributions beyond are negligible for the smooth
  // moment integrands used here.
  return integrate([&f](double t) { return 2.0 * normal_pdf(t) * f(t); }, 0.0,
                   12.0, rel_tol);
}

}  // namespace minorant

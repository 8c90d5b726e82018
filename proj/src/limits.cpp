#include "minorant/limits.hpp"

#include <cmath>
#include <stdexcept>

#include "minorant/geometry.hpp"

namespace minorant {

double sample_limit_T1(double sigma, RngStream& rng) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sample_limit_T1: sigma > 0");
  const double sd = std::sqrt(0.75) * sigma * sigma;
  return sd * rng.normal();
}

CenteringT1 centering_T1(const IncrementLaw& law, std::uint64_t n) {
  if (classify_regime(law) != Regime::A) {
    throw std::invalid_argument("centering_T1 requires a regime A law");
  }
  CenteringT1 out;
  long double acc = 0.0L;
  for (std::uint64_t j = 1; j <= n; ++j) {
    acc += truncated_variance(law, j) / (2.0L * static_cast<long double>(j));
  }
  const double nd = static_cast<double>(n);
  out.general = nd + static_cast<double>(acc);
  out.simplified = nd + 0.5 * law.variance * std::log(nd);
  return out;
}

T2Draw limit_T2_series(const PDWeights& pd, double alpha, double beta,
                       RngStream& rng) {
  const double expo = 2.0 / alpha - 1.0;
  double total = 0.0;
  double max_sq = 0.0;
  for (double z : pd.weights) {
    const double x = sample_stable(alpha, beta, 1.0, rng);
    const double xsq = x * x;
    max_sq = std::max(max_sq, xsq);
    total += std::pow(z, expo) * xsq;
  }
  T2Draw out;
  out.value = 0.5 * total;
  out.tail_bound =
      pd.residual > 0.0 ? 0.5 * std::pow(pd.residual, expo) * max_sq : 0.0;
  return out;
}

T2Draw sample_limit_T2(double alpha, double p, double q, std::size_t k,
                       double tol, RngStream& rng) {
  if (!(alpha > 1.0) || !(alpha < 2.0)) {
    throw std::invalid_argument("sample_limit_T2: alpha must be in (1,2)");
  }
  if (p < 0.0 || q < 0.0 || std::abs(p + q - 1.0) > 1e-12) {
    throw std::invalid_argument("sample_limit_T2: need p + q = 1");
  }
  const PDWeights pd = sample_pd1(k, tol, rng);
  return limit_T2_series(pd, alpha, p - q, rng);
}

std::pair<double, double> sample_limit_T3(double alpha, double p, double q,
                                          std::uint64_t m, RngStream& rng) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("sample_limit_T3: alpha must be in (0,1)");
  }
  if (m < 2) throw std::invalid_argument("sample_limit_T3: m >= 2");
  const double beta = p - q;
  const double scale = std::pow(static_cast<double>(m), -1.0 / alpha);
  double s = 0.0, mn = 0.0, mx = 0.0;
  for (std::uint64_t i = 0; i < m; ++i) {
    s += sample_stable(alpha, beta, 1.0, rng);
    if (s < mn) mn = s;
    if (s > mx) mx = s;
  }
  const double endpoint = s * scale;
  mn *= scale;
  mx *= scale;
  return {endpoint - 2.0 * mn, 2.0 * mx - endpoint};
}

double sample_limit_T5(double mu, double stable_alpha, double sigma_or_scale,
                       RngStream& rng, double beta) {
  if (mu == 0.0) {
    throw std::invalid_argument("sample_limit_T5: mu must be nonzero");
  }
  const double factor = mu / std::sqrt(1.0 + mu * mu);
  double draw;
  if (stable_alpha == 2.0) {
    draw = sigma_or_scale * rng.normal();  // S_2(1) := N(0, sigma^2)
  } else {
    draw = sample_stable(stable_alpha, beta, sigma_or_scale, rng);
  }
  return factor * draw;
}

double sample_limit_critical(double c, std::uint64_t m, RngStream& rng) {
  if (!(c > 0.0)) throw std::invalid_argument("sample_limit_critical: c > 0");
  if (m < 2) throw std::invalid_argument("sample_limit_critical: m >= 2");
  const double md = static_cast<double>(m);
  const double yscale = c / md;
  LowerHullBuilder hull;
  hull.reserve(32);
  hull.push(0.0, 0.0);
  double s = 0.0;
  const IncrementLaw cauchy = IncrementLaw::cauchy();
  for (std::uint64_t k = 1; k <= m; ++k) {
    s += sample_increment(cauchy, rng);
    hull.push(static_cast<double>(k) / md, s * yscale);
  }
  return hull.length();
}

}  // namespace minorant

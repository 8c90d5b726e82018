#include "minorant/increments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "minorant/numerics.hpp"

namespace minorant {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;
const double kE = std::exp(1.0);

// Lambert W on [e, inf), by Halley iteration on y e^y = r.
double lambert_w(double r) {
  double y = std::log(r);
  y -= std::log(y);  // r >= e so log(r) >= 1
  for (int it = 0; it < 32; ++it) {
    const double ey = std::exp(y);
    const double f = y * ey - r;
    const double step = f / (ey * (y + 1.0) - 0.5 * (y + 2.0) * f / (y + 1.0));
    y -= step;
    if (std::abs(step) <= 1e-15 * std::abs(y)) break;
  }
  return y;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// One-sided two-sided-Pareto probabilities for the uncentered variable X with
// P(X > x) = p x^-alpha (x >= 1) and P(X < -x) = q x^-alpha (x >= 1).
double pareto_prob_ge(double alpha, double p, double q, double y) {
  if (y > 1.0) return p * std::pow(y, -alpha);
  if (y > -1.0) return p;
  return 1.0 - q * std::pow(-y, -alpha);
}

double pareto_prob_le(double alpha, double p, double q, double y) {
  if (y < -1.0) return q * std::pow(-y, -alpha);
  if (y < 1.0) return q;
  return 1.0 - p * std::pow(y, -alpha);
}

// Integral of x^k over the two-sided Pareto density restricted to [a, b].
double pareto_partial_moment(double alpha, double p, double q, int k,
                             double a, double b) {
  if (b <= a) return 0.0;
  double total = 0.0;
  // Right branch: density p*alpha*x^{-alpha-1} on [1, inf).
  {
    const double lo = std::max(a, 1.0);
    const double hi = b;
    if (hi > lo && p > 0.0) {
      const double e = static_cast<double>(k) - alpha;
      total += p * alpha * (std::pow(hi, e) - std::pow(lo, e)) / e;
    }
  }
  // Left branch: density q*alpha*(-x)^{-alpha-1} on (-inf, -1].
  {
    const double lo = std::max(-b, 1.0);
    const double hi = -a;
    if (hi > lo && q > 0.0) {
      const double e = static_cast<double>(k) - alpha;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      total += sign * q * alpha * (std::pow(hi, e) - std::pow(lo, e)) / e;
    }
  }
  return total;
}

double pareto_log_tail_prob(double t) {
  if (t <= kE) return 1.0;
  const double lt = std::log(t);
  return kE * kE / (t * t * lt * lt);
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::A: return "A";
    case Regime::B: return "B";
    case Regime::C: return "C";
    case Regime::APrime: return "A'";
    case Regime::BPrime: return "B'";
    case Regime::Critical: return "critical";
  }
  return "?";
}

IncrementLaw IncrementLaw::gaussian(double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian: sigma must be > 0");
  IncrementLaw law;
  law.kind = Kind::Gaussian;
  law.a = mu;
  law.b = sigma;
  law.mean = mu;
  law.variance = sigma * sigma;
  law.mean_abs = sigma * std::sqrt(2.0 / kPi) * std::exp(-mu * mu / (2 * sigma * sigma)) +
                 mu * std::erf(mu / (sigma * std::sqrt(2.0)));
  law.e2log_finite = true;
  law.e3_finite = true;
  law.has_analytic_tail = true;
  return law;
}

IncrementLaw IncrementLaw::rademacher() {
  IncrementLaw law;
  law.kind = Kind::Rademacher;
  law.mean = 0.0;
  law.variance = 1.0;
  law.mean_abs = 1.0;
  law.has_analytic_tail = true;
  return law;
}

IncrementLaw IncrementLaw::uniform(double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("uniform: need lo < hi");
  IncrementLaw law;
  law.kind = Kind::Uniform;
  law.a = lo;
  law.b = hi;
  law.mean = 0.5 * (lo + hi);
  law.variance = (hi - lo) * (hi - lo) / 12.0;
  if (lo >= 0.0) {
    law.mean_abs = law.mean;
  } else if (hi <= 0.0) {
    law.mean_abs = -law.mean;
  } else {
    law.mean_abs = (lo * lo + hi * hi) / (2.0 * (hi - lo));
  }
  law.has_analytic_tail = true;
  return law;
}

IncrementLaw IncrementLaw::pareto(double alpha, double p, double q) {
  if (!(alpha > 0.0)) throw std::invalid_argument("pareto: alpha must be > 0");
  if (p < 0.0 || q < 0.0 || std::abs(p + q - 1.0) > 1e-12) {
    throw std::invalid_argument("pareto: tail weights must satisfy p + q = 1");
  }
  IncrementLaw law;
  law.kind = Kind::Pareto;
  law.a = alpha;
  law.b = p;
  law.c = q;
  const double m = alpha > 1.0 ? (p - q) * alpha / (alpha - 1.0) : 0.0;
  law.shift = 0.0;
  law.mean = alpha > 1.0 ? 0.0 : kNaN;
  law.variance = alpha > 2.0 ? alpha / (alpha - 2.0) - m * m : kInf;
  if (alpha > 1.0) {
    // E|X - m| = 2 * integral_{-inf}^{m} F, F the CDF of the uncentered X.
    double lower_int;
    if (m <= -1.0) {
      lower_int = q * std::pow(-m, 1.0 - alpha) / (alpha - 1.0);
    } else if (m <= 1.0) {
      lower_int = q / (alpha - 1.0) + q * (m + 1.0);
    } else {
      lower_int = q / (alpha - 1.0) + 2.0 * q + (m - 1.0) -
                  p * (1.0 - std::pow(m, 1.0 - alpha)) / (alpha - 1.0);
    }
    law.mean_abs = 2.0 * lower_int;
  } else {
    law.mean_abs = kInf;
  }
  law.e2log_finite = alpha > 2.0;
  law.e3_finite = alpha > 3.0;
  law.has_analytic_tail = true;
  return law;
}

IncrementLaw IncrementLaw::stable(double alpha, double beta, double scale) {
  if (!(alpha > 0.0) || alpha > 2.0) {
    throw std::invalid_argument("stable: alpha must be in (0, 2]");
  }
  if (beta < -1.0 || beta > 1.0) {
    throw std::invalid_argument("stable: beta must be in [-1, 1]");
  }
  if (alpha == 1.0 && beta != 0.0) {
    throw std::invalid_argument("stable: alpha = 1 supported only for beta = 0");
  }
  if (!(scale > 0.0)) throw std::invalid_argument("stable: scale must be > 0");
  IncrementLaw law;
  law.kind = Kind::Stable;
  law.a = alpha;
  law.b = beta;
  law.c = scale;
  if (alpha == 2.0) {
    law.mean = 0.0;
    law.variance = 2.0 * scale * scale;
    law.mean_abs = 2.0 * scale / std::sqrt(kPi);
    law.e2log_finite = true;
    law.e3_finite = true;
    law.has_analytic_tail = true;
  } else {
    law.mean = alpha > 1.0 ? 0.0 : kNaN;
    law.variance = kInf;
    law.mean_abs = alpha > 1.0 ? scale * stable_abs_moment(alpha, beta, 1.0) : kInf;
    law.e2log_finite = false;
    law.e3_finite = false;
    law.has_analytic_tail = false;
  }
  return law;
}

IncrementLaw IncrementLaw::cauchy() {
  IncrementLaw law;
  law.kind = Kind::Cauchy;
  law.mean = kNaN;
  law.variance = kInf;
  law.mean_abs = kInf;
  law.e2log_finite = false;
  law.e3_finite = false;
  law.has_analytic_tail = true;
  return law;
}

IncrementLaw IncrementLaw::pareto_log_tail() {
  IncrementLaw law;
  law.kind = Kind::ParetoLogTail;
  law.mean = 0.0;
  law.variance = 3.0 * kE * kE;
  // E|xi| = e + integral_e^inf of the tail; no elementary closed form, so
  // evaluate the convergent integral once here.
  law.mean_abs =
      kE + integrate([](double x) { return pareto_log_tail_prob(x); }, kE,
                     1e8, 1e-12) +
      kE * kE / (1e8 * std::log(1e8) * std::log(1e8));
  law.e2log_finite = false;
  law.e3_finite = false;
  law.has_analytic_tail = true;
  return law;
}

IncrementLaw IncrementLaw::discrete_pm(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("discrete_pm: empty support");
  IncrementLaw law;
  law.kind = Kind::DiscretePM;
  law.atoms = std::move(values);
  double m2 = 0.0, m1 = 0.0;
  for (double v : law.atoms) {
    if (!(v > 0.0)) throw std::invalid_argument("discrete_pm: atoms must be > 0");
    m2 += v * v;
    m1 += v;
  }
  law.mean = 0.0;
  law.variance = m2 / static_cast<double>(law.atoms.size());
  law.mean_abs = m1 / static_cast<double>(law.atoms.size());
  law.has_analytic_tail = true;
  return law;
}

IncrementLaw IncrementLaw::constant(double c) {
  IncrementLaw law;
  law.kind = Kind::Constant;
  law.a = c;
  law.mean = c;
  law.variance = 0.0;
  law.mean_abs = std::abs(c);
  law.has_analytic_tail = true;
  return law;
}

IncrementLaw IncrementLaw::shifted(double delta) const {
  if (delta == 0.0) return *this;
  if (kind == Kind::Gaussian) return gaussian(a + delta, b);
  if (kind == Kind::Constant) return constant(a + delta);
  IncrementLaw law = *this;
  law.shift += delta;
  law.mean = mean + delta;
  law.mean_abs = kNaN;  // not tracked for shifted heavy-tail laws
  law.has_analytic_tail = false;
  return law;
}

std::string IncrementLaw::name() const {
  switch (kind) {
    case Kind::Gaussian:
      return "gaussian(" + fmt(a) + "," + fmt(b) + ")";
    case Kind::Rademacher:
      return "rademacher";
    case Kind::Uniform:
      return "uniform(" + fmt(a) + "," + fmt(b) + ")";
    case Kind::Pareto: {
      std::string s = "pareto(" + fmt(a) + "," + fmt(b) + "," + fmt(c) + ")";
      if (shift != 0.0) s += "+" + fmt(shift);
      return s;
    }
    case Kind::Stable: {
      std::string s = "stable(" + fmt(a) + "," + fmt(b) + "," + fmt(c) + ")";
      if (shift != 0.0) s += "+" + fmt(shift);
      return s;
    }
    case Kind::Cauchy:
      return "cauchy";
    case Kind::ParetoLogTail:
      return "pareto_log_tail";
    case Kind::DiscretePM: {
      std::string s = "discrete_pm(";
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) s += ",";
        s += fmt(atoms[i]);
      }
      return s + ")";
    }
    case Kind::Constant:
      return "constant(" + fmt(a) + ")";
  }
  return "?";
}

double IncrementLaw::tail_prob(double t) const {
  if (!has_analytic_tail) {
    throw std::invalid_argument("law has no analytic tail: " + name());
  }
  if (t <= 0.0) return 1.0;
  switch (kind) {
    case Kind::Gaussian: {
      const double mu = a, sigma = b;
      return normal_cdf((-t - mu) / sigma) + 1.0 - normal_cdf((t - mu) / sigma);
    }
    case Kind::Rademacher:
      return t <= 1.0 ? 1.0 : 0.0;
    case Kind::Uniform: {
      const double lo = a, hi = b;
      const double left = std::max(0.0, std::min(hi, -t) - lo);
      const double right = std::max(0.0, hi - std::max(lo, t));
      return (left + right) / (hi - lo);
    }
    case Kind::Pareto: {
      const double alpha = a, p = b, q = c;
      const double m = alpha > 1.0 ? (p - q) * alpha / (alpha - 1.0) : 0.0;
      // |X - m| >= t
      return pareto_prob_ge(alpha, p, q, m + t) +
             pareto_prob_le(alpha, p, q, m - t);
    }
    case Kind::Stable:
      // only alpha = 2 carries an analytic tail flag
      return std::erfc(t / (2.0 * c));
    case Kind::Cauchy:
      return 2.0 / kPi * std::atan(1.0 / t);
    case Kind::ParetoLogTail:
      return pareto_log_tail_prob(t);
    case Kind::DiscretePM: {
      std::size_t cnt = 0;
      for (double v : atoms) cnt += (v >= t);
      return static_cast<double>(cnt) / static_cast<double>(atoms.size());
    }
    case Kind::Constant:
      return std::abs(a) >= t ? 1.0 : 0.0;
  }
  return 0.0;
}

double sample_stable(double alpha, double beta, double scale, RngStream& rng) {
  if (alpha == 2.0) {
    return scale * std::sqrt(2.0) * rng.normal();
  }
  if (alpha == 1.0) {
    return scale * std::tan(kPi * (rng.uniform01() - 0.5));
  }
  const double v = kPi * (rng.uniform01() - 0.5);
  const double w = rng.exponential();
  double x;
  if (beta == 0.0) {
    x = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
        std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
  } else {
    const double tb = beta * std::tan(0.5 * kPi * alpha);
    const double b0 = std::atan(tb) / alpha;
    const double s0 = std::pow(1.0 + tb * tb, 0.5 / alpha);
    x = s0 * std::sin(alpha * (v + b0)) / std::pow(std::cos(v), 1.0 / alpha) *
        std::pow(std::cos(v - alpha * (v + b0)) / w, (1.0 - alpha) / alpha);
  }
  return scale * x;
}

double stable_abs_moment(double alpha, double beta, double r) {
  if (!(r > 0.0) || r >= alpha) {
    throw std::invalid_argument("stable_abs_moment: need 0 < r < alpha");
  }
  const double tb = alpha == 2.0 ? 0.0 : beta * std::tan(0.5 * kPi * alpha);
  const double skew = std::pow(1.0 + tb * tb, 0.5 * r / alpha) *
                      std::cos(r * std::atan(tb) / alpha);
  if (r == 1.0) {
    return 2.0 / kPi * std::tgamma(1.0 - 1.0 / alpha) * skew;
  }
  return std::tgamma(1.0 - r / alpha) /
         (std::tgamma(1.0 - r) * std::cos(0.5 * kPi * r)) * skew;
}

double sample_increment(const IncrementLaw& law, RngStream& rng) {
  double x;
  switch (law.kind) {
    case IncrementLaw::Kind::Gaussian:
      return law.a + law.b * rng.normal();
    case IncrementLaw::Kind::Rademacher:
      return (rng.next_u64() >> 63) ? 1.0 : -1.0;
    case IncrementLaw::Kind::Uniform:
      return rng.uniform(law.a, law.b);
    case IncrementLaw::Kind::Pareto: {
      const double alpha = law.a;
      const double mag = std::pow(rng.uniform01(), -1.0 / alpha);
      const double m =
          alpha > 1.0 ? (law.b - law.c) * alpha / (alpha - 1.0) : 0.0;
      x = (rng.bernoulli(law.b) ? mag : -mag) - m;
      break;
    }
    case IncrementLaw::Kind::Stable:
      x = sample_stable(law.a, law.b, law.c, rng);
      break;
    case IncrementLaw::Kind::Cauchy:
      return std::tan(kPi * (rng.uniform01() - 0.5));
    case IncrementLaw::Kind::ParetoLogTail: {
      const double r = kE / std::sqrt(rng.uniform01());
      const double y = lambert_w(r);
      const double mag = r / y;
      x = rng.bernoulli(0.5) ? mag : -mag;
      break;
    }
    case IncrementLaw::Kind::DiscretePM: {
      const std::size_t two_k = 2 * law.atoms.size();
      std::size_t idx = static_cast<std::size_t>(
          rng.uniform01() * static_cast<double>(two_k));
      if (idx >= two_k) idx = two_k - 1;
      const double v = law.atoms[idx % law.atoms.size()];
      return idx < law.atoms.size() ? v : -v;
    }
    case IncrementLaw::Kind::Constant:
      return law.a + law.shift;
    default:
      throw std::logic_error("unknown law kind");
  }
  return x + law.shift;
}

WalkPath sample_walk(const IncrementLaw& law, std::uint64_t n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_walk: n must be >= 1");
  WalkPath path;
  sample_walk_into(law, n, rng, path.values);
  return path;
}

void sample_walk_into(const IncrementLaw& law, std::uint64_t n, RngStream& rng,
                      std::vector<double>& out) {
  out.resize(n + 1);
  out[0] = 0.0;
  double s = 0.0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    s += sample_increment(law, rng);
    out[k] = s;
  }
}

NormalizationPlan normalization(const IncrementLaw& law) {
  const Regime regime = classify_regime(law);
  NormalizationPlan plan;
  switch (regime) {
    case Regime::A:
    case Regime::APrime: {
      const double sigma = std::sqrt(law.variance);
      plan.a_n = [sigma](std::uint64_t n) {
        return sigma * std::sqrt(static_cast<double>(n));
      };
      plan.index = 0.5;
      plan.notes = "a_n = sigma sqrt(n), sigma^2 = " + fmt(law.variance);
      return plan;
    }
    case Regime::B:
    case Regime::C: {
      if (law.kind == IncrementLaw::Kind::Stable) {
        const double alpha = law.a, scale = law.c;
        plan.a_n = [alpha, scale](std::uint64_t n) {
          return scale * std::pow(static_cast<double>(n), 1.0 / alpha);
        };
        plan.index = 1.0 / alpha;
        plan.notes =
            "exactly stable: a_n = c n^(1/alpha) and S_n/a_n =d S(alpha,beta,1)"
            " in the zero-shift '1' parameterization (CMS sampler)";
        return plan;
      }
      if (law.kind == IncrementLaw::Kind::Pareto && law.shift == 0.0) {
        // Classical quantile recipe a_n = inf{t : n P(|xi| > t) <= 1};
        // approximate scale, documented as such.
        IncrementLaw self = law;
        plan.a_n = [self](std::uint64_t n) {
          double lo = 1.0, hi = 2.0;
          const double target = 1.0 / static_cast<double>(n);
          while (self.tail_prob(hi) > target) hi *= 2.0;
          for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (self.tail_prob(mid) > target) {
              lo = mid;
            } else {
              hi = mid;
            }
          }
          return hi;
        };
        plan.index = 1.0 / law.a;
        plan.notes =
            "quantile recipe a_n = inf{t : n P(|xi|>t) <= 1}; scale of the "
            "limit stable law approximate";
        return plan;
      }
      throw std::invalid_argument("no implemented normalization for " +
                                  law.name());
    }
    case Regime::Critical: {
      if (law.kind == IncrementLaw::Kind::Cauchy) {
        plan.a_n = [](std::uint64_t n) { return static_cast<double>(n); };
        plan.index = 1.0;
        plan.notes = "a_n = n; S_n/n is standard Cauchy for every n";
        return plan;
      }
      if (law.kind == IncrementLaw::Kind::Stable) {
        const double scale = law.c;
        plan.a_n = [scale](std::uint64_t n) {
          return scale * static_cast<double>(n);
        };
        plan.index = 1.0;
        plan.notes = "a_n = c n (exactly stable symmetric Cauchy)";
        return plan;
      }
      if (law.kind == IncrementLaw::Kind::Pareto) {
        plan.a_n = [](std::uint64_t n) { return static_cast<double>(n); };
        plan.index = 1.0;
        plan.notes =
            "a_n = n from the quantile recipe; limit is a symmetric Cauchy "
            "law of scale pi/2 under this normalization";
        return plan;
      }
      throw std::invalid_argument("no implemented normalization for " +
                                  law.name());
    }
    case Regime::BPrime:
      throw std::invalid_argument(
          "no implemented normalization for shifted heavy-tail laws (B')");
  }
  throw std::logic_error("unreachable");
}

double truncated_variance(const IncrementLaw& law, std::uint64_t n) {
  if (classify_regime(law) != Regime::A) {
    throw std::invalid_argument(
        "truncated_variance requires a regime A law, got " + law.name());
  }
  const double t = std::sqrt(static_cast<double>(n));
  switch (law.kind) {
    case IncrementLaw::Kind::Gaussian: {
      const double sigma = law.b;
      const double a0 = t / sigma;
      const double e2 = sigma * sigma *
                        (2.0 * normal_cdf(a0) - 1.0 - 2.0 * a0 * normal_pdf(a0));
      return e2;  // symmetric: truncated mean is 0
    }
    case IncrementLaw::Kind::Rademacher:
      return t >= 1.0 ? 1.0 : 0.0;
    case IncrementLaw::Kind::Uniform: {
      const double hi = law.b;  // mean-zero uniform: lo = -hi
      if (t >= hi) return law.variance;
      return t * t * t / (3.0 * hi);
    }
    case IncrementLaw::Kind::DiscretePM: {
      double m2 = 0.0;
      for (double v : law.atoms) {
        if (v <= t) m2 += v * v;
      }
      return m2 / static_cast<double>(law.atoms.size());
    }
    case IncrementLaw::Kind::Pareto: {
      const double alpha = law.a, p = law.b, q = law.c;
      const double m = (p - q) * alpha / (alpha - 1.0);
      const double lo = m - t, hi = m + t;
      const double m0 = pareto_partial_moment(alpha, p, q, 0, lo, hi);
      const double m1 = pareto_partial_moment(alpha, p, q, 1, lo, hi);
      const double m2 = pareto_partial_moment(alpha, p, q, 2, lo, hi);
      const double mean_trunc = m1 - m * m0;
      const double second_trunc = m2 - 2.0 * m * m1 + m * m * m0;
      return second_trunc - mean_trunc * mean_trunc;
    }
    case IncrementLaw::Kind::ParetoLogTail: {
      if (t < kE) return 0.0;
      const double lt = std::log(t);
      return law.variance - kE * kE / (lt * lt) - 2.0 * kE * kE / lt;
    }
    case IncrementLaw::Kind::Stable: {
      // alpha = 2 only (otherwise not regime A): N(0, 2c^2)
      const double sigma = law.c * std::sqrt(2.0);
      const double a0 = t / sigma;
      return sigma * sigma *
             (2.0 * normal_cdf(a0) - 1.0 - 2.0 * a0 * normal_pdf(a0));
    }
    default:
      throw std::invalid_argument("truncated_variance: unsupported law " +
                                  law.name());
  }
}

Regime classify_regime(const IncrementLaw& law) {
  const bool shifted = law.shift != 0.0;
  switch (law.kind) {
    case IncrementLaw::Kind::Gaussian:
      return law.a == 0.0 ? Regime::A : Regime::APrime;
    case IncrementLaw::Kind::Rademacher:
    case IncrementLaw::Kind::DiscretePM:
    case IncrementLaw::Kind::ParetoLogTail:
      return shifted ? Regime::APrime : Regime::A;
    case IncrementLaw::Kind::Uniform:
      return law.mean == 0.0 ? Regime::A : Regime::APrime;
    case IncrementLaw::Kind::Pareto: {
      const double alpha = law.a;
      if (alpha > 2.0) return shifted ? Regime::APrime : Regime::A;
      if (alpha == 2.0) {
        throw std::invalid_argument(
            "uncovered case: alpha = 2 regularly varying tail with infinite "
            "variance");
      }
      if (alpha > 1.0) return shifted ? Regime::BPrime : Regime::B;
      if (alpha == 1.0) {
        if (law.b != law.c || shifted) {
          throw std::invalid_argument(
              "uncovered critical case: only the symmetric Cauchy-attracted "
              "law with a_n ~ c n is covered");
        }
        return Regime::Critical;
      }
      return Regime::C;
    }
    case IncrementLaw::Kind::Stable: {
      const double alpha = law.a;
      if (alpha == 2.0) return shifted ? Regime::APrime : Regime::A;
      if (alpha > 1.0) return shifted ? Regime::BPrime : Regime::B;
      if (alpha == 1.0) {
        if (shifted) {
          throw std::invalid_argument(
              "uncovered critical case: shifted Cauchy is not attracted to "
              "the standard symmetric Cauchy process");
        }
        return Regime::Critical;
      }
      return Regime::C;
    }
    case IncrementLaw::Kind::Cauchy:
      if (shifted) {
        throw std::invalid_argument(
            "uncovered critical case: shifted Cauchy is not attracted to the "
            "standard symmetric Cauchy process");
      }
      return Regime::Critical;
    case IncrementLaw::Kind::Constant:
      throw std::invalid_argument("degenerate law has no regime");
  }
  throw std::logic_error("unreachable");
}

}  // namespace minorant

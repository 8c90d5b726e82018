#include "minorant/moments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "minorant/numerics.hpp"
#include "minorant/representations.hpp"
#include "minorant/stats.hpp"

namespace minorant {

double g(double x) {
  if (x < 0.0) throw std::domain_error("g: x must be >= 0");
  if (x < 4.0) {
    const double u = 1.0 + std::sqrt(1.0 + x * x);
    const double x2 = x * x;
    return x2 * x2 / (2.0 * u * u);
  }
  return 0.5 * x * x - std::sqrt(1.0 + x * x) + 1.0;
}

namespace {

struct MomentPair {
  double mean = 0.0;
  double second = 0.0;
  double se_mean = 0.0;
  double se_second = 0.0;
};

bool integer_atoms(const std::vector<double>& atoms) {
  for (double v : atoms) {
    if (v != std::nearbyint(v) || v > 4096.0) return false;
  }
  return true;
}

// Exact moments for Rademacher S_j (binomial lattice). The enumeration is
// windowed to +-8 binomial standard deviations around the mode and the
// weights renormalized; the discarded mass is below 1e-15.
MomentPair rademacher_moments(std::uint64_t j) {
  const double jd = static_cast<double>(j);
  const std::uint64_t center = j / 2;
  const std::uint64_t halfw =
      static_cast<std::uint64_t>(4.0 * std::sqrt(jd)) + 8;
  const std::uint64_t lo = center > halfw ? center - halfw : 0;
  const std::uint64_t hi = std::min<std::uint64_t>(j, center + halfw);

  // relative binomial weights by recurrence from the mode
  std::vector<double> w(hi - lo + 1, 0.0);
  w[center - lo] = 1.0;
  for (std::uint64_t k = center; k > lo; --k) {
    // w_{k-1} = w_k * k / (j - k + 1)
    w[k - 1 - lo] = w[k - lo] * static_cast<double>(k) /
                    static_cast<double>(j - k + 1);
  }
  for (std::uint64_t k = center; k < hi; ++k) {
    w[k + 1 - lo] = w[k - lo] * static_cast<double>(j - k) /
                    static_cast<double>(k + 1);
  }
  long double mass = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::uint64_t k = lo; k <= hi; ++k) {
    const double s = 2.0 * static_cast<double>(k) - jd;
    const double e = face_excess(jd, s);
    const long double wk = w[k - lo];
    mass += wk;
    m1 += wk * e;
    m2 += wk * e * e;
  }
  MomentPair out;
  out.mean = static_cast<double>(m1 / mass);
  out.second = static_cast<double>(m2 / mass);
  out.se_mean = 1e-12 * (1.0 + out.mean);
  out.se_second = 1e-12 * (1.0 + out.second);
  return out;
}

// Exact moments for integer-lattice discrete_pm laws by repeated convolution
// of the step distribution.
MomentPair discrete_pm_moments(const IncrementLaw& law, std::uint64_t j) {
  const std::int64_t vmax = static_cast<std::int64_t>(
      *std::max_element(law.atoms.begin(), law.atoms.end()));
  const std::int64_t span = static_cast<std::int64_t>(j) * vmax;
  std::vector<double> dist(2 * span + 1, 0.0);
  std::vector<double> next(2 * span + 1, 0.0);
  dist[span] = 1.0;  // S_0 = 0 at offset `span`
  const double step_p = 1.0 / (2.0 * static_cast<double>(law.atoms.size()));
  for (std::uint64_t step = 0; step < j; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    const std::int64_t reach = static_cast<std::int64_t>(step) * vmax;
    for (std::int64_t s = -reach; s <= reach; ++s) {
      const double p = dist[s + span];
      if (p == 0.0) continue;
      for (double av : law.atoms) {
        const std::int64_t v = static_cast<std::int64_t>(av);
        next[s + v + span] += p * step_p;
        next[s - v + span] += p * step_p;
      }
    }
    dist.swap(next);
  }
  const double jd = static_cast<double>(j);
  long double m1 = 0.0, m2 = 0.0;
  for (std::int64_t s = -span; s <= span; ++s) {
    const double p = dist[s + span];
    if (p == 0.0) continue;
    const double e = face_excess(jd, static_cast<double>(s));
    m1 += p * e;
    m2 += p * e * e;
  }
  MomentPair out;
  out.mean = static_cast<double>(m1);
  out.second = static_cast<double>(m2);
  out.se_mean = 1e-12 * (1.0 + out.mean);
  out.se_second = 1e-12 * (1.0 + out.second);
  return out;
}

MomentPair gaussian_moments(double sigma, std::uint64_t j) {
  const double jd = static_cast<double>(j);
  const double scale = sigma * std::sqrt(jd);  // S_j = scale * N
  MomentPair out;
  out.mean = gauss_abs_expectation(
      [&](double t) { return face_excess(jd, scale * t); }, 1e-11);
  out.second = gauss_abs_expectation(
      [&](double t) {
        const double e = face_excess(jd, scale * t);
        return e * e;
      },
      1e-11);
  out.se_mean = 1e-9 * (1.0 + out.mean);
  out.se_second = 1e-9 * (1.0 + out.second);
  return out;
}

MomentPair constant_moments(const IncrementLaw& law, std::uint64_t j) {
  const double jd = static_cast<double>(j);
  const double s = (law.a + law.shift) * jd;
  const double e = face_excess(jd, s);
  return {e, e * e, 0.0, 0.0};
}

MomentPair mc_moments(const IncrementLaw& law, std::uint64_t j,
                      std::uint64_t reps, std::uint64_t seed) {
  RngStream rng = RngStream(seed, j);
  long double m1 = 0.0, m2 = 0.0, m4 = 0.0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    const double e = eta(j, law, rng);
    m1 += e;
    m2 += e * e;
    m4 += e * e * e * e;
  }
  const double n = static_cast<double>(reps);
  MomentPair out;
  out.mean = static_cast<double>(m1) / n;
  out.second = static_cast<double>(m2) / n;
  const double var1 = std::max(0.0L, static_cast<long double>(m2) / n -
                                         static_cast<long double>(out.mean) *
                                             out.mean);
  const double var2 = std::max(0.0L, static_cast<long double>(m4) / n -
                                         static_cast<long double>(out.second) *
                                             out.second);
  out.se_mean = std::sqrt(var1 / n);
  out.se_second = std::sqrt(var2 / n);
  return out;
}

enum class Backbone { rademacher, discrete, gaussian, constant, monte_carlo };

Backbone backbone_for(const IncrementLaw& law) {
  switch (law.kind) {
    case IncrementLaw::Kind::Rademacher:
      return law.shift == 0.0 ? Backbone::rademacher : Backbone::monte_carlo;
    case IncrementLaw::Kind::DiscretePM:
      return law.shift == 0.0 && integer_atoms(law.atoms)
                 ? Backbone::discrete
                 : Backbone::monte_carlo;
    case IncrementLaw::Kind::Gaussian:
      return law.a == 0.0 ? Backbone::gaussian : Backbone::monte_carlo;
    case IncrementLaw::Kind::Constant:
      return Backbone::constant;
    default:
      return Backbone::monte_carlo;
  }
}

MomentPair compute_moments(const IncrementLaw& law, Backbone bb,
                           std::uint64_t j, std::uint64_t reps,
                           std::uint64_t seed) {
  switch (bb) {
    case Backbone::rademacher:
      return rademacher_moments(j);
    case Backbone::discrete:
      if (static_cast<double>(j) *
              *std::max_element(law.atoms.begin(), law.atoms.end()) <=
          65536.0) {
        return discrete_pm_moments(law, j);
      }
      return mc_moments(law, j, reps, seed);
    case Backbone::gaussian:
      return gaussian_moments(law.b, j);
    case Backbone::constant:
      return constant_moments(law, j);
    case Backbone::monte_carlo:
      return mc_moments(law, j, reps, seed);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

EtaMoments eta_moments(const IncrementLaw& law, std::uint64_t j,
                       std::uint64_t mc_reps, std::uint64_t seed) {
  if (j < 1) throw std::invalid_argument("eta_moments: j must be >= 1");
  const Backbone bb = backbone_for(law);
  EtaMoments out;
  out.j = j;
  if (bb == Backbone::gaussian) {
    // Direct quadrature of the eta integrands (the g-route identities are
    // checked against this independently in tests).
    const MomentPair p = gaussian_moments(law.b, j);
    out.mean = p.mean;
    out.second = p.second;
    out.method = MomentMethod::quadrature;
    out.error_bound = std::max(p.se_mean, p.se_second);
    return out;
  }
  const MomentPair p = compute_moments(law, bb, j, mc_reps, seed);
  out.mean = p.mean;
  out.second = p.second;
  out.method = bb == Backbone::monte_carlo ? MomentMethod::monte_carlo
                                           : MomentMethod::enumeration;
  out.error_bound = std::max(p.se_mean, p.se_second);
  return out;
}

double expected_g(const IncrementLaw& law, std::uint64_t j,
                  std::uint64_t mc_reps, std::uint64_t seed) {
  if (j < 1) throw std::invalid_argument("expected_g: j must be >= 1");
  const double jd = static_cast<double>(j);
  switch (backbone_for(law)) {
    case Backbone::gaussian: {
      const double scale = law.b * std::sqrt(jd);
      return gauss_abs_expectation(
          [&](double t) { return g(scale * t / jd); }, 1e-11);
    }
    case Backbone::rademacher: {
      const std::uint64_t center = j / 2;
      const std::uint64_t halfw =
          static_cast<std::uint64_t>(4.0 * std::sqrt(jd)) + 8;
      const std::uint64_t lo = center > halfw ? center - halfw : 0;
      const std::uint64_t hi = std::min<std::uint64_t>(j, center + halfw);
      std::vector<double> w(hi - lo + 1, 0.0);
      w[center - lo] = 1.0;
      for (std::uint64_t k = center; k > lo; --k) {
        w[k - 1 - lo] = w[k - lo] * static_cast<double>(k) /
                        static_cast<double>(j - k + 1);
      }
      for (std::uint64_t k = center; k < hi; ++k) {
        w[k + 1 - lo] = w[k - lo] * static_cast<double>(j - k) /
                        static_cast<double>(k + 1);
      }
      long double mass = 0.0, acc = 0.0;
      for (std::uint64_t k = lo; k <= hi; ++k) {
        const double s = 2.0 * static_cast<double>(k) - jd;
        mass += w[k - lo];
        acc += w[k - lo] * g(std::abs(s) / jd);
      }
      return static_cast<double>(acc / mass);
    }
    case Backbone::discrete: {
      // small-j exact lattice route shared with eta enumeration
      const std::int64_t vmax = static_cast<std::int64_t>(
          *std::max_element(law.atoms.begin(), law.atoms.end()));
      const std::int64_t span = static_cast<std::int64_t>(j) * vmax;
      std::vector<double> dist(2 * span + 1, 0.0);
      std::vector<double> nxt(2 * span + 1, 0.0);
      dist[span] = 1.0;
      const double step_p =
          1.0 / (2.0 * static_cast<double>(law.atoms.size()));
      for (std::uint64_t step = 0; step < j; ++step) {
        std::fill(nxt.begin(), nxt.end(), 0.0);
        const std::int64_t reach = static_cast<std::int64_t>(step) * vmax;
        for (std::int64_t s = -reach; s <= reach; ++s) {
          const double p = dist[s + span];
          if (p == 0.0) continue;
          for (double av : law.atoms) {
            const std::int64_t v = static_cast<std::int64_t>(av);
            nxt[s + v + span] += p * step_p;
            nxt[s - v + span] += p * step_p;
          }
        }
        dist.swap(nxt);
      }
      long double acc = 0.0;
      for (std::int64_t s = -span; s <= span; ++s) {
        if (dist[s + span] == 0.0) continue;
        acc += dist[s + span] * g(std::abs(static_cast<double>(s)) / jd);
      }
      return static_cast<double>(acc);
    }
    case Backbone::constant: {
      const double s = (law.a + law.shift) * jd;
      return g(std::abs(s) / jd);
    }
    case Backbone::monte_carlo: {
      RngStream rng(seed, j);
      long double acc = 0.0;
      for (std::uint64_t r = 0; r < mc_reps; ++r) {
        acc += g(std::abs(sample_block_sum(law, j, rng)) / jd);
      }
      return static_cast<double>(acc / static_cast<long double>(mc_reps));
    }
  }
  throw std::logic_error("unreachable");
}

EtaMomentTable::EtaMomentTable(const IncrementLaw& law, std::uint64_t n_max,
                               std::uint64_t seed, std::uint64_t mc_budget,
                               unsigned workers)
    : n_max_(n_max) {
  if (n_max < 1) throw std::invalid_argument("EtaMomentTable: n_max >= 1");
  const Backbone bb = backbone_for(law);
  method_ = bb == Backbone::monte_carlo ? MomentMethod::monte_carlo
            : bb == Backbone::gaussian  ? MomentMethod::quadrature
                                        : MomentMethod::enumeration;
  mean_.assign(n_max + 1, 0.0);
  second_.assign(n_max + 1, 0.0);
  se_mean_.assign(n_max + 1, 0.0);
  se_second_.assign(n_max + 1, 0.0);

  const unsigned nw = std::min<std::uint64_t>(resolve_workers(workers), n_max);
  std::atomic<std::uint64_t> next{1};
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t j = next.fetch_add(1);
      if (j > n_max) return;
      const std::uint64_t reps =
          bb == Backbone::monte_carlo ? std::max<std::uint64_t>(64, mc_budget / j)
                                      : 0;
      const MomentPair p = compute_moments(law, bb, j, reps, seed);
      mean_[j] = p.mean;
      second_[j] = p.second;
      se_mean_[j] = p.se_mean;
      se_second_[j] = p.se_second;
    }
  };
  if (nw <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  prefix_a_.assign(n_max + 1, 0.0L);
  prefix_s_.assign(n_max + 1, 0.0L);
  prefix_se2_a_.assign(n_max + 1, 0.0L);
  prefix_se2_s_.assign(n_max + 1, 0.0L);
  for (std::uint64_t j = 1; j <= n_max; ++j) {
    const long double jd = static_cast<long double>(j);
    prefix_a_[j] = prefix_a_[j - 1] + mean_[j] / jd;
    prefix_s_[j] = prefix_s_[j - 1] + second_[j] / jd;
    prefix_se2_a_[j] =
        prefix_se2_a_[j - 1] + (se_mean_[j] / jd) * (se_mean_[j] / jd);
    prefix_se2_s_[j] =
        prefix_se2_s_[j - 1] + (se_second_[j] / jd) * (se_second_[j] / jd);
  }
}

double EtaMomentTable::mean_length(std::uint64_t n) const {
  if (n < 1 || n > n_max_) throw std::out_of_range("mean_length: n");
  return static_cast<double>(n) + static_cast<double>(prefix_a_[n]);
}

double EtaMomentTable::variance_correction(std::uint64_t n) const {
  if (n < 1 || n > n_max_) throw std::out_of_range("variance_correction: n");
  // sum over 1 <= j,k <= n with j + k > n of (E eta_j / j)(E eta_k / k),
  // via prefix sums: sum_j A_j (P(n) - P(n-j)).
  long double total = 0.0L;
  const long double pn = prefix_a_[n];
  for (std::uint64_t j = 1; j <= n; ++j) {
    const long double aj = mean_[j] / static_cast<long double>(j);
    total += aj * (pn - prefix_a_[n - j]);
  }
  return static_cast<double>(total);
}

double EtaMomentTable::variance_length(std::uint64_t n) const {
  if (n < 1 || n > n_max_) throw std::out_of_range("variance_length: n");
  return static_cast<double>(prefix_s_[n]) - variance_correction(n);
}

double EtaMomentTable::mean_length_stderr(std::uint64_t n) const {
  return std::sqrt(static_cast<double>(prefix_se2_a_[n]));
}

double EtaMomentTable::variance_length_stderr(std::uint64_t n) const {
  return std::sqrt(static_cast<double>(prefix_se2_s_[n]));
}

double mean_length(const IncrementLaw& law, std::uint64_t n) {
  return EtaMomentTable(law, n).mean_length(n);
}

double variance_length(const IncrementLaw& law, std::uint64_t n) {
  return EtaMomentTable(law, n).variance_length(n);
}

double variance_lower_bound(const IncrementLaw& law, std::uint64_t n) {
  if (classify_regime(law) != Regime::A) {
    throw std::invalid_argument(
        "variance_lower_bound requires a regime A law");
  }
  const double nd = static_cast<double>(n);
  return 0.02 * nd * nd * nd * law.tail_prob(2.0 * nd);
}

LipschitzCheck lipschitz_check(const IncrementLaw& law, std::uint64_t i,
                               std::uint64_t j, std::uint64_t reps,
                               std::uint64_t seed) {
  if (i < 1 || j < 1) throw std::invalid_argument("lipschitz_check: i,j >= 1");
  if (!(law.mean_abs < std::numeric_limits<double>::infinity()) ||
      std::isnan(law.mean_abs)) {
    throw std::invalid_argument("lipschitz_check requires E|xi| < inf");
  }
  const std::uint64_t hi = std::max(i, j);
  const std::uint64_t lo = std::min(i, j);
  const auto sample = run_replications(
      [&law, hi, lo](RngStream& rng) {
        double s = 0.0, s_lo = 0.0;
        for (std::uint64_t k = 1; k <= hi; ++k) {
          s += sample_increment(law, rng);
          if (k == lo) s_lo = s;
        }
        return std::abs(face_excess(static_cast<double>(hi), s) -
                        face_excess(static_cast<double>(lo), s_lo));
      },
      reps, seed);
  const MomentSummary ms = summarize_moments(sample.values);
  LipschitzCheck out;
  out.lhs = ms.mean;
  out.rhs = (2.0 + law.mean_abs) *
            static_cast<double>(hi - lo);
  out.stderr_ = ms.mean_stderr;
  return out;
}

}  // namespace minorant

#include "minorant/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace minorant {

namespace {

constexpr double kKs1pct = 1.628;

double ks_sup_distance(const std::vector<double>& a,
                       const std::vector<double>& b) {
  // a and b sorted. Walk the merged order; on ties advance both sides fully
  // before recording, so the sup is evaluated only at well-defined points.
  // Values within 1e-9 (1 + |x|) of an atom count as that atom: the same
  // mathematical atom of a discrete statistic reaches the two samples
  // through different summation orders and may differ in the last ulp, and
  // without the merge that splits its full mass into a spurious CDF gap.
  // For continuous samples the merge window is far below typical order
  // statistic spacing and has no effect.
  const double inv_a = 1.0 / static_cast<double>(a.size());
  const double inv_b = 1.0 / static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double diff = 0.0, best = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    const double hi = x + 1e-9 * (1.0 + std::abs(x));
    while (i < a.size() && a[i] <= hi) {
      diff -= inv_a;
      ++i;
    }
    while (j < b.size() && b[j] <= hi) {
      diff += inv_b;
      ++j;
    }
    best = std::max(best, std::abs(diff));
  }
  return best;
}

}  // namespace

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MINORANT_WORKERS")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

EmpiricalSample run_replications(const ScalarJob& job, std::uint64_t n,
                                 std::uint64_t seed, unsigned workers,
                                 const std::string& config_digest) {
  if (n < 1) throw std::invalid_argument("run_replications: n must be >= 1");
  EmpiricalSample out;
  out.values.resize(n);
  out.seed = seed;
  out.config_digest = config_digest;
  out.n_replications = n;

  const unsigned nw = std::min<std::uint64_t>(resolve_workers(workers), n);
  if (nw <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) {
      RngStream stream(seed, i);
      out.values[i] = job(stream);
    }
    return out;
  }

  // Dynamic chunking: the stream of replication i depends only on (seed, i)
  // and each result lands at its own index, so scheduling cannot change the
  // output.
  const std::uint64_t chunk = std::max<std::uint64_t>(1, n / (nw * 64));
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (unsigned w = 0; w < nw; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::uint64_t begin = next.fetch_add(chunk);
        if (begin >= n) return;
        const std::uint64_t end = std::min(n, begin + chunk);
        for (std::uint64_t i = begin; i < end; ++i) {
          RngStream stream(seed, i);
          out.values[i] = job(stream);
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  return out;
}

std::vector<EmpiricalSample> run_replications_multi(
    const std::function<void(RngStream&, std::span<double>)>& job,
    std::size_t dims, std::uint64_t n, std::uint64_t seed, unsigned workers,
    const std::string& config_digest) {
  if (n < 1 || dims < 1) {
    throw std::invalid_argument("run_replications_multi: n, dims >= 1");
  }
  std::vector<EmpiricalSample> out(dims);
  for (auto& s : out) {
    s.values.resize(n);
    s.seed = seed;
    s.config_digest = config_digest;
    s.n_replications = n;
  }
  const unsigned nw = std::min<std::uint64_t>(resolve_workers(workers), n);
  const std::uint64_t chunk =
      std::max<std::uint64_t>(1, n / (std::max(1u, nw) * 64));
  std::atomic<std::uint64_t> next{0};
  auto body = [&]() {
    std::vector<double> buf(dims);
    for (;;) {
      const std::uint64_t begin = next.fetch_add(chunk);
      if (begin >= n) return;
      const std::uint64_t end = std::min(n, begin + chunk);
      for (std::uint64_t i = begin; i < end; ++i) {
        RngStream stream(seed, i);
        job(stream, buf);
        for (std::size_t d = 0; d < dims; ++d) out[d].values[i] = buf[d];
      }
    }
  };
  if (nw <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nw; ++w) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();
  }
  return out;
}

std::vector<double> accumulate_replications(
    const std::function<void(RngStream&, std::span<double>)>& job,
    std::size_t dims, std::uint64_t n, std::uint64_t seed, unsigned workers,
    std::uint64_t chunk) {
  if (n < 1 || dims < 1 || chunk < 1) {
    throw std::invalid_argument("accumulate_replications: n, dims, chunk >= 1");
  }
  const std::uint64_t n_chunks = (n + chunk - 1) / chunk;
  std::vector<double> partials(n_chunks * dims, 0.0);
  const unsigned nw =
      std::min<std::uint64_t>(resolve_workers(workers), n_chunks);
  std::atomic<std::uint64_t> next{0};
  auto body = [&]() {
    std::vector<double> buf(dims);
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      double* acc = partials.data() + c * dims;
      const std::uint64_t begin = c * chunk;
      const std::uint64_t end = std::min(n, begin + chunk);
      for (std::uint64_t i = begin; i < end; ++i) {
        RngStream stream(seed, i);
        std::fill(buf.begin(), buf.end(), 0.0);
        job(stream, buf);
        for (std::size_t d = 0; d < dims; ++d) acc[d] += buf[d];
      }
    }
  };
  if (nw <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nw; ++w) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();
  }
  // chunk-ordered reduction keeps the result independent of scheduling
  std::vector<double> total(dims, 0.0);
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    for (std::size_t d = 0; d < dims; ++d) total[d] += partials[c * dims + d];
  }
  return total;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: empty sample");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  KsResult r;
  r.statistic = ks_sup_distance(a, b);
  const double m = static_cast<double>(a.size());
  const double n = static_cast<double>(b.size());
  r.critical_1pct = kKs1pct * std::sqrt((m + n) / (m * n));
  r.pass = r.statistic < r.critical_1pct;
  r.sample_sizes = {a.size(), b.size()};
  return r;
}

KsResult ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b) {
  return ks_two_sample(a.values, b.values);
}

KsResult ks_one_sample(std::vector<double> sample,
                       const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double best = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    best = std::max(best, std::max(f - lo, hi - f));
  }
  KsResult r;
  r.statistic = best;
  r.critical_1pct = kKs1pct / std::sqrt(n);
  r.pass = r.statistic < r.critical_1pct;
  r.sample_sizes = {sample.size(), 0};
  return r;
}

LogFit fit_log_slope(
    const std::vector<std::pair<std::uint64_t, double>>& pts) {
  if (pts.size() < 3) {
    throw std::invalid_argument("fit_log_slope: need at least 3 points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(pts.size());
  for (const auto& [ni, y] : pts) {
    const double x = std::log(static_cast<double>(ni));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = n * sxx - sx * sx;
  if (det <= 1e-12 * n * sxx) {
    throw std::invalid_argument("fit_log_slope: degenerate abscissae");
  }
  LogFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (const auto& [ni, y] : pts) {
    const double x = std::log(static_cast<double>(ni));
    fit.max_residual =
        std::max(fit.max_residual, std::abs(y - fit.slope * x - fit.intercept));
  }
  return fit;
}

Ecdf::Ecdf(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw std::invalid_argument("Ecdf: empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

MomentSummary summarize_moments(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("summarize_moments: empty");
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m4 /= n;
  MomentSummary s;
  s.mean = mean;
  s.mean_stderr = std::sqrt(m2 / n);
  s.variance = m2 * n / std::max(1.0, n - 1.0);
  s.variance_stderr = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
  return s;
}

void write_sample_binary(const EmpiricalSample& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  const char magic[4] = {'E', 'M', 'P', 'S'};
  const std::uint32_t version = 1;
  const std::uint64_t count = s.values.size();
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&count), 8);
  out.write(reinterpret_cast<const char*>(s.values.data()),
            static_cast<std::streamsize>(8 * s.values.size()));
  if (!out) throw std::runtime_error("short write to " + path);
}

EmpiricalSample read_sample_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t count = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&count), 8);
  if (!in || std::memcmp(magic, "EMPS", 4) != 0 || version != 1) {
    throw std::runtime_error("bad sample file header: " + path);
  }
  EmpiricalSample s;
  s.values.resize(count);
  s.n_replications = count;
  in.read(reinterpret_cast<char*>(s.values.data()),
          static_cast<std::streamsize>(8 * count));
  if (!in) throw std::runtime_error("short read from " + path);
  return s;
}

void write_sample_csv(const EmpiricalSample& s, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "index,value\n";
  char buf[40];
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i, s.values[i]);
    out << buf;
  }
}

std::string ks_to_json(const KsResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "{\"statistic\":%.17g,\"critical_1pct\":%.17g,\"pass\":%s,"
                "\"sample_sizes\":[%llu,%llu]}",
                r.statistic, r.critical_1pct, r.pass ? "true" : "false",
                static_cast<unsigned long long>(r.sample_sizes.first),
                static_cast<unsigned long long>(r.sample_sizes.second));
  return buf;
}

std::string digest_hex(const std::string& payload) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace minorant

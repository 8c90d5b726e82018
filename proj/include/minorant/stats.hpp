#ifndef MINORANT_STATS_HPP
#define MINORANT_STATS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "minorant/rng.hpp"

namespace minorant {

// A batch of scalar replications together with the recipe that produced it.
// Regenerating with the same seed and config digest reproduces the values
// exactly, independent of worker count.
struct EmpiricalSample {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::uint64_t n_replications = 0;
};

struct KsResult {
  double statistic = 0.0;
  double critical_1pct = 0.0;
  bool pass = false;
  std::pair<std::uint64_t, std::uint64_t> sample_sizes{0, 0};
};

using ScalarJob = std::function<double(RngStream&)>;

// Number of worker threads: explicit argument, else MINORANT_WORKERS, else
// hardware concurrency.
unsigned resolve_workers(unsigned requested = 0);

// N independent evaluations of the job; replication i draws from the stream
// (seed, i). Results are ordered by replication index regardless of how the
// chunks were scheduled, so the output is identical for any worker count.
EmpiricalSample run_replications(const ScalarJob& job, std::uint64_t n,
                                 std::uint64_t seed, unsigned workers = 0,
                                 const std::string& config_digest = "");

// Vector-valued replications: the job writes dims values per replication.
// Ordering and stream policy are the same as run_replications, so sample k
// is reproducible for any worker count.
std::vector<EmpiricalSample> run_replications_multi(
    const std::function<void(RngStream&, std::span<double>)>& job,
    std::size_t dims, std::uint64_t n, std::uint64_t seed,
    unsigned workers = 0, const std::string& config_digest = "");

// Deterministic parallel accumulation: replication i adds into a dims-vector
// of sums. Partial sums are kept per fixed-size chunk and reduced in chunk
// order, so the result is bit-identical for any worker count.
std::vector<double> accumulate_replications(
    const std::function<void(RngStream&, std::span<double>)>& job,
    std::size_t dims, std::uint64_t n, std::uint64_t seed,
    unsigned workers = 0, std::uint64_t chunk = 4096);

// Two-sample Kolmogorov-Smirnov with the asymptotic 1% critical value
// 1.628 sqrt((m+n)/(m n)).
KsResult ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// One-sample KS against a closed-form CDF; critical value 1.628/sqrt(n).
KsResult ks_one_sample(std::vector<double> sample,
                       const std::function<double(double)>& cdf);

struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

// Least squares of y against log n.
LogFit fit_log_slope(const std::vector<std::pair<std::uint64_t, double>>& pts);

// Right-continuous empirical CDF.
class Ecdf {
 public:
  explicit Ecdf(std::vector<double> values);
  double operator()(double x) const;
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

struct MomentSummary {
  double mean = 0.0;
  double mean_stderr = 0.0;
  double variance = 0.0;
  double variance_stderr = 0.0;  // fourth-central-moment formula
};

MomentSummary summarize_moments(const std::vector<double>& xs);

// Flat binary persistence: 16-byte header (magic "EMPS", u32 version,
// u64 count), then count little-endian IEEE doubles.
void write_sample_binary(const EmpiricalSample& s, const std::string& path);
EmpiricalSample read_sample_binary(const std::string& path);
void write_sample_csv(const EmpiricalSample& s, const std::string& path);

std::string ks_to_json(const KsResult& r);

// FNV-1a digest of a string, hex-encoded; used for config digests.
std::string digest_hex(const std::string& payload);

}  // namespace minorant

#endif  // MINORANT_STATS_HPP

// Brute-force reference implementations used only by tests. Everything here
// is deliberately independent of the library's algorithms: hulls by O(n^3)
// chord minimization, expectations by exhaustive path enumeration, integrals
// by a plain fixed-refinement Simpson rule.
#ifndef MINORANT_TESTS_ORACLES_HPP
#define MINORANT_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// Lower convex minorant of the lattice path (k, values[k]) by testing every
// chord: the minorant value at abscissa k is the minimum over i <= k <= j of
// the chord through (i, v_i), (j, v_j). A point is a hull vertex iff the
// minorant touches the path there and the slope turns. O(n^3).
struct OracleVertex {
  std::int64_t x;
  double y;
};

inline std::vector<double> minorant_values(const std::vector<double>& v) {
  const std::size_t n1 = v.size();
  std::vector<double> out(n1);
  for (std::size_t k = 0; k < n1; ++k) {
    double best = v[k];
    for (std::size_t i = 0; i <= k; ++i) {
      for (std::size_t j = k; j < n1; ++j) {
        if (i == j) continue;
        const double t = static_cast<double>(k - i) / static_cast<double>(j - i);
        best = std::min(best, v[i] + t * (v[j] - v[i]));
      }
    }
    out[k] = best;
  }
  return out;
}

// Hull vertices of the minorant for integer-valued paths, with exact slope
// comparisons via integer cross products.
inline std::vector<OracleVertex> minorant_vertices_int(
    const std::vector<long long>& v) {
  const std::size_t n1 = v.size();
  // touching set: g(k) == v[k] tested with exact rational chords
  std::vector<bool> touch(n1, true);
  for (std::size_t k = 0; k < n1; ++k) {
    for (std::size_t i = 0; i <= k && touch[k]; ++i) {
      for (std::size_t j = k; j < n1 && touch[k]; ++j) {
        if (i == j) continue;
        // chord below v[k]: v_i + (k-i)(v_j - v_i)/(j-i) < v_k
        const long long lhs = v[i] * static_cast<long long>(j - i) +
                              static_cast<long long>(k - i) * (v[j] - v[i]);
        const long long rhs = v[k] * static_cast<long long>(j - i);
        if (lhs < rhs) touch[k] = false;
      }
    }
  }
  std::vector<OracleVertex> kept;
  for (std::size_t k = 0; k < n1; ++k) {
    if (touch[k]) kept.push_back({static_cast<std::int64_t>(k),
                                  static_cast<double>(v[k])});
  }
  // merge collinear triples (exact integer cross product)
  std::vector<OracleVertex> merged;
  for (const OracleVertex& p : kept) {
    while (merged.size() >= 2) {
      const OracleVertex& o = merged[merged.size() - 2];
      const OracleVertex& a = merged[merged.size() - 1];
      const double cross = static_cast<double>(a.x - o.x) * (p.y - o.y) -
                           (a.y - o.y) * static_cast<double>(p.x - o.x);
      if (cross <= 0.0) {
        merged.pop_back();
      } else {
        break;
      }
    }
    merged.push_back(p);
  }
  return merged;
}

inline double polyline_length(const std::vector<OracleVertex>& vs) {
  double total = 0.0;
  for (std::size_t i = 1; i < vs.size(); ++i) {
    const double dx = static_cast<double>(vs[i].x - vs[i - 1].x);
    const double dy = vs[i].y - vs[i - 1].y;
    total += std::sqrt(dx * dx + dy * dy);
  }
  return total;
}

// Perimeter of the planar convex hull of a point set (gift wrapping; the
// inputs here are tiny). Degenerate (collinear) sets count the segment twice.
inline double convex_hull_perimeter(const std::vector<double>& xs,
                                    const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  // Monotone scan over the precomputed upper and lower chains via chord
  // minimization (reuses minorant_values on y and -y).
  std::vector<double> lower = minorant_values(ys);
  std::vector<double> neg(n);
  for (std::size_t i = 0; i < n; ++i) neg[i] = -ys[i];
  std::vector<double> upper_neg = minorant_values(neg);
  double total = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double dx = xs[i] - xs[i - 1];
    const double dl = lower[i] - lower[i - 1];
    const double du = upper_neg[i] - upper_neg[i - 1];
    total += std::sqrt(dx * dx + dl * dl) + std::sqrt(dx * dx + du * du);
  }
  return total;
}

// Enumerates all |atoms|^n sign paths of a lattice law (atoms holds the
// signed step values, equally likely) and feeds each path to the callback.
inline void enumerate_paths(
    const std::vector<double>& steps, std::size_t n,
    const std::function<void(const std::vector<double>&)>& fn) {
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> path(n + 1, 0.0);
  const std::size_t base = steps.size();
  for (;;) {
    for (std::size_t k = 0; k < n; ++k) {
      path[k + 1] = path[k] + steps[idx[k]];
    }
    fn(path);
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == base) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
}

// Plain composite Simpson with 2^k panels, refined until two refinements
// agree to rel_tol. Independent of the library's adaptive integrator.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, double rel_tol = 1e-10) {
  auto pass = [&](std::size_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    double acc = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i) {
      acc += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
  };
  double prev = pass(64);
  for (std::size_t panels = 128; panels <= (1u << 22); panels *= 2) {
    const double cur = pass(panels);
    if (std::abs(cur - prev) <=
        rel_tol * std::max(1e-300, std::abs(cur))) {
      return cur;
    }
    prev = cur;
  }
  return prev;
}

}  // namespace oracles

#endif  // MINORANT_TESTS_ORACLES_HPP

#include "minorant/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "minorant/numerics.hpp"

namespace minorant {

void validate(const WalkPath& path) {
  if (path.values.size() < 2) {
    throw std::invalid_argument("WalkPath needs at least one step (n >= 1)");
  }
  if (path.values.front() != 0.0) {
    throw std::invalid_argument("WalkPath must start at S_0 = 0");
  }
}

double LowerHullBuilder::length() const {
  std::vector<double> seg(hull_.size() > 1 ? hull_.size() - 1 : 0);
  for (std::size_t i = 1; i < hull_.size(); ++i) {
    const double dx = hull_[i].x - hull_[i - 1].x;
    const double dy = hull_[i].y - hull_[i - 1].y;
    seg[i - 1] = std::sqrt(dx * dx + dy * dy);
  }
  return pairwise_sum(seg);
}

PolyLine convex_minorant(const WalkPath& path) {
  validate(path);
  LowerHullBuilder hull;
  hull.reserve(16);
  for (std::size_t k = 0; k < path.values.size(); ++k) {
    hull.push(static_cast<double>(k), path.values[k]);
  }
  return PolyLine{hull.take()};
}

PolyLine concave_majorant(const WalkPath& path) {
  validate(path);
  WalkPath reflected;
  reflected.values.resize(path.values.size());
  for (std::size_t k = 0; k < path.values.size(); ++k) {
    reflected.values[k] = -path.values[k];
  }
  PolyLine lower = convex_minorant(reflected);
  for (Vertex& v : lower.vertices) v.y = -v.y;
  return lower;
}

double polyline_length(const PolyLine& p) {
  std::vector<double> seg(p.vertices.size() > 1 ? p.vertices.size() - 1 : 0);
  for (std::size_t i = 1; i < p.vertices.size(); ++i) {
    const double dx = p.vertices[i].x - p.vertices[i - 1].x;
    const double dy = p.vertices[i].y - p.vertices[i - 1].y;
    seg[i - 1] = std::sqrt(dx * dx + dy * dy);
  }
  return pairwise_sum(seg);
}

FaceDecomposition face_decomposition(const PolyLine& p, std::size_t n) {
  if (p.vertices.size() < 2) {
    throw std::invalid_argument("polyline has no faces");
  }
  FaceDecomposition out;
  out.face_lengths.reserve(p.vertices.size() - 1);
  std::size_t total = 0;
  for (std::size_t i = 1; i < p.vertices.size(); ++i) {
    const double dx = p.vertices[i].x - p.vertices[i - 1].x;
    const double rounded = std::nearbyint(dx);
    if (dx <= 0.0 || dx != rounded) {
      throw std::invalid_argument(
          "non-integer face length: polyline is unmerged or corrupted");
    }
    const std::size_t len = static_cast<std::size_t>(rounded);
    out.face_lengths.push_back(len);
    total += len;
  }
  if (total != n) {
    throw std::invalid_argument("face lengths do not partition [0, n]");
  }
  std::sort(out.face_lengths.begin(), out.face_lengths.end(),
            std::greater<std::size_t>());
  out.face_count = out.face_lengths.size();
  return out;
}

PathExtremes path_extremes(const WalkPath& path) {
  validate(path);
  PathExtremes e{path.values[0], path.values[0], 0, 0};
  for (std::size_t k = 1; k < path.values.size(); ++k) {
    const double v = path.values[k];
    if (v > e.max_value) {
      e.max_value = v;
      e.argmax = k;
    }
    if (v < e.min_value) {
      e.min_value = v;
      e.argmin = k;
    }
  }
  return e;
}

double perimeter(const WalkPath& path) {
  validate(path);
  return minorant_length(path.values) + majorant_length(path.values);
}

double minorant_length(std::span<const double> values) {
  LowerHullBuilder hull;
  hull.reserve(16);
  for (std::size_t k = 0; k < values.size(); ++k) {
    hull.push(static_cast<double>(k), values[k]);
  }
  return hull.length();
}

double majorant_length(std::span<const double> values) {
  LowerHullBuilder hull;
  hull.reserve(16);
  for (std::size_t k = 0; k < values.size(); ++k) {
    hull.push(static_cast<double>(k), -values[k]);
  }
  return hull.length();
}

}  // namespace minorant

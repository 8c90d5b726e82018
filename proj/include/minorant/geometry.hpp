#ifndef MINORANT_GEOMETRY_HPP
#define MINORANT_GEOMETRY_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace minorant {

// Partial-sum path S_0,...,S_n of a walk; values[0] must be 0.
struct WalkPath {
  std::vector<double> values;

  std::size_t n() const { return values.empty() ? 0 : values.size() - 1; }
};

struct Vertex {
  double x;
  double y;
};

// Piecewise linear function given by its vertices, strictly increasing in x.
// Minorant/majorant extraction produces vertices at lattice abscissae with
// strictly monotone face slopes (collinear points already merged).
struct PolyLine {
  std::vector<Vertex> vertices;
};

// Horizontal face lengths of a minorant/majorant, nonincreasing; sums to n.
struct FaceDecomposition {
  std::vector<std::size_t> face_lengths;
  std::size_t face_count = 0;
};

struct PathExtremes {
  double max_value;    // M_n
  double min_value;    // m_n
  std::size_t argmax;  // first index attaining the maximum
  std::size_t argmin;  // first index attaining the minimum
};

// Streaming lower convex hull over points fed in strictly increasing x.
// Cross products of lattice points are exact in double precision as long as
// coordinates stay below 2^26 in magnitude, so integer-valued walks at desk
// scale are merged without floating error; ties (exactly collinear triples)
// always merge.
class LowerHullBuilder {
 public:
  void reserve(std::size_t n) { hull_.reserve(n); }
  void clear() { hull_.clear(); }

  void push(double x, double y) {
    while (hull_.size() >= 2 && !turns_left(hull_[hull_.size() - 2],
                                            hull_[hull_.size() - 1], {x, y})) {
      hull_.pop_back();
    }
    hull_.push_back({x, y});
  }

  const std::vector<Vertex>& vertices() const { return hull_; }
  std::vector<Vertex> take() { return std::move(hull_); }

  // Length of the hull polyline built so far.
  double length() const;

 private:
  static bool turns_left(const Vertex& o, const Vertex& a, const Vertex& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x) > 0.0;
  }

  std::vector<Vertex> hull_;
};

// Largest convex function below the interpolated path; vertices are lattice
// points of the path, first (0,0) and last (n, S_n).
PolyLine convex_minorant(const WalkPath& path);

// Least concave function above the path; computed as the negated convex
// minorant of the negated path, so the reflection identity holds bit for bit.
PolyLine concave_majorant(const WalkPath& path);

// Sum over segments of sqrt(dx^2 + dy^2), accumulated pairwise.
double polyline_length(const PolyLine& p);

// Face lengths (horizontal extents) sorted nonincreasingly. Throws if the
// vertex abscissae are not integers: that means an unmerged or corrupted
// polyline was passed in.
FaceDecomposition face_decomposition(const PolyLine& p, std::size_t n);

PathExtremes path_extremes(const WalkPath& path);

// polyline_length(minorant) + polyline_length(majorant); equals the perimeter
// of the planar convex hull of {(k, S_k)}.
double perimeter(const WalkPath& path);

// Fast paths for simulation loops: lengths without materialising PolyLines.
double minorant_length(std::span<const double> values);
double majorant_length(std::span<const double> values);

void validate(const WalkPath& path);

}  // namespace minorant

#endif  // MINORANT_GEOMETRY_HPP

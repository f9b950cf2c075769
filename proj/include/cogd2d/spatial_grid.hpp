#pragma once

// Uniform bucket grid over a square window [0, L)^2, optionally toroidal.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace cogd2d {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Distance metric of the simulation window.
struct Geometry {
  double side = 0.0;
  bool torus = true;

  double wrap_delta(double d) const {
    if (!torus) return d;
    if (d > 0.5 * side) return d - side;
    if (d < -0.5 * side) return d + side;
    return d;
  }
  double dist2(Vec2 a, Vec2 b) const {
    const double dx = wrap_delta(a.x - b.x);
    const double dy = wrap_delta(a.y - b.y);
    return dx * dx + dy * dy;
  }
  Vec2 wrap(Vec2 p) const {
    if (!torus) return p;
    p.x -= side * std::floor(p.x / side);
    p.y -= side * std::floor(p.y / side);
    return p;
  }
  /// Largest radius for which a torus disc does not overlap itself.
  double max_radius() const {
    return torus ? 0.5 * side : std::numeric_limits<double>::infinity();
  }
};

class SpatialGrid {
 public:
  SpatialGrid() = default;
  SpatialGrid(const std::vector<Vec2>& points, Geometry geom, double cell_size);

  std::size_t size() const { return points_.size(); }
  const Geometry& geometry() const { return geom_; }

  /// Calls fn(index, squared distance) for every point with distance < radius.
  /// On a torus the radius is clamped to side/2 so no point is seen twice.
  template <class Fn>
  void for_each_within(Vec2 at, double radius, Fn&& fn) const;

  /// Index of the nearest point, or -1 if the grid is empty.
  int nearest(Vec2 at, double* dist2_out = nullptr) const;

 private:
  int cell_coord(double v) const;

  Geometry geom_;
  double cell_ = 1.0;
  int n_ = 0;
  std::vector<Vec2> points_;
  std::vector<std::uint32_t> start_;   // n_*n_ + 1 offsets into order_
  std::vector<std::uint32_t> order_;
};

template <class Fn>
void SpatialGrid::for_each_within(Vec2 at, double radius, Fn&& fn) const {
  if (points_.empty() || !(radius > 0.0)) return;
  if (radius > geom_.max_radius()) radius = geom_.max_radius();
  const double r2 = radius * radius;
  const int reach = static_cast<int>(std::ceil(radius / cell_));
  const int cx = cell_coord(at.x);
  const int cy = cell_coord(at.y);
  int x_lo = cx - reach, x_hi = cx + reach;
  int y_lo = cy - reach, y_hi = cy + reach;
  if (geom_.torus) {
    if (x_hi - x_lo + 1 > n_) { x_lo = 0; x_hi = n_ - 1; }
    if (y_hi - y_lo + 1 > n_) { y_lo = 0; y_hi = n_ - 1; }
  } else {
    x_lo = std::max(x_lo, 0);
    y_lo = std::max(y_lo, 0);
    x_hi = std::min(x_hi, n_ - 1);
    y_hi = std::min(y_hi, n_ - 1);
  }
  for (int gy = y_lo; gy <= y_hi; ++gy) {
    const int wy = ((gy % n_) + n_) % n_;
    for (int gx = x_lo; gx <= x_hi; ++gx) {
      const int wx = ((gx % n_) + n_) % n_;
      const std::size_t cell = static_cast<std::size_t>(wy) * n_ + wx;
      for (std::uint32_t k = start_[cell]; k < start_[cell + 1]; ++k) {
        const std::uint32_t idx = order_[k];
        const double d2 = geom_.dist2(at, points_[idx]);
        if (d2 < r2) fn(static_cast<int>(idx), d2);
      }
    }
  }
}

}  // namespace cogd2d

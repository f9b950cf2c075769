#include "cogd2d/spatial_grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace cogd2d {

SpatialGrid::SpatialGrid(const std::vector<Vec2>& points, Geometry geom, double cell_size)
    : geom_(geom), points_(points) {
  if (!(geom.side > 0.0)) throw std::invalid_argument("SpatialGrid: side must be > 0");
  if (!(cell_size > 0.0)) throw std::invalid_argument("SpatialGrid: cell size must be > 0");
  n_ = std::clamp(static_cast<int>(std::ceil(geom.side / cell_size)), 1, 4096);
  cell_ = geom.side / n_;

  const std::size_t n_cells = static_cast<std::size_t>(n_) * n_;
  std::vector<std::uint32_t> cell_of(points_.size());
  start_.assign(n_cells + 1, 0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const std::size_t c =
        static_cast<std::size_t>(cell_coord(points_[i].y)) * n_ + cell_coord(points_[i].x);
    cell_of[i] = static_cast<std::uint32_t>(c);
    ++start_[c + 1];
  }
  for (std::size_t c = 0; c < n_cells; ++c) start_[c + 1] += start_[c];
  order_.resize(points_.size());
  std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    order_[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
  }
}

int SpatialGrid::cell_coord(double v) const {
  const int c = static_cast<int>(std::floor(v / cell_));
  return std::clamp(c, 0, n_ - 1);
}

int SpatialGrid::nearest(Vec2 at, double* dist2_out) const {
  if (points_.empty()) return -1;
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  const int cx = cell_coord(at.x);
  const int cy = cell_coord(at.y);
  const int max_ring = geom_.torus ? n_ / 2 + 1 : n_;

  auto visit = [&](int gx, int gy) {
    if (geom_.torus) {
      gx = ((gx % n_) + n_) % n_;
      gy = ((gy % n_) + n_) % n_;
    } else if (gx < 0 || gy < 0 || gx >= n_ || gy >= n_) {
      return;
    }
    const std::size_t cell = static_cast<std::size_t>(gy) * n_ + gx;
    for (std::uint32_t k = start_[cell]; k < start_[cell + 1]; ++k) {
      const std::uint32_t idx = order_[k];
      const double d2 = geom_.dist2(at, points_[idx]);
      if (d2 < best_d2 || (d2 == best_d2 && static_cast<int>(idx) < best)) {
        best_d2 = d2;
        best = static_cast<int>(idx);
      }
    }
  };

  for (int ring = 0; ring <= max_ring; ++ring) {
    // Every point outside rings 0..ring-1 is at least (ring-1)*cell away.
    if (best >= 0) {
      const double reach = (ring - 1) * cell_;
      if (reach > 0.0 && reach * reach > best_d2) break;
    }
    if (ring == 0) {
      visit(cx, cy);
      continue;
    }
    for (int d = -ring; d <= ring; ++d) {
      visit(cx + d, cy - ring);
      visit(cx + d, cy + ring);
    }
    for (int d = -ring + 1; d <= ring - 1; ++d) {
      visit(cx - ring, cy + d);
      visit(cx + ring, cy + d);
    }
  }
  if (dist2_out) *dist2_out = best_d2;
  return best;
}

}  // namespace cogd2d

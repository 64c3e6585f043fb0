#include "scj/pp/spatial_grid.hpp"

#include <cmath>
#include <limits>

namespace scj {

NearestResult nearest_linear(Point p, std::span<const Point> pts) {
  if (pts.empty()) throw InvalidRealization("nearest-receiver query on an empty receiver set");
  std::size_t best = 0;
  double best_d2 = distance_sq(p, pts[0]);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double d2 = distance_sq(p, pts[i]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return {best, std::sqrt(best_d2)};
}

PointGrid::PointGrid(std::span<const Point> pts, double cell, double cover)
    : pts_(pts), n_(pts.size()), cell_(cell) {
  if (n_ == 0) return;
  double xmin = -cover, xmax = cover, ymin = -cover, ymax = cover;
  for (const auto& q : pts) {
    xmin = std::min(xmin, q.x);
    xmax = std::max(xmax, q.x);
    ymin = std::min(ymin, q.y);
    ymax = std::max(ymax, q.y);
  }
  x0_ = xmin;
  y0_ = ymin;
  nx_ = static_cast<long>(std::floor((xmax - xmin) / cell_)) + 1;
  ny_ = static_cast<long>(std::floor((ymax - ymin) / cell_)) + 1;

  const auto ncell = static_cast<std::size_t>(nx_ * ny_);
  std::vector<std::uint32_t> cell_idx(n_);
  start_.assign(ncell + 1, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    long cx, cy;
    cell_of(pts[i], cx, cy);
    cell_idx[i] = static_cast<std::uint32_t>(cy * nx_ + cx);
    ++start_[cell_idx[i] + 1];
  }
  for (std::size_t c = 0; c < ncell; ++c) start_[c + 1] += start_[c];
  items_.resize(n_);
  std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < n_; ++i) items_[fill[cell_idx[i]]++] = static_cast<std::uint32_t>(i);
}

void PointGrid::cell_of(Point p, long& cx, long& cy) const {
  cx = static_cast<long>(std::floor((p.x - x0_) / cell_));
  cy = static_cast<long>(std::floor((p.y - y0_) / cell_));
  cx = std::clamp(cx, 0L, nx_ - 1);
  cy = std::clamp(cy, 0L, ny_ - 1);
}

NearestResult PointGrid::nearest(Point p) const {
  if (n_ == 0) throw InvalidRealization("nearest-receiver query on an empty receiver set");
  long cx, cy;
  cell_of(p, cx, cy);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  double best_d2 = std::numeric_limits<double>::infinity();
  const long max_ring = std::max({cx, nx_ - 1 - cx, cy, ny_ - 1 - cy});

  auto consider = [&](std::size_t i) {
    const double d2 = distance_sq(p, pts_[i]);
    if (d2 < best_d2 || (d2 == best_d2 && i < best)) {
      best_d2 = d2;
      best = i;
    }
    return true;
  };

  for (long ring = 0; ring <= max_ring; ++ring) {
    if (ring > 0 && best != std::numeric_limits<std::size_t>::max()) {
      // Distance from p to anything outside the block of rings < ring.
      const double bx0 = x0_ + (cx - ring + 1) * cell_;
      const double bx1 = x0_ + (cx + ring) * cell_;
      const double by0 = y0_ + (cy - ring + 1) * cell_;
      const double by1 = y0_ + (cy + ring) * cell_;
      double bound = 0.0;
      if (p.x >= bx0 && p.x <= bx1 && p.y >= by0 && p.y <= by1)
        bound = std::min({p.x - bx0, bx1 - p.x, p.y - by0, by1 - p.y});
      // Strict: an equal-distance point further out could have a lower index.
      if (bound * bound > best_d2) break;
    }
    if (ring == 0) {
      visit_cell(cx, cy, consider);
      continue;
    }
    for (long dx = -ring; dx <= ring; ++dx) {
      visit_cell(cx + dx, cy - ring, consider);
      visit_cell(cx + dx, cy + ring, consider);
    }
    for (long dy = -ring + 1; dy <= ring - 1; ++dy) {
      visit_cell(cx - ring, cy + dy, consider);
      visit_cell(cx + ring, cy + dy, consider);
    }
  }
  return {best, std::sqrt(best_d2)};
}

ReceiverIndex::ReceiverIndex(std::span<const Point> receivers, double cell, double cover)
    : pts_(receivers), use_grid_(receivers.size() >= kLinearBelow) {
  if (use_grid_) grid_ = PointGrid(receivers, cell, cover);
}

NearestResult ReceiverIndex::nearest(Point p) const {
  return use_grid_ ? grid_.nearest(p) : nearest_linear(p, pts_);
}

}  // namespace scj

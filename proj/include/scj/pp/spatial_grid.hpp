#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "scj/core/geometry.hpp"

namespace scj {

/// A realization that cannot answer a query, e.g. no receivers at all.
class InvalidRealization : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct NearestResult {
  std::size_t index;
  double distance;
};

/// Brute-force nearest point; ties go to the lowest index.
/// Throws InvalidRealization on an empty set.
NearestResult nearest_linear(Point p, std::span<const Point> pts);

/// Uniform bucket grid over a fixed point set. Points keep their original
/// indices; within a cell they are stored in increasing index order.
class PointGrid {
public:
  PointGrid() = default;
  /// The grid covers the points' bounding box grown to include `cover`
  /// (radius around the origin); queries outside it stay correct but slower.
  PointGrid(std::span<const Point> pts, double cell, double cover = 0.0);

  bool empty() const { return n_ == 0; }
  std::size_t size() const { return n_; }

  /// Same answer as nearest_linear, including the tie rule.
  NearestResult nearest(Point p) const;

  /// Visit points cell ring by cell ring outward from p's cell. The visitor
  /// returns false to stop early. Every point is visited exactly once.
  template <class Visitor>
  void visit_by_ring(Point p, Visitor&& visit) const;

private:
  void cell_of(Point p, long& cx, long& cy) const;
  template <class Visitor>
  bool visit_cell(long cx, long cy, Visitor& visit) const;

  std::span<const Point> pts_;
  std::size_t n_ = 0;
  double cell_ = 1.0;
  double x0_ = 0.0, y0_ = 0.0;
  long nx_ = 0, ny_ = 0;
  std::vector<std::uint32_t> start_;  // CSR offsets, size nx*ny + 1
  std::vector<std::uint32_t> items_;
};

/// Nearest-receiver index: grid above 64 points, linear scan below.
class ReceiverIndex {
public:
  static constexpr std::size_t kLinearBelow = 64;

  ReceiverIndex(std::span<const Point> receivers, double cell, double cover = 0.0);
  NearestResult nearest(Point p) const;

private:
  std::span<const Point> pts_;
  PointGrid grid_;
  bool use_grid_ = false;
};

template <class Visitor>
bool PointGrid::visit_cell(long cx, long cy, Visitor& visit) const {
  if (cx < 0 || cy < 0 || cx >= nx_ || cy >= ny_) return true;
  const auto c = static_cast<std::size_t>(cy * nx_ + cx);
  for (std::uint32_t k = start_[c]; k < start_[c + 1]; ++k)
    if (!visit(static_cast<std::size_t>(items_[k]))) return false;
  return true;
}

template <class Visitor>
void PointGrid::visit_by_ring(Point p, Visitor&& visit) const {
  if (n_ == 0) return;
  long cx, cy;
  cell_of(p, cx, cy);
  const long max_ring = std::max({cx, nx_ - 1 - cx, cy, ny_ - 1 - cy, 0L});
  for (long ring = 0; ring <= max_ring; ++ring) {
    if (ring == 0) {
      if (!visit_cell(cx, cy, visit)) return;
      continue;
    }
    for (long dx = -ring; dx <= ring; ++dx) {
      if (!visit_cell(cx + dx, cy - ring, visit)) return;
      if (!visit_cell(cx + dx, cy + ring, visit)) return;
    }
    for (long dy = -ring + 1; dy <= ring - 1; ++dy) {
      if (!visit_cell(cx - ring, cy + dy, visit)) return;
      if (!visit_cell(cx + ring, cy + dy, visit)) return;
    }
  }
}

}  // namespace scj

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "parafoil/world.hpp"

namespace parafoil {

using PointId = std::uint32_t;

/// Exact 3D point index on a uniform hash grid. Ids are small dense integers
/// (tree node or witness indices). Query results are independent of insertion
/// order: ties are always broken toward the smaller id.
class GridIndex {
 public:
  explicit GridIndex(double cell_size);

  void insert(PointId id, const Vec3& p);
  void erase(PointId id);
  bool contains(PointId id) const { return id < slot_.size() && slot_[id] != kNone; }
  std::size_t size() const { return entries_.size(); }

  /// Calls fn(id, squared_distance) for every point with distance <= radius.
  template <class Fn>
  void for_each_within(const Vec3& p, double radius, Fn&& fn) const;

  /// Exact nearest neighbour, ties to the smaller id.
  std::optional<PointId> nearest(const Vec3& p) const;

  struct Entry {
    PointId id;
    Vec3 pos;
  };
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  struct Cell {
    std::int32_t i, j, k;
  };
  Cell cell_of(const Vec3& p) const;
  static std::uint64_t key(std::int32_t i, std::int32_t j, std::int32_t k);

  double cell_size_;
  std::vector<Entry> entries_;
  std::vector<std::uint32_t> slot_;  // id -> index in entries_
  std::unordered_map<std::uint64_t, std::vector<PointId>> cells_;
};

/// Linear-scan reference with the same query semantics as GridIndex.
class BruteForceIndex {
 public:
  void insert(PointId id, const Vec3& p);
  void erase(PointId id);
  std::size_t size() const { return points_.size(); }

  template <class Fn>
  void for_each_within(const Vec3& p, double radius, Fn&& fn) const {
    const double r2 = radius * radius;
    for (const auto& [id, q] : points_) {
      const double d2 = distance_sq(p, q);
      if (d2 <= r2) fn(id, d2);
    }
  }
  std::optional<PointId> nearest(const Vec3& p) const;

 private:
  std::vector<std::pair<PointId, Vec3>> points_;
};

template <class Fn>
void GridIndex::for_each_within(const Vec3& p, double radius, Fn&& fn) const {
  if (entries_.empty()) return;
  const double r2 = radius * radius;
  const auto lo = cell_of({p.x - radius, p.y - radius, p.h - radius});
  const auto hi = cell_of({p.x + radius, p.y + radius, p.h + radius});
  const std::int64_t span = static_cast<std::int64_t>(hi.i - lo.i + 1) * (hi.j - lo.j + 1) * (hi.k - lo.k + 1);
  if (span > static_cast<std::int64_t>(cells_.size())) {
    for (const auto& e : entries_) {
      const double d2 = distance_sq(p, e.pos);
      if (d2 <= r2) fn(e.id, d2);
    }
    return;
  }
  for (std::int32_t i = lo.i; i <= hi.i; ++i)
    for (std::int32_t j = lo.j; j <= hi.j; ++j)
      for (std::int32_t k = lo.k; k <= hi.k; ++k) {
        const auto it = cells_.find(key(i, j, k));
        if (it == cells_.end()) continue;
        for (PointId id : it->second) {
          const double d2 = distance_sq(p, entries_[slot_[id]].pos);
          if (d2 <= r2) fn(id, d2);
        }
      }
}

}  // namespace parafoil

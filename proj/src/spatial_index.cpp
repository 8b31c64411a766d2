#include "parafoil/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parafoil {

GridIndex::GridIndex(double cell_size) : cell_size_(cell_size) {
  if (!(cell_size > 0.0)) throw std::invalid_argument("grid cell size must be positive");
}

GridIndex::Cell GridIndex::cell_of(const Vec3& p) const {
  return {static_cast<std::int32_t>(std::floor(p.x / cell_size_)), static_cast<std::int32_t>(std::floor(p.y / cell_size_)),
          static_cast<std::int32_t>(std::floor(p.h / cell_size_))};
}

std::uint64_t GridIndex::key(std::int32_t i, std::int32_t j, std::int32_t k) {
  const auto u = [](std::int32_t v) { return static_cast<std::uint64_t>(static_cast<std::uint32_t>(v) & 0x1FFFFFu); };
  return (u(i) << 42) | (u(j) << 21) | u(k);
}

void GridIndex::insert(PointId id, const Vec3& p) {
  if (contains(id)) throw std::logic_error("grid index: duplicate id");
  if (id >= slot_.size()) slot_.resize(static_cast<std::size_t>(id) + 1, kNone);
  slot_[id] = static_cast<std::uint32_t>(entries_.size());
  entries_.push_back({id, p});
  const Cell c = cell_of(p);
  cells_[key(c.i, c.j, c.k)].push_back(id);
}

void GridIndex::erase(PointId id) {
  if (!contains(id)) throw std::logic_error("grid index: unknown id");
  const std::uint32_t slot = slot_[id];
  const Cell c = cell_of(entries_[slot].pos);
  auto it = cells_.find(key(c.i, c.j, c.k));
  auto& bucket = it->second;
  bucket.erase(std::find(bucket.begin(), bucket.end(), id));
  if (bucket.empty()) cells_.erase(it);

  entries_[slot] = entries_.back();
  slot_[entries_[slot].id] = slot;
  entries_.pop_back();
  slot_[id] = kNone;
}

std::optional<PointId> GridIndex::nearest(const Vec3& p) const {
  if (entries_.empty()) return std::nullopt;
  const Cell c = cell_of(p);
  PointId best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  auto consider = [&](PointId id, double d2) {
    if (d2 < best_d2 || (d2 == best_d2 && id < best)) {
      best = id;
      best_d2 = d2;
    }
  };
  // Shell k holds points at least (k - 1) * cell_size away. A few shells cover
  // the dense case; otherwise fall back to the exact linear scan.
  constexpr std::int32_t kMaxShells = 3;
  for (std::int32_t ring = 0; ring <= kMaxShells; ++ring) {
    for (std::int32_t i = c.i - ring; i <= c.i + ring; ++i)
      for (std::int32_t j = c.j - ring; j <= c.j + ring; ++j)
        for (std::int32_t k = c.k - ring; k <= c.k + ring; ++k) {
          if (std::max({std::abs(i - c.i), std::abs(j - c.j), std::abs(k - c.k)}) != ring) continue;
          const auto it = cells_.find(key(i, j, k));
          if (it == cells_.end()) continue;
          for (PointId id : it->second) consider(id, distance_sq(p, entries_[slot_[id]].pos));
        }
    const double covered = ring * cell_size_;
    if (best_d2 < covered * covered) return best;
  }
  for (const auto& e : entries_) consider(e.id, distance_sq(p, e.pos));
  return best;
}

void BruteForceIndex::insert(PointId id, const Vec3& p) { points_.emplace_back(id, p); }

void BruteForceIndex::erase(PointId id) {
  const auto it = std::find_if(points_.begin(), points_.end(), [&](const auto& e) { return e.first == id; });
  if (it == points_.end()) throw std::logic_error("brute-force index: unknown id");
  points_.erase(it);
}

std::optional<PointId> BruteForceIndex::nearest(const Vec3& p) const {
  std::optional<PointId> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (const auto& [id, q] : points_) {
    const double d2 = distance_sq(p, q);
    if (d2 < best_d2 || (d2 == best_d2 && id < *best)) {
      best = id;
      best_d2 = d2;
    }
  }
  return best;
}

}  // namespace parafoil

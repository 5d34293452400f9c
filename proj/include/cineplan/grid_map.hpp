#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cineplan/geometry.hpp"
#include "cineplan/mission.hpp"

namespace cineplan {

struct Cell {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct CellPath {
  std::vector<Cell> cells;  ///< start cell first, goal cell last
  double cost = 0.0;        ///< octile length between cell centers, meters
};

/// Occupancy grid of no-fly cells. Blocked cells apply at every altitude.
class GridMap {
 public:
  GridMap(Vec2 origin, double cell_size, int width, int height);

  /// Rasterizes every polygon of `spec` conservatively: a cell is blocked
  /// when the polygon touches it at all.
  static GridMap from_spec(const MapSpec& spec);

  void block(Cell cell);
  void block_polygon(std::span<const Vec2> polygon);

  Vec2 origin() const { return origin_; }
  double cell_size() const { return cell_size_; }
  int width() const { return width_; }
  int height() const { return height_; }

  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  bool blocked(Cell c) const;
  std::size_t blocked_count() const;
  std::optional<Cell> cell_at(Vec2 p) const;
  Vec2 center(Cell c) const;

  /// Content hash of the blocked set; part of the path cache key.
  std::uint64_t version() const { return version_; }

  /// A* over the 8-connected grid with the octile heuristic. Diagonal moves
  /// may not cut the corner of a blocked cell. Ties on f are broken toward
  /// the smaller heuristic. Returns nullopt when the goal is unreachable.
  std::optional<CellPath> shortest_path(Cell from, Cell to) const;

  double octile(Cell a, Cell b) const;

 private:
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.y) * width_ + c.x; }
  void rehash();

  Vec2 origin_;
  double cell_size_;
  int width_;
  int height_;
  std::vector<std::uint8_t> blocked_;
  std::uint64_t version_ = 0;
};

}  // namespace cineplan

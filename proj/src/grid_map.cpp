#include "cineplan/grid_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace cineplan {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

bool point_in_polygon(Vec2 p, std::span<const Vec2> poly) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

double cross(Vec2 o, Vec2 a, Vec2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool on_segment(Vec2 p, Vec2 a, Vec2 b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(p1, q1, q2)) return true;
  if (d2 == 0 && on_segment(p2, q1, q2)) return true;
  if (d3 == 0 && on_segment(q1, p1, p2)) return true;
  if (d4 == 0 && on_segment(q2, p1, p2)) return true;
  return false;
}

bool polygon_touches_rect(std::span<const Vec2> poly, Vec2 lo, Vec2 hi) {
  for (const auto& v : poly)
    if (v.x >= lo.x && v.x <= hi.x && v.y >= lo.y && v.y <= hi.y) return true;
  const Vec2 corners[4] = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};
  for (const auto& c : corners)
    if (point_in_polygon(c, poly)) return true;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    for (int k = 0; k < 4; ++k)
      if (segments_intersect(a, b, corners[k], corners[(k + 1) % 4])) return true;
  }
  return false;
}

}  // namespace

GridMap::GridMap(Vec2 origin, double cell_size, int width, int height)
    : origin_(origin), cell_size_(cell_size), width_(width), height_(height) {
  if (!(cell_size > 0.0) || width <= 0 || height <= 0)
    throw std::invalid_argument("grid map needs a positive cell size and extent");
  blocked_.assign(static_cast<std::size_t>(width) * height, 0);
  rehash();
}

GridMap GridMap::from_spec(const MapSpec& spec) {
  GridMap map(spec.origin, spec.cell_size, spec.width, spec.height);
  for (const auto& poly : spec.no_fly_zones) map.block_polygon(poly);
  return map;
}

void GridMap::block(Cell cell) {
  if (!in_bounds(cell)) throw std::out_of_range("cell outside grid");
  blocked_[index(cell)] = 1;
  rehash();
}

void GridMap::block_polygon(std::span<const Vec2> polygon) {
  if (polygon.size() < 3) return;
  double min_x = polygon[0].x, max_x = polygon[0].x, min_y = polygon[0].y, max_y = polygon[0].y;
  for (const auto& v : polygon) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
    min_y = std::min(min_y, v.y);
    max_y = std::max(max_y, v.y);
  }
  const int x0 = std::max(0, static_cast<int>(std::floor((min_x - origin_.x) / cell_size_)));
  const int x1 = std::min(width_ - 1, static_cast<int>(std::floor((max_x - origin_.x) / cell_size_)));
  const int y0 = std::max(0, static_cast<int>(std::floor((min_y - origin_.y) / cell_size_)));
  const int y1 = std::min(height_ - 1, static_cast<int>(std::floor((max_y - origin_.y) / cell_size_)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const Vec2 lo{origin_.x + x * cell_size_, origin_.y + y * cell_size_};
      const Vec2 hi{lo.x + cell_size_, lo.y + cell_size_};
      if (polygon_touches_rect(polygon, lo, hi)) blocked_[index({x, y})] = 1;
    }
  }
  rehash();
}

bool GridMap::blocked(Cell c) const { return !in_bounds(c) || blocked_[index(c)] != 0; }

std::size_t GridMap::blocked_count() const {
  return static_cast<std::size_t>(std::count(blocked_.begin(), blocked_.end(), 1));
}

std::optional<Cell> GridMap::cell_at(Vec2 p) const {
  const double fx = (p.x - origin_.x) / cell_size_;
  const double fy = (p.y - origin_.y) / cell_size_;
  if (!(fx >= 0.0) || !(fy >= 0.0)) return std::nullopt;
  Cell c{static_cast<int>(fx), static_cast<int>(fy)};
  if (!in_bounds(c)) return std::nullopt;
  return c;
}

Vec2 GridMap::center(Cell c) const {
  return {origin_.x + (c.x + 0.5) * cell_size_, origin_.y + (c.y + 0.5) * cell_size_};
}

double GridMap::octile(Cell a, Cell b) const {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  return cell_size_ * (std::max(dx, dy) - std::min(dx, dy) + kSqrt2 * std::min(dx, dy));
}

std::optional<CellPath> GridMap::shortest_path(Cell from, Cell to) const {
  if (blocked(from) || blocked(to)) return std::nullopt;
  const std::size_t n = blocked_.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> g(n, inf);
  std::vector<int> parent(n, -1);
  std::vector<std::uint8_t> closed(n, 0);

  struct Entry {
    double f;
    double h;
    int idx;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.idx > b.idx;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);

  const int start = static_cast<int>(index(from));
  const int goal = static_cast<int>(index(to));
  g[start] = 0.0;
  open.push({octile(from, to), octile(from, to), start});

  while (!open.empty()) {
    const Entry cur = open.top();
    open.pop();
    if (closed[cur.idx]) continue;
    closed[cur.idx] = 1;
    if (cur.idx == goal) break;
    const Cell c{cur.idx % width_, cur.idx / width_};
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const Cell nb{c.x + dx, c.y + dy};
        if (blocked(nb)) continue;
        if (dx != 0 && dy != 0 && (blocked({c.x + dx, c.y}) || blocked({c.x, c.y + dy}))) continue;
        const int ni = static_cast<int>(index(nb));
        if (closed[ni]) continue;
        const double step = (dx != 0 && dy != 0) ? kSqrt2 * cell_size_ : cell_size_;
        const double cand = g[cur.idx] + step;
        if (cand < g[ni]) {
          g[ni] = cand;
          parent[ni] = cur.idx;
          const double h = octile(nb, to);
          open.push({cand + h, h, ni});
        }
      }
    }
  }

  if (!std::isfinite(g[goal])) return std::nullopt;
  CellPath path;
  path.cost = g[goal];
  for (int i = goal; i != -1; i = parent[i]) path.cells.push_back({i % width_, i / width_});
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

void GridMap::rehash() {
  // FNV-1a over the occupancy bytes and extent.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(width_));
  mix(static_cast<std::uint64_t>(height_));
  for (auto b : blocked_) mix(b);
  version_ = h;
}

}  // namespace cineplan

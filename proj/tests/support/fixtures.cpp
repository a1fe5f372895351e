#include "support/fixtures.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fixtures {

using roomseg::Cell;
using roomseg::GridMap;
using roomseg::Image;
using roomseg::LabelImage;

GridMap map_from_ascii(const std::vector<std::string>& rows) {
  const int h = static_cast<int>(rows.size());
  const int w = h == 0 ? 0 : static_cast<int>(rows[0].size());
  GridMap map(w, h, Cell::occupied);
  for (int y = 0; y < h; ++y) {
    if (static_cast<int>(rows[y].size()) != w)
      throw std::invalid_argument("ragged ascii map");
    for (int x = 0; x < w; ++x) {
      if (rows[y][x] != '#') map.cells.at(x, y) = Cell::free;
    }
  }
  return map;
}

LabelImage labels_from_ascii(const std::vector<std::string>& rows) {
  const int h = static_cast<int>(rows.size());
  const int w = h == 0 ? 0 : static_cast<int>(rows[0].size());
  LabelImage out;
  out.labels = Image<std::int32_t>(w, h, 0);
  for (int y = 0; y < h; ++y) {
    if (static_cast<int>(rows[y].size()) != w)
      throw std::invalid_argument("ragged ascii labels");
    for (int x = 0; x < w; ++x) {
      char c = rows[y][x];
      if (c >= '0' && c <= '9') out.labels.at(x, y) = c - '0' + 1;
      if (c >= 'a' && c <= 'z') out.labels.at(x, y) = c - 'a' + 11;
    }
  }
  return out;
}

// 33x17: two 15x15 rooms, wall column x=16, doorway rows 3..5. The doorway
// sits away from the room centers so the big central disks cannot reach
// through it and the gap keeps a small value of its own.
GridMap two_rooms_with_door() {
  const int w = 33, h = 17;
  GridMap map(w, h, Cell::occupied);
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      if (x != 16) map.cells.at(x, y) = Cell::free;
    }
  }
  for (int y = 3; y <= 5; ++y) map.cells.at(16, y) = Cell::free;
  return map;
}

LabelImage two_rooms_ground_truth() {
  const GridMap map = two_rooms_with_door();
  LabelImage gt;
  gt.labels = Image<std::int32_t>(map.width(), map.height(), 0);
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (!map.is_free(x, y)) continue;
      gt.labels.at(x, y) = x <= 16 ? 1 : 2;  // doorway goes with the left room
    }
  }
  return gt;
}

// Room x in [1,15], corridor x in [16,55] on rows 6..10; wall elsewhere.
GridMap room_with_corridor() {
  const int w = 57, h = 17;
  GridMap map(w, h, Cell::occupied);
  for (int y = 1; y <= 15; ++y)
    for (int x = 1; x <= 15; ++x) map.cells.at(x, y) = Cell::free;
  for (int y = 6; y <= 10; ++y)
    for (int x = 16; x <= 55; ++x) map.cells.at(x, y) = Cell::free;
  return map;
}

LabelImage room_with_corridor_ground_truth() {
  const GridMap map = room_with_corridor();
  LabelImage gt;
  gt.labels = Image<std::int32_t>(map.width(), map.height(), 0);
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (!map.is_free(x, y)) continue;
      gt.labels.at(x, y) = x <= 15 ? 1 : 2;
    }
  }
  return gt;
}

GridMap all_free(int side) { return GridMap(side, side, Cell::free); }

GridMap rooms_grid(int side, int rooms_per_axis) {
  GridMap map(side, side, Cell::occupied);
  const int n = rooms_per_axis;
  const int cell = (side - 1) / n;  // wall + room per cell, trailing wall
  const int room = cell - 1;
  if (room < 3) throw std::invalid_argument("rooms_grid too small");
  auto room_lo = [&](int i) { return 1 + i * cell; };
  for (int ry = 0; ry < n; ++ry) {
    for (int rx = 0; rx < n; ++rx) {
      for (int y = room_lo(ry); y < room_lo(ry) + room && y < side - 1; ++y)
        for (int x = room_lo(rx); x < room_lo(rx) + room && x < side - 1; ++x)
          map.cells.at(x, y) = Cell::free;
    }
  }
  // Doorways in every interior wall, centered, about an eighth of the room.
  const int door = std::max(1, room / 8);
  for (int ry = 0; ry < n; ++ry) {
    for (int rx = 0; rx + 1 < n; ++rx) {
      int wall_x = room_lo(rx) + room;
      int mid = room_lo(ry) + room / 2;
      for (int y = mid - door / 2; y <= mid + door / 2; ++y)
        if (y > 0 && y < side - 1) map.cells.at(wall_x, y) = Cell::free;
    }
  }
  for (int rx = 0; rx < n; ++rx) {
    for (int ry = 0; ry + 1 < n; ++ry) {
      int wall_y = room_lo(ry) + room;
      int mid = room_lo(rx) + room / 2;
      for (int x = mid - door / 2; x <= mid + door / 2; ++x)
        if (x > 0 && x < side - 1) map.cells.at(x, wall_y) = Cell::free;
    }
  }
  return map;
}

GridMap random_map(std::mt19937& rng, int max_side, double p_occupied) {
  std::uniform_int_distribution<int> side(8, max_side);
  const int w = side(rng), h = side(rng);
  GridMap map(w, h, Cell::free);
  std::bernoulli_distribution occ(p_occupied);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (occ(rng)) map.cells.at(x, y) = Cell::occupied;
  return map;
}

LabelImage random_label_image(std::mt19937& rng, int max_side, int max_regions) {
  std::uniform_int_distribution<int> side(4, max_side);
  const int w = side(rng), h = side(rng);
  LabelImage out;
  out.labels = Image<std::int32_t>(w, h, 0);
  std::uniform_int_distribution<int> nr(1, max_regions);
  const int regions = nr(rng);
  std::uniform_int_distribution<int> xs(0, w - 1), ys(0, h - 1);
  // Watershed-ish growth: every pixel goes to the nearest seed, with a
  // sprinkle of background holes.
  std::vector<std::pair<int, int>> seeds;
  for (int i = 0; i < regions; ++i) seeds.emplace_back(xs(rng), ys(rng));
  std::bernoulli_distribution hole(0.1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (hole(rng)) continue;
      std::int64_t best = -1;
      int label = 0;
      for (int i = 0; i < regions; ++i) {
        std::int64_t dx = x - seeds[i].first, dy = y - seeds[i].second;
        std::int64_t d2 = dx * dx + dy * dy;
        if (best < 0 || d2 < best) {
          best = d2;
          label = i + 1;
        }
      }
      out.labels.at(x, y) = label;
    }
  }
  return out;
}

bool same_partition(const LabelImage& a, const LabelImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) return false;
  std::map<std::int32_t, std::int32_t> fwd, rev;
  for (std::int64_t i = 0; i < a.labels.pixel_count(); ++i) {
    std::int32_t la = a.labels[static_cast<std::size_t>(i)];
    std::int32_t lb = b.labels[static_cast<std::size_t>(i)];
    if ((la == 0) != (lb == 0)) return false;
    if (la == 0) continue;
    auto [fit, fin] = fwd.emplace(la, lb);
    if (!fin && fit->second != lb) return false;
    auto [rit, rin] = rev.emplace(lb, la);
    if (!rin && rit->second != la) return false;
  }
  return true;
}

}  // namespace fixtures

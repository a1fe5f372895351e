#include "roomseg/free_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

namespace roomseg {

namespace {

// Largest s with s * s <= v.
int isqrt_floor(std::int64_t v) {
  int s = static_cast<int>(std::sqrt(static_cast<double>(v)));
  while (static_cast<std::int64_t>(s + 1) * (s + 1) <= v) ++s;
  while (s > 0 && static_cast<std::int64_t>(s) * s > v) --s;
  return s;
}

// One row/column of the two-pass squared-distance transform: d[x] =
// min over q of (x - q)^2 + f[q], computed with the lower envelope of the
// parabolas rooted at (q, f[q]).
void lower_envelope(const std::vector<std::int64_t>& f, int n,
                    std::vector<std::int64_t>& d, std::vector<int>& v,
                    std::vector<double>& z) {
  auto intersect = [&](int q, int p) {
    return (static_cast<double>(f[q] - f[p]) +
            static_cast<double>(q) * q - static_cast<double>(p) * p) /
           (2.0 * (q - p));
  };
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    double s = intersect(q, v[k]);
    while (s <= z[k]) {
      --k;
      s = intersect(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int x = 0; x < n; ++x) {
    while (z[k + 1] < x) ++k;
    std::int64_t dx = x - v[k];
    d[x] = dx * dx + f[v[k]];
  }
}

}  // namespace

DistanceImage distance_transform(const GridMap& map) {
  const int w = map.width(), h = map.height();
  DistanceImage out;
  out.squared = Image<std::int32_t>(w, h, 0);
  out.dist = Image<double>(w, h, 0.0);
  if (w == 0 || h == 0) return out;

  // Work on a grid padded with one occupied ring so the border bounds
  // every distance; every padded column then contains an obstacle.
  const int pw = w + 2, ph = h + 2;
  std::vector<int> vert(static_cast<std::size_t>(pw) * ph);  // rows to nearest
                                                             // occupied in column
  const int big = pw + ph;
  for (int x = 0; x < pw; ++x) {
    int run = 0;  // distance since last occupied, scanning down
    for (int y = 0; y < ph; ++y) {
      bool occ = x == 0 || y == 0 || x == pw - 1 || y == ph - 1 ||
                 !map.is_free(x - 1, y - 1);
      run = occ ? 0 : std::min(run + 1, big);
      vert[static_cast<std::size_t>(y) * pw + x] = run;
    }
    for (int y = ph - 2; y >= 0; --y) {
      int below = vert[static_cast<std::size_t>(y + 1) * pw + x] + 1;
      int& cur = vert[static_cast<std::size_t>(y) * pw + x];
      cur = std::min(cur, below);
    }
  }

  std::vector<std::int64_t> f(pw), d(pw);
  std::vector<int> v(pw);
  std::vector<double> z(pw + 1);
  for (int y = 1; y < ph - 1; ++y) {
    for (int x = 0; x < pw; ++x) {
      std::int64_t g = vert[static_cast<std::size_t>(y) * pw + x];
      f[x] = g * g;
    }
    lower_envelope(f, pw, d, v, z);
    for (int x = 1; x < pw - 1; ++x) {
      std::int32_t sq = static_cast<std::int32_t>(d[x]);
      out.squared.at(x - 1, y - 1) = sq;
      out.dist.at(x - 1, y - 1) = std::sqrt(static_cast<double>(sq));
    }
  }
  return out;
}

int rounded_radius(std::int32_t squared) {
  // round(sqrt(s)) = r  <=>  (2r - 1)^2 <= 4 s < (2r + 1)^2; 4 s never hits
  // an odd square, so the bounds below settle the rounding exactly.
  if (squared <= 0) return 0;
  std::int64_t s4 = 4ll * squared;
  int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(squared))));
  while (static_cast<std::int64_t>(2 * r + 1) * (2 * r + 1) <= s4) ++r;
  while (r > 0 && static_cast<std::int64_t>(2 * r - 1) * (2 * r - 1) > s4) --r;
  return r;
}

FreeSpaceImage compute_fsi(const DistanceImage& distance) {
  const int w = distance.width(), h = distance.height();
  FreeSpaceImage fsi;
  fsi.value = Image<std::int32_t>(w, h, 0);
  if (w == 0 || h == 0) return fsi;

  std::vector<std::int32_t> radius(static_cast<std::size_t>(w) * h);
  int max_r = 0;
  for (std::int64_t i = 0; i < distance.squared.pixel_count(); ++i) {
    int r = rounded_radius(distance.squared[static_cast<std::size_t>(i)]);
    radius[static_cast<std::size_t>(i)] = r;
    max_r = std::max(max_r, r);
  }
  if (max_r == 0) return fsi;

  // Disks are painted in decreasing radius order, so the first value a
  // pixel receives is its maximum. A disk is skipped when an 8-neighbor's
  // disk provably contains it: radius larger by the neighbor offset
  // (1 axis-aligned, 2 > sqrt(2) diagonal). Skipping is sound because the
  // dominating disk either gets painted or is itself dominated by a
  // strictly larger one.
  std::vector<std::vector<std::int32_t>> buckets(static_cast<std::size_t>(max_r) + 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::size_t i = static_cast<std::size_t>(y) * w + x;
      int r = radius[i];
      if (r == 0) continue;
      bool dominated = false;
      for (const auto& n : kNeighbors8) {
        int nx = x + n[0], ny = y + n[1];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        int step = (n[0] != 0 && n[1] != 0) ? 2 : 1;
        if (radius[static_cast<std::size_t>(ny) * w + nx] >= r + step) {
          dominated = true;
          break;
        }
      }
      if (!dominated) buckets[static_cast<std::size_t>(r)].push_back(
          static_cast<std::int32_t>(i));
    }
  }

  // Per-row "next unpainted" pointers: painted or occupied pixels forward
  // to the next candidate, so each pixel is written at most once.
  std::vector<std::int32_t> next(static_cast<std::size_t>(w + 1) * h);
  for (int y = 0; y < h; ++y) {
    std::int32_t* row = next.data() + static_cast<std::size_t>(y) * (w + 1);
    for (int x = 0; x < w; ++x)
      row[x] = distance.squared.at(x, y) > 0 ? x : x + 1;
    row[w] = w;
  }
  auto find_unpainted = [&](std::int32_t* row, int x) {
    while (row[x] != x) {
      row[x] = row[row[x]];  // path halving
      x = row[x];
    }
    return x;
  };

  for (int r = max_r; r >= 1; --r) {
    std::int64_t rr = static_cast<std::int64_t>(r) * r;
    for (std::int32_t center : buckets[static_cast<std::size_t>(r)]) {
      int cx = center % w, cy = center / w;
      int y0 = std::max(0, cy - r), y1 = std::min(h - 1, cy + r);
      for (int y = y0; y <= y1; ++y) {
        std::int64_t dy = y - cy;
        int half = isqrt_floor(rr - dy * dy);
        int x0 = std::max(0, cx - half), x1 = std::min(w - 1, cx + half);
        std::int32_t* row = next.data() + static_cast<std::size_t>(y) * (w + 1);
        for (int x = find_unpainted(row, x0); x <= x1;
             x = find_unpainted(row, x + 1)) {
          fsi.value.at(x, y) = r;
          row[x] = x + 1;
        }
      }
    }
  }
  return fsi;
}

RegionGraph group_regions(const FreeSpaceImage& fsi) {
  const int w = fsi.width(), h = fsi.height();
  Image<std::int32_t> labels(w, h, 0);
  std::map<int, int> values;
  int next_id = 0;
  std::vector<std::int32_t> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (fsi.value.at(x, y) == 0 || labels.at(x, y) != 0) continue;
      const std::int32_t v = fsi.value.at(x, y);
      const int id = ++next_id;
      values[id] = v;
      labels.at(x, y) = id;
      stack.push_back(labels.index(x, y));
      while (!stack.empty()) {
        std::int32_t p = stack.back();
        stack.pop_back();
        int px = p % w, py = p / w;
        for (const auto& n : kNeighbors8) {
          int nx = px + n[0], ny = py + n[1];
          if (!labels.in_bounds(nx, ny)) continue;
          if (labels.at(nx, ny) != 0 || fsi.value.at(nx, ny) != v) continue;
          labels.at(nx, ny) = id;
          stack.push_back(labels.index(nx, ny));
        }
      }
    }
  }
  return RegionGraph::from_partition(std::move(labels), values);
}

}  // namespace roomseg

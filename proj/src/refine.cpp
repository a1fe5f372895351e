#include "roomseg/refine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace roomseg {

namespace {

struct Box {
  int x0 = 0, y0 = 0, x1 = -1, y1 = -1;
  void expand(int x, int y) {
    if (x1 < x0) {
      x0 = x1 = x;
      y0 = y1 = y;
      return;
    }
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
};

struct Pt {
  double x = 0.0, y = 0.0;
};

struct LabelStats {
  std::int64_t area = 0;
  std::int64_t sx = 0, sy = 0;
  Pt centroid() const {
    return {static_cast<double>(sx) / static_cast<double>(area),
            static_cast<double>(sy) / static_cast<double>(area)};
  }
};

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// One contact chain between regions a and b: anchor a line between the
// chain's two farthest junction clusters and hand every banded pixel to
// the side its center falls on.
void straighten_chain(Image<std::int32_t>& out,
                      std::map<int, std::int64_t>& areas,
                      const std::map<int, Pt>& centroids,
                      const std::vector<std::int32_t>& chain, int a, int b) {
  const int w = out.width(), h = out.height();
  auto label_in_pair = [&](int l) { return l == a || l == b; };

  // Terminal pixels: where the boundary runs into an obstacle, the image
  // border, or a third region.
  std::vector<std::int32_t> terminals;
  for (std::int32_t p : chain) {
    int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
    bool terminal = false;
    for (const auto& n : kNeighbors8) {
      int nx = x + n[0], ny = y + n[1];
      if (!out.in_bounds(nx, ny) || !label_in_pair(out.at(nx, ny))) {
        terminal = true;
        break;
      }
    }
    if (terminal) terminals.push_back(p);
  }
  if (terminals.size() < 2) return;
  std::sort(terminals.begin(), terminals.end());

  // Junction clusters; their centroids are the candidate endpoints.
  std::unordered_set<std::int32_t> is_terminal(terminals.begin(), terminals.end());
  std::unordered_set<std::int32_t> seen;
  std::vector<Pt> anchors;
  for (std::int32_t p : terminals) {
    if (seen.count(p)) continue;
    std::int64_t n = 0, sx = 0, sy = 0;
    std::vector<std::int32_t> stack{p};
    seen.insert(p);
    while (!stack.empty()) {
      std::int32_t q = stack.back();
      stack.pop_back();
      int x = static_cast<int>(q % w), y = static_cast<int>(q / w);
      ++n;
      sx += x;
      sy += y;
      for (const auto& nb : kNeighbors8) {
        int nx = x + nb[0], ny = y + nb[1];
        if (!out.in_bounds(nx, ny)) continue;
        std::int32_t qi = out.index(nx, ny);
        if (!is_terminal.count(qi) || seen.count(qi)) continue;
        seen.insert(qi);
        stack.push_back(qi);
      }
    }
    anchors.push_back({static_cast<double>(sx) / n, static_cast<double>(sy) / n});
  }
  if (anchors.size() < 2) return;  // anchored at one spot only (or a loop)

  std::size_t bi = 0, bj = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      double dx = anchors[j].x - anchors[i].x, dy = anchors[j].y - anchors[i].y;
      double d2 = dx * dx + dy * dy;
      if (d2 > best) {
        best = d2;
        bi = i;
        bj = j;
      }
    }
  }
  const Pt e0 = anchors[bi], e1 = anchors[bj];
  const double dirx = e1.x - e0.x, diry = e1.y - e0.y;
  const double len2 = dirx * dirx + diry * diry;
  if (len2 <= 0.0) return;

  auto cross_of = [&](double px, double py) {
    return dirx * (py - e0.y) - diry * (px - e0.x);
  };
  auto proj_of = [&](double px, double py) {
    return dirx * (px - e0.x) + diry * (py - e0.y);
  };

  // Amplitude envelope and projection window of the chain.
  double max_cross = 0.0, proj_lo = 0.0, proj_hi = len2;
  Box chain_box;
  for (std::int32_t p : chain) {
    int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
    chain_box.expand(x, y);
    max_cross = std::max(max_cross, std::abs(cross_of(x, y)));
    proj_lo = std::min(proj_lo, proj_of(x, y));
    proj_hi = std::max(proj_hi, proj_of(x, y));
  }
  const double d_max = max_cross / std::sqrt(len2) + 1.0;
  const double cross_limit2 = d_max * d_max * len2;

  // Each region must sit wholly on its own side of the line.
  auto ca = centroids.find(a), cb = centroids.find(b);
  if (ca == centroids.end() || cb == centroids.end()) return;
  const int side_a = sign_of(cross_of(ca->second.x, ca->second.y));
  const int side_b = sign_of(cross_of(cb->second.x, cb->second.y));
  if (side_a == 0 || side_b == 0 || side_a == side_b) return;

  const int margin = static_cast<int>(std::ceil(d_max)) + 2;
  const int x0 = std::max(0, chain_box.x0 - margin);
  const int x1 = std::min(w - 1, chain_box.x1 + margin);
  const int y0 = std::max(0, chain_box.y0 - margin);
  const int y1 = std::min(h - 1, chain_box.y1 + margin);

  std::vector<std::pair<std::int32_t, std::int32_t>> flips;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      int l = out.at(x, y);
      if (!label_in_pair(l)) continue;
      double proj = proj_of(x, y);
      if (proj < proj_lo || proj > proj_hi) continue;
      double cross = cross_of(x, y);
      if (cross * cross > cross_limit2) continue;
      int wanted;
      if (cross == 0.0) {
        // Dead on the line: nearer centroid wins.
        double da = (ca->second.x - x) * (ca->second.x - x) +
                    (ca->second.y - y) * (ca->second.y - y);
        double db = (cb->second.x - x) * (cb->second.x - x) +
                    (cb->second.y - y) * (cb->second.y - y);
        wanted = da < db ? a : (db < da ? b : std::min(a, b));
      } else {
        wanted = sign_of(cross) == side_a ? a : b;
      }
      if (wanted != l) flips.emplace_back(out.index(x, y), wanted);
    }
  }
  if (flips.empty()) return;

  std::int64_t a_to_b = 0, b_to_a = 0;
  for (const auto& [p, wanted] : flips)
    (wanted == b ? a_to_b : b_to_a) += 1;
  if (areas.at(a) - a_to_b + b_to_a <= 0) return;  // would erase a region
  if (areas.at(b) - b_to_a + a_to_b <= 0) return;

  for (const auto& [p, wanted] : flips) out[static_cast<std::size_t>(p)] = wanted;
  areas.at(a) += b_to_a - a_to_b;
  areas.at(b) += a_to_b - b_to_a;
}

// One full straightening sweep over every adjacent pair.
LabelImage straighten_once(const LabelImage& seg) {
  const int w = seg.width(), h = seg.height();
  LabelImage result;
  result.labels = seg.labels;
  Image<std::int32_t>& out = result.labels;
  if (w == 0 || h == 0) return result;

  std::map<int, LabelStats> stats;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int l = out.at(x, y);
      if (l == 0) continue;
      LabelStats& s = stats[l];
      s.area += 1;
      s.sx += x;
      s.sy += y;
    }
  }
  std::map<int, Pt> centroids;
  std::map<int, std::int64_t> areas;
  for (const auto& [l, s] : stats) {
    centroids[l] = s.centroid();
    areas[l] = s.area;
  }

  // Adjacent pairs with the bounding box of their contact zone.
  std::map<std::pair<int, int>, Box> pairs;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int a = out.at(x, y);
      if (a == 0) continue;
      for (const auto& n : kNeighbors8) {
        int nx = x + n[0], ny = y + n[1];
        if (!out.in_bounds(nx, ny)) continue;
        int b = out.at(nx, ny);
        if (b == 0 || b == a) continue;
        Box& box = pairs[{std::min(a, b), std::max(a, b)}];
        box.expand(x, y);
        box.expand(nx, ny);
      }
    }
  }

  for (const auto& [pr, box] : pairs) {
    const auto [a, b] = pr;
    // Band of boundary pixels for this pair, inside the (slightly grown)
    // contact box.
    const int bx0 = std::max(0, box.x0 - 2), bx1 = std::min(w - 1, box.x1 + 2);
    const int by0 = std::max(0, box.y0 - 2), by1 = std::min(h - 1, box.y1 + 2);
    std::vector<std::int32_t> band;
    std::unordered_set<std::int32_t> in_band;
    for (int y = by0; y <= by1; ++y) {
      for (int x = bx0; x <= bx1; ++x) {
        int l = out.at(x, y);
        if (l != a && l != b) continue;
        int other = l == a ? b : a;
        bool touches = false;
        for (const auto& n : kNeighbors8) {
          int nx = x + n[0], ny = y + n[1];
          if (out.in_bounds(nx, ny) && out.at(nx, ny) == other) {
            touches = true;
            break;
          }
        }
        if (!touches) continue;
        band.push_back(out.index(x, y));
        in_band.insert(out.index(x, y));
      }
    }

    // Split the band into 8-connected chains, lowest-index first.
    std::unordered_set<std::int32_t> seen;
    for (std::int32_t start : band) {
      if (seen.count(start)) continue;
      std::vector<std::int32_t> chain;
      std::vector<std::int32_t> stack{start};
      seen.insert(start);
      while (!stack.empty()) {
        std::int32_t p = stack.back();
        stack.pop_back();
        chain.push_back(p);
        int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
        for (const auto& n : kNeighbors8) {
          int nx = x + n[0], ny = y + n[1];
          if (!out.in_bounds(nx, ny)) continue;
          std::int32_t q = out.index(nx, ny);
          if (!in_band.count(q) || seen.count(q)) continue;
          seen.insert(q);
          stack.push_back(q);
        }
      }
      std::sort(chain.begin(), chain.end());
      straighten_chain(out, areas, centroids, chain, a, b);
    }
  }
  return result;
}

}  // namespace

LabelImage straighten_boundaries(const LabelImage& seg) {
  // Straightening one chain moves the anchors and centroids the next chain
  // sees, so a single sweep can leave freshly bent corners behind. Sweep
  // until the image settles; the settled image is a fixpoint, which makes
  // the whole operation idempotent.
  LabelImage current = straighten_once(seg);
  Image<std::int32_t> prev = seg.labels;
  for (int round = 0; round < 32; ++round) {
    LabelImage next = straighten_once(current);
    if (next.labels == current.labels) break;
    if (next.labels == prev) {
      // Flip-flop between two states: settle on the lexicographically
      // smaller one so every entry into the cycle lands on the same image.
      if (prev.data() < current.labels.data()) current.labels = std::move(prev);
      break;
    }
    prev = std::move(current.labels);
    current = std::move(next);
  }
  return current;
}

}  // namespace roomseg

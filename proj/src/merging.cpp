#include "roomseg/merging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <iostream>
#include <set>
#include <stdexcept>
#include <vector>

namespace roomseg {

Params Params::robot() { return Params{}; }

Params Params::sketch() {
  Params p;
  p.d_threshold = 1.0;
  p.mode = MapMode::sketch;
  return p;
}

void Params::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0 && !std::isnan(v); };
  if (!in_unit(ripple_threshold))
    throw std::invalid_argument("ripple_threshold outside [0, 1]");
  if (!in_unit(t_merging)) throw std::invalid_argument("t_merging outside [0, 1]");
  if (!in_unit(margin)) throw std::invalid_argument("m outside [0, 1]");
  if (!in_unit(d_threshold))
    throw std::invalid_argument("d_threshold outside [0, 1]");
}

bool values_similar(int a, int b, double t) {
  // Exact evaluation of |a - b| <= max(a, b) * t: split t into mantissa and
  // exponent and compare integers, so the verdict only depends on the
  // rational values involved (and scaling a, b by any integer k > 0 cannot
  // flip it).
  std::int64_t diff = std::llabs(static_cast<std::int64_t>(a) - b);
  std::int64_t hi = std::max(a, b);
  if (t <= 0.0) return diff == 0;
  int exp = 0;
  double mant_d = std::frexp(t, &exp);
  auto mant = static_cast<std::int64_t>(std::ldexp(mant_d, 53));  // t = mant * 2^(exp-53)
  int shift = exp - 53;
  if (shift >= 0) return true;  // t >= 2^52: rhs >= hi >= diff for int input
  if (shift <= -95) return diff == 0;  // hi * t < 1 <= any nonzero diff
  // Both sides fit __int128 comfortably: diff < 2^32 shifted by < 95, and
  // hi * mant < 2^31 * 2^53.
  __int128 lhs = static_cast<__int128>(diff) << -shift;
  __int128 rhs = static_cast<__int128>(hi) * mant;
  return lhs <= rhs;
}

bool values_similar_with_margin(int a, int b, double t, double m) {
  return values_similar(a, b, t + m);
}

bool door_blocks(int ripple_min, int va, int vb, const Params& p) {
  return !values_similar(ripple_min, va, p.t_merging) ||
         !values_similar(ripple_min, vb, p.t_merging);
}

bool is_door(const RegionGraph& g, int a, int b, const Params& p) {
  const Edge* e = g.find_edge(a, b);
  if (!e || !e->ripple_min) return false;
  return door_blocks(*e->ripple_min, g.value_of(a), g.value_of(b), p);
}

namespace {

// Neighbor a ripple melts into: closest value, then largest area, then
// lowest id — among neighbors whose contact share exceeds the threshold.
int choose_ripple_host(const RegionGraph& g, int id, const Params& p) {
  const int value = g.value_of(id);
  int best = 0;
  std::int64_t best_diff = 0, best_area = 0;
  for (int n : g.neighbors(id)) {
    if (g.contact_fraction(id, n) <= p.ripple_threshold) continue;
    std::int64_t diff = std::llabs(static_cast<std::int64_t>(g.value_of(n)) - value);
    std::int64_t area = g.area_of(n);
    if (best == 0 || diff < best_diff || (diff == best_diff && area > best_area)) {
      best = n;
      best_diff = diff;
      best_area = area;
    }
  }
  return best;
}

}  // namespace

void remove_ripples(RegionGraph& g, const Params& p) {
  // Highest values first so big places absorb their shores before the
  // shores swallow each other.
  std::vector<int> order = g.region_ids();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int va = g.value_of(a), vb = g.value_of(b);
    if (va != vb) return va > vb;
    return a < b;
  });
  std::deque<int> agenda(order.begin(), order.end());
  // Regions examined and found stable. Every live region is either here or
  // in the agenda, so "all neighbors of the merge result not already
  // queued" is exactly the intersection below — walked from the smaller
  // side, since a big survivor drags its whole neighborhood along.
  std::set<int> resting;
  while (!agenda.empty()) {
    int id = agenda.front();
    agenda.pop_front();
    if (!g.contains(id)) continue;
    int host = choose_ripple_host(g, id, p);
    if (host == 0) {
      resting.insert(id);
      continue;
    }
    int survivor = g.merge(host, id, /*record_ripple_min=*/true);
    const std::set<int>& nbrs = g.neighbors(survivor);
    std::vector<int> wake;
    if (resting.size() <= nbrs.size()) {
      for (int n : resting)
        if (nbrs.count(n)) wake.push_back(n);
    } else {
      for (int n : nbrs)
        if (resting.count(n)) wake.push_back(n);
    }
    for (int n : wake) {
      resting.erase(n);
      agenda.push_back(n);
    }
  }
}

namespace {

bool has_neighborhood_support(const RegionGraph& g, int a, int b,
                              const Params& p) {
  // The borderline pair gets merged if a plainly similar region sits right
  // next to either endpoint.
  const int va = g.value_of(a), vb = g.value_of(b);
  for (int n : g.neighbors(b)) {
    if (n != a && values_similar(va, g.value_of(n), p.t_merging)) return true;
  }
  for (int n : g.neighbors(a)) {
    if (n != b && values_similar(vb, g.value_of(n), p.t_merging)) return true;
  }
  return false;
}

// Grows `id` by absorbing similar neighbors until none qualifies. Returns
// whether anything was merged.
bool absorb_similar_neighbors(RegionGraph& g, int id, const Params& p) {
  bool any = false;
  while (true) {
    const int value = g.value_of(id);
    std::vector<int> nbrs(g.neighbors(id).begin(), g.neighbors(id).end());
    std::sort(nbrs.begin(), nbrs.end(), [&](int a, int b) {
      std::int64_t da = std::llabs(static_cast<std::int64_t>(g.value_of(a)) - value);
      std::int64_t db = std::llabs(static_cast<std::int64_t>(g.value_of(b)) - value);
      if (da != db) return da < db;
      return a < b;
    });
    int pick = 0;
    for (int n : nbrs) {
      const Edge* e = g.find_edge(id, n);
      int vn = g.value_of(n);
      if (e->ripple_min && door_blocks(*e->ripple_min, value, vn, p)) continue;
      if (values_similar(value, vn, p.t_merging) ||
          (values_similar_with_margin(value, vn, p.t_merging, p.margin) &&
           has_neighborhood_support(g, id, n, p))) {
        pick = n;
        break;
      }
    }
    if (pick == 0) break;
    g.merge(id, pick, /*record_ripple_min=*/false);
    any = true;
  }
  return any;
}

}  // namespace

void merge_similar(RegionGraph& g, const Params& p) {
  // Largest regions eat first; any merge changes the area order, so start
  // the sweep over until a full sweep is quiet.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> order = g.region_ids();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      std::int64_t aa = g.area_of(a), ab = g.area_of(b);
      if (aa != ab) return aa > ab;
      return a < b;
    });
    for (int id : order) {
      if (!g.contains(id)) continue;
      if (absorb_similar_neighbors(g, id, p)) {
        changed = true;
        break;
      }
    }
  }
}

void remove_wall_artifacts(RegionGraph& g, const Params& p) {
  if (p.d_threshold >= 1.0) return;  // nothing can exceed a full contour
  std::set<int> stuck;
  while (true) {
    // Worst offender first: largest wall-contact share above the threshold.
    int worst = 0;
    double worst_frac = 0.0;
    std::int64_t worst_area = 0;
    for (int id : g.region_ids()) {
      if (stuck.count(id)) continue;
      double frac = g.wall_contact_fraction(id);
      if (frac <= p.d_threshold) continue;
      std::int64_t area = g.area_of(id);
      if (worst == 0 || frac > worst_frac ||
          (frac == worst_frac && area < worst_area)) {
        worst = id;
        worst_frac = frac;
        worst_area = area;
      }
    }
    if (worst == 0) break;

    // Merge into the healthy neighbor with the longest shared contact.
    int host = 0;
    int host_contact = -1;
    std::int64_t host_area = 0;
    for (int n : g.neighbors(worst)) {
      if (g.wall_contact_fraction(n) > p.d_threshold) continue;
      const Edge* e = g.find_edge(worst, n);
      int c = e->contact_length();
      std::int64_t area = g.area_of(n);
      if (c > host_contact || (c == host_contact && area > host_area)) {
        host = n;
        host_contact = c;
        host_area = area;
      }
    }
    if (host == 0) {
      std::cerr << "wall pass: region " << worst
                << " exceeds the contact threshold but has no eligible "
                   "neighbor; leaving it\n";
      stuck.insert(worst);
      continue;
    }
    g.merge(host, worst, /*record_ripple_min=*/false);
    stuck.clear();
  }
}

}  // namespace roomseg

#include "roomseg/region_graph.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace roomseg {

std::pair<int, int> RegionGraph::edge_key(int a, int b) {
  return {std::min(a, b), std::max(a, b)};
}

int RegionGraph::side_of(const Edge& e, int a, int b) const {
  return a < b ? e.contact_low : e.contact_high;
}

bool RegionGraph::has_outside_neighbor(std::int32_t pixel, int id) const {
  const int w = labels_.width();
  int x = static_cast<int>(pixel % w), y = static_cast<int>(pixel / w);
  for (const auto& n : kNeighbors8) {
    int nx = x + n[0], ny = y + n[1];
    if (!labels_.in_bounds(nx, ny)) return true;
    if (labels_.at(nx, ny) != id) return true;
  }
  return false;
}

void RegionGraph::tidy(int id) const {
  auto rit = retired_contour_.find(id);
  const bool has_retired = rit != retired_contour_.end() && !rit->second.empty();
  if (!has_retired && unsorted_.count(id) == 0) return;
  Region& r = regions_.at(id);
  std::sort(r.pixels.begin(), r.pixels.end());
  std::sort(r.contour.begin(), r.contour.end());
  if (has_retired) {
    std::vector<std::int32_t>& retired = rit->second;
    std::sort(retired.begin(), retired.end());
    std::vector<std::int32_t> live;
    live.reserve(r.contour.size() - retired.size());
    std::set_difference(r.contour.begin(), r.contour.end(), retired.begin(),
                        retired.end(), std::back_inserter(live));
    r.contour = std::move(live);
  }
  if (rit != retired_contour_.end()) retired_contour_.erase(rit);
  unsorted_.erase(id);
}

RegionGraph RegionGraph::from_partition(Image<std::int32_t> labels,
                                        const std::map<int, int>& region_values) {
  RegionGraph g;
  g.labels_ = std::move(labels);
  const int w = g.labels_.width(), h = g.labels_.height();

  auto it = g.regions_.end();
  for (std::int32_t i = 0; i < g.labels_.pixel_count(); ++i) {
    int id = g.labels_[static_cast<std::size_t>(i)];
    if (id == 0) continue;
    if (it == g.regions_.end() || it->first != id) it = g.regions_.find(id);
    if (it == g.regions_.end()) {
      Region r;
      r.id = id;
      auto vit = region_values.find(id);
      if (vit == region_values.end())
        throw std::invalid_argument("no value given for region " +
                                    std::to_string(id));
      r.value = vit->second;
      it = g.regions_.emplace(id, std::move(r)).first;
      g.neighbors_[id];
    }
    it->second.pixels.push_back(i);
  }

  // Contours and one-sided contact lengths in one contour sweep.
  for (auto& [id, region] : g.regions_) {
    for (std::int32_t p : region.pixels) {
      if (g.has_outside_neighbor(p, id)) region.contour.push_back(p);
    }
    g.live_contour_[id] = static_cast<std::int64_t>(region.contour.size());
    for (std::int32_t p : region.contour) {
      int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
      int seen[8];
      int n_seen = 0;
      for (const auto& n : kNeighbors8) {
        int nx = x + n[0], ny = y + n[1];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        int other = g.labels_.at(nx, ny);
        if (other == 0 || other == id) continue;
        bool counted = false;
        for (int k = 0; k < n_seen; ++k) counted |= seen[k] == other;
        if (counted) continue;
        seen[n_seen++] = other;
        Edge& e = g.edges_[edge_key(id, other)];
        (id < other ? e.contact_low : e.contact_high) += 1;
        g.neighbors_[id].insert(other);
        g.neighbors_[other].insert(id);
      }
    }
  }
  return g;
}

const Region& RegionGraph::region(int id) const {
  auto it = regions_.find(id);
  if (it == regions_.end())
    throw std::invalid_argument("unknown region " + std::to_string(id));
  tidy(id);
  return it->second;
}

int RegionGraph::value_of(int id) const {
  auto it = regions_.find(id);
  if (it == regions_.end())
    throw std::invalid_argument("unknown region " + std::to_string(id));
  return it->second.value;
}

std::int64_t RegionGraph::area_of(int id) const {
  auto it = regions_.find(id);
  if (it == regions_.end())
    throw std::invalid_argument("unknown region " + std::to_string(id));
  return static_cast<std::int64_t>(it->second.pixels.size());
}

std::vector<int> RegionGraph::region_ids() const {
  std::vector<int> ids;
  ids.reserve(regions_.size());
  for (const auto& [id, r] : regions_) ids.push_back(id);
  return ids;
}

const std::set<int>& RegionGraph::neighbors(int id) const {
  auto it = neighbors_.find(id);
  if (it == neighbors_.end())
    throw std::invalid_argument("unknown region " + std::to_string(id));
  return it->second;
}

const Edge* RegionGraph::find_edge(int a, int b) const {
  auto it = edges_.find(edge_key(a, b));
  return it == edges_.end() ? nullptr : &it->second;
}

int RegionGraph::contact(int from, int to) const {
  const Edge* e = find_edge(from, to);
  return e ? side_of(*e, from, to) : 0;
}

double RegionGraph::contact_fraction(int from, int to) const {
  auto it = live_contour_.find(from);
  if (it == live_contour_.end())
    throw std::invalid_argument("unknown region " + std::to_string(from));
  if (it->second == 0) return 0.0;
  return static_cast<double>(contact(from, to)) /
         static_cast<double>(it->second);
}

double RegionGraph::wall_contact_fraction(int id) const {
  auto rit = regions_.find(id);
  if (rit == regions_.end())
    throw std::invalid_argument("unknown region " + std::to_string(id));
  const std::int64_t live = live_contour_.at(id);
  if (live == 0) return 0.0;
  const int w = labels_.width();
  std::int64_t touching = 0;
  // The raw vector may still hold retired (now interior) pixels; they have
  // no foreign neighbor and add nothing, so the count stays exact.
  for (std::int32_t p : rit->second.contour) {
    int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
    for (const auto& n : kNeighbors8) {
      int nx = x + n[0], ny = y + n[1];
      if (!labels_.in_bounds(nx, ny)) continue;
      int other = labels_.at(nx, ny);
      if (other != 0 && other != id) {
        ++touching;
        break;
      }
    }
  }
  return static_cast<double>(touching) / static_cast<double>(live);
}

int RegionGraph::merge(int survivor, int absorbed, bool record_ripple_min) {
  if (survivor == absorbed)
    throw std::invalid_argument("cannot merge a region with itself");
  if (!contains(survivor) || !contains(absorbed))
    throw std::invalid_argument("merge of unknown region");
  if (!find_edge(survivor, absorbed))
    throw std::invalid_argument("merge of non-adjacent regions " +
                                std::to_string(survivor) + "," +
                                std::to_string(absorbed));

  tidy(absorbed);  // the seam walk below needs a clean absorbed contour
  Region& surv = regions_.at(survivor);
  Region& gone = regions_.at(absorbed);
  const int absorbed_value = gone.value;
  const std::set<int> gone_nbrs = neighbors_.at(absorbed);  // copy; includes survivor

  // Seam analysis, before relabeling while the halves are distinguishable:
  // the survivor pixels touching the absorbed side (the only survivor
  // contour pixels whose status can change), and per neighbor the pixels
  // touching the absorbed side, to correct double-counted contact.
  const int w = labels_.width();
  std::vector<std::int32_t> seam_surv;
  std::map<int, std::vector<std::int32_t>> seam_other;
  for (std::int32_t p : gone.contour) {
    int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
    for (const auto& n : kNeighbors8) {
      int nx = x + n[0], ny = y + n[1];
      if (!labels_.in_bounds(nx, ny)) continue;
      int other = labels_.at(nx, ny);
      if (other == 0 || other == absorbed) continue;
      std::int32_t q = static_cast<std::int32_t>(ny) * w + nx;
      if (other == survivor) seam_surv.push_back(q);
      else seam_other[other].push_back(q);
    }
  }
  auto dedupe = [](std::vector<std::int32_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(seam_surv);

  // Contact toward the union is |toward survivor| + |toward absorbed|
  // - |toward both|; count each neighbor's overlap term.
  std::map<int, int> overlap;
  for (auto& [other, px] : seam_other) {
    dedupe(px);
    int both = 0;
    for (std::int32_t q : px) {
      int x = static_cast<int>(q % w), y = static_cast<int>(q / w);
      for (const auto& n : kNeighbors8) {
        int nx = x + n[0], ny = y + n[1];
        if (labels_.in_bounds(nx, ny) && labels_.at(nx, ny) == survivor) {
          ++both;
          break;
        }
      }
    }
    overlap[other] = both;
  }

  for (std::int32_t p : gone.pixels) labels_[static_cast<std::size_t>(p)] = survivor;

  // Former contour pixels facing only the other half stop being contour;
  // only seam pixels can be affected, on either side.
  std::vector<std::int32_t> retired;
  for (std::int32_t p : gone.contour)
    if (!has_outside_neighbor(p, survivor)) retired.push_back(p);
  for (std::int32_t q : seam_surv)
    if (!has_outside_neighbor(q, survivor)) retired.push_back(q);

  live_contour_.at(survivor) +=
      live_contour_.at(absorbed) - static_cast<std::int64_t>(retired.size());
  live_contour_.erase(absorbed);
  auto& surv_retired = retired_contour_[survivor];
  surv_retired.insert(surv_retired.end(), retired.begin(), retired.end());

  // Concatenate small onto large and leave the sorting to tidy(); with the
  // retired list above this keeps a merge at O(absorbed + seam).
  if (surv.pixels.size() < gone.pixels.size()) surv.pixels.swap(gone.pixels);
  surv.pixels.insert(surv.pixels.end(), gone.pixels.begin(), gone.pixels.end());
  if (surv.contour.size() < gone.contour.size()) surv.contour.swap(gone.contour);
  surv.contour.insert(surv.contour.end(), gone.contour.begin(),
                      gone.contour.end());
  unsorted_.insert(survivor);

  // Rewire the absorbed region's edges onto the survivor.
  for (int other : gone_nbrs) {
    if (other == survivor) continue;
    const Edge old = edges_.at(edge_key(absorbed, other));
    const int gone_to_other = side_of(old, absorbed, other);
    const int other_to_gone = side_of(old, other, absorbed);
    edges_.erase(edge_key(absorbed, other));
    neighbors_.at(other).erase(absorbed);

    auto it = edges_.find(edge_key(survivor, other));
    if (it != edges_.end()) {
      // Shared neighbor: the two sides' contour pixels are disjoint, so the
      // survivor-side contacts add; on the neighbor's side, pixels that
      // touched both halves must not be counted twice.
      Edge& e = it->second;
      int surv_to_other = side_of(e, survivor, other) + gone_to_other;
      int other_to_surv =
          side_of(e, other, survivor) + other_to_gone - overlap.at(other);
      (survivor < other ? e.contact_low : e.contact_high) = surv_to_other;
      (other < survivor ? e.contact_low : e.contact_high) = other_to_surv;
      if (old.ripple_min)
        e.ripple_min = e.ripple_min ? std::min(*e.ripple_min, *old.ripple_min)
                                    : *old.ripple_min;
    } else {
      Edge e;
      (survivor < other ? e.contact_low : e.contact_high) = gone_to_other;
      (other < survivor ? e.contact_low : e.contact_high) = other_to_gone;
      e.ripple_min = old.ripple_min;
      edges_.emplace(edge_key(survivor, other), e);
      neighbors_.at(survivor).insert(other);
      neighbors_.at(other).insert(survivor);
    }
  }

  edges_.erase(edge_key(survivor, absorbed));
  neighbors_.at(survivor).erase(absorbed);
  neighbors_.erase(absorbed);
  regions_.erase(absorbed);

  if (record_ripple_min) {
    // The absorbed region sat between each pair of its former neighbors;
    // remember how narrow it was on every such edge that (still) exists.
    std::vector<int> former(gone_nbrs.begin(), gone_nbrs.end());
    for (std::size_t i = 0; i < former.size(); ++i) {
      for (std::size_t j = i + 1; j < former.size(); ++j) {
        auto it = edges_.find(edge_key(former[i], former[j]));
        if (it == edges_.end()) continue;
        Edge& e = it->second;
        e.ripple_min = e.ripple_min ? std::min(*e.ripple_min, absorbed_value)
                                    : absorbed_value;
      }
    }
  }
  return survivor;
}

LabelImage RegionGraph::to_label_image() const {
  LabelImage out;
  out.labels = Image<std::int32_t>(labels_.width(), labels_.height(), 0);
  std::map<int, std::int32_t> dense;
  std::int32_t next = 0;
  for (std::int64_t i = 0; i < labels_.pixel_count(); ++i) {
    int id = labels_[static_cast<std::size_t>(i)];
    if (id == 0) continue;
    auto [it, inserted] = dense.emplace(id, next + 1);
    if (inserted) ++next;
    out.labels[static_cast<std::size_t>(i)] = it->second;
  }
  return out;
}

std::string RegionGraph::adjacency_listing() const {
  std::ostringstream os;
  for (const auto& [id, r] : regions_) {
    os << "region " << id << " value=" << r.value << " area=" << r.area()
       << " contour=" << live_contour_.at(id) << " nbrs:";
    for (int n : neighbors_.at(id)) {
      const Edge* e = find_edge(id, n);
      os << " " << n << "(contact=" << side_of(*e, id, n);
      if (e->ripple_min) os << " ripple_min=" << *e->ripple_min;
      os << ")";
    }
    os << "\n";
  }
  return os.str();
}

void RegionGraph::check_consistency() const {
  std::map<int, int> values;
  for (const auto& [id, r] : regions_) {
    tidy(id);
    values[id] = r.value;
  }
  RegionGraph fresh = from_partition(labels_, values);

  auto fail = [](const std::string& what) {
    throw std::logic_error("region graph inconsistent: " + what);
  };
  if (fresh.regions_.size() != regions_.size()) fail("region count");
  for (const auto& [id, r] : regions_) {
    const Region& f = fresh.regions_.at(id);
    if (f.pixels != r.pixels) fail("pixels of region " + std::to_string(id));
    if (f.contour != r.contour) fail("contour of region " + std::to_string(id));
    if (live_contour_.at(id) != static_cast<std::int64_t>(r.contour.size()))
      fail("contour length of region " + std::to_string(id));
  }
  if (fresh.neighbors_ != neighbors_) fail("adjacency");
  if (fresh.edges_.size() != edges_.size()) fail("edge count");
  for (const auto& [key, e] : edges_) {
    const Edge& f = fresh.edges_.at(key);
    if (f.contact_low != e.contact_low || f.contact_high != e.contact_high)
      fail("contact lengths of edge " + std::to_string(key.first) + "," +
           std::to_string(key.second));
  }
}

}  // namespace roomseg

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "roomseg/image.hpp"

namespace roomseg {

struct Region {
  int id = 0;
  int value = 0;  // representative free-space value; survivors keep theirs
  std::vector<std::int32_t> pixels;   // ascending linear indices
  std::vector<std::int32_t> contour;  // ascending subset: pixels with an
                                      // 8-neighbor outside the region
  std::int64_t area() const { return static_cast<std::int64_t>(pixels.size()); }
};

struct Edge {
  // One-sided contact lengths: contour pixels of the lower-id endpoint that
  // touch the higher-id endpoint, and vice versa.
  int contact_low = 0;
  int contact_high = 0;
  // Smallest value of any region absorbed from between the endpoints; the
  // fingerprint a narrow passage leaves behind when it is merged away.
  std::optional<int> ripple_min;

  int contact_length() const { return contact_low + contact_high; }
};

// Region-adjacency structure the merge passes operate on. Regions keep
// their ids across merges; queries are deterministic (ordered containers
// throughout). Single-writer: never mutate while holding references into it.
class RegionGraph {
 public:
  RegionGraph() = default;

  // Builds the graph for an arbitrary labeling: one region per distinct
  // nonzero label, carrying the given representative values. Labels of a
  // region are expected to form one 8-connected component.
  static RegionGraph from_partition(Image<std::int32_t> labels,
                                    const std::map<int, int>& region_values);

  int width() const { return labels_.width(); }
  int height() const { return labels_.height(); }
  const Image<std::int32_t>& labels() const { return labels_; }

  std::size_t region_count() const { return regions_.size(); }
  bool contains(int id) const { return regions_.count(id) != 0; }
  const Region& region(int id) const;            // throws std::invalid_argument
  std::vector<int> region_ids() const;           // ascending
  const std::set<int>& neighbors(int id) const;  // throws std::invalid_argument

  // Cheap scalar lookups that skip the deferred vector maintenance done by
  // region(); the merge passes use these in their inner loops.
  int value_of(int id) const;
  std::int64_t area_of(int id) const;

  // Null when the regions are not adjacent (or either id is unknown).
  const Edge* find_edge(int a, int b) const;

  // Contour pixels of `from` touching `to`; 0 when not adjacent.
  int contact(int from, int to) const;
  // contact(from, to) / |contour(from)|.
  double contact_fraction(int from, int to) const;
  // Fraction of the contour touching any other region (as opposed to
  // obstacles or the image border).
  double wall_contact_fraction(int id) const;

  // Absorbs `absorbed` into `survivor` (adjacent, distinct): relabels
  // pixels, rewires edges, and updates contact lengths incrementally.
  // When `record_ripple_min` is set, the absorbed region's value is
  // recorded as ripple_min on every surviving edge between its former
  // neighbors. Returns the survivor id.
  int merge(int survivor, int absorbed, bool record_ripple_min);

  // Dense relabeling 1..K in row-major first-appearance order.
  LabelImage to_label_image() const;

  // Human-readable adjacency dump, one line per region.
  std::string adjacency_listing() const;

  // Rebuilds the graph from its own label image and verifies the
  // incrementally maintained state matches; throws std::logic_error on any
  // mismatch. Test hook.
  void check_consistency() const;

 private:
  static std::pair<int, int> edge_key(int a, int b);
  int side_of(const Edge& e, int a, int b) const;  // contact of a toward b
  bool has_outside_neighbor(std::int32_t pixel, int id) const;

  // merge() appends to the survivor's vectors and defers the cleanup so a
  // merge costs O(absorbed + seam), not O(survivor). tidy() settles a
  // region back to the documented shape: sorted pixels, sorted contour with
  // the retired pixels removed. Every accessor that exposes the vectors
  // tidies first; live_contour_ carries the exact contour size in between.
  void tidy(int id) const;

  Image<std::int32_t> labels_;
  mutable std::map<int, Region> regions_;
  std::map<std::pair<int, int>, Edge> edges_;
  std::map<int, std::set<int>> neighbors_;
  std::map<int, std::int64_t> live_contour_;
  mutable std::map<int, std::vector<std::int32_t>> retired_contour_;
  mutable std::set<int> unsorted_;
};

}  // namespace roomseg

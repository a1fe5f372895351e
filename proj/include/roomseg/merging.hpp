#pragma once

#include "roomseg/region_graph.hpp"

namespace roomseg {

enum class MapMode { robot, sketch };

// Tunables of the merge passes. All thresholds live in [0, 1].
struct Params {
  double ripple_threshold = 0.40;  // contact fraction above which a region
                                   // is a ripple of a neighbor
  double t_merging = 0.30;         // relative value-similarity threshold
  double margin = 0.10;            // extra slack for the assisted merge test
  double d_threshold = 0.40;       // wall-artifact contact fraction; 1.0
                                   // disables the pass
  MapMode mode = MapMode::robot;   // sketch skips boundary straightening

  static Params robot();
  static Params sketch();

  // Throws std::invalid_argument when any threshold leaves [0, 1].
  void validate() const;
};

// Relative similarity test: |a - b| <= max(a, b) * t, evaluated exactly
// (t is decomposed into integer mantissa and power-of-two exponent), so
// the decision is invariant under integer scaling of both values.
bool values_similar(int a, int b, double t);

// Same test with slack: |a - b| <= max(a, b) * (t + m).
bool values_similar_with_margin(int a, int b, double t, double m);

// A narrow passage was merged away between values va and vb: its recorded
// minimum fails the plain similarity test against at least one side.
bool door_blocks(int ripple_min, int va, int vb, const Params& p);

// Edge-level door test, re-evaluated against the current endpoint values;
// false when the regions are not adjacent or no ripple was recorded.
bool is_door(const RegionGraph& g, int a, int b, const Params& p);

// Absorbs regions whose contour contact with a single neighbor exceeds
// ripple_threshold into the neighbor of closest value, largest area, then
// lowest id. Regions are visited by decreasing value; neighbors of every
// merge result are re-examined.
void remove_ripples(RegionGraph& g, const Params& p);

// Merges adjacent regions of similar value, largest regions first,
// closest-valued neighbor first. A merge within the margin additionally
// needs a plainly similar region adjacent to either endpoint. Edges whose
// recorded ripple minimum flags a door are never merged.
void merge_similar(RegionGraph& g, const Params& p);

// Absorbs regions whose contour lies mostly (> d_threshold) against other
// regions — thick-wall slivers — into the neighbor sharing the longest
// contact, preferring neighbors that are not slivers themselves.
void remove_wall_artifacts(RegionGraph& g, const Params& p);

}  // namespace roomseg

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "roomseg/evaluation.hpp"
#include "roomseg/image.hpp"
#include "roomseg/merging.hpp"

namespace roomseg {

// Intermediate products of one segmentation run, captured on request for
// diagnostics.
struct StageTrace {
  DistanceImage distance;
  FreeSpaceImage fsi;
  LabelImage initial_regions;
  LabelImage after_ripple_pass;
  LabelImage after_value_merge;
  LabelImage after_wall_pass;
  std::string graph_initial;
  std::string graph_final;
};

// Full segmentation: distance transform, free-space scoring, equal-value
// grouping, the three merge passes, and (in robot mode) boundary
// straightening. Deterministic for identical inputs.
LabelImage segment(const GridMap& map, const Params& params,
                   StageTrace* trace = nullptr);

// Blocks of factor x factor cells collapse to one cell that is free only
// when every covered cell is free. factor 1 copies.
GridMap downscale(const GridMap& map, int factor);

// Expands labels computed on a downscaled map back onto the original grid;
// occupied cells stay 0.
LabelImage upscale_labels(const LabelImage& small, const GridMap& original,
                          int factor);

// segment() on a downscaled map, labels expanded back to full resolution.
LabelImage segment_downscaled(const GridMap& map, const Params& params,
                              int factor, StageTrace* trace = nullptr);

struct DatasetEntry {
  std::string name;
  GridMap map;
  LabelImage ground_truth;
};

struct SweepPoint {
  double value = 0.0;
  double median_mcc = 0.0;
  double mean_mcc = 0.0;
};

// Re-segments the dataset for every value of one parameter
// ("ripple-threshold", "t-merging", "m" or "d-threshold") and reports the
// MCC distribution per value. Throws std::invalid_argument for an unknown
// parameter name or an empty dataset.
std::vector<SweepPoint> sweep(const std::vector<DatasetEntry>& dataset,
                              std::string_view parameter,
                              const std::vector<double>& values,
                              const Params& base);

}  // namespace roomseg

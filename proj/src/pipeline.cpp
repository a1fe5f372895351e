#include "roomseg/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "roomseg/free_space.hpp"
#include "roomseg/refine.hpp"

namespace roomseg {

LabelImage segment(const GridMap& map, const Params& params, StageTrace* trace) {
  params.validate();

  DistanceImage distance = distance_transform(map);
  FreeSpaceImage fsi = compute_fsi(distance);
  RegionGraph graph = group_regions(fsi);
  if (trace) {
    trace->distance = distance;
    trace->fsi = fsi;
    trace->initial_regions = graph.to_label_image();
    trace->graph_initial = graph.adjacency_listing();
  }

  remove_ripples(graph, params);
  if (trace) trace->after_ripple_pass = graph.to_label_image();

  merge_similar(graph, params);
  if (trace) trace->after_value_merge = graph.to_label_image();

  remove_wall_artifacts(graph, params);
  if (trace) {
    trace->after_wall_pass = graph.to_label_image();
    trace->graph_final = graph.adjacency_listing();
  }

  LabelImage labels = graph.to_label_image();
  if (params.mode == MapMode::robot) labels = straighten_boundaries(labels);
  return labels;
}

GridMap downscale(const GridMap& map, int factor) {
  if (factor < 1) throw std::invalid_argument("downscale factor must be >= 1");
  if (factor == 1) return map;
  const int sw = (map.width() + factor - 1) / factor;
  const int sh = (map.height() + factor - 1) / factor;
  GridMap small(sw, sh, Cell::occupied);
  for (int sy = 0; sy < sh; ++sy) {
    for (int sx = 0; sx < sw; ++sx) {
      bool free = true;
      for (int dy = 0; dy < factor && free; ++dy) {
        for (int dx = 0; dx < factor && free; ++dx) {
          int x = sx * factor + dx, y = sy * factor + dy;
          // Blocks sticking out past the edge stay occupied.
          if (x >= map.width() || y >= map.height() || !map.is_free(x, y))
            free = false;
        }
      }
      if (free) small.cells.at(sx, sy) = Cell::free;
    }
  }
  return small;
}

LabelImage upscale_labels(const LabelImage& small, const GridMap& original,
                          int factor) {
  if (factor < 1) throw std::invalid_argument("upscale factor must be >= 1");
  LabelImage out;
  out.labels = Image<std::int32_t>(original.width(), original.height(), 0);
  for (int y = 0; y < original.height(); ++y) {
    for (int x = 0; x < original.width(); ++x) {
      if (!original.is_free(x, y)) continue;
      int sx = x / factor, sy = y / factor;
      if (sx < small.width() && sy < small.height())
        out.labels.at(x, y) = small.labels.at(sx, sy);
    }
  }
  return out;
}

LabelImage segment_downscaled(const GridMap& map, const Params& params,
                              int factor, StageTrace* trace) {
  if (factor == 1) return segment(map, params, trace);
  GridMap small = downscale(map, factor);
  LabelImage labels = segment(small, params, trace);
  return upscale_labels(labels, map, factor);
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<SweepPoint> sweep(const std::vector<DatasetEntry>& dataset,
                              std::string_view parameter,
                              const std::vector<double>& values,
                              const Params& base) {
  if (dataset.empty()) throw std::invalid_argument("sweep over an empty dataset");
  double Params::*field = nullptr;
  if (parameter == "ripple-threshold") {
    field = &Params::ripple_threshold;
  } else if (parameter == "t-merging") {
    field = &Params::t_merging;
  } else if (parameter == "m") {
    field = &Params::margin;
  } else if (parameter == "d-threshold") {
    field = &Params::d_threshold;
  } else {
    throw std::invalid_argument("unknown sweep parameter: " + std::string(parameter));
  }

  std::vector<SweepPoint> points;
  points.reserve(values.size());
  for (double value : values) {
    Params p = base;
    p.*field = value;
    p.validate();
    std::vector<double> mccs;
    mccs.reserve(dataset.size());
    for (const DatasetEntry& entry : dataset) {
      LabelImage seg = segment(entry.map, p);
      mccs.push_back(evaluate(seg, entry.ground_truth).mcc);
    }
    SweepPoint pt;
    pt.value = value;
    pt.median_mcc = median_of(mccs);
    double sum = 0.0;
    for (double m : mccs) sum += m;
    pt.mean_mcc = sum / static_cast<double>(mccs.size());
    points.push_back(pt);
  }
  return points;
}

}  // namespace roomseg

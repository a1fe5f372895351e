#pragma once

#include <cstdint>

#include "roomseg/image.hpp"
#include "roomseg/region_graph.hpp"

namespace roomseg {

// Exact Euclidean distance transform with the image border counted as an
// obstacle ring one pixel outside the map.
DistanceImage distance_transform(const GridMap& map);

// Nearest integer to sqrt(squared); halves round up (they cannot occur for
// exact squared distances, so the result is unambiguous).
int rounded_radius(std::int32_t squared);

// For every free pixel, paints the disk of its rounded distance with that
// radius value, keeping the pointwise maximum. Occupied pixels stay 0 and
// are never painted. The result scores every pixel by the largest such
// disk covering it.
FreeSpaceImage compute_fsi(const DistanceImage& distance);

// Groups 8-connected runs of equal nonzero value into regions and builds
// their adjacency graph. Region ids are 1..K in row-major discovery order;
// each region's value is the shared pixel value.
RegionGraph group_regions(const FreeSpaceImage& fsi);

}  // namespace roomseg

#pragma once

#include "roomseg/image.hpp"

namespace roomseg {

// Replaces wavy boundaries between adjacent regions with straight lines.
// For every contact chain between two regions, the endpoints are anchored
// where the boundary meets obstacles or third regions, and pixels within
// the chain's amplitude envelope are reassigned to the side of the
// endpoint line they fall on (ties go to the region with the nearer
// centroid). Chains without two distinct anchors — closed loops,
// degenerate contacts — are left alone, as is any flip that would
// extinguish a region. Labels are preserved; only pixel ownership moves.
// Sweeps repeat until the image settles, so the operation is idempotent.
LabelImage straighten_boundaries(const LabelImage& seg);

}  // namespace roomseg

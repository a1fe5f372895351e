#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "roomseg/image.hpp"

namespace roomseg {

struct ConfusionCounts {
  std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// One matched pair (or an unmatched region on either side: seg_id 0 means a
// ground-truth region no segment claimed, gt_id 0 an unmatched segment).
struct RegionMatch {
  int seg_id = 0;
  int gt_id = 0;
  ConfusionCounts counts;
};

struct PrecisionRecall {
  double precision = 0.0;        // averaged over segmented regions
  double recall = 0.0;           // averaged over ground-truth regions
  double recall_seg_averaged = 0.0;  // averaged over segmented regions
};

struct EvalReport {
  double mcc = 0.0;        // from counts pooled over all pairs
  double mcc_macro = 0.0;  // mean of per-pair coefficients
  double precision = 0.0;
  double recall = 0.0;
  double recall_seg_averaged = 0.0;
  ConfusionCounts totals;
  std::vector<RegionMatch> per_region;
  int seg_regions = 0;
  int gt_regions = 0;
};

// Maps every segmented region to the ground-truth region it overlaps most
// (0 when it overlaps none); ties go to the lower ground-truth id. Counts
// are restricted to pixels labeled in the ground truth.
std::map<int, int> match_regions(const LabelImage& seg, const LabelImage& gt);

// Pools confusion counts over all matched pairs. The pixel universe is the
// union of labeled pixels of both images, so unlabeled walls never count;
// unmatched segments contribute their full area as false positives,
// unclaimed ground-truth regions their full area as false negatives.
ConfusionCounts confusion(const LabelImage& seg, const LabelImage& gt);

// Matthews correlation coefficient; 0 when any marginal is empty.
double mcc(const ConfusionCounts& c);

// Overlap-share precision/recall. Precision: each segment's best overlap
// share of its own area, averaged over segments. Recall is reported both
// averaged over ground-truth regions (each ground-truth region's best
// coverage) and averaged over segments (coverage of the matched
// ground-truth region). Throws std::invalid_argument when the ground truth
// has no regions.
PrecisionRecall precision_recall(const LabelImage& seg, const LabelImage& gt);

// Full report: matching, per-pair counts, pooled + macro MCC, precision
// and both recall conventions.
EvalReport evaluate(const LabelImage& seg, const LabelImage& gt);

}  // namespace roomseg

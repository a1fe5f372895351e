#include "roomseg/evaluation.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>

namespace roomseg {

namespace {

struct OverlapTable {
  std::int64_t universe = 0;  // pixels labeled in either image
  std::map<int, std::int64_t> seg_size;
  std::map<int, std::int64_t> gt_size;
  std::map<std::pair<int, int>, std::int64_t> overlap;  // (seg, gt) -> pixels
};

OverlapTable build_overlap(const LabelImage& seg, const LabelImage& gt) {
  if (seg.width() != gt.width() || seg.height() != gt.height())
    throw std::invalid_argument("segmentation and ground truth sizes differ");
  OverlapTable t;
  for (std::int64_t i = 0; i < seg.labels.pixel_count(); ++i) {
    int s = seg.labels[static_cast<std::size_t>(i)];
    int g = gt.labels[static_cast<std::size_t>(i)];
    if (s == 0 && g == 0) continue;
    ++t.universe;
    if (s != 0) ++t.seg_size[s];
    if (g != 0) ++t.gt_size[g];
    if (s != 0 && g != 0) ++t.overlap[{s, g}];
  }
  return t;
}

// Best ground-truth region per segment (most shared pixels, lower id on
// ties); 0 for segments overlapping no region.
std::map<int, int> match_from(const OverlapTable& t) {
  std::map<int, int> match;
  for (const auto& [sid, size] : t.seg_size) match[sid] = 0;
  std::map<int, std::int64_t> best;
  for (const auto& [key, count] : t.overlap) {
    const auto [sid, gid] = key;
    auto it = best.find(sid);
    if (it == best.end() || count > it->second) {
      best[sid] = count;
      match[sid] = gid;
    }
  }
  return match;
}

std::vector<RegionMatch> matches_with_counts(const OverlapTable& t) {
  std::map<int, int> match = match_from(t);
  std::vector<RegionMatch> rows;
  std::map<int, bool> gt_claimed;
  for (const auto& [gid, size] : t.gt_size) gt_claimed[gid] = false;

  for (const auto& [sid, gid] : match) {
    RegionMatch row;
    row.seg_id = sid;
    row.gt_id = gid;
    const std::int64_t s = t.seg_size.at(sid);
    if (gid == 0) {
      row.counts.fp = s;
      row.counts.tn = t.universe - s;
    } else {
      gt_claimed[gid] = true;
      const std::int64_t g = t.gt_size.at(gid);
      auto it = t.overlap.find({sid, gid});
      const std::int64_t ov = it == t.overlap.end() ? 0 : it->second;
      row.counts.tp = ov;
      row.counts.fp = s - ov;
      row.counts.fn = g - ov;
      row.counts.tn = t.universe - s - g + ov;
    }
    rows.push_back(row);
  }
  // Ground-truth regions nothing claimed still count: all their pixels are
  // misses.
  for (const auto& [gid, claimed] : gt_claimed) {
    if (claimed) continue;
    RegionMatch row;
    row.seg_id = 0;
    row.gt_id = gid;
    row.counts.fn = t.gt_size.at(gid);
    row.counts.tn = t.universe - row.counts.fn;
    rows.push_back(row);
  }
  return rows;
}

PrecisionRecall precision_recall_from(const OverlapTable& t) {
  if (t.gt_size.empty())
    throw std::invalid_argument("ground truth contains no regions");
  PrecisionRecall pr;

  std::map<int, std::int64_t> seg_best, gt_best;
  for (const auto& [key, count] : t.overlap) {
    const auto [sid, gid] = key;
    auto s = seg_best.find(sid);
    if (s == seg_best.end() || count > s->second) seg_best[sid] = count;
    auto g = gt_best.find(gid);
    if (g == gt_best.end() || count > g->second) gt_best[gid] = count;
  }

  if (!t.seg_size.empty()) {
    double sum_p = 0.0, sum_r = 0.0;
    for (const auto& [sid, size] : t.seg_size) {
      auto it = seg_best.find(sid);
      const std::int64_t ov = it == seg_best.end() ? 0 : it->second;
      sum_p += static_cast<double>(ov) / static_cast<double>(size);
    }
    std::map<int, int> match = match_from(t);
    for (const auto& [sid, gid] : match) {
      if (gid == 0) continue;
      auto it = t.overlap.find({sid, gid});
      sum_r += static_cast<double>(it->second) /
               static_cast<double>(t.gt_size.at(gid));
    }
    pr.precision = sum_p / static_cast<double>(t.seg_size.size());
    pr.recall_seg_averaged = sum_r / static_cast<double>(t.seg_size.size());
  }

  double sum_r = 0.0;
  for (const auto& [gid, size] : t.gt_size) {
    auto it = gt_best.find(gid);
    const std::int64_t ov = it == gt_best.end() ? 0 : it->second;
    sum_r += static_cast<double>(ov) / static_cast<double>(size);
  }
  pr.recall = sum_r / static_cast<double>(t.gt_size.size());
  return pr;
}

}  // namespace

std::map<int, int> match_regions(const LabelImage& seg, const LabelImage& gt) {
  return match_from(build_overlap(seg, gt));
}

ConfusionCounts confusion(const LabelImage& seg, const LabelImage& gt) {
  ConfusionCounts total;
  for (const RegionMatch& row : matches_with_counts(build_overlap(seg, gt))) {
    total.tp += row.counts.tp;
    total.fp += row.counts.fp;
    total.fn += row.counts.fn;
    total.tn += row.counts.tn;
  }
  return total;
}

double mcc(const ConfusionCounts& c) {
  const double ppos = static_cast<double>(c.tp + c.fp);
  const double pneg = static_cast<double>(c.fn + c.tn);
  const double apos = static_cast<double>(c.tp + c.fn);
  const double aneg = static_cast<double>(c.fp + c.tn);
  if (ppos == 0.0 || pneg == 0.0 || apos == 0.0 || aneg == 0.0) return 0.0;
  // The numerator products can exceed 2^53; keep them in integers.
  const __int128 num =
      static_cast<__int128>(c.tp) * c.tn - static_cast<__int128>(c.fp) * c.fn;
  const double denom = std::sqrt(ppos) * std::sqrt(pneg) * std::sqrt(apos) *
                       std::sqrt(aneg);
  return static_cast<double>(num) / denom;
}

PrecisionRecall precision_recall(const LabelImage& seg, const LabelImage& gt) {
  return precision_recall_from(build_overlap(seg, gt));
}

EvalReport evaluate(const LabelImage& seg, const LabelImage& gt) {
  const OverlapTable t = build_overlap(seg, gt);
  EvalReport report;
  report.per_region = matches_with_counts(t);
  for (const RegionMatch& row : report.per_region) {
    report.totals.tp += row.counts.tp;
    report.totals.fp += row.counts.fp;
    report.totals.fn += row.counts.fn;
    report.totals.tn += row.counts.tn;
  }
  report.mcc = mcc(report.totals);
  if (!report.per_region.empty()) {
    double sum = 0.0;
    for (const RegionMatch& row : report.per_region) sum += mcc(row.counts);
    report.mcc_macro = sum / static_cast<double>(report.per_region.size());
  }
  const PrecisionRecall pr = precision_recall_from(t);
  report.precision = pr.precision;
  report.recall = pr.recall;
  report.recall_seg_averaged = pr.recall_seg_averaged;
  report.seg_regions = static_cast<int>(t.seg_size.size());
  report.gt_regions = static_cast<int>(t.gt_size.size());
  return report;
}

}  // namespace roomseg

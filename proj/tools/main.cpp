// roomseg command line: segment maps, evaluate segmentations, batch whole
// directories, sweep parameters.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "roomseg/errors.hpp"
#include "roomseg/evaluation.hpp"
#include "roomseg/map_io.hpp"
#include "roomseg/pipeline.hpp"

namespace fs = std::filesystem;
using namespace roomseg;

namespace {

struct CommonOpts {
  std::string mode = "robot";
  int threshold = 250;
  std::optional<double> ripple, t, m, d;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--mode", o.mode, "map flavor: robot or sketch")
      ->check(CLI::IsMember({"robot", "sketch"}))
      ->capture_default_str();
  cmd->add_option("--threshold", o.threshold,
                  "binarization threshold (intensity >= threshold is free)")
      ->check(CLI::Range(0, 255))
      ->capture_default_str();
  cmd->add_option("--ripple-threshold", o.ripple,
                  "contact fraction above which a region is a ripple")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--t-merging", o.t, "relative value-similarity threshold")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--m", o.m, "extra margin for assisted merges")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--d-threshold", o.d,
                  "wall-artifact contact threshold (1 disables the pass)")
      ->check(CLI::Range(0.0, 1.0));
}

Params make_params(const CommonOpts& o) {
  Params p = o.mode == "sketch" ? Params::sketch() : Params::robot();
  if (o.ripple) p.ripple_threshold = *o.ripple;
  if (o.t) p.t_merging = *o.t;
  if (o.m) p.margin = *o.m;
  if (o.d) p.d_threshold = *o.d;
  p.validate();
  return p;
}

int count_regions(const LabelImage& seg) {
  std::set<std::int32_t> ids;
  for (std::int64_t i = 0; i < seg.labels.pixel_count(); ++i) {
    std::int32_t id = seg.labels[static_cast<std::size_t>(i)];
    if (id != 0) ids.insert(id);
  }
  return static_cast<int>(ids.size());
}

struct MapRow {
  std::string name;
  int regions = 0;
  EvalReport report;
  double seconds = 0.0;
  bool ok = false;
  std::string error;
};

void write_csv_header(std::ostream& os) {
  os << "map,regions,precision,recall,tp,fp,fn,tn,mcc,recall_seg_avg,seconds\n";
}

void write_csv_row(std::ostream& os, const MapRow& row) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%s,%d,%.6f,%.6f,%lld,%lld,%lld,%lld,%.6f,%.6f,%.3f\n",
                row.name.c_str(), row.regions, row.report.precision,
                row.report.recall, static_cast<long long>(row.report.totals.tp),
                static_cast<long long>(row.report.totals.fp),
                static_cast<long long>(row.report.totals.fn),
                static_cast<long long>(row.report.totals.tn), row.report.mcc,
                row.report.recall_seg_averaged, row.seconds);
  os << buf;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void write_summary(std::ostream& os, const std::vector<MapRow>& rows,
                   double total_seconds) {
  std::vector<double> mccs, precisions, recalls, recalls_seg;
  for (const MapRow& r : rows) {
    mccs.push_back(r.report.mcc);
    precisions.push_back(r.report.precision);
    recalls.push_back(r.report.recall);
    recalls_seg.push_back(r.report.recall_seg_averaged);
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };
  auto sd = [&](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double mu = mean(v), s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "# summary: maps=%zu median_mcc=%.6f mean_mcc=%.6f "
                "precision=%.6f+-%.6f recall=%.6f+-%.6f recall_seg=%.6f "
                "total_seconds=%.3f\n",
                rows.size(), median_of(mccs), mean(mccs), mean(precisions),
                sd(precisions), mean(recalls), sd(recalls), mean(recalls_seg),
                total_seconds);
  os << buf;
}

// Maps in a directory with their ground-truth companions
// (<stem><suffix>.<ext>). Non-recursive, sorted by path.
struct BatchEntry {
  fs::path map;
  fs::path gt;  // empty when missing
};

std::vector<BatchEntry> scan_directory(const fs::path& dir,
                                       const std::string& gt_suffix) {
  if (!fs::is_directory(dir))
    throw io_error("not a directory: " + dir.string());
  const std::vector<std::string> exts{".png", ".pgm"};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
      return static_cast<char>(std::tolower(c));
    });
    if (std::find(exts.begin(), exts.end(), ext) == exts.end()) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<BatchEntry> entries;
  for (const fs::path& f : files) {
    std::string stem = f.stem().string();
    if (stem.size() >= gt_suffix.size() &&
        stem.compare(stem.size() - gt_suffix.size(), gt_suffix.size(),
                     gt_suffix) == 0)
      continue;  // it is somebody's ground truth
    BatchEntry e;
    e.map = f;
    for (const std::string& ext : exts) {
      fs::path gt = f.parent_path() / (stem + gt_suffix + ext);
      if (fs::exists(gt)) {
        e.gt = gt;
        break;
      }
    }
    entries.push_back(e);
  }
  return entries;
}

int run_segment(const std::string& map_path, const std::string& out_path,
                const CommonOpts& opts, int downscale_factor,
                const std::string& debug_dir) {
  const Params params = make_params(opts);
  const GridMap map = load_map(map_path, opts.threshold);

  StageTrace trace;
  StageTrace* trace_ptr = debug_dir.empty() ? nullptr : &trace;
  const auto t0 = std::chrono::steady_clock::now();
  const LabelImage seg = segment_downscaled(map, params, downscale_factor, trace_ptr);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const fs::path out(out_path);
  write_segmentation(seg, out, SegWriteMode::labels);
  fs::path overlay = out.parent_path() / (out.stem().string() + "_overlay.png");
  write_segmentation(seg, overlay, SegWriteMode::colored_overlay, &map);

  if (trace_ptr) {
    const fs::path dir(debug_dir);
    fs::create_directories(dir);
    write_distance_debug(trace.distance, dir / "distance.png");
    write_fsi_debug(trace.fsi, dir / "free_space.png");
    const GridMap* base = &map;
    if (downscale_factor > 1) base = nullptr;  // stages live at small scale
    write_segmentation(trace.initial_regions, dir / "stage1_regions.png",
                       SegWriteMode::colored_overlay, base);
    write_segmentation(trace.after_ripple_pass, dir / "stage2_ripples.png",
                       SegWriteMode::colored_overlay, base);
    write_segmentation(trace.after_value_merge, dir / "stage3_merge.png",
                       SegWriteMode::colored_overlay, base);
    write_segmentation(trace.after_wall_pass, dir / "stage4_walls.png",
                       SegWriteMode::colored_overlay, base);
    std::ofstream(dir / "graph_initial.txt") << trace.graph_initial;
    std::ofstream(dir / "graph_final.txt") << trace.graph_final;
  }

  std::printf("map=%s regions=%d seconds=%.3f out=%s overlay=%s\n",
              map_path.c_str(), count_regions(seg), seconds,
              out.string().c_str(), overlay.string().c_str());
  return 0;
}

int run_evaluate(const std::string& seg_path, const std::string& gt_path,
                 const std::string& gt2_path, const std::string& csv_path,
                 const std::string& background, bool macro) {
  GtBackground bg = GtBackground::black_and_white;
  if (background == "black") bg = GtBackground::black;
  if (background == "white") bg = GtBackground::white;

  const LabelImage seg = load_ground_truth(seg_path, bg);
  std::vector<MapRow> rows;
  std::vector<std::string> gts{gt_path};
  if (!gt2_path.empty()) gts.push_back(gt2_path);
  for (const std::string& g : gts) {
    MapRow row;
    row.name = g;
    row.report = evaluate(seg, load_ground_truth(g, bg));
    row.regions = row.report.seg_regions;
    row.ok = true;
    rows.push_back(row);
    std::printf("gt=%s precision=%.4f recall=%.4f recall_seg=%.4f mcc=%.4f",
                g.c_str(), row.report.precision, row.report.recall,
                row.report.recall_seg_averaged, row.report.mcc);
    if (macro) std::printf(" mcc_macro=%.4f", row.report.mcc_macro);
    std::printf("\n");
  }
  if (!csv_path.empty()) {
    std::ofstream os(csv_path);
    if (!os) throw io_error("cannot write " + csv_path);
    write_csv_header(os);
    for (const MapRow& row : rows) write_csv_row(os, row);
  }
  return 0;
}

int run_batch(const std::string& dir, const std::string& gt_suffix, int jobs,
              const std::string& report_path, const CommonOpts& opts) {
  const Params params = make_params(opts);
  std::vector<BatchEntry> entries = scan_directory(dir, gt_suffix);
  if (entries.empty()) throw std::invalid_argument("no maps found in " + dir);

  std::vector<BatchEntry> with_gt;
  for (const BatchEntry& e : entries) {
    if (e.gt.empty()) {
      std::cerr << "skipping " << e.map.string() << ": no ground truth ("
                << e.map.stem().string() << gt_suffix << ".*)\n";
      continue;
    }
    with_gt.push_back(e);
  }
  if (with_gt.empty())
    throw std::invalid_argument("no maps with ground truth in " + dir);

  std::vector<MapRow> rows(with_gt.size());
  const auto t0 = std::chrono::steady_clock::now();
  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= with_gt.size()) break;
      MapRow& row = rows[i];
      row.name = with_gt[i].map.string();
      try {
        const GridMap map = load_map(with_gt[i].map, opts.threshold);
        const LabelImage gt = load_ground_truth(with_gt[i].gt);
        const auto s0 = std::chrono::steady_clock::now();
        const LabelImage seg = segment(map, params);
        row.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - s0)
                          .count();
        row.report = evaluate(seg, gt);
        row.regions = row.report.seg_regions;
        row.ok = true;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(with_gt.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::vector<MapRow> good;
  for (MapRow& row : rows) {
    if (row.ok) {
      good.push_back(std::move(row));
    } else {
      std::cerr << "skipping " << row.name << ": " << row.error << "\n";
    }
  }
  if (good.empty()) throw std::invalid_argument("no map in " + dir + " succeeded");
  std::sort(good.begin(), good.end(),
            [](const MapRow& a, const MapRow& b) { return a.name < b.name; });

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!report_path.empty()) {
    file.open(report_path);
    if (!file) throw io_error("cannot write " + report_path);
    os = &file;
  }
  write_csv_header(*os);
  for (const MapRow& row : good) write_csv_row(*os, row);
  write_summary(*os, good, total);
  if (os != &std::cout) write_summary(std::cout, good, total);
  return 0;
}

int run_sweep(const std::string& dir, const std::string& gt_suffix,
              const std::string& parameter, const std::vector<double>& values,
              const std::string& report_path, const CommonOpts& opts) {
  const Params base = make_params(opts);
  std::vector<BatchEntry> entries = scan_directory(dir, gt_suffix);
  std::vector<DatasetEntry> dataset;
  for (const BatchEntry& e : entries) {
    if (e.gt.empty()) {
      std::cerr << "skipping " << e.map.string() << ": no ground truth\n";
      continue;
    }
    DatasetEntry d;
    d.name = e.map.string();
    d.map = load_map(e.map, opts.threshold);
    d.ground_truth = load_ground_truth(e.gt);
    dataset.push_back(std::move(d));
  }
  if (dataset.empty())
    throw std::invalid_argument("no maps with ground truth in " + dir);

  const std::vector<SweepPoint> points = sweep(dataset, parameter, values, base);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!report_path.empty()) {
    file.open(report_path);
    if (!file) throw io_error("cannot write " + report_path);
    os = &file;
  }
  *os << "parameter,value,median_mcc,mean_mcc\n";
  char buf[256];
  for (const SweepPoint& p : points) {
    std::snprintf(buf, sizeof(buf), "%s,%.4f,%.6f,%.6f\n", parameter.c_str(),
                  p.value, p.median_mcc, p.mean_mcc);
    *os << buf;
    if (os != &std::cout) {
      std::printf("%s=%.4f median_mcc=%.6f mean_mcc=%.6f\n", parameter.c_str(),
                  p.value, p.median_mcc, p.mean_mcc);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"roomseg: free-space segmentation of indoor grid maps"};
  app.require_subcommand(1);

  // segment
  auto* seg_cmd = app.add_subcommand("segment", "segment one map");
  std::string seg_map, seg_out, seg_debug_dir;
  int seg_downscale = 1;
  CommonOpts seg_opts;
  seg_cmd->add_option("map", seg_map, "input raster (PNG/PGM)")->required();
  seg_cmd->add_option("-o,--output", seg_out, "output label raster (.png/.pgm)")
      ->required();
  seg_cmd->add_option("--downscale", seg_downscale,
                      "segment at 1/N scale, labels restored to full size")
      ->check(CLI::Range(1, 64));
  seg_cmd->add_option("--debug-dir", seg_debug_dir,
                      "dump per-stage images and graph listings here");
  add_common(seg_cmd, seg_opts);

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "score a segmentation");
  std::string eval_seg, eval_gt, eval_gt2, eval_csv, eval_bg = "both";
  bool eval_macro = false;
  eval_cmd->add_option("segmentation", eval_seg, "label raster to score")
      ->required();
  eval_cmd->add_option("ground_truth", eval_gt, "annotated raster")->required();
  eval_cmd->add_option("--gt2", eval_gt2, "second annotation to score against");
  eval_cmd->add_option("--csv", eval_csv, "write rows to this CSV file");
  eval_cmd->add_option("--gt-background", eval_bg,
                       "which extremes are background: black, white or both")
      ->check(CLI::IsMember({"black", "white", "both"}))
      ->capture_default_str();
  eval_cmd->add_flag("--macro", eval_macro, "also print the macro-averaged MCC");

  // batch
  auto* batch_cmd = app.add_subcommand("batch", "segment + score a directory");
  std::string batch_dir, batch_suffix = "_gt", batch_report;
  int batch_jobs = 1;
  CommonOpts batch_opts;
  batch_cmd->add_option("directory", batch_dir, "directory of maps")->required();
  batch_cmd->add_option("--gt-suffix", batch_suffix,
                        "ground-truth filename suffix")
      ->capture_default_str();
  batch_cmd->add_option("--jobs", batch_jobs, "maps processed in parallel")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  batch_cmd->add_option("--report", batch_report, "write the CSV here");
  add_common(batch_cmd, batch_opts);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "re-run a directory over one parameter");
  std::string sweep_dir, sweep_suffix = "_gt", sweep_param, sweep_report;
  std::vector<double> sweep_values;
  CommonOpts sweep_opts;
  sweep_cmd->add_option("directory", sweep_dir, "directory of maps")->required();
  sweep_cmd->add_option("--parameter", sweep_param,
                        "ripple-threshold, t-merging, m or d-threshold")
      ->required()
      ->check(CLI::IsMember({"ripple-threshold", "t-merging", "m", "d-threshold"}));
  sweep_cmd->add_option("--values", sweep_values, "parameter values to try")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--gt-suffix", sweep_suffix, "ground-truth filename suffix")
      ->capture_default_str();
  sweep_cmd->add_option("--report", sweep_report, "write the CSV here");
  add_common(sweep_cmd, sweep_opts);

  try {
    app.parse(argc, argv);
    if (seg_cmd->parsed())
      return run_segment(seg_map, seg_out, seg_opts, seg_downscale, seg_debug_dir);
    if (eval_cmd->parsed())
      return run_evaluate(eval_seg, eval_gt, eval_gt2, eval_csv, eval_bg,
                          eval_macro);
    if (batch_cmd->parsed())
      return run_batch(batch_dir, batch_suffix, batch_jobs, batch_report,
                       batch_opts);
    if (sweep_cmd->parsed())
      return run_sweep(sweep_dir, sweep_suffix, sweep_param, sweep_values,
                       sweep_report, sweep_opts);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const format_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const empty_ground_truth_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

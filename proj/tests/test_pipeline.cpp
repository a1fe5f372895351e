#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "roomseg/evaluation.hpp"
#include "roomseg/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace roomseg;

namespace {

int region_count(const LabelImage& img) {
  std::set<std::int32_t> ids;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      if (img.labels.at(x, y) != 0) ids.insert(img.labels.at(x, y));
  return static_cast<int>(ids.size());
}

bool images_equal(const LabelImage& a, const LabelImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) return false;
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x)
      if (a.labels.at(x, y) != b.labels.at(x, y)) return false;
  return true;
}

// Every free cell labeled, every occupied cell 0.
bool labels_match_free_space(const LabelImage& seg, const GridMap& map) {
  if (seg.width() != map.width() || seg.height() != map.height()) return false;
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      if ((seg.labels.at(x, y) != 0) != map.is_free(x, y)) return false;
  return true;
}

}  // namespace

TEST_CASE("pipeline: two rooms come out as two rooms") {
  GridMap map = fixtures::two_rooms_with_door();
  LabelImage seg = segment(map, Params::robot());
  CHECK(region_count(seg) == 2);
  CHECK(labels_match_free_space(seg, map));

  EvalReport res = evaluate(seg, fixtures::two_rooms_ground_truth());
  CHECK(res.mcc >= 0.95);
}

TEST_CASE("pipeline: room and corridor split in two") {
  GridMap map = fixtures::room_with_corridor();
  LabelImage seg = segment(map, Params::robot());
  CHECK(region_count(seg) == 2);
  CHECK(labels_match_free_space(seg, map));
}

TEST_CASE("pipeline: fully open square is one region") {
  GridMap map = fixtures::all_free(40);
  for (const Params& p : {Params::robot(), Params::sketch()}) {
    LabelImage seg = segment(map, p);
    CHECK(region_count(seg) == 1);
    CHECK(labels_match_free_space(seg, map));
  }
}

TEST_CASE("pipeline: repeat runs are identical") {
  GridMap map = fixtures::two_rooms_with_door();
  LabelImage first = segment(map, Params::robot());
  for (int i = 0; i < 4; ++i)
    CHECK(images_equal(segment(map, Params::robot()), first));
}

TEST_CASE("pipeline: labels cover exactly the free cells") {
  std::mt19937 rng(99);
  for (double density : {0.05, 0.10, 0.15, 0.20}) {
    GridMap map = fixtures::random_map(rng, 48, density);
    CHECK(labels_match_free_space(segment(map, Params::robot()), map));
    CHECK(labels_match_free_space(segment(map, Params::sketch()), map));
  }
}

TEST_CASE("pipeline: stage trace is internally consistent") {
  GridMap map = fixtures::two_rooms_with_door();
  StageTrace trace;
  LabelImage seg = segment(map, Params::robot(), &trace);

  CHECK(trace.distance.width() == map.width());
  CHECK(trace.distance.height() == map.height());
  CHECK(trace.fsi.width() == map.width());
  CHECK(trace.fsi.height() == map.height());

  // Merging only ever removes regions.
  const int n0 = region_count(trace.initial_regions);
  const int n1 = region_count(trace.after_ripple_pass);
  const int n2 = region_count(trace.after_value_merge);
  const int n3 = region_count(trace.after_wall_pass);
  CHECK(n0 > 2);  // the scoring stage produces concentric bands
  CHECK(n0 >= n1);
  CHECK(n1 >= n2);
  CHECK(n2 >= n3);
  CHECK(n3 == 2);

  // Straightening moves boundaries but neither creates nor destroys regions.
  CHECK(region_count(seg) == n3);

  // Every stage labels the same support: the free cells.
  CHECK(labels_match_free_space(trace.initial_regions, map));
  CHECK(labels_match_free_space(trace.after_ripple_pass, map));
  CHECK(labels_match_free_space(trace.after_value_merge, map));
  CHECK(labels_match_free_space(trace.after_wall_pass, map));
  CHECK(labels_match_free_space(seg, map));

  CHECK(!trace.graph_initial.empty());
  CHECK(!trace.graph_final.empty());
}

TEST_CASE("pipeline: invalid parameters are rejected up front") {
  GridMap map = fixtures::two_rooms_with_door();
  Params p = Params::robot();
  p.t_merging = 1.5;
  CHECK_THROWS_AS(segment(map, p), std::invalid_argument);
  p = Params::robot();
  p.margin = std::nan("");
  CHECK_THROWS_AS(segment(map, p), std::invalid_argument);
}

TEST_CASE("downscale: blocks need every covered cell free") {
  GridMap map = fixtures::map_from_ascii({
      "......",
      "..#...",
      "......",
      "......",
  });
  GridMap small = downscale(map, 2);
  CHECK(small.width() == 3);
  CHECK(small.height() == 2);
  CHECK(!small.is_free(1, 0));  // covers the obstacle at (2, 1)
  CHECK(small.is_free(0, 0));
  CHECK(small.is_free(2, 0));
  CHECK(small.is_free(0, 1));
  CHECK(small.is_free(1, 1));
  CHECK(small.is_free(2, 1));
}

TEST_CASE("downscale: partial edge blocks stay occupied") {
  GridMap map = fixtures::map_from_ascii({
      ".....",
      ".....",
      ".....",
  });
  GridMap small = downscale(map, 2);
  CHECK(small.width() == 3);
  CHECK(small.height() == 2);
  CHECK(small.is_free(0, 0));
  CHECK(small.is_free(1, 0));
  CHECK(!small.is_free(2, 0));  // only one source column
  CHECK(!small.is_free(0, 1));  // only one source row
  CHECK(!small.is_free(2, 1));
}

TEST_CASE("downscale: factor one copies, factor zero throws") {
  GridMap map = fixtures::two_rooms_with_door();
  GridMap same = downscale(map, 1);
  REQUIRE(same.width() == map.width());
  REQUIRE(same.height() == map.height());
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      CHECK(same.is_free(x, y) == map.is_free(x, y));
  CHECK_THROWS_AS(downscale(map, 0), std::invalid_argument);
}

TEST_CASE("upscale: labels land on free cells only") {
  LabelImage small;
  small.labels = Image<std::int32_t>(2, 2, 0);
  small.labels.at(0, 0) = 1;
  small.labels.at(1, 0) = 2;
  small.labels.at(0, 1) = 3;
  small.labels.at(1, 1) = 4;

  GridMap original = fixtures::map_from_ascii({
      "....",
      ".#..",
      "...#",
      "....",
  });
  LabelImage out = upscale_labels(small, original, 2);
  REQUIRE(out.width() == 4);
  REQUIRE(out.height() == 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      std::int32_t want = original.is_free(x, y)
                              ? small.labels.at(x / 2, y / 2)
                              : 0;
      CHECK(out.labels.at(x, y) == want);
    }
  }
}

TEST_CASE("upscale: cells outside the small image stay unlabeled") {
  LabelImage small;
  small.labels = Image<std::int32_t>(2, 2, 7);
  GridMap original = fixtures::map_from_ascii({
      ".....",
      ".....",
      ".....",
      ".....",
  });
  LabelImage out = upscale_labels(small, original, 2);
  CHECK(out.labels.at(3, 3) == 7);
  CHECK(out.labels.at(4, 0) == 0);  // x/2 == 2 falls past the 2x2 labels
  CHECK(out.labels.at(4, 3) == 0);
  CHECK_THROWS_AS(upscale_labels(small, original, 0), std::invalid_argument);
}

TEST_CASE("downscaled pipeline works end to end") {
  GridMap map = fixtures::all_free(40);
  LabelImage seg = segment_downscaled(map, Params::robot(), 2);
  CHECK(region_count(seg) == 1);
  CHECK(labels_match_free_space(seg, map));

  // Factor one must be the plain pipeline.
  CHECK(images_equal(segment_downscaled(map, Params::robot(), 1),
                     segment(map, Params::robot())));
}

TEST_CASE("sweep: single map and value match a direct run") {
  std::vector<DatasetEntry> dataset;
  dataset.push_back({"rooms", fixtures::two_rooms_with_door(),
                     fixtures::two_rooms_ground_truth()});

  std::vector<SweepPoint> points =
      sweep(dataset, "t-merging", {0.30}, Params::robot());
  REQUIRE(points.size() == 1);
  CHECK(points[0].value == 0.30);

  Params direct = Params::robot();
  direct.t_merging = 0.30;
  double mcc =
      evaluate(segment(dataset[0].map, direct), dataset[0].ground_truth).mcc;
  CHECK(points[0].median_mcc == mcc);
  CHECK(points[0].mean_mcc == mcc);
}

TEST_CASE("sweep: one point per value, in request order") {
  std::vector<DatasetEntry> dataset;
  dataset.push_back({"rooms", fixtures::two_rooms_with_door(),
                     fixtures::two_rooms_ground_truth()});

  const std::vector<double> values = {0.0, 0.05, 0.10};
  std::vector<SweepPoint> points = sweep(dataset, "m", values, Params::robot());
  REQUIRE(points.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(points[i].value == values[i]);
    // One map: median and mean are both that map's score.
    CHECK(points[i].median_mcc == points[i].mean_mcc);
    CHECK(points[i].median_mcc >= -1.0);
    CHECK(points[i].median_mcc <= 1.0);
  }
}

TEST_CASE("sweep: rejects bad input") {
  std::vector<DatasetEntry> dataset;
  dataset.push_back({"rooms", fixtures::two_rooms_with_door(),
                     fixtures::two_rooms_ground_truth()});

  CHECK_THROWS_AS(sweep(dataset, "door-width", {0.3}, Params::robot()),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep({}, "t-merging", {0.3}, Params::robot()),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep(dataset, "t-merging", {1.5}, Params::robot()),
                  std::invalid_argument);
}

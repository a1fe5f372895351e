#include "roomseg/map_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "roomseg/errors.hpp"

namespace roomseg {

namespace {

std::string lower_ext(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

cv::Mat read_raster(const std::filesystem::path& path, int flags) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || ec)
    throw io_error("cannot open " + path.string());
  cv::Mat m = cv::imread(path.string(), flags);
  if (m.empty())
    throw format_error("not a readable raster image: " + path.string());
  return m;
}

void write_raster(const cv::Mat& m, const std::filesystem::path& path) {
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), m);
  } catch (const cv::Exception& e) {
    throw io_error("cannot write " + path.string() + ": " + e.what());
  }
  if (!ok) throw io_error("cannot write " + path.string());
}

}  // namespace

GridMap load_map(const std::filesystem::path& path, int binarize_threshold) {
  if (binarize_threshold < 0 || binarize_threshold > 255)
    throw std::invalid_argument("binarize threshold outside [0, 255]");
  cv::Mat gray = read_raster(path, cv::IMREAD_GRAYSCALE);
  GridMap map(gray.cols, gray.rows, Cell::occupied);
  for (int y = 0; y < gray.rows; ++y) {
    const std::uint8_t* row = gray.ptr<std::uint8_t>(y);
    for (int x = 0; x < gray.cols; ++x) {
      if (row[x] >= binarize_threshold) map.cells.at(x, y) = Cell::free;
    }
  }
  return map;
}

LabelImage load_ground_truth(const std::filesystem::path& path,
                             GtBackground background) {
  cv::Mat raw = read_raster(path, cv::IMREAD_UNCHANGED);

  // Every pixel becomes a color key; distinct keys become regions.
  std::int64_t white = 0;
  auto key_of = [&](int x, int y) -> std::int64_t {
    switch (raw.type()) {
      case CV_8UC1:
        return raw.at<std::uint8_t>(y, x);
      case CV_16UC1:
        return raw.at<std::uint16_t>(y, x);
      case CV_8UC3: {
        const cv::Vec3b& v = raw.at<cv::Vec3b>(y, x);
        return (static_cast<std::int64_t>(v[2]) << 16) |
               (static_cast<std::int64_t>(v[1]) << 8) | v[0];
      }
      case CV_8UC4: {
        const cv::Vec4b& v = raw.at<cv::Vec4b>(y, x);
        return (static_cast<std::int64_t>(v[2]) << 16) |
               (static_cast<std::int64_t>(v[1]) << 8) | v[0];
      }
      default:
        throw format_error("unsupported ground-truth pixel format in " +
                           path.string());
    }
  };
  switch (raw.type()) {
    case CV_8UC1:
      white = 255;
      break;
    case CV_16UC1:
      white = 65535;
      break;
    default:
      white = 0xFFFFFF;
      break;
  }
  const bool black_bg = background != GtBackground::white;
  const bool white_bg = background != GtBackground::black;

  LabelImage out;
  out.labels = Image<std::int32_t>(raw.cols, raw.rows, 0);
  std::map<std::int64_t, std::int32_t> ids;
  std::int32_t next = 0;
  for (int y = 0; y < raw.rows; ++y) {
    for (int x = 0; x < raw.cols; ++x) {
      std::int64_t key = key_of(x, y);
      if ((black_bg && key == 0) || (white_bg && key == white)) continue;
      auto [it, inserted] = ids.emplace(key, next + 1);
      if (inserted) ++next;
      out.labels.at(x, y) = it->second;
    }
  }
  if (next == 0)
    throw empty_ground_truth_error("no regions in ground truth " + path.string());
  return out;
}

void write_segmentation(const LabelImage& seg, const std::filesystem::path& path,
                        SegWriteMode mode, const GridMap* base) {
  const std::string ext = lower_ext(path);
  if (mode == SegWriteMode::labels) {
    if (ext != ".png" && ext != ".pgm")
      throw format_error("label rasters must be .png or .pgm: " + path.string());
    cv::Mat m(seg.height(), seg.width(), CV_16UC1);
    for (int y = 0; y < seg.height(); ++y) {
      for (int x = 0; x < seg.width(); ++x) {
        std::int32_t id = seg.labels.at(x, y);
        if (id < 0 || id > 65535)
          throw format_error("region id " + std::to_string(id) +
                             " does not fit a 16-bit raster");
        m.at<std::uint16_t>(y, x) = static_cast<std::uint16_t>(id);
      }
    }
    write_raster(m, path);
    return;
  }

  if (ext != ".png")
    throw format_error("overlays must be .png: " + path.string());
  cv::Mat m(seg.height(), seg.width(), CV_8UC3);
  for (int y = 0; y < seg.height(); ++y) {
    for (int x = 0; x < seg.width(); ++x) {
      std::int32_t id = seg.labels.at(x, y);
      cv::Vec3b& px = m.at<cv::Vec3b>(y, x);
      if (id > 0) {
        Rgb c = label_color(id);
        px = {c.b, c.g, c.r};
      } else if (base && base->cells.in_bounds(x, y) && base->is_free(x, y)) {
        px = {255, 255, 255};
      } else {
        px = {0, 0, 0};
      }
    }
  }
  write_raster(m, path);
}

void write_map(const GridMap& map, const std::filesystem::path& path) {
  cv::Mat m(map.height(), map.width(), CV_8UC1);
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      m.at<std::uint8_t>(y, x) = map.is_free(x, y) ? 255 : 0;
  write_raster(m, path);
}

namespace {

void write_normalized(const Image<double>& img, const std::filesystem::path& path) {
  double top = 0.0;
  for (std::int64_t i = 0; i < img.pixel_count(); ++i)
    top = std::max(top, img[static_cast<std::size_t>(i)]);
  cv::Mat m(img.height(), img.width(), CV_8UC1);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      double v = top > 0.0 ? img.at(x, y) / top : 0.0;
      m.at<std::uint8_t>(y, x) =
          static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - v)));
    }
  }
  write_raster(m, path);
}

}  // namespace

void write_distance_debug(const DistanceImage& distance,
                          const std::filesystem::path& path) {
  write_normalized(distance.dist, path);
}

void write_fsi_debug(const FreeSpaceImage& fsi, const std::filesystem::path& path) {
  Image<double> tmp(fsi.width(), fsi.height(), 0.0);
  for (std::int64_t i = 0; i < fsi.value.pixel_count(); ++i)
    tmp[static_cast<std::size_t>(i)] = fsi.value[static_cast<std::size_t>(i)];
  write_normalized(tmp, path);
}

Rgb label_color(int label) {
  if (label <= 0) return {0, 0, 0};
  // Golden-ratio hue walk: consecutive ids land far apart on the wheel.
  double h = std::fmod(static_cast<double>(label) * 0.61803398874989485, 1.0) * 6.0;
  const double s = 0.65, v = 0.95;
  const double c = v * s;
  const double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = v - c;
  auto to8 = [&](double t) {
    return static_cast<std::uint8_t>(std::lround(255.0 * (t + m)));
  };
  return {to8(r), to8(g), to8(b)};
}

}  // namespace roomseg

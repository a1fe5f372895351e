#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "roomseg/image.hpp"

namespace roomseg {

// Which extreme intensities of a ground-truth raster are treated as
// non-region background (walls / page). Annotated maps in the wild use
// either black walls on colored rooms or colored rooms on white paper,
// so by default both extremes are background.
enum class GtBackground { black, white, black_and_white };

// Loads a grayscale raster (PNG / PGM, binary or ASCII; color inputs are
// converted to gray) and binarizes it: intensity >= threshold is free
// space, everything else (including mid-gray "unknown") is occupied.
// Throws io_error when the file is missing/unreadable, format_error when
// it is not a decodable raster, std::invalid_argument for a threshold
// outside [0, 255].
GridMap load_map(const std::filesystem::path& path, int binarize_threshold = 250);

// Loads an annotated raster where every distinct color (or gray / 16-bit
// intensity) is one region. Labels are assigned 1..K in order of first
// appearance in row-major scan order. Throws empty_ground_truth_error when
// nothing but background is present.
LabelImage load_ground_truth(const std::filesystem::path& path,
                             GtBackground background = GtBackground::black_and_white);

enum class SegWriteMode {
  labels,           // 16-bit single-channel raster of region ids
  colored_overlay,  // 8-bit RGB rendering with one color per region
};

// Writes a segmentation. Label mode accepts .png or .pgm and requires ids
// to fit 16 bits; overlay mode requires .png. `base`, when given, paints
// unlabeled pixels from the map (occupied black, free white); otherwise
// they are black.
void write_segmentation(const LabelImage& seg, const std::filesystem::path& path,
                        SegWriteMode mode = SegWriteMode::labels,
                        const GridMap* base = nullptr);

// Writes a map as an 8-bit raster (free 255, occupied 0).
void write_map(const GridMap& map, const std::filesystem::path& path);

// Normalized grayscale diagnostics of intermediate images; larger values
// render darker so narrow passages stand out bright.
void write_distance_debug(const DistanceImage& distance,
                          const std::filesystem::path& path);
void write_fsi_debug(const FreeSpaceImage& fsi, const std::filesystem::path& path);

// Stable display color for a region id (id 0 gets black).
struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
};
Rgb label_color(int label);

}  // namespace roomseg

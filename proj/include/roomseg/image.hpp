#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace roomseg {

// Row-major 2D grid with value semantics. Pixel (x, y) lives at linear
// index y * width + x; the pixel kernels mostly work on linear indices.
template <typename T>
class Image {
 public:
  Image() = default;
  Image(int width, int height, T fill = T{})
      : width_(width),
        height_(height),
        data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
    assert(width >= 0 && height >= 0);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::int64_t pixel_count() const {
    return static_cast<std::int64_t>(width_) * height_;
  }
  bool empty() const { return data_.empty(); }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }
  std::int32_t index(int x, int y) const { return y * width_ + x; }
  int x_of(std::int32_t index) const { return static_cast<int>(index % width_); }
  int y_of(std::int32_t index) const { return static_cast<int>(index / width_); }

  T& at(int x, int y) {
    assert(in_bounds(x, y));
    return data_[static_cast<std::size_t>(index(x, y))];
  }
  const T& at(int x, int y) const {
    assert(in_bounds(x, y));
    return data_[static_cast<std::size_t>(index(x, y))];
  }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

enum class Cell : std::uint8_t { occupied = 0, free = 1 };

// Binarized input map: every cell is either traversable free space or an
// obstacle (walls, unknown space, background).
struct GridMap {
  Image<Cell> cells;

  GridMap() = default;
  GridMap(int width, int height, Cell fill = Cell::occupied)
      : cells(width, height, fill) {}

  int width() const { return cells.width(); }
  int height() const { return cells.height(); }
  bool is_free(int x, int y) const { return cells.at(x, y) == Cell::free; }
};

// Exact Euclidean distance to the nearest occupied pixel. The image border
// acts as an implicit one-pixel obstacle ring just outside the map, so
// distances are additionally bounded by (distance to the nearest edge + 1).
// `squared` holds the exact integer squared distances `dist` derives from.
struct DistanceImage {
  Image<std::int32_t> squared;
  Image<double> dist;

  int width() const { return squared.width(); }
  int height() const { return squared.height(); }
};

// Per-pixel radius of the largest distance-induced disk that covers the
// pixel; a proxy for the size of the place the pixel belongs to. Zero on
// occupied pixels.
struct FreeSpaceImage {
  Image<std::int32_t> value;

  int width() const { return value.width(); }
  int height() const { return value.height(); }
};

// Per-pixel region id; 0 is reserved for non-region pixels (obstacles,
// background).
struct LabelImage {
  Image<std::int32_t> labels;

  int width() const { return labels.width(); }
  int height() const { return labels.height(); }
};

// 8-neighborhood offsets in row-major order.
inline constexpr int kNeighbors8[8][2] = {
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}};

}  // namespace roomseg

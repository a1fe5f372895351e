#pragma once

#include <stdexcept>
#include <string>

namespace roomseg {

// File could not be opened / read / written.
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// File exists but its content cannot be used (undecodable raster,
// unsupported extension, out-of-range payload).
struct format_error : std::runtime_error {
  explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// A ground-truth raster decoded fine but contains no region at all.
struct empty_ground_truth_error : std::runtime_error {
  explicit empty_ground_truth_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace roomseg

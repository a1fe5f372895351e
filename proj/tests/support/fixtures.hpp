#pragma once

#include <random>
#include <string>
#include <vector>

#include "roomseg/image.hpp"

// Synthetic maps and annotations shared by the test suites.
namespace fixtures {

// '#' occupied, anything else free.
roomseg::GridMap map_from_ascii(const std::vector<std::string>& rows);

// '.' and '#' are background (0); '0'..'9' and 'a'..'z' are labels 1..36.
roomseg::LabelImage labels_from_ascii(const std::vector<std::string>& rows);

// Two 15x15 rooms joined by a 3-pixel doorway in a 1-pixel wall.
roomseg::GridMap two_rooms_with_door();
roomseg::LabelImage two_rooms_ground_truth();

// A 15x15 room opening into a 5-pixel-wide, 40-long corridor.
roomseg::GridMap room_with_corridor();
roomseg::LabelImage room_with_corridor_ground_truth();

// Fully traversable square with only the border acting as obstacle.
roomseg::GridMap all_free(int side);

// A grid of square rooms separated by 1-pixel walls with doorway gaps;
// side is the exact output size. Used for scaling/performance runs.
roomseg::GridMap rooms_grid(int side, int rooms_per_axis);

// Random clutter: independent obstacle pixels at the given density.
roomseg::GridMap random_map(std::mt19937& rng, int max_side, double p_occupied);

// Random labeling with up to max_regions blobs grown from random seeds;
// label 0 kept for a sprinkling of background.
roomseg::LabelImage random_label_image(std::mt19937& rng, int max_side,
                                       int max_regions);

// Same partition up to a bijection of the nonzero labels.
bool same_partition(const roomseg::LabelImage& a, const roomseg::LabelImage& b);

}  // namespace fixtures

#pragma once

#include <Eigen/Core>
#include <vector>

#include "sci/cube.hpp"

namespace sci {

struct PatchConfig {
  int patch_side = 6;     // sqrt(d)
  int stride = 5;         // spacing of reference patches
  int search_l = 30;      // spatial search window side L
  int search_h = 8;       // temporal search depth H (clamped to B)
  int group_m = 70;       // patches per group M
  int rematch_every = 20; // iterations between block-matching refreshes
};

struct PatchCoord {
  int frame = 0;
  int row = 0;
  int col = 0;
  bool operator==(const PatchCoord&) const = default;
};

// d x M matrix of vectorized patches; column 0 is the reference patch.
struct PatchGroup {
  PatchCoord ref;
  Eigen::MatrixXd mat;
  std::vector<PatchCoord> coords;
};

// Strided grid of reference top-left coordinates covering every frame;
// the last row/column snaps to the frame edge so every pixel is covered.
std::vector<PatchCoord> reference_grid(int nx, int ny, int nb, const PatchConfig& cfg);

// The M nearest patches (squared Euclidean distance) to the reference
// inside its L x L x H search window, sorted ascending by distance with
// (frame, row, col) tie-breaking; the reference itself is column 0.
std::vector<PatchCoord> block_match_coords(const FrameCube& cube, const PatchCoord& ref,
                                           const PatchConfig& cfg);

Eigen::MatrixXd extract_patches(const FrameCube& cube, const std::vector<PatchCoord>& coords,
                                int patch_side);

PatchGroup block_match(const FrameCube& cube, const PatchCoord& ref, const PatchConfig& cfg);

// Unweighted per-pixel mean of all patch estimates covering the pixel.
// Throws if some pixel is covered by no patch.
FrameCube aggregate(const std::vector<PatchGroup>& groups, int nx, int ny, int nb,
                    int patch_side, double peak = 255.0);

}  // namespace sci

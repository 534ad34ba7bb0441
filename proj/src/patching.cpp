#include "sci/patching.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace sci {

namespace {

// Strided offsets 0, s, 2s, ... with the last one snapped to limit-side
// so the patches tile the whole extent.
std::vector<int> snapped_offsets(int extent, int side, int stride) {
  std::vector<int> offs;
  const int last = extent - side;
  for (int o = 0; o < last; o += stride) offs.push_back(o);
  offs.push_back(last);
  return offs;
}

inline int clamp_int(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace

std::vector<PatchCoord> reference_grid(int nx, int ny, int nb, const PatchConfig& cfg) {
  if (cfg.patch_side < 1 || cfg.stride < 1)
    throw std::invalid_argument("patch_side and stride must be >= 1");
  if (cfg.patch_side > nx || cfg.patch_side > ny)
    throw std::invalid_argument("patch larger than frame");

  const std::vector<int> rows = snapped_offsets(nx, cfg.patch_side, cfg.stride);
  const std::vector<int> cols = snapped_offsets(ny, cfg.patch_side, cfg.stride);
  std::vector<PatchCoord> refs;
  refs.reserve(std::size_t(nb) * rows.size() * cols.size());
  for (int k = 0; k < nb; ++k)
    for (int r : rows)
      for (int c : cols) refs.push_back({k, r, c});
  return refs;
}

Eigen::MatrixXd extract_patches(const FrameCube& cube, const std::vector<PatchCoord>& coords,
                                int patch_side) {
  const int d = patch_side * patch_side;
  Eigen::MatrixXd mat(d, static_cast<Eigen::Index>(coords.size()));
  for (std::size_t m = 0; m < coords.size(); ++m) {
    const PatchCoord& pc = coords[m];
    int p = 0;
    for (int i = 0; i < patch_side; ++i)
      for (int j = 0; j < patch_side; ++j)
        mat(p++, static_cast<Eigen::Index>(m)) = cube.at(pc.row + i, pc.col + j, pc.frame);
  }
  return mat;
}

std::vector<PatchCoord> block_match_coords(const FrameCube& cube, const PatchCoord& ref,
                                           const PatchConfig& cfg) {
  const int side = cfg.patch_side;
  const int L = cfg.search_l;
  const int H = std::min(cfg.search_h, cube.nb);
  if (cfg.group_m < 1) throw std::invalid_argument("group_m must be >= 1");

  // Pixel window of side L centered on the reference patch, clamped into
  // the frame; degenerates to the whole frame when the frame is smaller.
  const auto window_start = [&](int pos, int extent) {
    if (extent <= L) return 0;
    return clamp_int(pos - (L - side) / 2, 0, extent - L);
  };
  const int r0 = window_start(ref.row, cube.nx);
  const int c0 = window_start(ref.col, cube.ny);
  const int r1 = std::min(cube.nx, r0 + L) - side;
  const int c1 = std::min(cube.ny, c0 + L) - side;
  const int f0 = clamp_int(ref.frame - H / 2, 0, cube.nb - H);

  // Gather candidate distances to the reference patch.
  std::vector<double> refpatch(std::size_t(side) * side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      refpatch[std::size_t(i) * side + j] = cube.at(ref.row + i, ref.col + j, ref.frame);

  struct Candidate {
    double dist;
    PatchCoord pc;
  };
  std::vector<Candidate> cands;
  cands.reserve(std::size_t(H) * (r1 - r0 + 1) * (c1 - c0 + 1));
  for (int k = f0; k < f0 + H; ++k)
    for (int r = r0; r <= r1; ++r)
      for (int c = c0; c <= c1; ++c) {
        if (k == ref.frame && r == ref.row && c == ref.col) continue;
        double dist = 0.0;
        for (int i = 0; i < side; ++i)
          for (int j = 0; j < side; ++j) {
            const double diff = cube.at(r + i, c + j, k) - refpatch[std::size_t(i) * side + j];
            dist += diff * diff;
          }
        cands.push_back({dist, {k, r, c}});
      }

  if (cands.size() + 1 < std::size_t(cfg.group_m))
    throw std::invalid_argument("search window holds fewer candidates than group_m");

  const auto before = [](const Candidate& a, const Candidate& b) {
    return std::tie(a.dist, a.pc.frame, a.pc.row, a.pc.col) <
           std::tie(b.dist, b.pc.frame, b.pc.row, b.pc.col);
  };
  const std::size_t keep = std::size_t(cfg.group_m) - 1;
  std::partial_sort(cands.begin(), cands.begin() + keep, cands.end(), before);

  std::vector<PatchCoord> coords;
  coords.reserve(cfg.group_m);
  coords.push_back(ref);
  for (std::size_t m = 0; m < keep; ++m) coords.push_back(cands[m].pc);
  return coords;
}

PatchGroup block_match(const FrameCube& cube, const PatchCoord& ref, const PatchConfig& cfg) {
  PatchGroup group;
  group.ref = ref;
  group.coords = block_match_coords(cube, ref, cfg);
  group.mat = extract_patches(cube, group.coords, cfg.patch_side);
  return group;
}

FrameCube aggregate(const std::vector<PatchGroup>& groups, int nx, int ny, int nb,
                    int patch_side, double peak) {
  FrameCube sum(nx, ny, nb, peak);
  std::vector<double> count(sum.size(), 0.0);

  for (const PatchGroup& g : groups) {
    for (std::size_t m = 0; m < g.coords.size(); ++m) {
      const PatchCoord& pc = g.coords[m];
      int p = 0;
      for (int i = 0; i < patch_side; ++i)
        for (int j = 0; j < patch_side; ++j) {
          const std::size_t idx = sum.index(pc.row + i, pc.col + j, pc.frame);
          sum.values[idx] += g.mat(p++, static_cast<Eigen::Index>(m));
          count[idx] += 1.0;
        }
    }
  }

  for (std::size_t idx = 0; idx < sum.values.size(); ++idx) {
    if (count[idx] == 0.0)
      throw std::runtime_error("aggregate: pixel covered by no patch");
    sum.values[idx] /= count[idx];
  }
  return sum;
}

}  // namespace sci

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace sci {

// B frames (video frames or spectral bands) of nx x ny intensities.
// Storage is frame-major with a row-major scan inside each frame; the
// flat storage order *is* the vectorization order used by the sensing
// model, so vectorize() is a plain copy.
struct FrameCube {
  int nx = 0;   // rows per frame
  int ny = 0;   // columns per frame
  int nb = 0;   // frame count
  double peak = 255.0;
  std::vector<double> values;

  FrameCube() = default;
  FrameCube(int rows, int cols, int frames, double peak_value = 255.0)
      : nx(rows), ny(cols), nb(frames), peak(peak_value),
        values(static_cast<std::size_t>(rows) * cols * frames, 0.0) {}

  std::size_t frame_size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t size() const { return frame_size() * nb; }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * nx + i) * ny + j;
  }

  double& at(int i, int j, int k) { return values[index(i, j, k)]; }
  double at(int i, int j, int k) const { return values[index(i, j, k)]; }

  bool same_shape(const FrameCube& other) const {
    return nx == other.nx && ny == other.ny && nb == other.nb;
  }
};

// Per-frame modulation codes; same layout as the cube it modulates.
struct MaskCube : FrameCube {};

// One coded 2-D snapshot (n = nx*ny values).
struct Measurement {
  int nx = 0;
  int ny = 0;
  std::vector<double> values;
  std::optional<double> noise_sigma_hint;

  Measurement() = default;
  Measurement(int rows, int cols)
      : nx(rows), ny(cols), values(static_cast<std::size_t>(rows) * cols, 0.0) {}

  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * ny + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * ny + j]; }
};

// Throws std::invalid_argument on empty shape, size mismatch or
// non-finite entries.
void validate_cube(const FrameCube& cube);

// Flat view in frame-major order, x = [x_1^T, ..., x_B^T]^T with each
// frame scanned row by row.
std::vector<double> vectorize(const FrameCube& cube);
FrameCube devectorize(const std::vector<double>& flat, int nx, int ny, int nb,
                      double peak = 255.0);

}  // namespace sci

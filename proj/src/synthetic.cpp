#include "sci/synthetic.hpp"

#include <cmath>
#include <stdexcept>

namespace sci {

FrameCube make_moving_square_scene(int nx, int ny, int nb, double peak) {
  if (nx < 8 || ny < 8 || nb < 1) throw std::invalid_argument("scene too small");
  FrameCube cube(nx, ny, nb, peak);

  const int side = nx / 4;
  const int span_r = nx - side - 2;
  const int span_c = ny - side - 2;
  for (int k = 0; k < nb; ++k) {
    // ramped background
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j)
        cube.at(i, j, k) = std::round(peak * (0.08 + 0.15 * double(i + j) / (nx + ny)));

    // static dim block in the lower-right corner
    for (int i = nx - nx / 5 - 1; i < nx - 1; ++i)
      for (int j = ny - ny / 5 - 1; j < ny - 1; ++j)
        cube.at(i, j, k) = std::round(peak * 0.45);

    // bright square with an internal gradient, moving diagonally
    const int r0 = 1 + (span_r * k) / std::max(nb - 1, 1);
    const int c0 = 1 + (span_c * k) / std::max(nb - 1, 1);
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j)
        cube.at(r0 + i, c0 + j, k) =
            std::round(peak * (0.55 + 0.35 * double(i + j) / (2 * side - 1)));
  }
  return cube;
}

FrameCube make_spectral_scene(int nx, int ny, int nb, double peak) {
  if (nx < 16 || ny < 16 || nb < 2) throw std::invalid_argument("scene too small");
  FrameCube cube(nx, ny, nb, peak);

  const double centers[4] = {0.15, 0.4, 0.6, 0.85};  // spectral bump centers
  const double width = 0.22;
  const int hx = nx / 2, hy = ny / 2;

  for (int k = 0; k < nb; ++k) {
    const double band = nb > 1 ? double(k) / (nb - 1) : 0.0;
    for (int q = 0; q < 4; ++q) {
      const int base_r = (q / 2) * hx;
      const int base_c = (q % 2) * hy;
      const double spectral = std::exp(-(band - centers[q]) * (band - centers[q]) /
                                       (2 * width * width));
      for (int i = 0; i < hx; ++i)
        for (int j = 0; j < hy; ++j) {
          // disk-shaped target inside the quadrant, faint elsewhere
          const double di = i - hx / 2.0 + 0.5, dj = j - hy / 2.0 + 0.5;
          const bool inside = di * di + dj * dj <= (hx * 0.35) * (hx * 0.35);
          const double albedo = inside ? 0.9 : 0.15;
          cube.at(base_r + i, base_c + j, k) =
              std::round(peak * (0.05 + 0.9 * albedo * spectral));
        }
    }
  }
  return cube;
}

std::vector<Region> spectral_scene_regions(int nx, int ny) {
  const int hx = nx / 2, hy = ny / 2;
  const int r = std::max(2, int(hx * 0.35 / 1.5));  // safely inside each disk
  std::vector<Region> regions;
  for (int q = 0; q < 4; ++q) {
    const int cr = (q / 2) * hx + hx / 2;
    const int cc = (q % 2) * hy + hy / 2;
    regions.push_back({cr - r, cc - r, 2 * r, 2 * r});
  }
  return regions;
}

}  // namespace sci

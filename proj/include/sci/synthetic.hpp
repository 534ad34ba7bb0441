#pragma once

#include <vector>

#include "sci/cube.hpp"
#include "sci/metrics.hpp"

namespace sci {

// Bright textured square translating diagonally over a ramped background,
// one step per frame; integer-valued intensities in [0, peak].
FrameCube make_moving_square_scene(int nx, int ny, int nb, double peak = 255.0);

// Four quadrant targets with distinct smooth spectra (Gaussian bumps over
// the band index); used for the simulated dispersion path.
FrameCube make_spectral_scene(int nx, int ny, int nb, double peak = 255.0);

// Inner rectangles of the four quadrant targets, for spectral scoring.
std::vector<Region> spectral_scene_regions(int nx, int ny);

}  // namespace sci

#include "sci/cube.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sci {

void validate_cube(const FrameCube& cube) {
  if (cube.nx < 1 || cube.ny < 1 || cube.nb < 1)
    throw std::invalid_argument("cube dimensions must be >= 1");
  if (cube.values.size() != cube.size())
    throw std::invalid_argument("cube holds " + std::to_string(cube.values.size()) +
                                " values, shape needs " + std::to_string(cube.size()));
  for (double v : cube.values)
    if (!std::isfinite(v)) throw std::invalid_argument("cube contains non-finite values");
}

std::vector<double> vectorize(const FrameCube& cube) {
  return cube.values;  // storage already follows the vectorization order
}

FrameCube devectorize(const std::vector<double>& flat, int nx, int ny, int nb,
                      double peak) {
  FrameCube cube(nx, ny, nb, peak);
  if (flat.size() != cube.size())
    throw std::invalid_argument("flat vector length does not match cube shape");
  cube.values = flat;
  return cube;
}

}  // namespace sci

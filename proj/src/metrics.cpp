#include "sci/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sci {

namespace {

void check_shapes(const FrameCube& a, const FrameCube& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("cube shapes differ");
  if (a.nx < 1 || a.ny < 1 || a.nb < 1) throw std::invalid_argument("empty cube");
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / double(v.size());
}

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kSsimK1 = 0.01;
constexpr double kSsimK2 = 0.03;

std::vector<double> gaussian_window() {
  std::vector<double> w(std::size_t(kSsimWindow) * kSsimWindow);
  const double c = (kSsimWindow - 1) / 2.0;
  double total = 0.0;
  for (int i = 0; i < kSsimWindow; ++i)
    for (int j = 0; j < kSsimWindow; ++j) {
      const double v =
          std::exp(-((i - c) * (i - c) + (j - c) * (j - c)) / (2.0 * kSsimSigma * kSsimSigma));
      w[std::size_t(i) * kSsimWindow + j] = v;
      total += v;
    }
  for (double& v : w) v /= total;
  return w;
}

}  // namespace

FrameScores psnr(const FrameCube& a, const FrameCube& b, double peak) {
  check_shapes(a, b);
  if (peak <= 0) peak = a.peak;

  FrameScores scores;
  scores.per_frame.resize(a.nb);
  for (int k = 0; k < a.nb; ++k) {
    double mse = 0.0;
    const double* pa = a.values.data() + std::size_t(k) * a.frame_size();
    const double* pb = b.values.data() + std::size_t(k) * a.frame_size();
    for (std::size_t p = 0; p < a.frame_size(); ++p) {
      const double d = pa[p] - pb[p];
      mse += d * d;
    }
    mse /= double(a.frame_size());
    scores.per_frame[k] = mse == 0.0 ? std::numeric_limits<double>::infinity()
                                     : 10.0 * std::log10(peak * peak / mse);
  }
  scores.mean = mean_of(scores.per_frame);
  return scores;
}

FrameScores ssim(const FrameCube& a, const FrameCube& b, double peak) {
  check_shapes(a, b);
  if (a.nx < kSsimWindow || a.ny < kSsimWindow)
    throw std::invalid_argument("frame smaller than the SSIM window");
  if (peak <= 0) peak = a.peak;

  const std::vector<double> win = gaussian_window();
  const double c1 = (kSsimK1 * peak) * (kSsimK1 * peak);
  const double c2 = (kSsimK2 * peak) * (kSsimK2 * peak);

  FrameScores scores;
  scores.per_frame.resize(a.nb);
  for (int k = 0; k < a.nb; ++k) {
    double acc = 0.0;
    long windows = 0;
    for (int r = 0; r + kSsimWindow <= a.nx; ++r)
      for (int c = 0; c + kSsimWindow <= a.ny; ++c) {
        double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0;
        for (int i = 0; i < kSsimWindow; ++i)
          for (int j = 0; j < kSsimWindow; ++j) {
            const double w = win[std::size_t(i) * kSsimWindow + j];
            const double va = a.at(r + i, c + j, k);
            const double vb = b.at(r + i, c + j, k);
            ma += w * va;
            mb += w * vb;
            saa += w * va * va;
            sbb += w * vb * vb;
            sab += w * va * vb;
          }
        const double var_a = saa - ma * ma;
        const double var_b = sbb - mb * mb;
        const double cov = sab - ma * mb;
        acc += ((2 * ma * mb + c1) * (2 * cov + c2)) /
               ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
        ++windows;
      }
    scores.per_frame[k] = acc / double(windows);
  }
  scores.mean = mean_of(scores.per_frame);
  return scores;
}

double spectral_correlation(const FrameCube& recon, const FrameCube& truth,
                            const Region& region) {
  check_shapes(recon, truth);
  if (region.rows < 1 || region.cols < 1 || region.row < 0 || region.col < 0 ||
      region.row + region.rows > recon.nx || region.col + region.cols > recon.ny)
    throw std::invalid_argument("region out of bounds");

  const int nb = recon.nb;
  std::vector<double> sa(nb, 0.0), sb(nb, 0.0);
  const double area = double(region.rows) * region.cols;
  for (int k = 0; k < nb; ++k) {
    for (int i = region.row; i < region.row + region.rows; ++i)
      for (int j = region.col; j < region.col + region.cols; ++j) {
        sa[k] += recon.at(i, j, k);
        sb[k] += truth.at(i, j, k);
      }
    sa[k] /= area;
    sb[k] /= area;
  }

  const double mean_a = mean_of(sa), mean_b = mean_of(sb);
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (int k = 0; k < nb; ++k) {
    cov += (sa[k] - mean_a) * (sb[k] - mean_b);
    var_a += (sa[k] - mean_a) * (sa[k] - mean_a);
    var_b += (sb[k] - mean_b) * (sb[k] - mean_b);
  }
  if (var_a <= 0.0 || var_b <= 0.0)
    throw std::invalid_argument("zero-variance spectrum, correlation undefined");
  return cov / std::sqrt(var_a * var_b);
}

}  // namespace sci

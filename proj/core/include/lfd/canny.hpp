#pragma once

#include <cstddef>
#include <vector>

#include "lfd/image.hpp"

namespace lfd {

/// Smoothed-image gradients from the 3x3 Sobel operator. x grows to the
/// right, y grows downwards.
struct GradientField {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> gx;
  std::vector<double> gy;
  std::vector<double> magnitude;
};

/// Normalized 1-D Gaussian taps with radius ceil(3 sigma).
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian smoothing with replicated borders.
std::vector<double> gaussian_blur(const GrayImage& image, double sigma);

GradientField sobel_gradient(const std::vector<double>& plane, std::size_t width,
                             std::size_t height);

struct CannyThresholds {
  double low = 0;
  double high = 0;
};

inline constexpr double kDefaultCannySigma = 1.4;

/// Hysteresis thresholds from the gradient histogram: high is the given
/// percentile of the nonzero magnitudes, low = low_ratio * high. Returns
/// {0, 0} when the image has no gradient at all.
CannyThresholds percentile_thresholds(const GradientField& gradient, double high_percentile = 0.9,
                                      double low_ratio = 0.4);

/// Classical Canny: Gaussian smoothing, Sobel gradient, non-maximum
/// suppression along the gradient direction quantized to 0/45/90/135 degrees,
/// then hysteresis keeping weak pixels 8-connected to a strong one.
///
/// Throws DomainError unless sigma > 0, 0 <= t_low < t_high, and the image
/// is at least as large as the Gaussian support (2 * ceil(3 sigma) + 1).
EdgeMap canny(const GrayImage& image, double sigma, double t_low, double t_high);

/// canny() with percentile_thresholds() of the smoothed image.
EdgeMap canny_auto(const GrayImage& image, double sigma = kDefaultCannySigma);

}  // namespace lfd

#include "lfd/canny.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lfd {

namespace {

// Magnitudes this small are numerical dust from the blur, not gradient.
constexpr double kZeroMagnitude = 1e-9;

std::size_t kernel_radius(double sigma) {
  return static_cast<std::size_t>(std::ceil(3.0 * sigma));
}

std::size_t clamp_index(std::ptrdiff_t i, std::size_t n) {
  if (i < 0) return 0;
  if (static_cast<std::size_t>(i) >= n) return n - 1;
  return static_cast<std::size_t>(i);
}

void check_support(std::size_t width, std::size_t height, double sigma) {
  const std::size_t support = 2 * kernel_radius(sigma) + 1;
  if (width < support || height < support) {
    throw DomainError("image " + std::to_string(width) + "x" + std::to_string(height) +
                      " is smaller than the " + std::to_string(support) +
                      " px Gaussian support");
  }
}

enum class Sector { horizontal, vertical, diagonal, anti_diagonal };

Sector quantize(double gx, double gy) {
  static const double kTan22 = std::tan(std::numbers::pi / 8.0);
  const double ax = std::abs(gx);
  const double ay = std::abs(gy);
  if (ay <= ax * kTan22) return Sector::horizontal;
  if (ax <= ay * kTan22) return Sector::vertical;
  return (gx > 0) == (gy > 0) ? Sector::diagonal : Sector::anti_diagonal;
}

// Neighbor offset in the "minus" direction of each sector; plus is its negation.
void minus_offset(Sector s, int& dx, int& dy) {
  switch (s) {
    case Sector::horizontal:
      dx = -1, dy = 0;
      return;
    case Sector::vertical:
      dx = 0, dy = -1;
      return;
    case Sector::diagonal:
      dx = -1, dy = -1;
      return;
    case Sector::anti_diagonal:
      dx = 1, dy = -1;
      return;
  }
}

std::vector<double> non_maximum_suppression(const GradientField& g) {
  const std::size_t w = g.width;
  const std::size_t h = g.height;
  std::vector<double> out(w * h, 0.0);
  auto mag = [&](std::ptrdiff_t x, std::ptrdiff_t y) {
    if (x < 0 || y < 0 || x >= static_cast<std::ptrdiff_t>(w) ||
        y >= static_cast<std::ptrdiff_t>(h)) {
      return 0.0;
    }
    return g.magnitude[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)];
  };
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t i = y * w + x;
      const double m = g.magnitude[i];
      if (m <= kZeroMagnitude) continue;
      int dx = 0, dy = 0;
      const Sector sector = quantize(g.gx[i], g.gy[i]);
      minus_offset(sector, dx, dy);
      const auto sx = static_cast<std::ptrdiff_t>(x);
      const auto sy = static_cast<std::ptrdiff_t>(y);
      const double minus = mag(sx + dx, sy + dy);
      const double plus = mag(sx - dx, sy - dy);
      // A plateau of equal magnitudes (a symmetric step) keeps only its
      // pixel on the minus side, so a step yields a one-pixel chain. The
      // anti-diagonal has no transpose-invariant minus side and stays strict.
      const double tol = 1e-9 * std::max(1.0, m);
      const bool strict_plus = sector == Sector::anti_diagonal;
      if (m > minus + tol && (strict_plus ? m > plus + tol : m >= plus - tol)) out[i] = m;
    }
  }
  return out;
}

// Threshold test tolerant to rounding, so symmetric edges whose peaks equal
// the percentile threshold are classified alike.
bool reaches(double m, double threshold) {
  return m > kZeroMagnitude && m >= threshold - 1e-9 * std::max(1.0, threshold);
}

EdgeMap hysteresis(const std::vector<double>& thin, std::size_t w, std::size_t h, double t_low,
                   double t_high) {
  EdgeMap edges(w, h);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < thin.size(); ++i) {
    if (reaches(thin[i], t_high) && !edges.mask[i]) {
      edges.mask[i] = 1;
      stack.push_back(i);
      while (!stack.empty()) {
        const std::size_t j = stack.back();
        stack.pop_back();
        const auto jx = static_cast<std::ptrdiff_t>(j % w);
        const auto jy = static_cast<std::ptrdiff_t>(j / w);
        for (int oy = -1; oy <= 1; ++oy) {
          for (int ox = -1; ox <= 1; ++ox) {
            const std::ptrdiff_t nx = jx + ox;
            const std::ptrdiff_t ny = jy + oy;
            if ((ox == 0 && oy == 0) || nx < 0 || ny < 0 ||
                nx >= static_cast<std::ptrdiff_t>(w) || ny >= static_cast<std::ptrdiff_t>(h)) {
              continue;
            }
            const std::size_t k = static_cast<std::size_t>(ny) * w + static_cast<std::size_t>(nx);
            if (!edges.mask[k] && reaches(thin[k], t_low)) {
              edges.mask[k] = 1;
              stack.push_back(k);
            }
          }
        }
      }
    }
  }
  return edges;
}

}  // namespace

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive");
  const std::size_t r = kernel_radius(sigma);
  std::vector<double> k(2 * r + 1);
  double sum = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double d = static_cast<double>(i) - static_cast<double>(r);
    k[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (auto& v : k) v /= sum;
  return k;
}

std::vector<double> gaussian_blur(const GrayImage& image, double sigma) {
  image.validate();
  const auto kernel = gaussian_kernel(sigma);
  check_support(image.width, image.height, sigma);
  const auto r = static_cast<std::ptrdiff_t>(kernel.size() / 2);
  const std::size_t w = image.width;
  const std::size_t h = image.height;

  // Row-then-column and column-then-row passes differ in rounding; their
  // average is exactly transpose-equivariant.
  auto pass = [&](const std::vector<double>& in, bool along_rows) {
    std::vector<double> out(w * h);
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        double acc = 0;
        for (std::ptrdiff_t k = -r; k <= r; ++k) {
          const double tap = kernel[static_cast<std::size_t>(k + r)];
          if (along_rows) {
            acc += tap * in[y * w + clamp_index(static_cast<std::ptrdiff_t>(x) + k, w)];
          } else {
            acc += tap * in[clamp_index(static_cast<std::ptrdiff_t>(y) + k, h) * w + x];
          }
        }
        out[y * w + x] = acc;
      }
    }
    return out;
  };
  const std::vector<double> source(image.pixels.begin(), image.pixels.end());
  const auto rc = pass(pass(source, true), false);
  const auto cr = pass(pass(source, false), true);
  std::vector<double> out(w * h);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (rc[i] + cr[i]);
  return out;
}

GradientField sobel_gradient(const std::vector<double>& plane, std::size_t w, std::size_t h) {
  if (plane.size() != w * h) throw DomainError("plane size does not match dimensions");
  GradientField g;
  g.width = w;
  g.height = h;
  g.gx.assign(w * h, 0.0);
  g.gy.assign(w * h, 0.0);
  g.magnitude.assign(w * h, 0.0);
  auto px = [&](std::ptrdiff_t x, std::ptrdiff_t y) {
    return plane[clamp_index(y, h) * w + clamp_index(x, w)];
  };
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const auto sx = static_cast<std::ptrdiff_t>(x);
      const auto sy = static_cast<std::ptrdiff_t>(y);
      const double gx = (px(sx + 1, sy - 1) + 2.0 * px(sx + 1, sy) + px(sx + 1, sy + 1)) -
                        (px(sx - 1, sy - 1) + 2.0 * px(sx - 1, sy) + px(sx - 1, sy + 1));
      const double gy = (px(sx - 1, sy + 1) + 2.0 * px(sx, sy + 1) + px(sx + 1, sy + 1)) -
                        (px(sx - 1, sy - 1) + 2.0 * px(sx, sy - 1) + px(sx + 1, sy - 1));
      const std::size_t i = y * w + x;
      g.gx[i] = gx;
      g.gy[i] = gy;
      g.magnitude[i] = std::hypot(gx, gy);
    }
  }
  return g;
}

CannyThresholds percentile_thresholds(const GradientField& gradient, double high_percentile,
                                      double low_ratio) {
  if (!(high_percentile >= 0 && high_percentile <= 1)) {
    throw DomainError("percentile must lie in [0, 1]");
  }
  if (!(low_ratio > 0 && low_ratio < 1)) throw DomainError("low_ratio must lie in (0, 1)");
  std::vector<double> nonzero;
  for (double m : gradient.magnitude) {
    if (m > kZeroMagnitude) nonzero.push_back(m);
  }
  if (nonzero.empty()) return {0.0, 0.0};
  const auto idx = static_cast<std::size_t>(
      std::floor(high_percentile * static_cast<double>(nonzero.size() - 1)));
  std::nth_element(nonzero.begin(), nonzero.begin() + static_cast<std::ptrdiff_t>(idx),
                   nonzero.end());
  const double high = nonzero[idx];
  return {low_ratio * high, high};
}

EdgeMap canny(const GrayImage& image, double sigma, double t_low, double t_high) {
  if (!(sigma > 0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive");
  if (!(t_low >= 0) || !(t_low < t_high)) throw DomainError("thresholds need 0 <= t_low < t_high");
  const auto smooth = gaussian_blur(image, sigma);
  const auto gradient = sobel_gradient(smooth, image.width, image.height);
  const auto thin = non_maximum_suppression(gradient);
  return hysteresis(thin, image.width, image.height, t_low, t_high);
}

EdgeMap canny_auto(const GrayImage& image, double sigma) {
  const auto smooth = gaussian_blur(image, sigma);
  const auto gradient = sobel_gradient(smooth, image.width, image.height);
  const auto t = percentile_thresholds(gradient);
  if (t.high <= kZeroMagnitude) return EdgeMap(image.width, image.height);
  const auto thin = non_maximum_suppression(gradient);
  return hysteresis(thin, image.width, image.height, t.low, t.high);
}

}  // namespace lfd

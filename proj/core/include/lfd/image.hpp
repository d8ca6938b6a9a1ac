#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "lfd/core_model.hpp"

namespace lfd {

/// Row-major 8-bit grayscale raster with its physical scale.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;
  double mm_per_pixel = 1.0;

  GrayImage() = default;
  GrayImage(std::size_t w, std::size_t h, std::uint8_t fill = 0, double scale = 1.0)
      : width(w), height(h), pixels(w * h, fill), mm_per_pixel(scale) {}

  std::uint8_t& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }

  void validate() const;
  GrayImage transposed() const;
};

/// Binary edge mask, same geometry as its source image.
struct EdgeMap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> mask;  // 0 or 1

  EdgeMap() = default;
  EdgeMap(std::size_t w, std::size_t h) : width(w), height(h), mask(w * h, 0) {}

  bool edge(std::size_t x, std::size_t y) const { return mask[y * width + x] != 0; }
  std::size_t count() const;
  /// Edge pixels white (255) on black.
  GrayImage to_image() const;
  EdgeMap transposed() const;
};

/// ITU-R BT.601 luma, rounded to nearest.
std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Binary PGM (P5, maxval <= 255). Throws FormatError.
GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const GrayImage& image, const std::filesystem::path& path);

/// 8-bit gray, gray+alpha, RGB or RGBA PNG; color is reduced to luma.
/// 16-bit samples are reduced to 8 bits. Throws FormatError.
GrayImage load_png(const std::filesystem::path& path);
void save_png(const GrayImage& image, const std::filesystem::path& path);

/// Dispatches on the file signature.
GrayImage load_image(const std::filesystem::path& path, double mm_per_pixel);

}  // namespace lfd

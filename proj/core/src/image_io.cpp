#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

#include "lfd/image.hpp"

namespace lfd {

namespace {

// Reads the next PNM header token, skipping whitespace and '#' comments.
std::string pnm_token(std::istream& in) {
  std::string token;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      if (!token.empty()) break;
    } else {
      token += static_cast<char>(c);
    }
    c = in.get();
  }
  return token;
}

}  // namespace

void GrayImage::validate() const {
  if (pixels.size() != width * height) throw DomainError("pixel count does not match dimensions");
  if (!(mm_per_pixel > 0) || !std::isfinite(mm_per_pixel)) {
    throw DomainError("mm_per_pixel must be positive");
  }
}

GrayImage GrayImage::transposed() const {
  GrayImage out(height, width, 0, mm_per_pixel);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) out.at(y, x) = at(x, y);
  }
  return out;
}

std::size_t EdgeMap::count() const {
  std::size_t n = 0;
  for (auto m : mask) n += m != 0;
  return n;
}

GrayImage EdgeMap::to_image() const {
  GrayImage out(width, height);
  for (std::size_t i = 0; i < mask.size(); ++i) out.pixels[i] = mask[i] ? 255 : 0;
  return out;
}

EdgeMap EdgeMap::transposed() const {
  EdgeMap out(height, width);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) out.mask[x * height + y] = mask[y * width + x];
  }
  return out;
}

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  return static_cast<std::uint8_t>(std::lround(std::min(255.0, y)));
}

GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  if (pnm_token(in) != "P5") throw FormatError(path.string() + ": not a binary PGM (P5)");
  std::size_t w = 0, h = 0;
  int maxval = 0;
  try {
    w = std::stoul(pnm_token(in));
    h = std::stoul(pnm_token(in));
    maxval = std::stoi(pnm_token(in));
  } catch (const std::exception&) {
    throw FormatError(path.string() + ": malformed PGM header");
  }
  if (w == 0 || h == 0 || maxval <= 0 || maxval > 255) {
    throw FormatError(path.string() + ": unsupported PGM geometry or maxval");
  }
  GrayImage img(w, h);
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(w * h));
  if (in.gcount() != static_cast<std::streamsize>(w * h)) {
    throw FormatError(path.string() + ": truncated PGM data");
  }
  if (maxval != 255) {
    for (auto& p : img.pixels) {
      p = static_cast<std::uint8_t>(std::lround(255.0 * std::min<int>(p, maxval) / maxval));
    }
  }
  return img;
}

void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw FormatError("failed writing " + path.string());
}

GrayImage load_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw FormatError(path.string() + ": " + image.message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGBA : PNG_FORMAT_GA;
  const std::size_t channels = color ? 4 : 2;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw FormatError(path.string() + ": " + message);
  }

  GrayImage img(image.width, image.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const png_byte* px = buffer.data() + i * channels;
    img.pixels[i] = color ? luma(px[0], px[1], px[2]) : px[0];
  }
  return img;
}

void save_png(const GrayImage& image, const std::filesystem::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&png, path.c_str(), 0, image.pixels.data(), 0, nullptr)) {
    throw FormatError("cannot write " + path.string() + ": " + png.message);
  }
}

GrayImage load_image(const std::filesystem::path& path, double mm_per_pixel) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw FormatError("cannot open " + path.string());
  char magic[8] = {};
  probe.read(magic, 8);
  probe.close();
  GrayImage img;
  if (magic[0] == 'P' && magic[1] == '5') {
    img = load_pgm(path);
  } else if (static_cast<unsigned char>(magic[0]) == 0x89 && magic[1] == 'P' && magic[2] == 'N' &&
             magic[3] == 'G') {
    img = load_png(path);
  } else {
    throw FormatError(path.string() + ": unrecognized image format (expected PNG or P5 PGM)");
  }
  img.mm_per_pixel = mm_per_pixel;
  img.validate();
  return img;
}

}  // namespace lfd

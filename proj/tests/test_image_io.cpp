#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "lfd/image.hpp"

namespace lfd {
namespace {

namespace fs = std::filesystem;

class ImageIo : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lfd_image_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  GrayImage gradient_image() const {
    GrayImage img(13, 7, 0, 0.05);
    for (std::size_t y = 0; y < img.height; ++y) {
      for (std::size_t x = 0; x < img.width; ++x) {
        img.at(x, y) = static_cast<std::uint8_t>(x * 19 + y * 3);
      }
    }
    return img;
  }

  fs::path dir_;
};

TEST_F(ImageIo, PgmRoundTrip) {
  const auto img = gradient_image();
  save_pgm(img, dir_ / "a.pgm");
  const auto back = load_pgm(dir_ / "a.pgm");
  EXPECT_EQ(back.width, img.width);
  EXPECT_EQ(back.height, img.height);
  EXPECT_EQ(back.pixels, img.pixels);
  EXPECT_EQ(load_image(dir_ / "a.pgm", 0.05).mm_per_pixel, 0.05);
}

TEST_F(ImageIo, PgmWithCommentHeader) {
  std::ofstream(dir_ / "c.pgm", std::ios::binary) << "P5\n# scanner\n2 1\n255\n" << char(10)
                                                   << char(200);
  const auto img = load_pgm(dir_ / "c.pgm");
  EXPECT_EQ(img.pixels, (std::vector<std::uint8_t>{10, 200}));
}

TEST_F(ImageIo, PngRoundTrip) {
  const auto img = gradient_image();
  save_png(img, dir_ / "a.png");
  const auto back = load_image(dir_ / "a.png", 0.1);
  EXPECT_EQ(back.pixels, img.pixels);
  EXPECT_EQ(back.mm_per_pixel, 0.1);
}

TEST_F(ImageIo, Errors) {
  EXPECT_THROW(load_image(dir_ / "missing.png", 1), FormatError);
  std::ofstream(dir_ / "junk.png") << "not an image";
  EXPECT_THROW(load_image(dir_ / "junk.png", 1), FormatError);
  std::ofstream(dir_ / "short.pgm", std::ios::binary) << "P5\n4 4\n255\n" << "ab";
  EXPECT_THROW(load_pgm(dir_ / "short.pgm"), FormatError);
  const auto img = gradient_image();
  save_pgm(img, dir_ / "ok.pgm");
  EXPECT_THROW(load_image(dir_ / "ok.pgm", 0), DomainError);
}

TEST(Luma, Weights) {
  EXPECT_EQ(luma(255, 255, 255), 255);
  EXPECT_EQ(luma(0, 0, 0), 0);
  EXPECT_EQ(luma(255, 0, 0), 76);
  EXPECT_EQ(luma(0, 255, 0), 150);
  EXPECT_EQ(luma(0, 0, 255), 29);
}

TEST(GrayImage, TransposeTwiceIsIdentity) {
  GrayImage img(3, 2, 0, 0.5);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = static_cast<std::uint8_t>(i);
  const auto t = img.transposed();
  EXPECT_EQ(t.width, 2u);
  EXPECT_EQ(t.at(1, 2), img.at(2, 1));
  const auto back = t.transposed();
  EXPECT_EQ(back.pixels, img.pixels);
  EXPECT_EQ(back.mm_per_pixel, 0.5);
}

}  // namespace
}  // namespace lfd

#include <benchmark/benchmark.h>

#include <cstdint>

#include "lfd/canny.hpp"
#include "lfd/line_width.hpp"

namespace {

// A bright horizontal band on a dark background, `w` px long.
lfd::GrayImage band(std::size_t w, std::size_t h) {
  lfd::GrayImage img(w, h, 40);
  img.mm_per_pixel = 0.05;
  for (std::size_t y = h / 2 - 9; y < h / 2 + 9; ++y) {
    for (std::size_t x = 0; x < w; ++x) img.at(x, y) = 210;
  }
  return img;
}

void BM_CannyAuto(benchmark::State& state) {
  const auto img = band(static_cast<std::size_t>(state.range(0)), 64);
  for (auto _ : state) benchmark::DoNotOptimize(lfd::canny_auto(img));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(img.pixels.size()));
}
BENCHMARK(BM_CannyAuto)->Arg(256)->Arg(1024)->Arg(2400);

void BM_AnalyzeImage(benchmark::State& state) {
  const auto img = band(2400, 64);
  for (auto _ : state) benchmark::DoNotOptimize(lfd::analyze_image(img, lfd::AnalysisParams{}));
}
BENCHMARK(BM_AnalyzeImage);

}  // namespace

BENCHMARK_MAIN();

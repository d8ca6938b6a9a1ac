#include <gtest/gtest.h>

#include <cmath>

#include "lfd/line_width.hpp"
#include "support/synthetic.hpp"

namespace lfd {
namespace {

using testing::Band;
using testing::band_image;

LineBand constant_band(std::size_t columns, double left, double right) {
  LineBand b;
  b.columns.assign(columns, EdgePair{left, right});
  return b;
}

TEST(PairEdges, TwoParallelBands) {
  const auto img = band_image(120, 80, {{15, 10}, {50, 12}});
  const auto bands = pair_edges(canny_auto(img), 2, TravelAxis::horizontal);
  ASSERT_EQ(bands.size(), 2u);
  EXPECT_EQ(bands[0].gap_count(), 0u);
  EXPECT_EQ(bands[1].gap_count(), 0u);
  EXPECT_NEAR(*bands[0].mean_center(), 19.5, 1.0);
  EXPECT_NEAR(*bands[1].mean_center(), 55.5, 1.0);
  for (const auto& b : bands) {
    for (const auto& c : b.columns) EXPECT_LT(c->left, c->right);
  }
}

TEST(PairEdges, SingleBand) {
  const auto img = band_image(100, 40, {{15, 9}});
  const auto bands = pair_edges(canny_auto(img), 1, TravelAxis::horizontal);
  ASSERT_EQ(bands.size(), 1u);
  EXPECT_EQ(bands[0].columns.size(), 100u);
  EXPECT_EQ(bands[0].paired_count(), 100u);
}

TEST(PairEdges, DropoutBecomesGaps) {
  // Edge map with two straight chains and five empty columns.
  EdgeMap e(50, 30);
  for (std::size_t x = 0; x < e.width; ++x) {
    if (x >= 20 && x < 25) continue;
    e.mask[10 * e.width + x] = 1;
    e.mask[19 * e.width + x] = 1;
  }
  const auto bands = pair_edges(e, 1, TravelAxis::horizontal);
  ASSERT_EQ(bands.size(), 1u);
  EXPECT_EQ(bands[0].gap_count(), 5u);
  for (std::size_t x = 20; x < 25; ++x) EXPECT_FALSE(bands[0].columns[x].has_value());
  EXPECT_EQ(bands[0].columns[0], (EdgePair{10, 19}));
}

TEST(PairEdges, DropoutInImage) {
  auto img = band_image(200, 40, {{15, 9}});
  testing::drop_out(img, 100, 105);
  const auto bands = pair_edges(canny_auto(img), 1, TravelAxis::horizontal);
  EXPECT_GE(bands[0].gap_count(), 5u);
  EXPECT_FALSE(bands[0].columns[102].has_value());
  EXPECT_GT(bands[0].paired_count(), 150u);
}

TEST(PairEdges, AdjacentEdgePixelsCountOnce) {
  EdgeMap e(10, 20);
  for (std::size_t x = 0; x < e.width; ++x) {
    e.mask[4 * e.width + x] = 1;
    e.mask[5 * e.width + x] = 1;
    e.mask[14 * e.width + x] = 1;
  }
  const auto bands = pair_edges(e, 1, TravelAxis::horizontal);
  EXPECT_EQ(bands[0].columns[0], (EdgePair{4.5, 14}));
}

TEST(PairEdges, FailsWhenMostColumnsUnpairable) {
  EdgeMap e(40, 20);
  for (std::size_t x = 0; x < 10; ++x) {
    e.mask[3 * e.width + x] = 1;
    e.mask[9 * e.width + x] = 1;
  }
  try {
    pair_edges(e, 1, TravelAxis::horizontal);
    FAIL() << "expected AnalysisError";
  } catch (const AnalysisError& err) {
    EXPECT_GE(err.details().size(), 2u);
  }
  EXPECT_THROW(pair_edges(e, 0, TravelAxis::horizontal), DomainError);
}

TEST(WidthSeries, DefaultsGiveTwentyEightBins) {
  const auto s = width_series(constant_band(2200, 10, 28), 0.05);
  ASSERT_EQ(s.bins.size(), 28u);
  EXPECT_EQ(s.bins.front().start, 40.0);
  EXPECT_EQ(s.bins.back().start, 107.5);
  for (const auto& b : s.bins) {
    EXPECT_EQ(b.sample_count, 50u);
    EXPECT_NEAR(b.mean_width, 0.9, 1e-12);
  }
}

TEST(WidthSeries, SyntheticPointNineMillimetreBand) {
  // 0.90 mm at 0.05 mm/px is 18 px.
  const auto img = band_image(2200, 60, {{20, 18}}, true, 200, 50, 0.05);
  AnalysisParams params;
  const auto result = analyze_image(img, params);
  ASSERT_EQ(result.series.size(), 1u);
  ASSERT_EQ(result.series[0].bins.size(), 28u);
  for (const auto& b : result.series[0].bins) {
    EXPECT_GT(b.sample_count, 0u);
    EXPECT_NEAR(b.mean_width, 0.90, 0.05);
  }
}

TEST(WidthSeries, AllGapBandIsError) {
  LineBand b;
  b.columns.assign(3000, std::nullopt);
  EXPECT_THROW(width_series(b, 0.05), DomainError);
}

TEST(WidthSeries, ShortBandNamesShortfall) {
  try {
    width_series(constant_band(1000, 0, 10), 0.05);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("short by 60"), std::string::npos) << e.what();
  }
}

TEST(WidthSeries, ScaleEquivariantForPowersOfTwo) {
  const auto img = testing::wobbly_band_image(2400, 60, 30, 10, 22, 8, 7);
  const auto edges = canny_auto(img);
  const auto band = pair_edges(edges, 1, TravelAxis::horizontal)[0];
  const auto base = width_series(band, 0.05, 40, 70, 2.5);
  for (double k : {2.0, 4.0, 0.5}) {
    const auto scaled = width_series(band, 0.05 * k, 40 * k, 70 * k, 2.5 * k);
    ASSERT_EQ(scaled.bins.size(), base.bins.size());
    for (std::size_t i = 0; i < base.bins.size(); ++i) {
      EXPECT_EQ(scaled.bins[i].mean_width, base.bins[i].mean_width * k);
      EXPECT_EQ(scaled.bins[i].sample_count, base.bins[i].sample_count);
    }
  }
}

TEST(WidthSeries, TransposeSwappingAxisIsIdentical) {
  const auto img = testing::wobbly_band_image(2400, 60, 30, 10, 22, 8, 3);
  AnalysisParams h;
  h.axis = TravelAxis::horizontal;
  AnalysisParams v = h;
  v.axis = TravelAxis::vertical;
  GrayImage scaled = img;
  scaled.mm_per_pixel = 0.05;
  GrayImage transposed = scaled.transposed();
  const auto a = analyze_image(scaled, h);
  const auto b = analyze_image(transposed, v);
  EXPECT_EQ(a.series, b.series);
}

TEST(WidthSeries, MeasuredWidthWithinOnePixelAcrossSigma) {
  for (std::size_t w : {6u, 9u, 14u, 21u}) {
    const auto img = band_image(300, 80, {{30, w}});
    for (double sigma : {1.0, 1.25, 1.5, 1.75, 2.0}) {
      const auto band = pair_edges(canny_auto(img, sigma), 1, TravelAxis::horizontal)[0];
      double sum = 0;
      std::size_t n = 0;
      for (const auto& c : band.columns) {
        if (!c) continue;
        sum += c->width();
        ++n;
      }
      ASSERT_GT(n, 0u);
      const double mean = sum / static_cast<double>(n);
      EXPECT_GE(mean, static_cast<double>(w) - 1.0) << "w " << w << " sigma " << sigma;
      EXPECT_LE(mean, static_cast<double>(w) + 1.0) << "w " << w << " sigma " << sigma;
    }
  }
}

TEST(WidthSeriesCsv, RoundTrip) {
  WidthSeries s;
  s.bins = {{40, 0.9, 3}, {42.5, 0, 0}, {45, 0.875, 2}};
  const auto csv = width_series_to_csv(s);
  EXPECT_EQ(csv,
            "bin_index,bin_start_mm,mean_width_mm,sample_count\n"
            "0,40,0.9,3\n1,42.5,0,0\n2,45,0.875,2\n");
  EXPECT_EQ(samples_from_csv(csv), (std::vector<double>{0.9, 0.875}));
  EXPECT_EQ(samples_from_csv("0.5\n0.75\n"), (std::vector<double>{0.5, 0.75}));
  EXPECT_THROW(samples_from_csv("a,b\n1,2\n"), FormatError);
  EXPECT_THROW(samples_from_csv("mean_width_mm\nx\n"), FormatError);
}

TEST(TravelAxis, Strings) {
  EXPECT_EQ(travel_axis_from_string("vertical"), TravelAxis::vertical);
  EXPECT_STREQ(to_string(TravelAxis::horizontal), "horizontal");
  EXPECT_THROW(travel_axis_from_string("diagonal"), DomainError);
}

}  // namespace
}  // namespace lfd

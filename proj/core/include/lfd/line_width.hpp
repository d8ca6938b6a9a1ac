#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lfd/canny.hpp"
#include "lfd/image.hpp"

namespace lfd {

/// Direction the bed moved while the line was dispensed, in image terms.
/// horizontal: lines run left to right, each image column crosses them.
enum class TravelAxis { horizontal, vertical };

const char* to_string(TravelAxis axis);
TravelAxis travel_axis_from_string(const std::string& text);

struct EdgePair {
  double left = 0;   // px, smaller coordinate across the line
  double right = 0;  // px

  double width() const { return right - left; }
  double center() const { return 0.5 * (left + right); }

  bool operator==(const EdgePair&) const = default;
};

/// One dispensed line: an edge pair for every position along travel, or a
/// gap where the crossing count did not match.
struct LineBand {
  std::vector<std::optional<EdgePair>> columns;

  std::size_t paired_count() const;
  std::size_t gap_count() const { return columns.size() - paired_count(); }
  /// Mean center across paired columns, px. nullopt when fully gapped.
  std::optional<double> mean_center() const;

  bool operator==(const LineBand&) const = default;
};

/// Raised when too few columns can be paired.
class AnalysisError : public DomainError {
 public:
  AnalysisError(const std::string& message, std::vector<std::string> details);

  const std::vector<std::string>& details() const { return details_; }

 private:
  std::vector<std::string> details_;
};

/// Walks every position along `axis`, collects edge crossings across it
/// (a run of adjacent edge pixels counts once, at its center), and pairs
/// them in order into `expected_lines` bands. Positions whose crossing count
/// differs from 2 * expected_lines become gaps. Throws AnalysisError when
/// fewer than half of the positions pair, DomainError for expected_lines == 0.
std::vector<LineBand> pair_edges(const EdgeMap& edges, std::size_t expected_lines,
                                 TravelAxis axis);

inline constexpr double kDefaultExclusion = 40.0;  // mm
inline constexpr double kDefaultWindow = 70.0;     // mm
inline constexpr double kDefaultBin = 2.5;         // mm

struct WidthBin {
  double start = 0;       // mm along travel
  double mean_width = 0;  // mm, 0 when sample_count == 0
  std::size_t sample_count = 0;

  bool operator==(const WidthBin&) const = default;
};

struct WidthSeries {
  double bin_length = kDefaultBin;
  double exclusion = kDefaultExclusion;
  double window = kDefaultWindow;
  std::vector<WidthBin> bins;

  /// Bin means of the bins that hold samples.
  std::vector<double> populated_means() const;

  bool operator==(const WidthSeries&) const = default;
};

/// Averages per-position widths into floor(window / bin) bins that start
/// `exclusion` mm into the band. Position i spans [i, i+1) * mm_per_pixel and
/// is assigned by its midpoint. Throws DomainError when the band is shorter
/// than exclusion + window or holds no paired position in the window.
WidthSeries width_series(const LineBand& band, double mm_per_pixel,
                         double exclusion = kDefaultExclusion, double window = kDefaultWindow,
                         double bin = kDefaultBin);

/// bin_index,bin_start_mm,mean_width_mm,sample_count
std::string width_series_to_csv(const WidthSeries& series);
/// Reads the CSV above; returns the mean widths of bins with samples.
/// Also accepts a header-less single column of numbers. Throws FormatError.
std::vector<double> samples_from_csv(const std::string& text);

struct AnalysisParams {
  std::size_t lines = 1;
  TravelAxis axis = TravelAxis::horizontal;
  double sigma = kDefaultCannySigma;
  double exclusion = kDefaultExclusion;
  double window = kDefaultWindow;
  double bin = kDefaultBin;
};

struct ImageAnalysis {
  EdgeMap edges;
  std::vector<LineBand> bands;
  std::vector<WidthSeries> series;  // one per band, in band order
};

/// canny_auto -> pair_edges -> width_series using image.mm_per_pixel.
ImageAnalysis analyze_image(const GrayImage& image, const AnalysisParams& params);

}  // namespace lfd

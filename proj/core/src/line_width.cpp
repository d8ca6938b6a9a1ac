#include "lfd/line_width.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "lfd/decimal.hpp"

namespace lfd {

namespace {

std::vector<std::string> split_csv_row(const std::string& row) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(row);
  while (std::getline(in, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

// Crossing centers along one line of pixels perpendicular to travel.
std::vector<double> crossings(const EdgeMap& edges, std::size_t position, TravelAxis axis) {
  const std::size_t across = axis == TravelAxis::horizontal ? edges.height : edges.width;
  std::vector<double> out;
  std::size_t run_start = 0;
  bool in_run = false;
  for (std::size_t i = 0; i <= across; ++i) {
    bool on = false;
    if (i < across) {
      on = axis == TravelAxis::horizontal ? edges.edge(position, i) : edges.edge(i, position);
    }
    if (on && !in_run) {
      run_start = i;
      in_run = true;
    } else if (!on && in_run) {
      out.push_back(0.5 * static_cast<double>(run_start + i - 1));
      in_run = false;
    }
  }
  return out;
}

}  // namespace

const char* to_string(TravelAxis axis) {
  return axis == TravelAxis::horizontal ? "horizontal" : "vertical";
}

TravelAxis travel_axis_from_string(const std::string& text) {
  if (text == "horizontal" || text == "x") return TravelAxis::horizontal;
  if (text == "vertical" || text == "y") return TravelAxis::vertical;
  throw DomainError("unknown travel axis '" + text + "' (expected horizontal or vertical)");
}

std::size_t LineBand::paired_count() const {
  return static_cast<std::size_t>(
      std::count_if(columns.begin(), columns.end(), [](const auto& c) { return c.has_value(); }));
}

std::optional<double> LineBand::mean_center() const {
  double sum = 0;
  std::size_t n = 0;
  for (const auto& c : columns) {
    if (c) {
      sum += c->center();
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

AnalysisError::AnalysisError(const std::string& message, std::vector<std::string> details)
    : DomainError(message), details_(std::move(details)) {}

std::vector<LineBand> pair_edges(const EdgeMap& edges, std::size_t expected_lines,
                                 TravelAxis axis) {
  if (expected_lines == 0) throw DomainError("expected_lines must be at least 1");
  const std::size_t along = axis == TravelAxis::horizontal ? edges.width : edges.height;
  const std::size_t wanted = 2 * expected_lines;

  std::vector<LineBand> bands(expected_lines);
  for (auto& b : bands) b.columns.assign(along, std::nullopt);

  std::map<std::size_t, std::size_t> histogram;  // crossing count -> positions
  std::size_t paired = 0;
  for (std::size_t pos = 0; pos < along; ++pos) {
    const auto c = crossings(edges, pos, axis);
    ++histogram[c.size()];
    if (c.size() != wanted) continue;
    ++paired;
    for (std::size_t line = 0; line < expected_lines; ++line) {
      bands[line].columns[pos] = EdgePair{c[2 * line], c[2 * line + 1]};
    }
  }

  if (along == 0 || 2 * paired < along) {
    std::vector<std::string> details;
    details.push_back("paired " + std::to_string(paired) + " of " + std::to_string(along) +
                      " positions; need at least half");
    for (const auto& [count, n] : histogram) {
      details.push_back(std::to_string(n) + " position(s) with " + std::to_string(count) +
                        " crossing(s), expected " + std::to_string(wanted));
    }
    throw AnalysisError("edge pairing failed: " + details.front(), details);
  }
  return bands;
}

std::vector<double> WidthSeries::populated_means() const {
  std::vector<double> out;
  for (const auto& b : bins) {
    if (b.sample_count > 0) out.push_back(b.mean_width);
  }
  return out;
}

WidthSeries width_series(const LineBand& band, double mm_per_pixel, double exclusion,
                         double window, double bin) {
  if (!(mm_per_pixel > 0) || !std::isfinite(mm_per_pixel)) {
    throw DomainError("mm_per_pixel must be positive");
  }
  if (!(exclusion >= 0) || !(window > 0) || !(bin > 0)) {
    throw DomainError("need exclusion >= 0, window > 0 and bin > 0");
  }
  const auto n_bins = static_cast<std::size_t>(std::floor(window / bin + 1e-9));
  if (n_bins == 0) throw DomainError("window is shorter than one bin");

  const double covered = static_cast<double>(band.columns.size()) * mm_per_pixel;
  const double needed = exclusion + window;
  if (covered + 1e-9 < needed) {
    throw DomainError("band covers " + format_decimal(covered, 3) + " mm but exclusion + window needs " +
                      format_decimal(needed, 3) + " mm (short by " +
                      format_decimal(needed - covered, 3) + " mm)");
  }

  std::vector<double> sum_px(n_bins, 0.0);
  std::vector<std::size_t> count(n_bins, 0);
  for (std::size_t i = 0; i < band.columns.size(); ++i) {
    const auto& c = band.columns[i];
    if (!c) continue;
    const double mid = (static_cast<double>(i) + 0.5) * mm_per_pixel;
    if (mid < exclusion) continue;
    const auto k = static_cast<std::size_t>(std::floor((mid - exclusion) / bin));
    if (k >= n_bins) continue;
    sum_px[k] += c->width();
    ++count[k];
  }

  WidthSeries series;
  series.bin_length = bin;
  series.exclusion = exclusion;
  series.window = window;
  series.bins.resize(n_bins);
  std::size_t total = 0;
  for (std::size_t k = 0; k < n_bins; ++k) {
    auto& b = series.bins[k];
    b.start = exclusion + static_cast<double>(k) * bin;
    b.sample_count = count[k];
    if (count[k] > 0) b.mean_width = (sum_px[k] / static_cast<double>(count[k])) * mm_per_pixel;
    total += count[k];
  }
  if (total == 0) throw DomainError("no paired edge positions inside the analysis window");
  return series;
}

std::string width_series_to_csv(const WidthSeries& series) {
  std::string out = "bin_index,bin_start_mm,mean_width_mm,sample_count\n";
  for (std::size_t k = 0; k < series.bins.size(); ++k) {
    const auto& b = series.bins[k];
    out += std::to_string(k) + ',' + format_decimal(b.start, 4) + ',' +
           format_decimal(b.mean_width, 6) + ',' + std::to_string(b.sample_count) + '\n';
  }
  return out;
}

std::vector<double> samples_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string row;
  std::vector<double> out;
  std::optional<std::size_t> width_col;
  std::optional<std::size_t> count_col;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, row)) {
    ++line_no;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty() || row[0] == '#') continue;
    const auto cells = split_csv_row(row);
    if (first) {
      first = false;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "mean_width_mm") width_col = i;
        if (cells[i] == "sample_count") count_col = i;
      }
      if (width_col) continue;
      if (cells.size() != 1 || !parse_decimal(cells[0])) {
        throw FormatError("series CSV needs a mean_width_mm column or a single numeric column");
      }
    }
    const std::size_t col = width_col.value_or(0);
    if (col >= cells.size()) throw FormatError("short row at line " + std::to_string(line_no));
    const auto v = parse_decimal(cells[col]);
    if (!v) throw FormatError("non-numeric width at line " + std::to_string(line_no));
    if (count_col) {
      if (*count_col >= cells.size()) throw FormatError("short row at line " + std::to_string(line_no));
      const auto n = parse_decimal(cells[*count_col]);
      if (!n) throw FormatError("non-numeric sample_count at line " + std::to_string(line_no));
      if (*n == 0) continue;
    }
    out.push_back(*v);
  }
  return out;
}

ImageAnalysis analyze_image(const GrayImage& image, const AnalysisParams& params) {
  ImageAnalysis result;
  result.edges = canny_auto(image, params.sigma);
  result.bands = pair_edges(result.edges, params.lines, params.axis);
  for (const auto& band : result.bands) {
    result.series.push_back(
        width_series(band, image.mm_per_pixel, params.exclusion, params.window, params.bin));
  }
  return result;
}

}  // namespace lfd

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace moyal::app {

// RFC 4180: CRLF line ends, fields quoted when they contain a comma, quote,
// CR or LF, embedded quotes doubled.
std::string csv_escape(std::string_view field);

// Shortest round-trip decimal; empty for NaN so missing values stay blank.
std::string cell(double v);
std::string cell(long long v);
inline std::string cell(std::size_t v) { return cell(static_cast<long long>(v)); }
inline std::string cell(int v) { return cell(static_cast<long long>(v)); }

class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  void row(const std::vector<std::string>& fields);
  std::size_t rows() const noexcept { return rows_; }
  const std::string& str() const noexcept { return text_; }

 private:
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
  std::string color = "#1f77b4";
  bool markers = false;     // dots instead of a polyline
  double width = 1.5;
};

struct PlotSpec {
  std::string title, x_label, y_label;
  bool log_y = false;
  bool bars = false;        // draw the first series as a histogram
};

std::string line_plot(const PlotSpec& spec, const std::vector<PlotSeries>& series);

// values[iy * nx + ix]; diverging colour map centred on zero.
std::string heatmap(const PlotSpec& spec, const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<double>& values);

// Named text files, written together (sorted by name) once a run is complete.
class Artifacts {
 public:
  void add(const std::string& name, std::string content);
  const std::map<std::string, std::string>& files() const noexcept { return files_; }
  void write(const std::filesystem::path& dir) const;

 private:
  std::map<std::string, std::string> files_;
};

}  // namespace moyal::app

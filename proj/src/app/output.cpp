#include "moyal/app/output.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace moyal::app {

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell(double v) {
  if (std::isnan(v)) return {};
  return fmt::format("{}", v);
}

std::string cell(long long v) { return fmt::format("{}", v); }

Csv::Csv(std::vector<std::string> header) : columns_(header.size()) {
  if (header.empty()) throw std::invalid_argument("csv header must not be empty");
  row(header);
  rows_ = 0;
}

void Csv::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw std::invalid_argument("csv row width does not match the header");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) text_ += ',';
    text_ += csv_escape(fields[i]);
  }
  text_ += "\r\n";
  ++rows_;
}

namespace {

constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;

std::string xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) { return fmt::format("{:.2f}", v); }

std::string tick(double v) {
  if (v == 0.0) return "0";
  const double a = std::abs(v);
  return a >= 1e4 || a < 1e-3 ? fmt::format("{:.1e}", v) : fmt::format("{:.4g}", v);
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo <= 1e-300 * std::max(1.0, std::abs(lo))) {
      const double pad = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
      lo -= pad;
      hi += pad;
    }
  }
};

std::string frame(const PlotSpec& spec, const Range& xr, const Range& yr, bool log_y) {
  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
      "font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      W, H, W, H);
  s += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n", num(W / 2), xml(spec.title));
  s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>\n", L, T, W - L - R,
                   H - T - B);
  for (int i = 0; i <= 4; ++i) {
    const double fx = i / 4.0;
    const double px = L + fx * (W - L - R), py = H - B - fx * (H - T - B);
    const double vx = xr.lo + fx * (xr.hi - xr.lo);
    const double vy = yr.lo + fx * (yr.hi - yr.lo);
    s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", num(px), num(H - B + 16), tick(vx));
    s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", num(L - 6), num(py + 4),
                     log_y ? "1e" + tick(vy) : tick(vy));
  }
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", num(L + (W - L - R) / 2), num(H - 12),
                   xml(spec.x_label));
  s += fmt::format("<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
                   num(T + (H - T - B) / 2), num(T + (H - T - B) / 2), xml(spec.y_label));
  return s;
}

}  // namespace

std::string line_plot(const PlotSpec& spec, const std::vector<PlotSeries>& series) {
  auto yval = [&](double v) { return spec.log_y ? (v > 0.0 ? std::log10(v) : std::nan("")) : v; };
  Range xr, yr;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      xr.add(s.x[i]);
      yr.add(yval(s.y[i]));
    }
  if (spec.bars) yr.add(0.0);
  xr.settle();
  yr.settle();
  auto px = [&](double v) { return L + (v - xr.lo) / (xr.hi - xr.lo) * (W - L - R); };
  auto py = [&](double v) { return H - B - (yval(v) - yr.lo) / (yr.hi - yr.lo) * (H - T - B); };
  std::string out = frame(spec, xr, yr, spec.log_y);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const std::size_t m = std::min(s.x.size(), s.y.size());
    if (spec.bars && k == 0 && m >= 2) {
      const double half = 0.5 * (s.x[1] - s.x[0]);
      for (std::size_t i = 0; i < m; ++i) {
        const double x0 = px(s.x[i] - half), x1 = px(s.x[i] + half), y = py(s.y[i]), y0 = py(0.0);
        out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" fill-opacity=\"0.5\"/>\n", num(x0),
                           num(std::min(y, y0)), num(x1 - x0), num(std::abs(y0 - y)), s.color);
      }
    } else if (s.markers) {
      for (std::size_t i = 0; i < m; ++i)
        if (std::isfinite(yval(s.y[i])))
          out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"{}\"/>\n", num(px(s.x[i])), num(py(s.y[i])), s.color);
    } else {
      std::string pts;
      auto flush = [&] {
        if (!pts.empty())
          out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" points=\"{}\"/>\n", s.color,
                             num(s.width), pts);
        pts.clear();
      };
      for (std::size_t i = 0; i < m; ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(yval(s.y[i]))) {
          flush();
          continue;
        }
        if (!pts.empty()) pts += ' ';
        pts += num(px(s.x[i])) + "," + num(py(s.y[i]));
      }
      flush();
    }
    if (!s.label.empty())
      out += fmt::format("<text x=\"{}\" y=\"{}\" fill=\"{}\">{}</text>\n", num(W - R - 150), num(T + 16 + 14 * k), s.color,
                         xml(s.label));
  }
  return out + "</svg>\n";
}

std::string heatmap(const PlotSpec& spec, const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<double>& values) {
  if (values.size() != xs.size() * ys.size() || xs.size() < 2 || ys.size() < 2)
    throw std::invalid_argument("heatmap shape mismatch");
  Range xr, yr;
  for (double x : xs) xr.add(x);
  for (double y : ys) yr.add(y);
  double vmax = 0.0;
  for (double v : values)
    if (std::isfinite(v)) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0.0) vmax = 1.0;
  std::string out = frame(spec, xr, yr, false);
  const double cw = (W - L - R) / static_cast<double>(xs.size());
  const double ch = (H - T - B) / static_cast<double>(ys.size());
  for (std::size_t iy = 0; iy < ys.size(); ++iy)
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
      const double v = values[iy * xs.size() + ix] / vmax;
      if (!std::isfinite(v) || std::abs(v) < 1e-3) continue;
      // red for positive, blue for negative, white at zero
      const int fade = static_cast<int>(std::lround(255.0 * (1.0 - std::min(1.0, std::abs(v)))));
      const std::string color = v > 0 ? fmt::format("#ff{:02x}{:02x}", fade, fade) : fmt::format("#{:02x}{:02x}ff", fade, fade);
      out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n", num(L + ix * cw),
                         num(H - B - (iy + 1) * ch), num(cw + 0.05), num(ch + 0.05), color);
    }
  return out + "</svg>\n";
}

void Artifacts::add(const std::string& name, std::string content) {
  if (!files_.emplace(name, std::move(content)).second) throw std::logic_error("duplicate artifact " + name);
}

void Artifacts::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : files_) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  }
}

}  // namespace moyal::app

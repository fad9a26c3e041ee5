#include <cmath>
#include <fstream>
#include <sstream>

#include "biplan/experiment.hpp"

namespace biplan {

namespace {

void require_open(const std::ofstream& out, const std::string& path) {
  if (!out) throw ConfigError("cannot write " + path);
}

std::string fmt(double v, int decimals = 4) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, v);
  return buffer;
}

}  // namespace

void write_success_csv(const ExperimentReport& report, const std::string& path, bool wilson) {
  std::ofstream out(path);
  require_open(out, path);
  out << "strategy,n,successes,success_rate,standard_error,formatted";
  if (wilson) out << ",wilson_lo,wilson_hi";
  out << "\n";
  for (const auto& sr : report.strategies) {
    out << to_string(sr.strategy) << "," << sr.n << "," << sr.successes << "," << fmt(sr.p, 6)
        << "," << fmt(sr.se, 6) << "," << format_rate(sr.p, sr.se);
    if (wilson) {
      const auto [lo, hi] = wilson_interval(sr.successes, sr.n);
      out << "," << fmt(lo, 6) << "," << fmt(hi, 6);
    }
    out << "\n";
  }
}

void write_bins_csv(const ExperimentReport& report, const std::string& path) {
  std::ofstream out(path);
  require_open(out, path);
  out << "strategy,bin_lo,bin_hi,n,successes,success_rate,standard_error\n";
  for (const auto& sr : report.strategies) {
    for (const auto& bin : sr.bins) {
      out << to_string(sr.strategy) << "," << fmt(bin.lo, 1) << "," << fmt(bin.hi, 1) << ","
          << bin.n << "," << bin.successes << "," << fmt(bin.p, 6) << "," << fmt(bin.se, 6)
          << "\n";
    }
  }
}

void write_sweep_csv(const std::vector<SweepPoint>& points, const std::string& path) {
  std::ofstream out(path);
  require_open(out, path);
  out << "max_attempts,strategy,n,success_rate,standard_error,diversity\n";
  for (const auto& point : points) {
    out << point.max_attempts << "," << to_string(point.strategy) << "," << point.n << ","
        << fmt(point.p, 6) << "," << fmt(point.se, 6) << "," << fmt(point.diversity, 6) << "\n";
  }
}

// ---------------------------------------------------------------------------
// SVG plots
// ---------------------------------------------------------------------------

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kLeft = 70;
constexpr int kRight = 30;
constexpr int kTop = 30;
constexpr int kBottom = 60;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

std::string render_chart(const std::vector<Series>& series, const std::string& x_label,
                         const std::string& y_label, double y_min, double y_max) {
  double x_min = 0.0;
  double x_max = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      (void)y;
      if (first) {
        x_min = x_max = x;
        first = false;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
      }
    }
  }
  if (x_max <= x_min) x_max = x_min + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight
      << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    const double y = y_min + (y_max - y_min) * i / 5.0;
    svg << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << sy(y) << "\" x2=\"" << kLeft << "\" y2=\""
        << sy(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << sy(y) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y, 2) << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double x = x_min + (x_max - x_min) * i / 5.0;
    svg << "<line x1=\"" << sx(x) << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << sx(x)
        << "\" y2=\"" << kHeight - kBottom + 4 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << sx(x) << "\" y=\"" << kHeight - kBottom + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(x, 1) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 16
      << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n";
  svg << "<text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  int color = 0;
  for (const auto& s : series) {
    const char* stroke = kColors[color % 6];
    std::ostringstream path;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      path << (i == 0 ? "M" : "L") << fmt(sx(s.points[i].first), 1) << " "
           << fmt(sy(s.points[i].second), 1) << " ";
    }
    svg << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"2\"/>\n";
    for (const auto& [x, y] : s.points) {
      svg << "<circle cx=\"" << fmt(sx(x), 1) << "\" cy=\"" << fmt(sy(y), 1)
          << "\" r=\"3\" fill=\"" << stroke << "\"/>\n";
    }
    svg << "<text x=\"" << kWidth - kRight - 140 << "\" y=\"" << kTop + 16 + 16 * color
        << "\" font-size=\"12\" fill=\"" << stroke << "\">" << s.label << "</text>\n";
    ++color;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

void write_bins_svg(const ExperimentReport& report, const std::string& path) {
  std::vector<Series> series;
  for (const auto& sr : report.strategies) {
    Series s;
    s.label = to_string(sr.strategy);
    for (const auto& bin : sr.bins) {
      if (bin.n == 0) continue;
      s.points.emplace_back((bin.lo + bin.hi) / 2.0, bin.p);
    }
    if (!s.points.empty()) series.push_back(std::move(s));
  }
  std::ofstream out(path);
  require_open(out, path);
  out << render_chart(series, "forward minus backward BFS expansions", "success rate", 0.0, 1.0);
}

void write_sweep_svg(const std::vector<SweepPoint>& points, const std::string& path,
                     bool plot_diversity) {
  std::vector<Series> series;
  double y_max = 1.0;
  for (const auto& point : points) {
    const std::string label = to_string(point.strategy);
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.label == label; });
    if (it == series.end()) {
      series.push_back(Series{label, {}});
      it = series.end() - 1;
    }
    const double y = plot_diversity ? point.diversity : point.p;
    y_max = std::max(y_max, y);
    it->points.emplace_back(point.max_attempts, y);
  }
  std::ofstream out(path);
  require_open(out, path);
  out << render_chart(series, "planning attempts M",
                      plot_diversity ? "mean unique candidates" : "success rate", 0.0,
                      plot_diversity ? y_max * 1.1 : 1.0);
}

std::string report_text(const ExperimentReport& report) {
  std::ostringstream out;
  out << "trials=" << report.trials << " paired=" << (report.paired ? "yes" : "no")
      << " base_seed=" << report.base_seed << " backend=" << report.backend_id << "\n";
  out << "bin edges:";
  for (double edge : report.bin_edges) out << " " << fmt(edge, 1);
  out << "\n\n";
  for (const auto& sr : report.strategies) {
    out << to_string(sr.strategy) << ": " << format_rate(sr.p, sr.se) << "  (n=" << sr.n
        << ", diversity=" << fmt(sr.diversity, 2)
        << ", verification-error=" << fmt(sr.verification_error_rate, 3);
    if (sr.reason_match_rate) out << ", reason-match=" << fmt(*sr.reason_match_rate, 3);
    out << ")\n";
    out << "  bins:";
    for (const auto& bin : sr.bins) {
      out << " [" << fmt(bin.lo, 1) << "," << fmt(bin.hi, 1) << "):"
          << (bin.n == 0 ? "-" : fmt(bin.p, 2)) << "(n=" << bin.n << ")";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace biplan

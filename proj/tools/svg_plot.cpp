#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace trajeval::cli {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
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

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void svg_open(std::ostringstream& os, double w, double h) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\""
     << num(h) << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h)
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

std::string ate_plot_svg(const std::vector<Vec3>& gt_path,
                         const std::vector<Vec3>& aligned_est_path,
                         const std::string& title) {
  constexpr double kSize = 640.0;
  constexpr double kMargin = 50.0;

  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto* path : {&gt_path, &aligned_est_path}) {
    for (const Vec3& p : *path) {
      xmin = std::min(xmin, p.x());
      xmax = std::max(xmax, p.x());
      ymin = std::min(ymin, p.y());
      ymax = std::max(ymax, p.y());
    }
  }
  if (!std::isfinite(xmin)) xmin = xmax = ymin = ymax = 0.0;
  // Equal axis scaling so the error segments keep their true proportions.
  const double extent = std::max({xmax - xmin, ymax - ymin, 1e-6});
  const double cx = 0.5 * (xmin + xmax);
  const double cy = 0.5 * (ymin + ymax);
  const double scale = (kSize - 2 * kMargin) / extent;
  const auto sx = [&](double x) { return kSize / 2 + (x - cx) * scale; };
  const auto sy = [&](double y) { return kSize / 2 - (y - cy) * scale; };

  std::ostringstream os;
  svg_open(os, kSize, kSize + 30);
  os << "<text x=\"" << num(kSize / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(title) << "</text>\n";
  os << "<g transform=\"translate(0,20)\">\n";

  os << "<g stroke=\"#d62728\" stroke-width=\"0.8\" stroke-opacity=\"0.7\">\n";
  const std::size_t n = std::min(gt_path.size(), aligned_est_path.size());
  for (std::size_t i = 0; i < n; ++i) {
    os << "<line x1=\"" << num(sx(gt_path[i].x())) << "\" y1=\"" << num(sy(gt_path[i].y()))
       << "\" x2=\"" << num(sx(aligned_est_path[i].x())) << "\" y2=\""
       << num(sy(aligned_est_path[i].y())) << "\"/>\n";
  }
  os << "</g>\n";

  const auto polyline = [&](const std::vector<Vec3>& path, const char* colour) {
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (const Vec3& p : path) os << num(sx(p.x())) << ',' << num(sy(p.y())) << ' ';
    os << "\"/>\n";
  };
  polyline(gt_path, "#000000");
  polyline(aligned_est_path, "#1f77b4");

  os << "<g font-size=\"11\">\n"
     << "<line x1=\"20\" y1=\"20\" x2=\"45\" y2=\"20\" stroke=\"#000000\" stroke-width=\"2\"/>"
     << "<text x=\"50\" y=\"24\">ground truth</text>\n"
     << "<line x1=\"20\" y1=\"38\" x2=\"45\" y2=\"38\" stroke=\"#1f77b4\" stroke-width=\"2\"/>"
     << "<text x=\"50\" y=\"42\">estimate (aligned)</text>\n"
     << "<line x1=\"20\" y1=\"56\" x2=\"45\" y2=\"56\" stroke=\"#d62728\" stroke-width=\"2\"/>"
     << "<text x=\"50\" y=\"60\">difference</text>\n"
     << "<text x=\"" << num(kSize - 20) << "\" y=\"" << num(kSize - 10)
     << "\" text-anchor=\"end\">x [m] / y [m], span " << tick_label(extent) << " m</text>\n"
     << "</g>\n</g>\n</svg>\n";
  return os.str();
}

std::string bar_panels_svg(const std::vector<BarPanel>& panels, const std::string& title) {
  constexpr double kPanelW = 460.0;
  constexpr double kPanelH = 320.0;
  constexpr double kLeft = 70.0;
  constexpr double kBottom = 70.0;
  constexpr double kTop = 40.0;
  constexpr double kTitleH = 40.0;

  // Series (algorithms) in first-appearance order across all panels.
  std::vector<std::string> series;
  for (const BarPanel& p : panels) {
    for (const BarValue& v : p.values) {
      if (std::find(series.begin(), series.end(), v.series) == series.end()) {
        series.push_back(v.series);
      }
    }
  }

  const std::size_t cols = 2;
  const std::size_t rows = (panels.size() + cols - 1) / cols;
  const double width = kPanelW * cols;
  const double height = kTitleH + kPanelH * static_cast<double>(rows) + 30.0;

  std::ostringstream os;
  svg_open(os, width, height);
  os << "<text x=\"" << num(width / 2) << "\" y=\"26\" text-anchor=\"middle\" font-size=\"16\">"
     << escape(title) << "</text>\n";

  for (std::size_t k = 0; k < panels.size(); ++k) {
    const BarPanel& panel = panels[k];
    const double ox = kPanelW * static_cast<double>(k % cols);
    const double oy = kTitleH + kPanelH * static_cast<double>(k / cols);
    const double plot_w = kPanelW - kLeft - 20.0;
    const double plot_h = kPanelH - kTop - kBottom;

    os << "<g transform=\"translate(" << num(ox) << ',' << num(oy) << ")\">\n";
    os << "<text x=\"" << num(kPanelW / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"13\">"
       << escape(panel.title) << "</text>\n";

    std::vector<std::string> groups;
    double vmax = 0.0;
    for (const BarValue& v : panel.values) {
      if (std::find(groups.begin(), groups.end(), v.group) == groups.end()) groups.push_back(v.group);
      if (v.value) vmax = std::max(vmax, *v.value);
    }
    const bool any = std::any_of(panel.values.begin(), panel.values.end(),
                                 [](const BarValue& v) { return v.value.has_value(); });
    if (!any) {
      os << "<text x=\"" << num(kPanelW / 2) << "\" y=\"" << num(kPanelH / 2)
         << "\" text-anchor=\"middle\" fill=\"#777777\">no data</text>\n</g>\n";
      continue;
    }
    if (vmax <= 0.0) vmax = 1.0;

    const double x0 = kLeft;
    const double y0 = kTop + plot_h;
    os << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0 + plot_w)
       << "\" y2=\"" << num(y0) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << num(x0) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x0)
       << "\" y2=\"" << num(y0) << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
      const double val = vmax * t / 4.0;
      const double y = y0 - plot_h * t / 4.0;
      os << "<line x1=\"" << num(x0 - 4) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x0)
         << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>"
         << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(y + 4)
         << "\" text-anchor=\"end\" font-size=\"10\">" << tick_label(val) << "</text>\n";
    }
    os << "<text transform=\"translate(16," << num(kTop + plot_h / 2)
       << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"11\">" << escape(panel.unit)
       << "</text>\n";

    const double group_w = plot_w / static_cast<double>(groups.size());
    const double bar_w = 0.8 * group_w / static_cast<double>(std::max<std::size_t>(series.size(), 1));
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const double gx = x0 + group_w * static_cast<double>(g) + 0.1 * group_w;
      for (const BarValue& v : panel.values) {
        if (v.group != groups[g] || !v.value) continue;
        const auto s = static_cast<std::size_t>(
            std::find(series.begin(), series.end(), v.series) - series.begin());
        const double h = plot_h * (*v.value / vmax);
        os << "<rect x=\"" << num(gx + bar_w * static_cast<double>(s)) << "\" y=\""
           << num(y0 - h) << "\" width=\"" << num(bar_w) << "\" height=\"" << num(h)
           << "\" fill=\"" << kPalette[s % std::size(kPalette)] << "\"><title>"
           << escape(v.series) << " / " << escape(v.group) << ": " << tick_label(*v.value)
           << "</title></rect>\n";
      }
      const double lx = x0 + group_w * (static_cast<double>(g) + 0.5);
      os << "<text transform=\"translate(" << num(lx) << ',' << num(y0 + 12)
         << ") rotate(30)\" font-size=\"10\">" << escape(groups[g]) << "</text>\n";
    }
    os << "</g>\n";
  }

  double lx = 20.0;
  const double ly = height - 12.0;
  for (std::size_t s = 0; s < series.size(); ++s) {
    os << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly - 10) << "\" width=\"12\" height=\"12\" fill=\""
       << kPalette[s % std::size(kPalette)] << "\"/><text x=\"" << num(lx + 16) << "\" y=\""
       << num(ly) << "\">" << escape(series[s]) << "</text>\n";
    lx += 30.0 + 7.0 * static_cast<double>(series[s].size());
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace trajeval::cli

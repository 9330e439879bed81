#include "pr/plot/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace pr {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                         "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series) {
  const double W = 860, H = 520;
  const double ml = 80, mr = 160, mt = 50, mb = 60;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (!(xmin <= xmax) || !(ymin <= ymax))
    throw std::runtime_error("no data to plot");
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) {
    ymax += 0.5;
    ymin -= 0.5;
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr);
  };
  auto py = [&](double y) {
    return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb);
  };

  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
    << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
    << "\">\n";
  f << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  f << "<text x=\"" << W / 2 << "\" y=\"28\" text-anchor=\"middle\" "
    << "font-family=\"sans-serif\" font-size=\"17\">" << title << "</text>\n";

  // axes box + ticks
  f << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
    << "\" height=\"" << H - mt - mb
    << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  const int nticks = 6;
  for (int i = 0; i <= nticks; ++i) {
    const double xv = xmin + (xmax - xmin) * i / nticks;
    const double yv = ymin + (ymax - ymin) * i / nticks;
    f << "<line x1=\"" << px(xv) << "\" y1=\"" << H - mb << "\" x2=\""
      << px(xv) << "\" y2=\"" << H - mb + 5
      << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    f << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 20
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">"
      << fmt(xv) << "</text>\n";
    f << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml
      << "\" y2=\"" << py(yv) << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    f << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
      << fmt(yv) << "</text>\n";
    if (i > 0 && i < nticks) {
      f << "<line x1=\"" << ml << "\" y1=\"" << py(yv) << "\" x2=\"" << W - mr
        << "\" y2=\"" << py(yv)
        << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
    }
  }
  f << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 15
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"14\">"
    << xlabel << "</text>\n";
  f << "<text x=\"20\" y=\"" << (mt + H - mb) / 2
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
    << "transform=\"rotate(-90 20 " << (mt + H - mb) / 2 << ")\">" << ylabel
    << "</text>\n";

  int ci = 0;
  for (const auto& s : series) {
    const char* color = kColors[ci % 8];
    f << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.4\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) f << ' ';
      f << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i]));
    }
    f << "\"/>\n";
    const double ly = mt + 18 + 20 * ci;
    f << "<line x1=\"" << W - mr + 12 << "\" y1=\"" << ly << "\" x2=\""
      << W - mr + 40 << "\" y2=\"" << ly << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>\n";
    f << "<text x=\"" << W - mr + 46 << "\" y=\"" << ly + 4
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label
      << "</text>\n";
    ++ci;
  }
  f << "</svg>\n";
}

}  // namespace pr

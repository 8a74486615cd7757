#include "mlsparse/plot.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>

#include "mlsparse/error.h"

namespace mlsparse {

BoxStats box_stats(std::vector<double> v) {
  if (v.empty()) throw InputError("box_stats of an empty column");
  std::sort(v.begin(), v.end());
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  return {v.front(), quantile(0.25), quantile(0.5), quantile(0.75), v.back()};
}

PlotKind parse_plot_kind(std::string_view text) {
  if (text == "box") return PlotKind::kBox;
  if (text == "line") return PlotKind::kLine;
  throw InputError("unknown plot kind '" + std::string(text) + "'");
}

GroupBy parse_group_by(std::string_view text) {
  if (text == "n") return GroupBy::kN;
  if (text == "ell") return GroupBy::kEll;
  if (text == "t") return GroupBy::kT;
  throw InputError("unknown grouping '" + std::string(text) + "'");
}

namespace {

constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 60, kRight = 130, kTop = 40, kBottom = 50;
constexpr const char* kSeriesName[3] = {"BU", "TD", "CMP"};
constexpr const char* kSeriesColor[3] = {"#4c72b0", "#dd8452", "#55a868"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double group_key(const CsvRecord& r, GroupBy by) {
  switch (by) {
    case GroupBy::kN: return static_cast<double>(r.n);
    case GroupBy::kEll: return static_cast<double>(r.ell);
    case GroupBy::kT: return r.t;
  }
  return 0;
}

const char* group_name(GroupBy by) {
  switch (by) {
    case GroupBy::kN: return "n";
    case GroupBy::kEll: return "ell";
    case GroupBy::kT: return "t";
  }
  return "";
}

}  // namespace

std::string plot_svg(const std::vector<CsvRecord>& records, const PlotOptions& options) {
  std::map<double, std::array<std::vector<double>, 3>> groups;
  for (const auto& r : records) {
    if (!options.subroutine.empty() && r.subroutine != options.subroutine) continue;
    auto& s = groups[group_key(r, options.group_by)];
    s[0].push_back(r.ratio_bu);
    s[1].push_back(r.ratio_td);
    s[2].push_back(r.ratio_cmp);
  }
  if (groups.empty()) throw InputError("no rows to plot");

  double lo = 1, hi = 1;
  for (const auto& [key, s] : groups) {
    for (const auto& col : s) {
      for (double v : col) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (hi - lo < 1e-9) hi = lo + 1;
  const double pad = (hi - lo) * 0.05;
  lo -= pad;
  hi += pad;
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  auto ypos = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };
  const double slot = plot_w / static_cast<double>(groups.size());

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" fill=\"white\"/>\n";
  std::string title = options.title.empty()
                          ? std::string(options.kind == PlotKind::kBox ? "Ratio distribution" : "Mean ratio") +
                                " by " + group_name(options.group_by)
                          : options.title;
  svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">" + escape(title) + "</text>\n";

  // Axes and y ticks.
  svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) + "\" y2=\"" +
         num(kTop + plot_h) + "\"/>\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" + num(kLeft + plot_w) +
         "\" y2=\"" + num(kTop + plot_h) + "\"/>\n";
  svg += "</g>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double v = lo + (hi - lo) * k / 5.0;
    const double y = ypos(v);
    svg += "<line x1=\"" + num(kLeft - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(y) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + num(v) + "</text>\n";
  }
  svg += "<text x=\"16\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(kTop + plot_h / 2) + ")\">ratio</text>\n";
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 12) + "\" text-anchor=\"middle\">" +
         group_name(options.group_by) + "</text>\n";
  std::size_t gi = 0;
  for (const auto& [key, s] : groups) {
    const double cx = kLeft + slot * (static_cast<double>(gi) + 0.5);
    svg += "<text x=\"" + num(cx) + "\" y=\"" + num(kTop + plot_h + 18) + "\" text-anchor=\"middle\">" + label(key) +
           "</text>\n";
    ++gi;
  }
  svg += "</g>\n";

  if (options.kind == PlotKind::kBox) {
    const double box_w = std::min(30.0, slot / 4);
    gi = 0;
    for (const auto& [key, s] : groups) {
      const double cx = kLeft + slot * (static_cast<double>(gi) + 0.5);
      for (int k = 0; k < 3; ++k) {
        const BoxStats b = box_stats(s[k]);
        const double x = cx + (k - 1) * box_w * 1.2;
        const char* c = kSeriesColor[k];
        svg += "<g stroke=\"" + std::string(c) + "\" fill=\"none\">\n";
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(ypos(b.max)) + "\" x2=\"" + num(x) + "\" y2=\"" +
               num(ypos(b.q3)) + "\"/>\n";
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(ypos(b.q1)) + "\" x2=\"" + num(x) + "\" y2=\"" +
               num(ypos(b.min)) + "\"/>\n";
        for (double v : {b.min, b.max}) {
          svg += "<line x1=\"" + num(x - box_w / 4) + "\" y1=\"" + num(ypos(v)) + "\" x2=\"" + num(x + box_w / 4) +
                 "\" y2=\"" + num(ypos(v)) + "\"/>\n";
        }
        svg += "<rect class=\"box\" x=\"" + num(x - box_w / 2) + "\" y=\"" + num(ypos(b.q3)) + "\" width=\"" +
               num(box_w) + "\" height=\"" + num(ypos(b.q1) - ypos(b.q3)) + "\" fill=\"" + c +
               "\" fill-opacity=\"0.3\"/>\n";
        svg += "<line x1=\"" + num(x - box_w / 2) + "\" y1=\"" + num(ypos(b.median)) + "\" x2=\"" +
               num(x + box_w / 2) + "\" y2=\"" + num(ypos(b.median)) + "\" stroke-width=\"2\"/>\n";
        svg += "</g>\n";
      }
      ++gi;
    }
  } else {
    for (int k = 0; k < 3; ++k) {
      std::string pts, dots;
      gi = 0;
      for (const auto& [key, s] : groups) {
        double mean = 0;
        for (double v : s[k]) mean += v;
        mean /= static_cast<double>(s[k].size());
        const double cx = kLeft + slot * (static_cast<double>(gi) + 0.5);
        pts += (gi ? " " : "") + num(cx) + "," + num(ypos(mean));
        dots += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(ypos(mean)) + "\" r=\"3\" fill=\"" +
                kSeriesColor[k] + "\"/>\n";
        ++gi;
      }
      svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + kSeriesColor[k] +
             "\" stroke-width=\"2\"/>\n" + dots;
    }
  }

  // Legend.
  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int k = 0; k < 3; ++k) {
    const double y = kTop + 10 + 20 * k;
    svg += "<rect x=\"" + num(kWidth - kRight + 20) + "\" y=\"" + num(y - 9) + "\" width=\"12\" height=\"12\" fill=\"" +
           kSeriesColor[k] + "\"/>\n";
    svg += "<text x=\"" + num(kWidth - kRight + 38) + "\" y=\"" + num(y + 2) + "\">" + kSeriesName[k] + "</text>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace mlsparse

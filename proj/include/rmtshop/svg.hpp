#pragma once

// Static SVG renderers: Gantt charts for schedules and box plots for RPD
// samples. Output is deterministic text (fixed layout constants, fixed
// number formatting), so the files can be golden-tested byte for byte.

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "rmtshop/engine.hpp"
#include "rmtshop/model.hpp"

namespace rmtshop {

namespace svgdetail {

inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline const char* job_color(int job) {
  static const char* kPalette[] = {
      "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
      "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#1f77b4", "#d62728",
  };
  return kPalette[static_cast<std::size_t>(job) % (sizeof kPalette / sizeof *kPalette)];
}

inline void rect(std::ostringstream& out, double x, double y, double w,
                 double h, const std::string& fill,
                 const std::string& extra = "") {
  out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\""
      << num(w) << "\" height=\"" << num(h) << "\" fill=\"" << fill << "\""
      << (extra.empty() ? "" : " " + extra) << "/>\n";
}

inline void text(std::ostringstream& out, double x, double y,
                 const std::string& s, int size = 10,
                 const std::string& anchor = "start") {
  out << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\""
      << size << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor
      << "\">" << s << "</text>\n";
}

inline void vline(std::ostringstream& out, double x, double y1, double y2,
                  const std::string& color, double width = 1.0) {
  out << "<line x1=\"" << num(x) << "\" y1=\"" << num(y1) << "\" x2=\""
      << num(x) << "\" y2=\"" << num(y2) << "\" stroke=\"" << color
      << "\" stroke-width=\"" << num(width) << "\"/>\n";
}

inline void hline(std::ostringstream& out, double x1, double x2, double y,
                  const std::string& color, double width = 1.0) {
  out << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y) << "\" x2=\""
      << num(x2) << "\" y2=\"" << num(y) << "\" stroke=\"" << color
      << "\" stroke-width=\"" << num(width) << "\"/>\n";
}

}  // namespace svgdetail

// One lane per machine (operation bars, configuration-setup hatching,
// worker labels) and one lane per worker (operation bars plus move/rest
// gap markers).
inline std::string gantt_svg(const Instance& inst, const Schedule& sched) {
  using namespace svgdetail;
  const double left = 70, top = 30, lane_h = 26, lane_gap = 8, right = 30;
  const double plot_w = 860;
  const int lanes = inst.num_machines + inst.num_workers;
  const double height = top + lanes * (lane_h + lane_gap) + 40;
  const Time horizon = std::max<Time>(1, sched.makespan);
  const double scale = plot_w / static_cast<double>(horizon);
  auto X = [&](Time t) { return left + static_cast<double>(t) * scale; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << num(left + plot_w + right) << "\" height=\"" << num(height) << "\">\n";
  out << "<defs>\n"
         "<pattern id=\"setup\" width=\"6\" height=\"6\" "
         "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">"
         "<rect width=\"6\" height=\"6\" fill=\"#eeeeee\"/>"
         "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#888888\" "
         "stroke-width=\"2\"/></pattern>\n"
         "</defs>\n";
  rect(out, 0, 0, left + plot_w + right, height, "#ffffff");

  auto lane_y = [&](int lane) { return top + lane * (lane_h + lane_gap); };

  // time axis
  const Time tick = std::max<Time>(1, (horizon + 9) / 10);
  for (Time t = 0; t <= horizon; t += tick) {
    vline(out, X(t), top - 6, lane_y(lanes - 1) + lane_h + 6, "#dddddd");
    text(out, X(t), top - 12, std::to_string(t), 9, "middle");
  }

  // machine lanes
  for (int k = 0; k < inst.num_machines; ++k) {
    const double y = lane_y(k);
    text(out, 8, y + lane_h - 8, "M" + std::to_string(k + 1), 11);
    hline(out, left, left + plot_w, y + lane_h, "#cccccc");
    const auto& slots = sched.machine_timeline[static_cast<std::size_t>(k)];
    for (std::size_t x = 0; x < slots.size(); ++x) {
      const MachineSlot& slot = slots[x];
      if (x > 0) {
        const MachineSlot& prev = slots[x - 1];
        Time se = inst.setup[static_cast<std::size_t>(k)]
                            [static_cast<std::size_t>(prev.config)]
                            [static_cast<std::size_t>(slot.config)];
        if (se > 0)
          rect(out, X(prev.completion), y + 3,
               static_cast<double>(se) * scale, lane_h - 6, "url(#setup)",
               "stroke=\"#888888\" stroke-width=\"0.5\"");
      }
      OpId id = op_from_index(inst, slot.op_pos);
      const OpAssignment& a = sched.assign[static_cast<std::size_t>(slot.op_pos)];
      rect(out, X(slot.start), y,
           static_cast<double>(slot.completion - slot.start) * scale, lane_h,
           job_color(id.job), "stroke=\"#333333\" stroke-width=\"0.8\"");
      text(out, X(slot.start) + 3, y + 12,
           "J" + std::to_string(id.job + 1) + "O" + std::to_string(id.op + 1), 9);
      text(out, X(slot.start) + 3, y + 22, "w" + std::to_string(a.worker + 1), 8);
    }
  }

  // worker lanes
  for (int l = 0; l < inst.num_workers; ++l) {
    const double y = lane_y(inst.num_machines + l);
    text(out, 8, y + lane_h - 8, "W" + std::to_string(l + 1), 11);
    hline(out, left, left + plot_w, y + lane_h, "#cccccc");
    const auto& slots = sched.worker_timeline[static_cast<std::size_t>(l)];
    for (std::size_t x = 0; x < slots.size(); ++x) {
      const WorkerSlot& slot = slots[x];
      OpId id = op_from_index(inst, slot.op_pos);
      if (x + 1 < slots.size()) {
        const WorkerSlot& nxt = slots[x + 1];
        Time gap;
        const char* color;
        if (nxt.machine != slot.machine) {
          gap = inst.moving[static_cast<std::size_t>(slot.machine)]
                           [static_cast<std::size_t>(nxt.machine)];
          color = "#9494c8";  // move
        } else {
          const OpAssignment& a =
              sched.assign[static_cast<std::size_t>(slot.op_pos)];
          const Mode* m = find_mode(inst.op(id), a.machine, a.config);
          gap = m ? rest_time(inst.rest_factor, m->proc_time) : 0;
          color = "#bbbbbb";  // rest
        }
        if (gap > 0)
          rect(out, X(slot.completion), y + lane_h / 4.0,
               static_cast<double>(gap) * scale, lane_h / 2.0, color);
      }
      rect(out, X(slot.start), y,
           static_cast<double>(slot.completion - slot.start) * scale, lane_h,
           job_color(id.job), "stroke=\"#333333\" stroke-width=\"0.8\" "
                              "fill-opacity=\"0.55\"");
      text(out, X(slot.start) + 3, y + 12,
           "J" + std::to_string(id.job + 1) + "O" + std::to_string(id.op + 1), 9);
    }
  }

  text(out, left, height - 10,
       "makespan " + std::to_string(sched.makespan) + ", total energy " +
           std::to_string(sched.total_energy), 11);
  out << "</svg>\n";
  return out.str();
}

namespace svgdetail {

// Linear-interpolation quantile on a sorted sample.
inline double quantile(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  double h = q * static_cast<double>(n - 1);
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo >= n - 1) return sorted[n - 1];
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace svgdetail

// Median/quartile box per labeled sample, whiskers at the most extreme
// points within 1.5 * IQR of the box, outliers as circles.
inline std::string boxplot_svg(
    const std::vector<std::pair<std::string, std::vector<double>>>& samples) {
  using namespace svgdetail;
  if (samples.empty()) throw std::invalid_argument("boxplot needs samples");
  for (const auto& s : samples)
    if (s.second.empty())
      throw std::invalid_argument("boxplot sample '" + s.first + "' is empty");

  const double left = 60, top = 20, plot_w_per = 110, plot_h = 280;
  const double width = left + plot_w_per * static_cast<double>(samples.size()) + 30;
  const double height = top + plot_h + 50;

  double vmin = 0.0, vmax = 0.0;
  for (const auto& [name, vals] : samples)
    for (double v : vals) {
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  if (vmax == vmin) vmax = vmin + 1.0;
  const double span = (vmax - vmin) * 1.1;
  const double lo = vmin - (vmax - vmin) * 0.05;
  auto Y = [&](double v) { return top + plot_h - (v - lo) / span * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\">\n";
  rect(out, 0, 0, width, height, "#ffffff");

  for (int t = 0; t <= 5; ++t) {
    double v = lo + span * t / 5.0;
    hline(out, left - 4, width - 20, Y(v), "#dddddd");
    text(out, left - 8, Y(v) + 3, num(v), 9, "end");
  }
  text(out, 14, top + plot_h / 2, "RPD (%)", 10, "middle");

  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::vector<double> vals = samples[i].second;
    std::sort(vals.begin(), vals.end());
    const double q1 = quantile(vals, 0.25);
    const double q2 = quantile(vals, 0.50);
    const double q3 = quantile(vals, 0.75);
    const double iqr = q3 - q1;
    double whisk_lo = q1, whisk_hi = q3;
    for (double v : vals) {
      if (v >= q1 - 1.5 * iqr) {
        whisk_lo = v;
        break;
      }
    }
    for (auto it = vals.rbegin(); it != vals.rend(); ++it) {
      if (*it <= q3 + 1.5 * iqr) {
        whisk_hi = *it;
        break;
      }
    }

    const double cx = left + plot_w_per * (static_cast<double>(i) + 0.5);
    const double bw = 44;
    vline(out, cx, Y(whisk_hi), Y(q3), "#333333");
    vline(out, cx, Y(q1), Y(whisk_lo), "#333333");
    hline(out, cx - bw / 4, cx + bw / 4, Y(whisk_hi), "#333333");
    hline(out, cx - bw / 4, cx + bw / 4, Y(whisk_lo), "#333333");
    rect(out, cx - bw / 2, Y(q3), bw, Y(q1) - Y(q3), "#9ecae9",
         "stroke=\"#333333\"");
    hline(out, cx - bw / 2, cx + bw / 2, Y(q2), "#333333", 2.0);
    for (double v : vals)
      if (v < q1 - 1.5 * iqr || v > q3 + 1.5 * iqr)
        out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(Y(v))
            << "\" r=\"2.5\" fill=\"none\" stroke=\"#333333\"/>\n";
    text(out, cx, top + plot_h + 18, samples[i].first, 11, "middle");
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace rmtshop

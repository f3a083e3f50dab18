#pragma once
// Result files: timeseries CSV, itinerary listings and SVG panels.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "hiernet/error.hpp"
#include "hiernet/integrator.hpp"
#include "hiernet/itinerary.hpp"

namespace hiernet {

/// Shortest round-trip decimal of v with at most 17 significant digits; 0 prints as "0".
[[nodiscard]] inline std::string format_number(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  if (r.ec != std::errc()) r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

[[nodiscard]] inline std::string csv_header(const BlockLayout& L) {
  std::string h = "t";
  for (std::size_t c = 0; c < L.dim(); ++c) h += "," + L.name(c);
  return h;
}

inline void write_timeseries(const Trajectory& traj, std::ostream& out) {
  if (traj.empty()) throw Error(ErrorKind::InvalidParameter, "empty trajectory");
  out << csv_header(traj.layout()) << "\n";
  std::string line;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    line = format_number(traj.times()[k]);
    for (double v : traj.state(k)) {
      line += ',';
      line += format_number(v);
    }
    line += '\n';
    out << line;
  }
}

inline void write_timeseries(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
  write_timeseries(traj, out);
  if (!out) throw Error(ErrorKind::ParseError, "write failed: " + path);
}

/// One block per level: windows, then visits with enter/exit times.
[[nodiscard]] inline std::string render_itinerary(const ItineraryReport& r) {
  std::ostringstream os;
  os << "[" << r.level.to_string() << "] " << r.visits.size() << " visits\n";
  os << "sequence: " << r.sequence_string() << "\n";
  if (r.level.kind == Level::Kind::Sub) {
    for (std::size_t w = 0; w < r.active_windows.size(); ++w) {
      os << "window " << w + 1 << " [" << format_number(r.active_windows[w].begin) << ", "
         << format_number(r.active_windows[w].end) << "]:";
      for (const auto v : r.sequence_in_window(w)) os << " " << v + 1;
      os << "\n";
    }
  }
  for (const auto& v : r.visits) {
    os << "  " << v.vertex + 1 << " " << format_number(v.enter) << " " << format_number(v.exit) << "\n";
  }
  return os.str();
}

namespace detail {

/// Thins to at most `budget` samples per panel while keeping each bucket's extremes.
inline std::vector<std::size_t> plot_indices(std::size_t n, std::size_t budget) {
  std::vector<std::size_t> idx;
  if (n <= budget) {
    for (std::size_t k = 0; k < n; ++k) idx.push_back(k);
    return idx;
  }
  const double stride = static_cast<double>(n - 1) / static_cast<double>(budget - 1);
  for (std::size_t m = 0; m < budget; ++m) idx.push_back(static_cast<std::size_t>(std::lround(m * stride)));
  return idx;
}

}  // namespace detail

/// One SVG panel: the superstructure (block = -1) or substructure j with its
/// active windows shaded. Values are drawn on a log10 axis clipped at 1e-12
/// when `log_scale`, otherwise on [0, 1.05].
[[nodiscard]] inline std::string render_svg_panel(const Trajectory& traj, int block, double epsilon, bool log_scale) {
  const auto& L = traj.layout();
  const double W = 900, H = 220, ml = 50, mr = 10, mt = 20, mb = 25;
  const double t0 = traj.times().front();
  const double t1 = std::max(traj.times().back(), t0 + 1e-12);
  const double lo = log_scale ? -12.0 : 0.0, hi = log_scale ? 0.1 : 1.05;
  auto xpix = [&](double t) { return ml + (t - t0) / (t1 - t0) * (W - ml - mr); };
  auto ypix = [&](double v) {
    double y = log_scale ? std::log10(std::max(v, 1e-12)) : v;
    y = std::clamp(y, lo, hi);
    return mt + (hi - y) / (hi - lo) * (H - mt - mb);
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#e377c2"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::size_t off = 0, n = L.super_size();
  std::string title = "X";
  if (block >= 0) {
    const auto j = static_cast<std::size_t>(block);
    off = L.block_offset(j);
    n = L.block_size(j);
    title = "x" + std::to_string(j + 1);
    const auto rep = extract_itinerary(traj, Level::sub(j), epsilon, {0.2, 0.0});
    for (const auto& w : rep.active_windows) {
      os << "<rect x=\"" << xpix(w.begin) << "\" y=\"" << mt << "\" width=\"" << std::max(1.0, xpix(w.end) - xpix(w.begin))
         << "\" height=\"" << H - mt - mb << "\" fill=\"#dddddd\"/>\n";
    }
  }
  os << "<text x=\"" << ml << "\" y=\"14\" font-size=\"12\" font-family=\"sans-serif\">" << title
     << (log_scale ? " (log10)" : "") << "</text>\n";
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\"" << H - mt - mb
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  const auto idx = detail::plot_indices(traj.size(), 4000);
  for (std::size_t i = 0; i < n; ++i) {
    os << "<polyline fill=\"none\" stroke-width=\"1\" stroke=\"" << colors[i % 8] << "\" points=\"";
    for (auto k : idx) os << xpix(traj.times()[k]) << "," << ypix(traj.state(k)[off + i]) << " ";
    os << "\"/>\n";
  }
  os << "<text x=\"" << ml << "\" y=\"" << H - 8 << "\" font-size=\"10\" font-family=\"sans-serif\">t = "
     << format_number(t0) << " .. " << format_number(t1) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
  out << text;
}

}  // namespace hiernet

#pragma once

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "model.hpp"

namespace rhfs {

namespace detail {

// Station rows in stage order, each with its ops sorted by start.
inline std::vector<std::pair<StationId, std::vector<ScheduledOp>>> gantt_rows(Schedule const& s) {
  std::vector<std::pair<StationId, std::vector<ScheduledOp>>> rows;
  for (std::size_t j = 0; j < s.stations_per_stage.size(); ++j) {
    for (std::size_t k = 0; k < s.stations_per_stage[j]; ++k) rows.push_back({{j, k}, {}});
  }
  for (ScheduledOp const& op : s.ops) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](auto const& r) { return r.first == op.station_id(); });
    if (it == rows.end()) throw std::invalid_argument("op on a station outside the schedule layout");
    it->second.push_back(op);
  }
  for (auto& r : rows) {
    std::sort(r.second.begin(), r.second.end(),
              [](ScheduledOp const& a, ScheduledOp const& b) { return a.start < b.start; });
  }
  return rows;
}

inline std::string bar_label(ScheduledOp const& op) {
  std::string l = "J" + std::to_string(op.job + 1);
  if (op.pass) l += "." + std::to_string(op.pass);
  return l;
}

inline std::string xml_escape(std::string const& s) {
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

inline std::string station_label(StationId id) {
  return "WS" + std::to_string(id.stage + 1) + "," + std::to_string(id.station + 1);
}

}  // namespace detail

// One row per station; bars are labelled J<job>.<pass>.
inline std::string render_gantt_svg(Schedule const& s) {
  auto const rows = detail::gantt_rows(s);
  Minutes horizon = 1;
  for (ScheduledOp const& op : s.ops) horizon = std::max(horizon, op.completion);

  constexpr double left = 70.0, top = 30.0, row_h = 28.0, bar_h = 20.0, width = 900.0;
  double const scale = width / static_cast<double>(horizon);
  double const height = top + row_h * static_cast<double>(rows.size()) + 30.0;

  std::ostringstream out;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" font-family=\"monospace\" "
                "font-size=\"11\">\n",
                left + width + 20.0, height);
  out << buf;
  out << "<title>" << (s.instance_name.empty() ? "schedule" : detail::xml_escape(s.instance_name)) << " Cmax=" << horizon << "</title>\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double const y = top + row_h * static_cast<double>(r);
    std::snprintf(buf, sizeof buf, "<text x=\"4\" y=\"%.1f\">%s</text>\n", y + bar_h * 0.7,
                  detail::station_label(rows[r].first).c_str());
    out << buf;
    for (ScheduledOp const& op : rows[r].second) {
      double const x = left + scale * static_cast<double>(op.start);
      double const w = scale * static_cast<double>(op.duration());
      int const hue = static_cast<int>((op.job * 47) % 360);
      int const light = 78 - 12 * static_cast<int>(std::min<std::size_t>(op.pass, 3));
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%.2f\" y=\"%.1f\" width=\"%.2f\" height=\"%.1f\" fill=\"hsl(%d,60%%,%d%%)\" "
                    "stroke=\"#333\"><title>%s [%lld,%lld)</title></rect>\n",
                    x, y, w, bar_h, hue, light, detail::bar_label(op).c_str(), static_cast<long long>(op.start),
                    static_cast<long long>(op.completion));
      out << buf;
      std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.1f\">%s</text>\n", x + 2.0, y + bar_h * 0.7,
                    detail::bar_label(op).c_str());
      out << buf;
    }
  }
  double const axis_y = top + row_h * static_cast<double>(rows.size()) + 12.0;
  Minutes const tick = std::max<Minutes>(1, (horizon / 10 + 4) / 5 * 5);
  for (Minutes t = 0; t <= horizon; t += tick) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.1f\">%lld</text>\n", left + scale * static_cast<double>(t),
                  axis_y, static_cast<long long>(t));
    out << buf;
  }
  out << "</svg>\n";
  return out.str();
}

// Fixed-width chart: each station row is `columns` cells wide, cells show the
// last digit of the job number; a bar listing follows every row.
inline std::string render_gantt_text(Schedule const& s, std::size_t columns = 100) {
  auto const rows = detail::gantt_rows(s);
  Minutes horizon = 1;
  for (ScheduledOp const& op : s.ops) horizon = std::max(horizon, op.completion);
  columns = std::max<std::size_t>(columns, 10);
  auto const col = [&](Minutes t) {
    return static_cast<std::size_t>(static_cast<double>(t) * static_cast<double>(columns) / static_cast<double>(horizon));
  };

  std::ostringstream out;
  out << (s.instance_name.empty() ? "schedule" : s.instance_name) << "  Cmax=" << horizon << "\n";
  for (auto const& [id, ops] : rows) {
    std::string cells(columns, '.');
    for (ScheduledOp const& op : ops) {
      std::size_t const a = col(op.start);
      std::size_t const b = std::max(a + 1, col(op.completion));
      for (std::size_t c = a; c < std::min(b, columns); ++c) cells[c] = static_cast<char>('0' + (op.job + 1) % 10);
    }
    std::string label = detail::station_label(id);
    label.resize(8, ' ');
    out << label << "|" << cells << "|\n";
    out << "        ";
    for (ScheduledOp const& op : ops) out << ' ' << detail::bar_label(op) << '[' << op.start << ',' << op.completion << ')';
    out << "\n";
  }
  return out.str();
}

}  // namespace rhfs

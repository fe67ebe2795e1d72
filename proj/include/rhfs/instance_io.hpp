#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"

// Line-oriented instance files. Grammar (see docs/format.md):
//
//   rhfs 1
//   name <identifier>
//   nrm <int>
//   rm <int>
//   stations <M_1> ... <M_m>
//   lb <int>                      (optional)
//   jobs <n>
//   job <i> rts <r>               (i = 1..n, in order)
//   op <l> <stage> <t_1> ... <t_M> (l = 1..om_i, in order; one time per station)
//
// Everything after '#' is a comment. Indices are 1-based.

namespace rhfs {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string const& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t const start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      if (i > start) line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

inline std::int64_t to_int(Line const& line, std::size_t idx, char const* what) {
  if (idx >= line.tokens.size()) {
    std::size_t const col = line.tokens.empty() ? 1 : line.tokens.back().column + line.tokens.back().text.size();
    throw ParseError(line.number, col, std::string("missing ") + what);
  }
  Token const& t = line.tokens[idx];
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
    throw ParseError(line.number, t.column, std::string("expected integer ") + what + ", got '" +
                                                std::string(t.text) + "'");
  }
  return value;
}

inline std::size_t to_count(Line const& line, std::size_t idx, char const* what, std::int64_t min_value) {
  std::int64_t const v = to_int(line, idx, what);
  if (v < min_value) {
    throw ParseError(line.number, line.tokens[idx].column,
                     std::string(what) + " must be at least " + std::to_string(min_value) + ", got " +
                         std::to_string(v));
  }
  return static_cast<std::size_t>(v);
}

inline void expect_arity(Line const& line, std::size_t n) {
  if (line.tokens.size() > n) {
    throw ParseError(line.number, line.tokens[n].column,
                     "unexpected token '" + std::string(line.tokens[n].text) + "'");
  }
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  using detail::Line;
  auto const lines = detail::tokenize(text);
  std::size_t cursor = 0;
  std::size_t const last_line = lines.empty() ? 1 : lines.back().number;

  auto need = [&](std::string_view keyword) -> Line const& {
    if (cursor >= lines.size()) throw ParseError(last_line, 1, "unexpected end of file, expected '" + std::string(keyword) + "'");
    Line const& l = lines[cursor];
    if (l.tokens.front().text != keyword) {
      throw ParseError(l.number, l.tokens.front().column,
                       "expected '" + std::string(keyword) + "', got '" + std::string(l.tokens.front().text) + "'");
    }
    ++cursor;
    return l;
  };

  {
    Line const& l = need("rhfs");
    if (detail::to_int(l, 1, "format version") != 1) throw ParseError(l.number, l.tokens[1].column, "unsupported format version");
    detail::expect_arity(l, 2);
  }
  std::string name;
  {
    Line const& l = need("name");
    if (l.tokens.size() < 2) throw ParseError(l.number, 5, "missing instance name");
    detail::expect_arity(l, 2);
    name = std::string(l.tokens[1].text);
  }
  Line const& nrm_line = need("nrm");
  std::size_t const nrm = detail::to_count(nrm_line, 1, "nrm", 0);
  detail::expect_arity(nrm_line, 2);
  Line const& rm_line = need("rm");
  std::size_t const rm = detail::to_count(rm_line, 1, "rm", 0);
  detail::expect_arity(rm_line, 2);
  if (nrm + rm == 0) throw ParseError(rm_line.number, 1, "instance needs at least one stage");

  Line const& st_line = need("stations");
  std::vector<std::size_t> stations;
  for (std::size_t t = 1; t < st_line.tokens.size(); ++t) stations.push_back(detail::to_count(st_line, t, "station count", 1));
  if (stations.size() != nrm + rm) {
    throw ParseError(st_line.number, 1,
                     "stations lists " + std::to_string(stations.size()) + " stages, nrm + rm = " +
                         std::to_string(nrm + rm));
  }

  std::optional<Minutes> lb;
  if (cursor < lines.size() && lines[cursor].tokens.front().text == "lb") {
    Line const& l = lines[cursor++];
    lb = static_cast<Minutes>(detail::to_count(l, 1, "lb", 1));
    detail::expect_arity(l, 2);
  }

  Line const& jobs_line = need("jobs");
  std::size_t const n = detail::to_count(jobs_line, 1, "job count", 1);
  detail::expect_arity(jobs_line, 2);

  auto stage_of = [&](std::size_t step) { return step < nrm ? step : nrm + (step - nrm) % rm; };

  std::vector<std::size_t> rts;
  std::vector<std::vector<std::vector<Minutes>>> times;
  for (std::size_t i = 0; i < n; ++i) {
    Line const& jl = need("job");
    if (detail::to_int(jl, 1, "job index") != static_cast<std::int64_t>(i + 1)) {
      throw ParseError(jl.number, jl.tokens[1].column, "expected job " + std::to_string(i + 1));
    }
    if (jl.tokens.size() < 3 || jl.tokens[2].text != "rts") {
      throw ParseError(jl.number, jl.tokens.size() < 3 ? 1 : jl.tokens[2].column, "expected 'rts' after job index");
    }
    std::size_t const r = detail::to_count(jl, 3, "rts", 1);
    detail::expect_arity(jl, 4);
    if (rm == 0 && r != 1) throw ParseError(jl.number, jl.tokens[3].column, "rts must be 1 when rm = 0");
    rts.push_back(r);
    std::size_t const om = nrm + rm * r;
    std::vector<std::vector<Minutes>> job_times;
    for (std::size_t l = 0; l < om; ++l) {
      Line const& ol = need("op");
      if (detail::to_int(ol, 1, "flow step") != static_cast<std::int64_t>(l + 1)) {
        throw ParseError(ol.number, ol.tokens[1].column, "expected flow step " + std::to_string(l + 1));
      }
      std::size_t const stage = stage_of(l);
      if (detail::to_int(ol, 2, "stage") != static_cast<std::int64_t>(stage + 1)) {
        throw ParseError(ol.number, ol.tokens[2].column,
                         "flow step " + std::to_string(l + 1) + " of job " + std::to_string(i + 1) +
                             " belongs to stage " + std::to_string(stage + 1));
      }
      if (ol.tokens.size() != 3 + stations[stage]) {
        throw ParseError(ol.number, 1,
                         "job " + std::to_string(i + 1) + " step " + std::to_string(l + 1) + " needs " +
                             std::to_string(stations[stage]) + " station times, got " +
                             std::to_string(ol.tokens.size() - 3));
      }
      std::vector<Minutes> row;
      for (std::size_t k = 0; k < stations[stage]; ++k) {
        std::int64_t const t = detail::to_int(ol, 3 + k, "duration");
        if (t <= 0) {
          throw ParseError(ol.number, ol.tokens[3 + k].column,
                           "duration of job " + std::to_string(i + 1) + " step " + std::to_string(l + 1) +
                               " station " + std::to_string(k + 1) + " must be positive, got " + std::to_string(t));
        }
        row.push_back(t);
      }
      job_times.push_back(std::move(row));
    }
    times.push_back(std::move(job_times));
  }
  if (cursor < lines.size() && lines[cursor].tokens.front().text == "end") {
    detail::expect_arity(lines[cursor], 1);
    ++cursor;
  }
  if (cursor != lines.size()) {
    throw ParseError(lines[cursor].number, lines[cursor].tokens.front().column,
                     "unexpected '" + std::string(lines[cursor].tokens.front().text) + "' after last job");
  }
  return Instance(std::move(name), nrm, rm, std::move(stations), std::move(rts), std::move(times), lb);
}

inline std::string serialize_instance(Instance const& instance) {
  std::ostringstream out;
  out << "rhfs 1\n";
  out << "name " << instance.name() << "\n";
  out << "nrm " << instance.nrm() << "\n";
  out << "rm " << instance.rm() << "\n";
  out << "stations";
  for (std::size_t m : instance.stations_per_stage()) out << ' ' << m;
  out << "\n";
  if (auto lb = instance.lower_bound()) out << "lb " << *lb << "\n";
  out << "jobs " << instance.job_count() << "\n";
  for (std::size_t i = 0; i < instance.job_count(); ++i) {
    out << "job " << i + 1 << " rts " << instance.rts()[i] << "\n";
    for (std::size_t l = 0; l < instance.operation_count(i); ++l) {
      out << "op " << l + 1 << ' ' << instance.stage_of(l) + 1;
      for (Minutes t : instance.times(i, l)) out << ' ' << t;
      out << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

// Plain hybrid flow shop data as distributed for the Carlier-Neron
// benchmark: "n m", then the m station counts, then n rows of m processing
// times. Stations within a stage are identical, every stage is visited once.
inline Instance parse_carlier_neron(std::string_view text, std::string name, std::optional<Minutes> lb = std::nullopt) {
  auto const lines = detail::tokenize(text);
  std::vector<std::pair<std::size_t, std::int64_t>> values;  // (line, value)
  for (auto const& line : lines) {
    for (std::size_t t = 0; t < line.tokens.size(); ++t) values.emplace_back(line.number, detail::to_int(line, t, "value"));
  }
  std::size_t cursor = 0;
  auto next = [&](char const* what) {
    if (cursor >= values.size()) throw ParseError(lines.empty() ? 1 : lines.back().number, 1, std::string("missing ") + what);
    auto [line, v] = values[cursor++];
    if (v <= 0) throw ParseError(line, 1, std::string(what) + " must be positive");
    return v;
  };
  auto const n = static_cast<std::size_t>(next("job count"));
  auto const m = static_cast<std::size_t>(next("stage count"));
  std::vector<std::size_t> stations;
  for (std::size_t j = 0; j < m; ++j) stations.push_back(static_cast<std::size_t>(next("station count")));
  std::vector<std::vector<std::vector<Minutes>>> times(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Minutes const t = next("processing time");
      times[i].push_back(std::vector<Minutes>(stations[j], t));
    }
  }
  if (cursor != values.size()) throw ParseError(values[cursor].first, 1, "trailing data after last job");
  return Instance(std::move(name), m, 0, std::move(stations), std::vector<std::size_t>(n, 1), std::move(times), lb);
}

inline std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Instance load_instance(std::string const& path) { return parse_instance(read_file(path)); }

}  // namespace rhfs

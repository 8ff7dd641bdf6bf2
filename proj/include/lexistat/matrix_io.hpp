#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lexistat/distance.hpp"
#include "lexistat/error.hpp"
#include "lexistat/format.hpp"

// Distance-matrix serialization:
//   appendix  lower-triangular integer table (entries ×1000) plus a legend
//   csv       full-precision square table with a label header row/column
//   json      {"labels": [...], "entries": [[...], ...]}
namespace lexistat {

enum class MatrixFormat { Appendix, Csv, Json };

inline std::optional<MatrixFormat> parse_matrix_format(std::string_view name) {
  if (name == "appendix") return MatrixFormat::Appendix;
  if (name == "csv") return MatrixFormat::Csv;
  if (name == "json") return MatrixFormat::Json;
  return std::nullopt;
}

namespace detail {

inline std::string pad_left(const std::string& s, std::size_t width, char fill = ' ') {
  return s.size() >= width ? s : std::string(width - s.size(), fill) + s;
}

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::vector<std::string_view> lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    pos = end + 1;
  }
  return out;
}

}  // namespace detail

/// Lower-triangular table of per-mille integers. Row k lists its distances to
/// rows 1..k-1; a footer names the columns; the legend maps row numbers to
/// `legend` (defaults to the matrix labels).
inline std::string to_appendix(const DistanceMatrix& m, const std::vector<std::string>& legend = {}) {
  const std::size_t n = m.size();
  if (!legend.empty() && legend.size() != n) fail(ErrorKind::ContractViolation, "legend size mismatch");
  long widest = 0;
  for (double v : m.values()) widest = std::max(widest, fmt::per_mille(v));
  const std::size_t cell = std::max<std::size_t>(3, std::to_string(widest).size());
  const std::size_t row_width = std::to_string(n).size();

  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    out += detail::pad_left(std::to_string(i + 1), row_width);
    for (std::size_t j = 0; j < i; ++j) {
      out += ' ';
      out += detail::pad_left(std::to_string(fmt::per_mille(m.at(i, j))), cell, '0');
    }
    out += '\n';
  }
  out += std::string(row_width, ' ');
  for (std::size_t j = 0; j + 1 < n; ++j) {
    out += ' ';
    out += detail::pad_left(std::to_string(j + 1), cell);
  }
  out += "\n\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += std::to_string(i + 1) + ' ' + (legend.empty() ? m.label(i) : legend[i]) + '\n';
  }
  return out;
}

inline std::string to_csv(const DistanceMatrix& m) {
  std::string out = "languageId";
  for (const auto& l : m.labels()) out += ',' + l;
  out += '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += m.label(i);
    for (std::size_t j = 0; j < m.size(); ++j) out += ',' + fmt::shortest(m.at(i, j));
    out += '\n';
  }
  return out;
}

inline nlohmann::json to_json_value(const SymmetricMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.at(i, j));
    entries.push_back(std::move(row));
  }
  return {{"labels", m.labels()}, {"entries", std::move(entries)}};
}

inline std::string to_json(const DistanceMatrix& m) { return to_json_value(m).dump(2) + '\n'; }

inline std::string write_matrix(const DistanceMatrix& m, MatrixFormat format,
                                const std::vector<std::string>& legend = {}) {
  switch (format) {
    case MatrixFormat::Appendix: return to_appendix(m, legend);
    case MatrixFormat::Csv: return to_csv(m);
    case MatrixFormat::Json: return to_json(m);
  }
  return {};
}

// ---------------------------------------------------------------------------

inline DistanceMatrix parse_appendix(std::string_view text) {
  const auto rows = detail::lines(text);
  std::vector<std::vector<long>> lower;
  std::size_t line_no = 0;
  for (; line_no < rows.size(); ++line_no) {
    const auto tok = detail::tokens(rows[line_no]);
    if (tok.empty()) fail(ErrorKind::Parse, "unexpected blank line in table", line_no + 1);
    const std::size_t expected = lower.size() + 1;
    const auto first = detail::parse_int(tok[0]);
    if (!first) fail(ErrorKind::Parse, "row must start with its number", line_no + 1);
    if (static_cast<std::size_t>(*first) != expected) {
      if (*first == 1 && expected > 1) break;  // column footer
      fail(ErrorKind::Parse, "expected row " + std::to_string(expected), line_no + 1);
    }
    if (tok.size() != expected) {
      fail(ErrorKind::Parse, "row " + std::to_string(expected) + " needs " +
                                 std::to_string(expected - 1) + " entries", line_no + 1);
    }
    std::vector<long> row;
    for (std::size_t k = 1; k < tok.size(); ++k) {
      const auto v = detail::parse_int(tok[k]);
      if (!v) fail(ErrorKind::Parse, "entry is not a non-negative integer", line_no + 1);
      row.push_back(*v);
    }
    lower.push_back(std::move(row));
  }
  const std::size_t n = lower.size();
  if (n < 1 || line_no >= rows.size()) fail(ErrorKind::Parse, "missing column footer");
  const auto footer = detail::tokens(rows[line_no]);
  for (std::size_t k = 0; k < footer.size(); ++k) {
    if (detail::parse_int(footer[k]) != static_cast<int>(k + 1) || footer.size() + 1 != n) {
      fail(ErrorKind::Parse, "malformed column footer", line_no + 1);
    }
  }
  ++line_no;

  std::vector<std::string> labels(n);
  std::size_t found = 0;
  for (; line_no < rows.size(); ++line_no) {
    const auto line = rows[line_no];
    if (detail::trim(line).empty()) continue;
    const auto space = line.find(' ');
    const auto k = detail::parse_int(line.substr(0, space));
    if (space == std::string_view::npos || !k || *k < 1 || static_cast<std::size_t>(*k) > n) {
      fail(ErrorKind::Parse, "legend line must be \"<row> <label>\"", line_no + 1);
    }
    auto& slot = labels[static_cast<std::size_t>(*k - 1)];
    if (!slot.empty()) fail(ErrorKind::Parse, "duplicate legend entry", line_no + 1);
    slot = std::string(detail::trim(line.substr(space + 1)));
    ++found;
  }
  if (found != n) fail(ErrorKind::Parse, "legend must name all " + std::to_string(n) + " rows");

  std::vector<double> values(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      values[i * n + j] = values[j * n + i] = static_cast<double>(lower[i][j]) / 1000.0;
    }
  }
  return DistanceMatrix(std::move(labels), std::move(values));
}

inline DistanceMatrix parse_csv_matrix(std::string_view text) {
  const auto rows = detail::lines(text);
  if (rows.empty()) fail(ErrorKind::Parse, "empty CSV", 1);
  const auto header = detail::split(rows[0], ',');
  if (header.size() < 2) fail(ErrorKind::Parse, "header needs at least one label", 1);
  std::vector<std::string> labels;
  for (std::size_t k = 1; k < header.size(); ++k) labels.emplace_back(detail::trim(header[k]));
  const std::size_t n = labels.size();

  std::vector<double> values;
  values.reserve(n * n);
  std::size_t row_count = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (detail::trim(rows[r]).empty()) continue;
    const auto cells = detail::split(rows[r], ',');
    if (cells.size() != n + 1) fail(ErrorKind::Parse, "expected " + std::to_string(n + 1) + " cells", r + 1);
    if (row_count >= n || detail::trim(cells[0]) != labels[row_count]) {
      fail(ErrorKind::Parse, "row label does not match header order", r + 1);
    }
    for (std::size_t k = 1; k < cells.size(); ++k) {
      const auto v = fmt::parse_double(cells[k]);
      if (!v) fail(ErrorKind::Parse, "cell is not a number", r + 1);
      values.push_back(*v);
    }
    ++row_count;
  }
  if (row_count != n) fail(ErrorKind::Parse, "expected " + std::to_string(n) + " data rows");
  return DistanceMatrix(std::move(labels), std::move(values));
}

inline DistanceMatrix parse_json_matrix(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    auto labels = doc.at("labels").get<std::vector<std::string>>();
    std::vector<double> values;
    const auto& entries = doc.at("entries");
    if (entries.size() != labels.size()) fail(ErrorKind::Parse, "entries/labels size mismatch");
    for (const auto& row : entries) {
      if (row.size() != labels.size()) fail(ErrorKind::Parse, "matrix row has wrong length");
      for (const auto& v : row) values.push_back(v.get<double>());
    }
    return DistanceMatrix(std::move(labels), std::move(values));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("JSON matrix: ") + e.what());
  }
}

/// Detects the format from content: '{' → JSON, a comma in the first line →
/// CSV, otherwise the appendix table.
inline MatrixFormat detect_matrix_format(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return MatrixFormat::Json;
  const auto eol = text.find('\n');
  if (text.substr(0, eol).find(',') != std::string_view::npos) return MatrixFormat::Csv;
  return MatrixFormat::Appendix;
}

inline DistanceMatrix read_matrix(std::string_view text, std::optional<MatrixFormat> format = std::nullopt) {
  unicode::require_utf8(text);
  switch (format.value_or(detect_matrix_format(text))) {
    case MatrixFormat::Appendix: return parse_appendix(text);
    case MatrixFormat::Csv: return parse_csv_matrix(text);
    case MatrixFormat::Json: return parse_json_matrix(text);
  }
  fail(ErrorKind::Parse, "unknown matrix format");
}

}  // namespace lexistat

#include "fiskit/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fiskit/errors.hpp"

namespace fiskit {
namespace {

std::vector<std::string> split_comma(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_number(const std::string& cell, std::size_t line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw FisError(Errc::BadFile,
                   "line " + std::to_string(line_no) + ": not a number: '" + cell + "'");
  }
  return v;
}

}  // namespace

bool Dataset::fully_labeled() const {
  for (const auto& t : y) {
    if (!t.has_value()) return false;
  }
  return true;
}

Dataset Dataset::select(const std::vector<std::size_t>& idx) const {
  Dataset out;
  out.columns = columns;
  out.x.reserve(idx.size());
  out.y.reserve(idx.size());
  for (std::size_t i : idx) {
    out.x.push_back(x[i]);
    out.y.push_back(y[i]);
  }
  return out;
}

Dataset parse_csv(const std::string& text) {
  Dataset data;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_comma(line);
    if (line_no == 1) {
      if (cells.size() < 2) {
        throw FisError(Errc::BadFile, "header needs at least one input column and a target");
      }
      data.columns = cells;
      continue;
    }
    if (cells.size() != data.columns.size()) {
      throw FisError(Errc::BadFile, "line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(data.columns.size()) + " cells, got " +
                                        std::to_string(cells.size()));
    }
    std::vector<double> row(cells.size() - 1);
    for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
      row[c] = parse_number(cells[c], line_no);
    }
    data.x.push_back(std::move(row));
    const std::string& target = cells.back();
    if (target.empty()) {
      data.y.emplace_back(std::nullopt);
    } else {
      data.y.emplace_back(parse_number(target, line_no));
    }
  }
  if (data.columns.empty()) {
    throw FisError(Errc::BadFile, "empty csv: missing header");
  }
  return data;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FisError(Errc::BadFile, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string to_csv(const Dataset& data) {
  std::string out;
  for (std::size_t c = 0; c < data.columns.size(); ++c) {
    if (c) out += ',';
    out += data.columns[c];
  }
  out += '\n';
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    for (double v : data.x[i]) {
      out += format_double(v);
      out += ',';
    }
    if (data.y[i].has_value()) out += format_double(*data.y[i]);
    out += '\n';
  }
  return out;
}

}  // namespace fiskit

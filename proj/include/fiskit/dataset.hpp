#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fiskit {

/// Tabular records: every column but the last is a numeric input, the last
/// column is the regression/class target and may be empty per record.
struct Dataset {
  std::vector<std::string> columns;           // input names then target name
  std::vector<std::vector<double>> x;         // one input vector per record
  std::vector<std::optional<double>> y;       // target per record

  std::size_t size() const { return x.size(); }
  std::size_t n_inputs() const { return columns.empty() ? 0 : columns.size() - 1; }

  /// True when every record carries a target.
  bool fully_labeled() const;

  /// Subset by record index, preserving order.
  Dataset select(const std::vector<std::size_t>& idx) const;
};

/// Parses CSV text: comma-separated header then decimal rows, LF endings
/// (lone CR tolerated on read), empty trailing cell = unlabeled record.
/// Throws FisError(BadFile) with a line-tagged message on malformed input.
Dataset parse_csv(const std::string& text);

Dataset load_csv(const std::string& path);

/// Canonical CSV bytes: header, then one row per record with shortest
/// round-trip number formatting and LF line endings.
std::string to_csv(const Dataset& data);

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace fiskit

#include "fiskit/terrorism.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "fiskit/errors.hpp"
#include "fiskit/inference.hpp"

namespace fiskit {
namespace {

// Term support summaries (left, mean, right) for every domain variable.
const std::array<DomainTermBounds, 13> kTermBounds = {{
    {"place", "low", 0.0, 1.0, 9.0},
    {"place", "medium", 6.0, 13.0, 20.0},
    {"place", "high", 16.0, 25.0, 25.0},
    {"victim_status", "low", 0.0, 0.0, 1.2},
    {"victim_status", "medium", 0.3, 1.5, 2.7},
    {"victim_status", "high", 1.8, 3.0, 4.0},
    {"terrorist_status", "low", 0.0, 0.0, 1.2},
    {"terrorist_status", "medium", 0.3, 1.5, 2.7},
    {"terrorist_status", "high", 1.8, 3.0, 4.0},
    {"tactic", "very_low", 1.0, 1.0, 2.2},
    {"tactic", "low", 1.3, 2.5, 3.7},
    {"tactic", "medium", 1.0, 2.5, 4.0},
    {"tactic", "high", 2.8, 4.0, 4.0},
}};

// Expert rule table, term indices 0/1/2 = low/medium/high for the inputs and
// 0/1/2/3 = very_low/low/medium/high for the tactic consequent.
const std::array<std::array<int, 4>, 27> kRuleTable = {{
    {2, 2, 2, 3}, {2, 2, 1, 2}, {2, 2, 0, 2},
    {2, 1, 2, 3}, {2, 1, 1, 1}, {2, 1, 0, 1},
    {2, 0, 2, 3}, {2, 0, 1, 1}, {2, 0, 0, 1},
    {1, 2, 2, 3}, {1, 2, 1, 2}, {1, 2, 0, 2},
    {1, 1, 2, 3}, {1, 1, 1, 2}, {1, 1, 0, 2},
    {1, 0, 2, 3}, {1, 0, 1, 1}, {1, 0, 0, 1},
    {0, 2, 2, 3}, {0, 2, 1, 2}, {0, 2, 0, 2},
    {0, 1, 2, 3}, {0, 1, 1, 2}, {0, 1, 0, 2},
    {0, 0, 2, 0}, {0, 0, 1, 0}, {0, 0, 0, 0},
}};

struct VarRange {
  const char* name;
  double lo, hi;
};
constexpr VarRange kVarRanges[] = {
    {"place", 0.0, 25.0},
    {"victim_status", 0.0, 4.0},
    {"terrorist_status", 0.0, 4.0},
    {"tactic", 1.0, 4.0},
};

LinguisticVariable build_variable(const char* name, MfKind kind) {
  LinguisticVariable var;
  var.name = name;
  for (const VarRange& r : kVarRanges) {
    if (var.name == r.name) {
      var.lo = r.lo;
      var.hi = r.hi;
    }
  }
  for (const DomainTermBounds& b : kTermBounds) {
    if (var.name == b.variable) {
      var.terms.push_back({b.label, mf_from_bounds(kind, b.left, b.mean, b.right)});
    }
  }
  return var;
}

// 53-bit uniform draw in [0, 1); avoids distribution objects so the stream is
// identical across standard library implementations.
double unit_draw(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

int class_code(TacticClass c) { return static_cast<int>(c) + 1; }

std::string_view class_label(TacticClass c) {
  switch (c) {
    case TacticClass::VeryLow: return "very_low";
    case TacticClass::Low: return "low";
    case TacticClass::Medium: return "medium";
    case TacticClass::High: return "high";
  }
  return "";
}

std::string_view class_meaning(TacticClass c) {
  switch (c) {
    case TacticClass::VeryLow: return "unsuccessful attack";
    case TacticClass::Low: return "demolition";
    case TacticClass::Medium: return "assassination";
    case TacticClass::High: return "suicide attack";
  }
  return "";
}

TacticClass class_of_code(double code) {
  double clamped = std::clamp(code, 1.0, 4.0);
  // Nearest code; exact midpoints round down.
  int nearest = static_cast<int>(std::ceil(clamped - 0.5));
  nearest = std::clamp(nearest, 1, 4);
  return static_cast<TacticClass>(nearest - 1);
}

const std::array<DomainTermBounds, 13>& terrorism_term_bounds() { return kTermBounds; }
const std::array<std::array<int, 4>, 27>& terrorism_rule_table() { return kRuleTable; }

FisModel default_terrorism_fis(MfKind premise, TNorm tnorm) {
  FisModel model;
  model.mode = InferMode::Coa;
  model.tnorm = tnorm;
  model.inputs = {
      build_variable("place", premise),
      build_variable("victim_status", premise),
      build_variable("terrorist_status", premise),
  };
  model.output = build_variable("tactic", premise);
  // The table lists antecedents in descending term order; store them ascending
  // so the built model equals its own canonical serialization.
  for (auto it = kRuleTable.rbegin(); it != kRuleTable.rend(); ++it) {
    Rule rule;
    rule.antecedent = {(*it)[0], (*it)[1], (*it)[2]};
    rule.output_term = (*it)[3];
    model.rules.push_back(std::move(rule));
  }
  validate_model(model);
  return model;
}

FormattingMap parse_formatting_map(const std::string& text) {
  FormattingMap map;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = line.find_first_not_of(" \t") == std::string::npos;
    if (blank) continue;

    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos) {
      throw FisError(Errc::BadFile, "line " + std::to_string(line_no) +
                                        ": expected field<TAB>text<TAB>integer");
    }
    std::string field = line.substr(0, t1);
    std::string value = line.substr(t1 + 1, t2 - t1 - 1);
    std::string number = line.substr(t2 + 1);
    if (field.empty() || value.empty()) {
      throw FisError(Errc::BadFile, "line " + std::to_string(line_no) + ": empty field or text");
    }
    int code = 0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), code);
    if (ec != std::errc() || ptr != number.data() + number.size()) {
      throw FisError(Errc::BadFile,
                     "line " + std::to_string(line_no) + ": not an integer: '" + number + "'");
    }
    if (field != "tactic" && map.values.find(field) == map.values.end()) {
      map.fields.push_back(field);
    }
    map.values[field][value] = code;
  }
  return map;
}

FormattingMap load_formatting_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FisError(Errc::BadFile, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_formatting_map(buf.str());
}

EventVector format_event(const std::map<std::string, std::string>& raw,
                         const FormattingMap& map) {
  if (map.fields.size() != 3) {
    throw FisError(Errc::BadFile, "formatting map must define exactly three input fields, has " +
                                      std::to_string(map.fields.size()));
  }
  std::array<double, 3> values{};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string& field = map.fields[i];
    auto raw_it = raw.find(field);
    if (raw_it == raw.end()) {
      throw FisError(Errc::MissingField, "record lacks field '" + field + "'");
    }
    const auto& table = map.values.at(field);
    auto val_it = table.find(raw_it->second);
    if (val_it == table.end()) {
      throw FisError(Errc::UnknownValue,
                     "field '" + field + "': no mapping for '" + raw_it->second + "'");
    }
    values[i] = static_cast<double>(val_it->second);
  }
  EventVector event{values[0], values[1], values[2], std::nullopt};

  auto tactic_it = raw.find("tactic");
  if (tactic_it != raw.end()) {
    auto table_it = map.values.find("tactic");
    if (table_it != map.values.end()) {
      auto val_it = table_it->second.find(tactic_it->second);
      if (val_it == table_it->second.end()) {
        throw FisError(Errc::UnknownValue,
                       "field 'tactic': no mapping for '" + tactic_it->second + "'");
      }
      event.tactic = class_of_code(static_cast<double>(val_it->second));
    } else {
      const std::string& text = tactic_it->second;
      double code = 0.0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), code);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw FisError(Errc::UnknownValue, "field 'tactic': no mapping for '" + text + "'");
      }
      event.tactic = class_of_code(code);
    }
  }
  return event;
}

Dataset gen_synthetic(std::size_t n, std::uint64_t seed, const FisModel& oracle) {
  if (oracle.mode != InferMode::Coa) {
    throw FisError(Errc::ModeMismatch, "gen_synthetic requires a coa oracle");
  }
  std::mt19937_64 gen(seed);
  Dataset data;
  for (const auto& var : oracle.inputs) data.columns.push_back(var.name);
  data.columns.push_back("tactic");

  std::vector<double> draw(oracle.inputs.size());
  for (std::size_t i = 0; i < n; ++i) {
    while (true) {
      for (std::size_t v = 0; v < oracle.inputs.size(); ++v) {
        const auto& var = oracle.inputs[v];
        draw[v] = var.lo + (var.hi - var.lo) * unit_draw(gen);
      }
      if (firing_strengths(oracle, draw).total > 0.0) break;
    }
    ClassifyResult result = classify(oracle, draw);
    data.x.push_back(draw);
    data.y.emplace_back(static_cast<double>(result.class_index + 1));
  }
  return data;
}

}  // namespace fiskit

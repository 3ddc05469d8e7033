#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fiskit/dataset.hpp"
#include "fiskit/model.hpp"

namespace fiskit {

/// Attack-tactic severity classes, ordered; codes run 1..4.
enum class TacticClass { VeryLow = 0, Low = 1, Medium = 2, High = 3 };

inline constexpr TacticClass kAllTacticClasses[] = {
    TacticClass::VeryLow, TacticClass::Low, TacticClass::Medium, TacticClass::High};

int class_code(TacticClass c);                  // 1..4
std::string_view class_label(TacticClass c);    // output term label
std::string_view class_meaning(TacticClass c);  // human description

/// Crisp code to class: clamp to [1, 4], round to the nearest code, exact
/// midpoints resolve toward the lower code.
TacticClass class_of_code(double code);

/// One event: place kind, victim status, terrorist status, optional label.
struct EventVector {
  double place = 0.0;
  double victim_status = 0.0;
  double terrorist_status = 0.0;
  std::optional<TacticClass> tactic;

  bool operator==(const EventVector&) const = default;
};

/// Text-to-number dictionary for categorical raw records. Field priority is
/// the order of first appearance in the source file; the `tactic` field, when
/// present, maps label text to class codes and is excluded from the priority
/// list.
struct FormattingMap {
  std::vector<std::string> fields;                              // input fields, priority order
  std::map<std::string, std::map<std::string, int>> values;     // field -> text -> number
};

/// Parses `field<TAB>text<TAB>integer` lines; '#' starts a comment, blank
/// lines are skipped. Throws FisError(BadFile) on malformed lines.
FormattingMap parse_formatting_map(const std::string& text);
FormattingMap load_formatting_map(const std::string& path);

/// Converts one categorical record to numbers via the map. Requires exactly
/// three input fields in the priority list. Throws FisError(MissingField) when
/// raw lacks a priority field and FisError(UnknownValue) when text has no
/// mapping. A `tactic` entry in raw becomes the label, mapped through the
/// map's tactic table when one exists, otherwise parsed as a numeric code.
EventVector format_event(const std::map<std::string, std::string>& raw,
                         const FormattingMap& map);

/// The expert model: three inputs (place [0,25], victim_status [0,4],
/// terrorist_status [0,4]) with low/medium/high terms, a four-term tactic
/// output on [1,4], and the full 27-rule table. Premise family selectable;
/// every term is built from the embedded (left, mean, right) bounds.
FisModel default_terrorism_fis(MfKind premise = MfKind::Triangular,
                               TNorm tnorm = TNorm::Product);

/// (left, mean, right) bounds as embedded constants, for tests and builders:
/// rows are place low/medium/high, victim low/medium/high, terrorist
/// low/medium/high, tactic very_low/low/medium/high.
struct DomainTermBounds {
  const char* variable;
  const char* label;
  double left, mean, right;
};
const std::array<DomainTermBounds, 13>& terrorism_term_bounds();

/// Rule table as (place, victim, terrorist, tactic) term indices.
const std::array<std::array<int, 4>, 27>& terrorism_rule_table();

/// Draws n events uniformly over the oracle's input ranges, redrawing any
/// vector that fires no rule, and labels each with the oracle's class code.
/// Deterministic in seed.
Dataset gen_synthetic(std::size_t n, std::uint64_t seed, const FisModel& oracle);

}  // namespace fiskit

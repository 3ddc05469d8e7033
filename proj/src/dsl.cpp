#include "fiskit/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "fiskit/dataset.hpp"
#include "fiskit/errors.hpp"

namespace fiskit {
namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

struct Line {
  int number = 0;  // 1-based
  std::vector<Token> tokens;
};

// Splits one source line on blanks; '(' ')' ',' are single-character tokens
// so "kind(1,2)" and "kind (1, 2)" tokenize identically.
std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (c == '(' || c == ')' || c == ',') {
      tokens.push_back({std::string(1, c), static_cast<int>(i) + 1});
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size()) {
      char d = line[i];
      if (d == ' ' || d == '\t' || d == '(' || d == ')' || d == ',' || d == '#') break;
      ++i;
    }
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

class Parser {
public:
  explicit Parser(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      std::vector<Token> tokens = tokenize(raw);
      if (!tokens.empty()) lines_.push_back({number, std::move(tokens)});
      last_line_ = number;
    }
  }

  FisModel parse() {
    expect_header();
    expect_fis_line();
    while (!done() && peek().text == "var") parse_var_block();
    if (model_.mode == InferMode::Tsk) parse_output_range();
    while (!done()) parse_rule();
    finish();
    return std::move(model_);
  }

private:
  [[noreturn]] void fail(ParseErrorKind kind, int line, int column, std::string message) {
    throw ParseFailure({kind, line, column, std::move(message)});
  }

  [[noreturn]] void fail_at(ParseErrorKind kind, const Token& tok, std::string message) {
    fail(kind, lines_[pos_].number, tok.column, std::move(message));
  }

  [[noreturn]] void fail_eof(ParseErrorKind kind, std::string message) {
    fail(kind, last_line_ + 1, 1, std::move(message));
  }

  bool done() const { return pos_ >= lines_.size(); }

  const Token& peek() const { return lines_[pos_].tokens.front(); }

  // Cursor within the current line.
  const Token& tok(std::size_t i) {
    const auto& tokens = lines_[pos_].tokens;
    if (i >= tokens.size()) {
      const Token& last = tokens.back();
      fail(ParseErrorKind::UnknownKeyword, lines_[pos_].number,
           last.column + static_cast<int>(last.text.size()), "unexpected end of line");
    }
    return tokens[i];
  }

  void require_keyword(std::size_t i, std::string_view word) {
    const Token& t = tok(i);
    if (t.text != word) {
      fail_at(ParseErrorKind::UnknownKeyword, t,
              "expected '" + std::string(word) + "', got '" + t.text + "'");
    }
  }

  void require_line_ends(std::size_t n) {
    const auto& tokens = lines_[pos_].tokens;
    if (tokens.size() > n) {
      fail_at(ParseErrorKind::UnknownKeyword, tokens[n],
              "unexpected token '" + tokens[n].text + "'");
    }
  }

  double number_at(std::size_t i) {
    const Token& t = tok(i);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      fail_at(ParseErrorKind::BadNumber, t, "not a number: '" + t.text + "'");
    }
    return v;
  }

  void expect_header() {
    if (done()) fail_eof(ParseErrorKind::UnknownKeyword, "empty file, expected 'fisfmt 1'");
    require_keyword(0, "fisfmt");
    double version = number_at(1);
    if (version != 1.0) {
      fail_at(ParseErrorKind::BadNumber, tok(1), "unsupported format version '" +
                                                     tok(1).text + "', expected 1");
    }
    require_line_ends(2);
    ++pos_;
  }

  void expect_fis_line() {
    if (done()) fail_eof(ParseErrorKind::UnknownKeyword, "expected 'fis mode ... tnorm ...'");
    require_keyword(0, "fis");
    require_keyword(1, "mode");
    const Token& mode = tok(2);
    if (mode.text == "coa") {
      model_.mode = InferMode::Coa;
    } else if (mode.text == "tsk") {
      model_.mode = InferMode::Tsk;
    } else {
      fail_at(ParseErrorKind::UnknownKeyword, mode,
              "mode must be 'coa' or 'tsk', got '" + mode.text + "'");
    }
    require_keyword(3, "tnorm");
    const Token& tnorm = tok(4);
    if (tnorm.text == "product") {
      model_.tnorm = TNorm::Product;
    } else if (tnorm.text == "min") {
      model_.tnorm = TNorm::Min;
    } else {
      fail_at(ParseErrorKind::UnknownKeyword, tnorm,
              "tnorm must be 'product' or 'min', got '" + tnorm.text + "'");
    }
    require_line_ends(5);
    ++pos_;
  }

  void parse_var_block() {
    require_keyword(0, "var");
    const Token& name = tok(1);
    if (var_index_.count(name.text)) {
      fail_at(ParseErrorKind::DuplicateRule, name,
              "duplicate variable '" + name.text + "'");
    }
    require_keyword(2, "range");
    LinguisticVariable var;
    var.name = name.text;
    var.lo = number_at(3);
    var.hi = number_at(4);
    if (!(var.lo < var.hi)) {
      fail_at(ParseErrorKind::BadNumber, tok(3), "range must satisfy lo < hi");
    }
    require_line_ends(5);
    ++pos_;

    while (true) {
      if (done()) fail_eof(ParseErrorKind::UnknownKeyword, "variable block not closed by 'end'");
      if (peek().text == "end") {
        require_line_ends(1);
        ++pos_;
        break;
      }
      if (peek().text != "term") {
        fail_at(ParseErrorKind::UnknownKeyword, peek(),
                "expected 'term' or 'end', got '" + peek().text + "'");
      }
      parse_term(var);
    }
    if (var.terms.empty()) {
      fail(ParseErrorKind::UnknownKeyword, lines_[pos_ - 1].number, 1,
           "variable '" + var.name + "' declares no terms");
    }
    var_index_[var.name] = vars_.size();
    vars_.push_back(std::move(var));
  }

  void parse_term(LinguisticVariable& var) {
    const Token& label = tok(1);
    if (var.term_index(label.text) >= 0) {
      fail_at(ParseErrorKind::DuplicateRule, label,
              "duplicate term label '" + label.text + "' in variable '" + var.name + "'");
    }
    const Token& kind_tok = tok(2);
    auto kind = mf_kind_from_name(kind_tok.text);
    if (!kind) {
      fail_at(ParseErrorKind::UnknownKeyword, kind_tok,
              "unknown membership function kind '" + kind_tok.text + "'");
    }
    MembershipFunction mf;
    mf.kind = *kind;
    std::size_t i = 3;
    mf.params = parse_number_list(i, kind_tok);
    require_line_ends(i);

    if (mf.params.size() != mf_param_count(mf.kind)) {
      fail_at(ParseErrorKind::ArityMismatch, kind_tok,
              kind_tok.text + " takes " + std::to_string(mf_param_count(mf.kind)) +
                  " parameters, got " + std::to_string(mf.params.size()));
    }
    if (auto issue = validate_mf(mf)) {
      fail_at(ParseErrorKind::BadNumber, kind_tok, issue->message);
    }
    // A bounded-support term that cannot overlap the range would never fire.
    if (mf.kind == MfKind::Triangular || mf.kind == MfKind::Trapezoidal ||
        mf.kind == MfKind::PiShape) {
      if (mf.params.back() < var.lo || mf.params.front() > var.hi) {
        fail_at(ParseErrorKind::BadNumber, kind_tok,
                "term support misses the variable range");
      }
    }
    var.terms.push_back({label.text, std::move(mf)});
    ++pos_;
  }

  // Parses '(' NUM {',' NUM} ')'. `i` is advanced past the ')'.
  std::vector<double> parse_number_list(std::size_t& i, const Token& anchor) {
    if (tok(i).text != "(") {
      fail_at(ParseErrorKind::UnknownKeyword, tok(i),
              "expected '(' after '" + anchor.text + "'");
    }
    ++i;
    std::vector<double> values;
    if (tok(i).text == ")") {
      ++i;
      return values;
    }
    while (true) {
      values.push_back(number_at(i));
      ++i;
      const Token& sep = tok(i);
      if (sep.text == ",") {
        ++i;
        continue;
      }
      if (sep.text == ")") {
        ++i;
        return values;
      }
      fail_at(ParseErrorKind::UnknownKeyword, sep,
              "expected ',' or ')', got '" + sep.text + "'");
    }
  }

  void parse_output_range() {
    if (done()) fail_eof(ParseErrorKind::UnknownKeyword, "expected 'output range LO HI'");
    require_keyword(0, "output");
    require_keyword(1, "range");
    model_.out_lo = number_at(2);
    model_.out_hi = number_at(3);
    if (!(model_.out_lo < model_.out_hi)) {
      fail_at(ParseErrorKind::BadNumber, tok(2), "range must satisfy lo < hi");
    }
    require_line_ends(4);
    ++pos_;
  }

  void parse_rule() {
    require_keyword(0, "rule:");
    require_keyword(1, "if");
    // Clauses by name; declaration order is not required.
    std::map<std::string, std::pair<std::string, const Token*>> clauses;
    std::size_t i = 2;
    while (true) {
      const Token& var_tok = tok(i);
      auto var_it = var_index_.find(var_tok.text);
      if (var_it == var_index_.end()) {
        fail_at(ParseErrorKind::UndefinedTerm, var_tok,
                "undeclared variable '" + var_tok.text + "'");
      }
      require_keyword(i + 1, "is");
      const Token& label_tok = tok(i + 2);
      if (clauses.count(var_tok.text)) {
        fail_at(ParseErrorKind::ArityMismatch, var_tok,
                "variable '" + var_tok.text + "' appears twice in the antecedent");
      }
      clauses[var_tok.text] = {label_tok.text, &label_tok};
      i += 3;
      const Token& next = tok(i);
      if (next.text == "and") {
        ++i;
        continue;
      }
      if (next.text == "then") {
        ++i;
        break;
      }
      fail_at(ParseErrorKind::UnknownKeyword, next,
              "expected 'and' or 'then', got '" + next.text + "'");
    }

    Rule rule;
    if (model_.mode == InferMode::Coa) {
      const Token& out_tok = tok(i);
      if (out_tok.text == "coeffs") {
        fail_at(ParseErrorKind::UnknownKeyword, out_tok,
                "coefficient consequents require tsk mode");
      }
      auto out_it = var_index_.find(out_tok.text);
      if (out_it == var_index_.end()) {
        fail_at(ParseErrorKind::UndefinedTerm, out_tok,
                "undeclared variable '" + out_tok.text + "'");
      }
      require_keyword(i + 1, "is");
      const Token& label_tok = tok(i + 2);
      require_line_ends(i + 3);
      if (output_var_ == kNoVar) {
        output_var_ = out_it->second;
      } else if (out_it->second != output_var_) {
        fail_at(ParseErrorKind::UndefinedTerm, out_tok,
                "consequent variable '" + out_tok.text + "' does not match output variable '" +
                    vars_[output_var_].name + "'");
      }
      int term = vars_[output_var_].term_index(label_tok.text);
      if (term < 0) {
        fail_at(ParseErrorKind::UndefinedTerm, label_tok,
                "variable '" + vars_[output_var_].name + "' has no term '" + label_tok.text +
                    "'");
      }
      rule.output_term = term;
    } else {
      const Token& kw = tok(i);
      if (kw.text != "coeffs") {
        fail_at(ParseErrorKind::UnknownKeyword, kw,
                "tsk rules end with coeffs(...), got '" + kw.text + "'");
      }
      std::size_t j = i + 1;
      rule.coeffs = parse_number_list(j, kw);
      require_line_ends(j);
      if (rule.coeffs.size() != vars_.size() + 1) {
        fail_at(ParseErrorKind::ArityMismatch, kw,
                "expected " + std::to_string(vars_.size() + 1) + " coefficients, got " +
                    std::to_string(rule.coeffs.size()));
      }
    }

    rules_.push_back({std::move(rule), std::move(clauses), lines_[pos_].number});
    ++pos_;
  }

  // Resolves clause maps to index vectors once the input set is known.
  void finish() {
    std::vector<std::size_t> input_vars;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      if (model_.mode == InferMode::Coa && static_cast<int>(v) == output_var_) continue;
      input_vars.push_back(v);
    }
    if (model_.mode == InferMode::Coa) {
      if (rules_.empty()) {
        fail_eof(ParseErrorKind::UnknownKeyword, "coa model needs at least one rule");
      }
      model_.output = vars_[output_var_];
    }
    if (input_vars.empty()) {
      fail_eof(ParseErrorKind::UnknownKeyword, "model declares no input variables");
    }
    for (std::size_t v : input_vars) model_.inputs.push_back(vars_[v]);

    std::set<std::vector<int>> seen;
    for (auto& [rule, clauses, line] : rules_) {
      if (clauses.size() != input_vars.size()) {
        fail(ParseErrorKind::ArityMismatch, line, 1,
             "antecedent covers " + std::to_string(clauses.size()) + " variables, expected " +
                 std::to_string(input_vars.size()));
      }
      for (std::size_t slot = 0; slot < input_vars.size(); ++slot) {
        const LinguisticVariable& var = vars_[input_vars[slot]];
        auto it = clauses.find(var.name);
        if (it == clauses.end()) {
          fail(ParseErrorKind::ArityMismatch, line, 1,
               "antecedent does not name input variable '" + var.name + "'");
        }
        int term = var.term_index(it->second.first);
        if (term < 0) {
          fail(ParseErrorKind::UndefinedTerm, line, it->second.second->column,
               "variable '" + var.name + "' has no term '" + it->second.first + "'");
        }
        rule.antecedent.push_back(term);
      }
      if (!seen.insert(rule.antecedent).second) {
        fail(ParseErrorKind::DuplicateRule, line, 1, "duplicate rule antecedent");
      }
      model_.rules.push_back(std::move(rule));
    }
  }

  static constexpr int kNoVar = -1;

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
  FisModel model_;
  std::vector<LinguisticVariable> vars_;
  std::map<std::string, std::size_t> var_index_;
  int output_var_ = kNoVar;
  struct PendingRule {
    Rule rule;
    std::map<std::string, std::pair<std::string, const Token*>> clauses;
    int line;
  };
  std::vector<PendingRule> rules_;
};

void write_variable(std::string& out, const LinguisticVariable& var) {
  out += "var " + var.name + " range " + format_double(var.lo) + " " + format_double(var.hi) +
         "\n";
  for (const Term& term : var.terms) {
    out += "  term " + term.label + " " + std::string(mf_kind_name(term.mf.kind)) + "(";
    for (std::size_t i = 0; i < term.mf.params.size(); ++i) {
      if (i) out += ", ";
      out += format_double(term.mf.params[i]);
    }
    out += ")\n";
  }
  out += "end\n";
}

}  // namespace

std::string_view parse_error_kind_name(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::UnknownKeyword: return "unknown_keyword";
    case ParseErrorKind::BadNumber: return "bad_number";
    case ParseErrorKind::UndefinedTerm: return "undefined_term";
    case ParseErrorKind::DuplicateRule: return "duplicate_rule";
    case ParseErrorKind::ArityMismatch: return "arity_mismatch";
  }
  return "";
}

FisModel parse_model(const std::string& text) {
  FisModel model = Parser(text).parse();
  validate_model(model);
  return model;
}

FisModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FisError(Errc::BadFile, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string serialize_model(const FisModel& model) {
  std::string out;
  out += "fisfmt 1\n";
  out += "fis mode " + std::string(infer_mode_name(model.mode)) + " tnorm " +
         std::string(tnorm_name(model.tnorm)) + "\n";
  for (const auto& var : model.inputs) write_variable(out, var);
  if (model.mode == InferMode::Coa) {
    write_variable(out, model.output);
  } else {
    out += "output range " + format_double(model.out_lo) + " " + format_double(model.out_hi) +
           "\n";
  }

  std::vector<const Rule*> order;
  order.reserve(model.rules.size());
  for (const Rule& r : model.rules) order.push_back(&r);
  std::sort(order.begin(), order.end(),
            [](const Rule* a, const Rule* b) { return a->antecedent < b->antecedent; });

  for (const Rule* rule : order) {
    out += "rule: if";
    for (std::size_t v = 0; v < model.inputs.size(); ++v) {
      if (v) out += " and";
      out += " " + model.inputs[v].name + " is " +
             model.inputs[v].terms[rule->antecedent[v]].label;
    }
    out += " then ";
    if (model.mode == InferMode::Coa) {
      out += model.output.name + " is " + model.output.terms[rule->output_term].label;
    } else {
      out += "coeffs(";
      for (std::size_t i = 0; i < rule->coeffs.size(); ++i) {
        if (i) out += ", ";
        out += format_double(rule->coeffs[i]);
      }
      out += ")";
    }
    out += "\n";
  }
  return out;
}

}  // namespace fiskit

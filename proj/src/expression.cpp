#include "genus/expression.hpp"

#include <algorithm>
#include <cctype>

#include "genus/errors.hpp"

namespace genus {

std::string_view ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::Ginibre:
      return "Ginibre";
    case Ensemble::Goe:
      return "GOE";
    case Ensemble::Rectangular:
      return "Rectangular";
  }
  return "?";
}

namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  Expression expression() {
    Expression e;
    skip_separators();
    while (!at_end()) {
      if (!consume_keyword("tr")) fail("expected 'tr('");
      skip_ws();
      if (peek() != '(') fail("expected '(' after 'tr'");
      ++pos_;
      e.traces.push_back(word_until(')'));
      ++pos_;
      skip_separators();
    }
    if (e.traces.empty()) fail("expression has no traces");
    return e;
  }

  TraceWord bare_word() { return word_until('\0'); }

  bool looks_like_trace() {
    skip_ws();
    const std::size_t save = pos_;
    const bool yes = consume_keyword("tr");
    pos_ = save;
    return yes;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void skip_separators() {
    skip_ws();
    while (peek() == '*') {
      ++pos_;
      skip_ws();
    }
  }

  bool consume_keyword(std::string_view kw) {
    if (text_.substr(pos_, kw.size()) != kw) return false;
    pos_ += kw.size();
    return true;
  }

  int digits(bool required) {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      if (required) fail("expected digits");
      return -1;
    }
    int v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > 100000) fail("number too large");
    }
    return v;
  }

  TraceWord word_until(char terminator) {
    TraceWord w;
    for (;;) {
      skip_separators();
      if (peek() == terminator) return w;
      if (at_end()) fail("unterminated trace");
      Letter l;
      const char ch = text_[pos_++];
      switch (ch) {
        case 'Z':
          l.kind = LetterKind::Ginibre;
          break;
        case 'T':
          l.kind = LetterKind::Goe;
          break;
        case 'X':
          l.kind = LetterKind::Rectangular;
          break;
        case 'W':
          l.kind = LetterKind::Wishart;
          break;
        case 'Y':
          l.kind = LetterKind::Spectator;
          break;
        default:
          --pos_;
          fail(std::string("unexpected character '") + ch + "'");
      }
      const int idx = digits(l.kind == LetterKind::Spectator);
      l.index = idx < 0 ? 1 : idx;
      if (l.index < 1) fail("letter index must be positive");
      if (l.kind == LetterKind::Spectator && l.index > 99) fail("spectator labels run Y1..Y99");
      skip_ws();
      if (peek() == '\'') {
        l.transposed = true;
        ++pos_;
        skip_ws();
      }
      int power = 1;
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        power = digits(true);
      }
      for (int i = 0; i < power; ++i) w.push_back(l);
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression: " + what + " at offset " + std::to_string(pos_) + " in \"" +
                     std::string(text_) + "\"");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

TraceWord parse_word(std::string_view text) { return ExpressionParser(text).bare_word(); }

Expression parse_expression(std::string_view text) { return ExpressionParser(text).expression(); }

TraceWord parse_trace(std::string_view text) {
  ExpressionParser p(text);
  if (!p.looks_like_trace()) return parse_word(text);
  Expression e = parse_expression(text);
  if (e.traces.size() != 1) throw ParseError("expected a single trace in \"" + std::string(text) + "\"");
  return e.traces.front();
}

std::string to_string(const Letter& l) {
  std::string s;
  switch (l.kind) {
    case LetterKind::Ginibre:
      s = "Z";
      break;
    case LetterKind::Goe:
      s = "T";
      break;
    case LetterKind::Rectangular:
      s = "X";
      break;
    case LetterKind::Wishart:
      s = "W";
      break;
    case LetterKind::Spectator:
      s = "Y";
      break;
  }
  if (l.kind == LetterKind::Spectator || l.index != 1) s += std::to_string(l.index);
  if (l.transposed) s += '\'';
  return s;
}

std::string to_string(const TraceWord& w) {
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    s += to_string(l);
  }
  return s;
}

std::string to_string(const Expression& e) {
  std::string s;
  for (const auto& t : e.traces) {
    if (!s.empty()) s += ' ';
    s += "tr(" + to_string(t) + ")";
  }
  return s;
}

TraceWord transpose(const TraceWord& w) {
  TraceWord r(w.rbegin(), w.rend());
  for (auto& l : r) l.transposed = !l.transposed;
  return r;
}

TraceWord concat(const TraceWord& a, const TraceWord& b) {
  TraceWord r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

bool has_spectators(const TraceWord& w) {
  return std::any_of(w.begin(), w.end(), [](const Letter& l) { return l.is_spectator(); });
}

bool has_spectators(const Expression& e) {
  return std::any_of(e.traces.begin(), e.traces.end(), [](const TraceWord& w) { return has_spectators(w); });
}

}  // namespace genus

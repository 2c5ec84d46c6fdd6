#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace genus {

enum class Ensemble { Ginibre, Goe, Rectangular };

std::string_view ensemble_name(Ensemble e);

// An ensemble together with an instance number; letters sharing a
// GaussianId are the same random matrix.
struct GaussianId {
  Ensemble ensemble = Ensemble::Ginibre;
  int instance = 1;

  friend auto operator<=>(const GaussianId&, const GaussianId&) = default;
};

enum class LetterKind {
  Ginibre,      // Z: N×N, entries of variance 1/N
  Goe,          // T: symmetric N×N
  Rectangular,  // X: M×N, entries of variance 1/N
  Wishart,      // W = XᵀX, compiled to the two letters X' X
  Spectator,    // Y: independent N×N matrix, read off the vertices
};

struct Letter {
  LetterKind kind = LetterKind::Ginibre;
  int index = 1;  // instance for Gaussian kinds, label for spectators
  bool transposed = false;

  bool is_spectator() const { return kind == LetterKind::Spectator; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using TraceWord = std::vector<Letter>;

struct Expression {
  std::vector<TraceWord> traces;
};

// Textual forms.
//   letter     := ('Z' | 'T' | 'X' | 'W') digits? | 'Y' digits ; then "'"? ('^' digits)?
//   word       := (letter | '*')*
//   expression := ('tr(' word ')' | '*')+
// Whitespace is insignificant. Throws ParseError.
TraceWord parse_word(std::string_view text);
Expression parse_expression(std::string_view text);
// Accepts either "tr(...)" or a bare word.
TraceWord parse_trace(std::string_view text);

std::string to_string(const Letter& l);
std::string to_string(const TraceWord& w);
std::string to_string(const Expression& e);

// Reversed word with every transpose flag toggled.
TraceWord transpose(const TraceWord& w);

TraceWord concat(const TraceWord& a, const TraceWord& b);

bool has_spectators(const TraceWord& w);
bool has_spectators(const Expression& e);

}  // namespace genus

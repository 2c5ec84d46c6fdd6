#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "genus/expression.hpp"
#include "genus/gluing.hpp"
#include "genus/rational.hpp"
#include "genus/trace_monomial.hpp"

namespace genus {

/// coefficient · N^n_exponent · c^c_exponent · Π tr(monomials), with
/// normalized traces. Identity monomials are dropped; the rest are sorted.
struct ExpansionTerm {
  std::int64_t coefficient = 0;
  int n_exponent = 0;
  int c_exponent = 0;
  std::vector<TraceMonomial> monomials;

  friend bool operator==(const ExpansionTerm&, const ExpansionTerm&) = default;
};

using Expansion = std::vector<ExpansionTerm>;

struct ExpandOptions {
  int max_class_letters = 16;
  unsigned threads = 1;
};

// Reads GENUS_MAX_LETTERS when set.
ExpandOptions default_expand_options();

/// Accumulates terms keyed by (n_exponent, c_exponent, monomials). Merging is
/// commutative and associative; zero coefficients are dropped on output.
class TermCollector {
 public:
  void add(ExpansionTerm term);
  void add(const Expansion& terms, std::int64_t scale = 1);
  void merge(const TermCollector& other);
  // Sorted by descending n_exponent, then monomials, then descending c_exponent.
  Expansion terms() const;

 private:
  struct Key {
    int n_exponent;
    int c_exponent;
    std::vector<TraceMonomial> monomials;
    bool operator<(const Key& o) const;
  };
  std::map<Key, std::int64_t> sums_;
};

/// One term per gluing: N^(χ − 2#faces) c^(row vertices) times the vertex
/// traces, collected.
Expansion expand(const Expression& expr, const ExpandOptions& opts = default_expand_options());
Expansion expand(const GluingSpec& spec, const ExpandOptions& opts = default_expand_options());

// As expand, restricted to gluings whose faces form a single component.
Expansion connected_expand(const Expression& expr, const ExpandOptions& opts = default_expand_options());

// The term contributed by a single gluing (before collection).
ExpansionTerm gluing_term(const GluingSpec& spec, const Premap& pi);

using GluingFilter = std::function<bool(const GluingSpec&, const Gluing&)>;
Expansion expand_filtered(const GluingSpec& spec, const GluingFilter& keep,
                          const ExpandOptions& opts = default_expand_options());

Expansion multiply(const Expansion& a, const Expansion& b);
Expansion add(const Expansion& a, const Expansion& b);
Expansion scale(const Expansion& a, std::int64_t factor);
// Shift every term by N^shift (e.g. converting tr to Tr).
Expansion shift_n(const Expansion& a, int shift);

/// Σ coefficient · N^n · c^e · Π y(monomial). Without y_values every
/// monomial evaluates to 1 (all spectators are the identity); with them, a
/// missing non-identity monomial throws ContractError.
double evaluate(const Expansion& terms, double N, double c,
                const std::optional<std::map<TraceMonomial, double>>& y_values = std::nullopt);
Rational evaluate_exact(const Expansion& terms, const Rational& N, const Rational& c,
                        const std::optional<std::map<TraceMonomial, Rational>>& y_values = std::nullopt);

std::string to_string(const ExpansionTerm& t);
std::string to_string(const Expansion& terms);

}  // namespace genus

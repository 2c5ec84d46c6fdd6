#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "genus/expansion.hpp"
#include "genus/expression.hpp"
#include "genus/mc_oracle.hpp"
#include "genus/rational.hpp"

namespace genus::testing {

inline Expression product(std::vector<TraceWord> traces) {
  Expression e;
  e.traces = std::move(traces);
  return e;
}

inline Expression single(const std::string& word) { return product({parse_word(word)}); }

// All words of the given length over an alphabet of letter spellings.
inline std::vector<std::string> words_over(const std::vector<std::string>& alphabet, int length) {
  std::vector<std::string> out{""};
  for (int i = 0; i < length; ++i) {
    std::vector<std::string> next;
    for (const auto& w : out)
      for (const auto& a : alphabet) next.push_back(w.empty() ? a : w + " " + a);
    out = std::move(next);
  }
  return out;
}

// Random N×N matrix with small integer entries.
inline ExactMatrix random_exact(int N, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  ExactMatrix m(N, std::vector<Rational>(N));
  for (auto& row : m)
    for (auto& x : row) x = d(rng);
  return m;
}

// Normalized trace of a spectator monomial, computed directly from the matrices.
inline Rational exact_monomial(const TraceMonomial& mono, const std::map<int, ExactMatrix>& y, int N) {
  ExactMatrix acc(N, std::vector<Rational>(N));
  for (int i = 0; i < N; ++i) acc[i][i] = 1;
  for (const auto& f : mono.factors()) {
    const ExactMatrix& m = y.at(f.label);
    ExactMatrix next(N, std::vector<Rational>(N));
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) next[i][j] += acc[i][k] * (f.transposed ? m[j][k] : m[k][j]);
    acc = std::move(next);
  }
  Rational t = 0;
  for (int i = 0; i < N; ++i) t += acc[i][i];
  return t / N;
}

inline std::map<TraceMonomial, Rational> monomial_values(const Expansion& terms, const std::map<int, ExactMatrix>& y,
                                                         int N) {
  std::map<TraceMonomial, Rational> values;
  for (const auto& t : terms)
    for (const auto& m : t.monomials) values.emplace(m, exact_monomial(m, y, N));
  return values;
}

inline Rational double_factorial(int n) {
  Rational r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

}  // namespace genus::testing

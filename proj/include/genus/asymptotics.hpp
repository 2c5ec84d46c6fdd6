#pragma once

#include <cstdint>
#include <vector>

#include "genus/cumulants.hpp"
#include "genus/rational.hpp"

namespace genus {

struct LeadingPart {
  int n_exponent = 0;
  Expansion terms;
};

// Highest power of N and the terms attaining it. Throws ContractError on an
// empty expansion.
LeadingPart leading(const Expansion& terms);

// lim E tr(word): the N^0 part evaluated at c. Spectator-free words only.
Rational limit_moment(const TraceWord& word, const Rational& c,
                      const ExpandOptions& opts = default_expand_options());

// lim k2(Tr t1, Tr t2): the N^-2 part of the connected two-face expansion.
Rational limit_covariance(const TraceWord& t1, const TraceWord& t2, const Rational& c,
                          const ExpandOptions& opts = default_expand_options());

/// Connected sphere gluings of two faces, split by whether the second face
/// keeps the orientation of the first or is flipped over. Throws
/// ContractError if either word mixes random matrices or holds spectators.
struct OrientationCounts {
  std::int64_t same = 0;
  std::int64_t flipped = 0;

  std::int64_t total() const { return same + flipped; }
};
OrientationCounts count_sphere_gluings(const TraceWord& t1, const TraceWord& t2,
                                       const ExpandOptions& opts = default_expand_options());

struct SpokeProblem {
  std::vector<TraceWord> a_words;
  std::vector<TraceWord> b_words;
};

// One spoke arrangement: A_k meets B_((offset − k) mod s) straight, or
// B_((offset + k) mod s)ᵀ when reversed (0-based k).
struct SpokeAlignment {
  bool reversed = false;
  int offset = 0;
  std::vector<int> partner;        // partner[k] = index into b_words
  std::vector<Rational> factors;   // lim E tr(A_k B) − lim E tr(A_k) lim E tr(B)
  Rational product;
};

struct SpokeResult {
  Rational value;
  std::vector<SpokeAlignment> alignments;
};

/// Second-order limit of k2(Tr(Å_1⋯Å_s), Tr(B̊_1⋯B̊_s)) as the sum over the
/// 2s spoke arrangements of the product of per-spoke factors. Unequal spoke
/// counts give 0.
SpokeResult spoke_covariance(const SpokeProblem& p, const Rational& c,
                             const ExpandOptions& opts = default_expand_options());

}  // namespace genus

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "genus/expression.hpp"
#include "genus/premap.hpp"
#include "genus/trace_monomial.hpp"

namespace genus {

/// A trace expression compiled to face data. Gaussian letters are numbered
/// 1..n in reading order, so each trace becomes one cycle of γ. Per-letter
/// vectors are indexed by k-1.
struct GluingSpec {
  int n = 0;
  FaceData faces;
  std::vector<int> epsilon;          // +1 plain, -1 transposed
  std::vector<GaussianId> ensemble;  // which random matrix letter k is
  std::vector<Fragment> y_after;     // spectators between letter k and γ(k)
  std::vector<bool> row_corner;      // corner after letter k is indexed by [M]
  std::vector<TraceMonomial> constants;  // spectator-only traces
  int trace_count = 0;

  int eps(int k) const { return epsilon[k - 1]; }
  const GaussianId& id(int k) const { return ensemble[k - 1]; }

  // Positions of each random matrix, in increasing order.
  std::map<GaussianId, std::vector<int>> classes() const;
};

/// Builds γ, ε, the spectator fragments and corner sides. W and W' compile to
/// X' X. Throws ContractError on an empty expression or a product whose
/// row/column dimensions do not chain.
GluingSpec compile(const Expression& expr);

// Involution swapping k and -k exactly where ε(k) = -1.
SignedPermutation delta_epsilon(const GluingSpec& spec);

// Throws GuardError if any random matrix occurs more than max_letters times.
void check_letter_budget(const GluingSpec& spec, int max_letters);

struct Gluing {
  std::vector<std::pair<int, int>> pairs;  // (k, l) with k < l, sorted by k
  std::vector<bool> twisted;
  Premap pi;
};

using GluingVisitor = std::function<void(const Gluing&)>;

/// Every premap π obtained from perfect matchings within each random-matrix
/// class. Ginibre and rectangular pairs are twisted exactly when both letters
/// carry the same ε; GOE pairs contribute both an untwisted and a twisted
/// variant. Matchings are visited smallest-unmatched-first with partners in
/// increasing order, untwisted before twisted.
///
/// The stream splits into chunks by the partner of the first position of the
/// first class, so chunks can be processed independently.
class GluingEnumerator {
 public:
  explicit GluingEnumerator(const GluingSpec& spec);

  std::size_t chunk_count() const;
  void for_each(const GluingVisitor& visit) const;
  void for_each_in_chunk(std::size_t chunk, const GluingVisitor& visit) const;
  std::uint64_t count() const;

 private:
  void recurse(std::size_t cls, std::vector<int>& partner, std::vector<char>& twist,
               const GluingVisitor& visit, std::ptrdiff_t forced_first) const;
  void emit(const std::vector<int>& partner, const std::vector<char>& twist, const GluingVisitor& visit) const;

  GluingSpec spec_;
  std::vector<std::vector<int>> classes_;
  std::vector<bool> goe_;
  bool feasible_ = true;
};

std::vector<Gluing> enumerate_gluings(const GluingSpec& spec);

struct VertexReading {
  std::vector<Cycle> vertices;           // half-quotient representatives
  std::vector<TraceMonomial> monomials;  // one per vertex, identity included
  std::vector<bool> row_vertex;
  int row_vertex_count = 0;
};

/// Reads the vertex traces of a gluing: +k contributes y_after(k), -k its
/// reverse-transpose. Throws ContractError if a vertex mixes [N] and [M]
/// corners.
VertexReading read_vertices(const GluingSpec& spec, const Premap& pi);

}  // namespace genus

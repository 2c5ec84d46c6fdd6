#pragma once

#include <vector>

#include "genus/expansion.hpp"

namespace genus {

using SetPartition = std::vector<std::vector<int>>;

// All set partitions of {0, ..., r-1}, blocks in increasing order of their
// least element.
std::vector<SetPartition> set_partitions(int r);

/// Classical cumulant k_r of the normalized traces, by Möbius inversion over
/// the partition lattice of the traces:
///   k_r = Σ_P (−1)^(|P|−1) (|P|−1)! Π_{B∈P} E(Π_{i∈B} tr_i)
Expansion cumulant(const std::vector<TraceWord>& traces, const ExpandOptions& opts = default_expand_options());

// E(Π tr_i) rebuilt as Σ_P Π_{B∈P} k_|B|.
Expansion moment_from_cumulants(const std::vector<TraceWord>& traces,
                                const ExpandOptions& opts = default_expand_options());

struct CentredSegment {
  TraceWord word;
  bool centred = false;
};

// A trace split into contiguous segments; centred ones stand for A − E tr(A).
using CentredTrace = std::vector<CentredSegment>;

struct CentredExpression {
  std::vector<CentredTrace> traces;
};

TraceWord flatten(const CentredTrace& t);

/// k_r of traces of products with centred segments, by inclusion-exclusion
/// over the set K of centred segments replaced by their expectation:
///   Σ_K (−1)^|K| Π_{k∈K} E tr(A_k) · k_r(traces with K deleted)
/// Throws ContractError unless order equals the number of traces.
Expansion centred_cumulant(const CentredExpression& expr, int order,
                           const ExpandOptions& opts = default_expand_options());

}  // namespace genus

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "genus/expansion.hpp"
#include "genus/rational.hpp"

namespace genus {

using ExactMatrix = std::vector<std::vector<Rational>>;

/// Exact E(Π tr(...)) by summing over every explicit index assignment and
/// taking Gaussian moments entry by entry (Ginibre and X entries have
/// variance 1/N; GOE off-diagonal 1/N, diagonal 2/N). No gluing machinery is
/// involved. Spectators are the identity unless y is given, in which case
/// every spectator label must be present (Y' uses the transpose).
///
/// Limits: at most 8 Gaussian letters and N, M ≤ 4. Throws ContractError.
Rational exact_isserlis(const Expression& expr, int N, int M,
                        const std::optional<std::map<int, ExactMatrix>>& y = std::nullopt);

struct SampleConfig {
  int N = 1;
  double c = 1.0;  // M = round(c N), at least 1
  std::int64_t samples = 1;
  std::uint64_t seed = 0;
  std::map<int, Eigen::MatrixXd> y;  // spectator label -> N×N matrix
  unsigned threads = 1;

  int M() const;
};

// Sample `sample_index` of the given random matrix. The stream is keyed on
// (seed, sample_index, ensemble, instance) only, so draws do not depend on
// evaluation order or thread count.
Eigen::MatrixXd sample_ensemble(const GaussianId& id, const SampleConfig& config, std::uint64_t sample_index);

enum class EstimateMode {
  Moment,          // E Π tr_i
  SecondCumulant,  // k2(tr_1, tr_2), two traces only
};

struct EstimateReport {
  EstimateMode mode = EstimateMode::Moment;
  std::int64_t samples = 0;
  int N = 0;
  int M = 0;
  double mean = 0;
  double standard_error = 0;
  double expansion_value = 0;  // finite-N symbolic value at (N, M/N)
  double z_score = 0;
};

EstimateReport estimate(const Expression& expr, const SampleConfig& config,
                        EstimateMode mode = EstimateMode::Moment,
                        const ExpandOptions& opts = default_expand_options());

// Normalized trace of a spectator monomial for numeric Y matrices.
double monomial_value(const TraceMonomial& m, const std::map<int, Eigen::MatrixXd>& y);

// {"Y1": [[...], ...], ...}; throws ParseError on malformed content.
std::map<int, Eigen::MatrixXd> parse_y_matrices(const std::string& json_text);
std::map<int, Eigen::MatrixXd> load_y_matrices(const std::string& path);

}  // namespace genus

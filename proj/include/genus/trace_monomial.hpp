#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace genus {

struct SpectatorFactor {
  int label = 1;
  bool transposed = false;

  friend auto operator<=>(const SpectatorFactor&, const SpectatorFactor&) = default;
};

// A product of spectator letters sitting in one corner of a face.
using Fragment = std::vector<SpectatorFactor>;

Fragment reverse_transpose(std::span<const SpectatorFactor> f);

/// Normalized trace of a cyclic spectator word, stored in canonical form: the
/// lexicographic minimum over all rotations of the word and of its
/// reverse-transpose. The empty word is tr(I) = 1.
class TraceMonomial {
 public:
  TraceMonomial() = default;
  explicit TraceMonomial(Fragment word);

  const Fragment& factors() const { return word_; }
  bool is_identity() const { return word_.empty(); }

  // {"Y1", "Y3", "Y5t"}
  std::vector<std::string> spelled() const;
  // "tr(Y1 Y3 Y5')"
  std::string to_string() const;

  friend auto operator<=>(const TraceMonomial&, const TraceMonomial&) = default;

 private:
  Fragment word_;
};

}  // namespace genus

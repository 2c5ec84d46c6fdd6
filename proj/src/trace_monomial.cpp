#include "genus/trace_monomial.hpp"

#include <algorithm>

namespace genus {

Fragment reverse_transpose(std::span<const SpectatorFactor> f) {
  Fragment r(f.rbegin(), f.rend());
  for (auto& y : r) y.transposed = !y.transposed;
  return r;
}

TraceMonomial::TraceMonomial(Fragment word) {
  if (word.empty()) return;
  Fragment best = word;
  auto consider = [&best](Fragment w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w < best) best = w;
      std::rotate(w.begin(), w.begin() + 1, w.end());
    }
  };
  consider(reverse_transpose(word));
  consider(std::move(word));
  word_ = std::move(best);
}

std::vector<std::string> TraceMonomial::spelled() const {
  std::vector<std::string> out;
  out.reserve(word_.size());
  for (const auto& y : word_) out.push_back("Y" + std::to_string(y.label) + (y.transposed ? "t" : ""));
  return out;
}

std::string TraceMonomial::to_string() const {
  std::string s = "tr(";
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (i) s += ' ';
    s += "Y" + std::to_string(word_[i].label) + (word_[i].transposed ? "'" : "");
  }
  return s + ")";
}

}  // namespace genus

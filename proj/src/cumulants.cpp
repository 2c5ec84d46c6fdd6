#include "genus/cumulants.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "genus/errors.hpp"

namespace genus {

std::vector<SetPartition> set_partitions(int r) {
  std::vector<SetPartition> out;
  if (r <= 0) return out;
  // Restricted growth strings: a[0] = 0, a[i] ≤ 1 + max(a[0..i-1]).
  std::vector<int> a(static_cast<std::size_t>(r), 0);
  std::function<void(int, int)> grow = [&](int i, int blocks) {
    if (i == r) {
      SetPartition p(static_cast<std::size_t>(blocks));
      for (int j = 0; j < r; ++j) p[a[j]].push_back(j);
      out.push_back(std::move(p));
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      a[i] = b;
      grow(i + 1, std::max(blocks, b + 1));
    }
  };
  a[0] = 0;
  grow(1, 1);
  return out;
}

namespace {

std::int64_t factorial(int k) {
  std::int64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Moments E(Π_{i∈mask} tr_i) for every non-empty subset of the traces.
class MomentTable {
 public:
  MomentTable(const std::vector<TraceWord>& traces, const ExpandOptions& opts) : traces_(traces), opts_(opts) {}

  const Expansion& moment(unsigned mask) {
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;
    Expression e;
    for (std::size_t i = 0; i < traces_.size(); ++i) {
      if (mask & (1u << i)) e.traces.push_back(traces_[i]);
    }
    return cache_.emplace(mask, expand(e, opts_)).first->second;
  }

  const Expansion& block(const std::vector<int>& b) {
    unsigned mask = 0;
    for (int i : b) mask |= 1u << i;
    return moment(mask);
  }

 private:
  const std::vector<TraceWord>& traces_;
  ExpandOptions opts_;
  std::map<unsigned, Expansion> cache_;
};

Expansion unit() { return Expansion{ExpansionTerm{1, 0, 0, {}}}; }

void require_trace_count(std::size_t r) {
  if (r == 0) throw ContractError("cumulant of zero traces");
  if (r > 16) throw GuardError("cumulants of more than 16 traces are not supported");
}

}  // namespace

Expansion cumulant(const std::vector<TraceWord>& traces, const ExpandOptions& opts) {
  require_trace_count(traces.size());
  MomentTable moments(traces, opts);
  TermCollector total;
  for (const auto& p : set_partitions(static_cast<int>(traces.size()))) {
    const int blocks = static_cast<int>(p.size());
    const std::int64_t mu = (blocks % 2 == 1 ? 1 : -1) * factorial(blocks - 1);
    Expansion product = unit();
    for (const auto& b : p) product = multiply(product, moments.block(b));
    total.add(product, mu);
  }
  return total.terms();
}

Expansion moment_from_cumulants(const std::vector<TraceWord>& traces, const ExpandOptions& opts) {
  require_trace_count(traces.size());
  std::map<std::vector<int>, Expansion> cumulants;
  TermCollector total;
  for (const auto& p : set_partitions(static_cast<int>(traces.size()))) {
    Expansion product = unit();
    for (const auto& b : p) {
      auto it = cumulants.find(b);
      if (it == cumulants.end()) {
        std::vector<TraceWord> sub;
        for (int i : b) sub.push_back(traces[i]);
        it = cumulants.emplace(b, cumulant(sub, opts)).first;
      }
      product = multiply(product, it->second);
    }
    total.add(product);
  }
  return total.terms();
}

TraceWord flatten(const CentredTrace& t) {
  TraceWord w;
  for (const auto& s : t) w.insert(w.end(), s.word.begin(), s.word.end());
  return w;
}

Expansion centred_cumulant(const CentredExpression& expr, int order, const ExpandOptions& opts) {
  if (order != static_cast<int>(expr.traces.size())) {
    throw ContractError("cumulant order " + std::to_string(order) + " does not match " +
                        std::to_string(expr.traces.size()) + " traces");
  }
  struct Ref {
    std::size_t trace;
    std::size_t segment;
  };
  std::vector<Ref> centred;
  for (std::size_t t = 0; t < expr.traces.size(); ++t) {
    for (std::size_t s = 0; s < expr.traces[t].size(); ++s) {
      if (expr.traces[t][s].centred) centred.push_back({t, s});
    }
  }
  if (centred.size() > 20) throw GuardError("more than 20 centred segments");

  std::vector<Expansion> segment_mean;
  for (const auto& r : centred) {
    segment_mean.push_back(expand(Expression{{expr.traces[r.trace][r.segment].word}}, opts));
  }

  TermCollector total;
  const std::size_t subsets = std::size_t{1} << centred.size();
  for (std::size_t K = 0; K < subsets; ++K) {
    std::vector<std::vector<bool>> removed(expr.traces.size());
    for (std::size_t t = 0; t < expr.traces.size(); ++t) removed[t].assign(expr.traces[t].size(), false);
    Expansion weight = unit();
    int size = 0;
    for (std::size_t i = 0; i < centred.size(); ++i) {
      if (!(K & (std::size_t{1} << i))) continue;
      ++size;
      removed[centred[i].trace][centred[i].segment] = true;
      weight = multiply(weight, segment_mean[i]);
    }
    if (weight.empty()) continue;
    std::vector<TraceWord> remaining;
    for (std::size_t t = 0; t < expr.traces.size(); ++t) {
      TraceWord w;
      for (std::size_t s = 0; s < expr.traces[t].size(); ++s) {
        if (!removed[t][s]) w.insert(w.end(), expr.traces[t][s].word.begin(), expr.traces[t][s].word.end());
      }
      remaining.push_back(std::move(w));
    }
    total.add(multiply(weight, cumulant(remaining, opts)), size % 2 == 0 ? 1 : -1);
  }
  return total.terms();
}

}  // namespace genus

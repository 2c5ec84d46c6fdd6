#include "genus/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "genus/errors.hpp"

namespace genus {

namespace {

enum class Dim { N, M };

// Entry-level view of one letter, W already split into X' X.
struct EntryLetter {
  bool spectator = false;
  GaussianId id;
  bool transposed = false;
  int label = 0;
  Dim left = Dim::N;
  Dim right = Dim::N;
};

std::vector<EntryLetter> entry_letters(const TraceWord& word) {
  std::vector<EntryLetter> out;
  auto gaussian = [&out](Ensemble e, int instance, bool t) {
    EntryLetter l;
    l.id = GaussianId{e, instance};
    l.transposed = t;
    if (e == Ensemble::Rectangular) {
      l.left = t ? Dim::N : Dim::M;
      l.right = t ? Dim::M : Dim::N;
    }
    out.push_back(l);
  };
  for (const auto& l : word) {
    switch (l.kind) {
      case LetterKind::Ginibre:
        gaussian(Ensemble::Ginibre, l.index, l.transposed);
        break;
      case LetterKind::Goe:
        gaussian(Ensemble::Goe, l.index, l.transposed);
        break;
      case LetterKind::Rectangular:
        gaussian(Ensemble::Rectangular, l.index, l.transposed);
        break;
      case LetterKind::Wishart:
        gaussian(Ensemble::Rectangular, l.index, true);
        gaussian(Ensemble::Rectangular, l.index, false);
        break;
      case LetterKind::Spectator: {
        EntryLetter s;
        s.spectator = true;
        s.label = l.index;
        s.transposed = l.transposed;
        out.push_back(s);
        break;
      }
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].right != out[(i + 1) % out.size()].left) {
      throw ContractError("dimension mismatch in tr(" + to_string(word) + ")");
    }
  }
  return out;
}

std::int64_t double_factorial(int k) {
  std::int64_t r = 1;
  for (int i = k; i > 1; i -= 2) r *= i;
  return r;
}

}  // namespace

Rational exact_isserlis(const Expression& expr, int N, int M, const std::optional<std::map<int, ExactMatrix>>& y) {
  if (expr.traces.empty()) throw ContractError("empty expression");
  if (N < 1 || M < 1 || N > 4 || M > 4) throw ContractError("exact oracle needs 1 ≤ N, M ≤ 4");

  struct Slotted {
    EntryLetter letter;
    std::size_t row_slot;
    std::size_t col_slot;
    int cls;
  };
  std::vector<Slotted> letters;
  std::vector<int> range;
  std::map<GaussianId, int> class_index;
  int gaussian_count = 0;
  for (const auto& word : expr.traces) {
    const auto lowered = entry_letters(word);
    const std::size_t base = range.size();
    if (lowered.empty()) range.push_back(N);  // tr(I) sums one free index
    for (std::size_t j = 0; j < lowered.size(); ++j) {
      const auto& l = lowered[j];
      range.push_back(l.left == Dim::N ? N : M);
      int cls = -1;
      if (!l.spectator) {
        ++gaussian_count;
        cls = class_index.emplace(l.id, static_cast<int>(class_index.size())).first->second;
      } else if (y) {
        auto it = y->find(l.label);
        if (it == y->end()) throw ContractError("no matrix for Y" + std::to_string(l.label));
        if (static_cast<int>(it->second.size()) != N) throw ContractError("Y matrices must be N×N");
        for (const auto& row : it->second) {
          if (static_cast<int>(row.size()) != N) throw ContractError("Y matrices must be N×N");
        }
      }
      letters.push_back({l, base + j, base + (j + 1) % lowered.size(), cls});
    }
  }
  if (gaussian_count > 8) throw ContractError("exact oracle handles at most 8 Gaussian letters");
  if (gaussian_count % 2 != 0) return 0;

  double assignments = 1;
  for (int r : range) assignments *= r;
  if (assignments > 2e8) throw ContractError("exact oracle: too many index assignments");

  Rational total = 0;
  Integer plain_total = 0;
  std::vector<int> index(range.size(), 0);
  for (bool done = false; !done;) {
    std::int64_t weight = 1;
    std::vector<std::pair<int, bool>> vars;  // key, is GOE diagonal
    for (const auto& s : letters) {
      if (s.letter.spectator) continue;
      int r = index[s.row_slot];
      int c = index[s.col_slot];
      if (s.letter.transposed) std::swap(r, c);
      if (s.letter.id.ensemble == Ensemble::Goe && r > c) std::swap(r, c);
      const bool diag = s.letter.id.ensemble == Ensemble::Goe && r == c;
      vars.emplace_back(s.cls * 64 + r * 8 + c, diag);
    }
    std::sort(vars.begin(), vars.end());
    for (std::size_t i = 0; i < vars.size() && weight != 0;) {
      std::size_t j = i;
      while (j < vars.size() && vars[j].first == vars[i].first) ++j;
      const int mult = static_cast<int>(j - i);
      if (mult % 2 != 0) {
        weight = 0;
      } else {
        weight *= double_factorial(mult - 1);
        if (vars[i].second) weight <<= mult / 2;
      }
      i = j;
    }
    if (weight != 0) {
      if (y) {
        Rational prod(static_cast<long>(weight));
        for (const auto& s : letters) {
          if (!s.letter.spectator) continue;
          int r = index[s.row_slot];
          int c = index[s.col_slot];
          if (s.letter.transposed) std::swap(r, c);
          prod *= y->at(s.letter.label)[r][c];
          if (prod == 0) break;
        }
        total += prod;
      } else {
        // Spectators are the identity: off-diagonal entries vanish.
        bool zero = false;
        for (const auto& s : letters) {
          if (s.letter.spectator && index[s.row_slot] != index[s.col_slot]) zero = true;
        }
        if (!zero) plain_total += weight;
      }
    }
    // Odometer.
    std::size_t pos = 0;
    for (; pos < index.size(); ++pos) {
      if (++index[pos] < range[pos]) break;
      index[pos] = 0;
    }
    done = pos == index.size();
  }
  if (!y) total = Rational(plain_total);
  // Each Gaussian pair carries 1/N; each trace is normalized by 1/N.
  total /= power(Rational(N), gaussian_count / 2 + static_cast<int>(expr.traces.size()));
  total.canonicalize();
  return total;
}

int SampleConfig::M() const { return std::max(1, static_cast<int>(std::lround(c * N))); }

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t sample, const GaussianId& id) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ sample);
  h = splitmix64(h ^ static_cast<std::uint64_t>(id.ensemble));
  return splitmix64(h ^ static_cast<std::uint64_t>(id.instance));
}

}  // namespace

Eigen::MatrixXd sample_ensemble(const GaussianId& id, const SampleConfig& config, std::uint64_t sample_index) {
  std::mt19937_64 engine(stream_key(config.seed, sample_index, id));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int N = config.N;
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  switch (id.ensemble) {
    case Ensemble::Ginibre: {
      Eigen::MatrixXd z(N, N);
      for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index i = 0; i < N; ++i) z(i, j) = gauss(engine) * scale;
      return z;
    }
    case Ensemble::Rectangular: {
      const int M = config.M();
      Eigen::MatrixXd x(M, N);
      for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index i = 0; i < M; ++i) x(i, j) = gauss(engine) * scale;
      return x;
    }
    case Ensemble::Goe: {
      // (G + Gᵀ)/√(2N): off-diagonal variance 1/N, diagonal 2/N.
      Eigen::MatrixXd g(N, N);
      for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index i = 0; i < N; ++i) g(i, j) = gauss(engine);
      Eigen::MatrixXd t = (g + g.transpose()) / std::sqrt(2.0 * N);
      return t;
    }
  }
  return {};
}

double monomial_value(const TraceMonomial& m, const std::map<int, Eigen::MatrixXd>& y) {
  if (m.is_identity()) return 1.0;
  Eigen::MatrixXd acc;
  bool first = true;
  for (const auto& f : m.factors()) {
    auto it = y.find(f.label);
    if (it == y.end()) throw ContractError("missing Y matrix for Y" + std::to_string(f.label));
    const Eigen::MatrixXd factor = f.transposed ? Eigen::MatrixXd(it->second.transpose()) : it->second;
    acc = first ? factor : Eigen::MatrixXd(acc * factor);
    first = false;
  }
  return acc.trace() / static_cast<double>(acc.rows());
}

namespace {

class SampleEvaluator {
 public:
  SampleEvaluator(const Expression& expr, const SampleConfig& config) : config_(config) {
    for (const auto& word : expr.traces) traces_.push_back(word);
  }

  // Normalized traces for one sample.
  std::vector<double> operator()(std::uint64_t sample) {
    cache_.clear();
    wishart_.clear();
    std::vector<double> out;
    out.reserve(traces_.size());
    for (const auto& w : traces_) out.push_back(trace(w, sample));
    return out;
  }

 private:
  const Eigen::MatrixXd& gaussian(const GaussianId& id, std::uint64_t sample) {
    auto it = cache_.find(id);
    if (it == cache_.end()) it = cache_.emplace(id, sample_ensemble(id, config_, sample)).first;
    return it->second;
  }

  Eigen::MatrixXd letter(const Letter& l, std::uint64_t sample) {
    switch (l.kind) {
      case LetterKind::Ginibre:
      case LetterKind::Goe:
      case LetterKind::Rectangular: {
        const Ensemble e = l.kind == LetterKind::Ginibre ? Ensemble::Ginibre
                           : l.kind == LetterKind::Goe   ? Ensemble::Goe
                                                         : Ensemble::Rectangular;
        const Eigen::MatrixXd& m = gaussian(GaussianId{e, l.index}, sample);
        return l.transposed ? Eigen::MatrixXd(m.transpose()) : m;
      }
      case LetterKind::Wishart: {
        auto it = wishart_.find(l.index);
        if (it == wishart_.end()) {
          const Eigen::MatrixXd& x = gaussian(GaussianId{Ensemble::Rectangular, l.index}, sample);
          it = wishart_.emplace(l.index, Eigen::MatrixXd(x.transpose() * x)).first;
        }
        return it->second;
      }
      case LetterKind::Spectator: {
        const Eigen::MatrixXd& y = config_.y.at(l.index);
        return l.transposed ? Eigen::MatrixXd(y.transpose()) : y;
      }
    }
    return {};
  }

  double trace(const TraceWord& w, std::uint64_t sample) {
    if (w.empty()) return 1.0;
    const double norm = static_cast<double>(config_.N);
    Eigen::MatrixXd acc = letter(w.front(), sample);
    if (w.size() == 1) return acc.trace() / norm;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) acc = acc * letter(w[i], sample);
    // tr(A B) without forming A B.
    const Eigen::MatrixXd last = letter(w.back(), sample);
    return acc.cwiseProduct(last.transpose()).sum() / norm;
  }

  const SampleConfig& config_;
  std::vector<TraceWord> traces_;
  std::map<GaussianId, Eigen::MatrixXd> cache_;
  std::map<int, Eigen::MatrixXd> wishart_;
};

}  // namespace

EstimateReport estimate(const Expression& expr, const SampleConfig& config, EstimateMode mode,
                        const ExpandOptions& opts) {
  if (config.N < 1) throw ContractError("N must be at least 1");
  if (config.samples < 1) throw ContractError("samples must be at least 1");
  if (!(config.c > 0)) throw ContractError("c must be positive");
  if (mode == EstimateMode::SecondCumulant && expr.traces.size() != 2) {
    throw ContractError("second-cumulant estimates need exactly two traces");
  }
  std::set<int> labels;
  for (const auto& w : expr.traces) {
    for (const auto& l : w) {
      if (l.is_spectator()) labels.insert(l.index);
    }
  }
  for (int label : labels) {
    auto it = config.y.find(label);
    if (it == config.y.end()) throw ContractError("missing Y matrix for Y" + std::to_string(label));
    if (it->second.rows() != config.N || it->second.cols() != config.N) {
      throw ContractError("Y" + std::to_string(label) + " must be " + std::to_string(config.N) + "×" +
                          std::to_string(config.N));
    }
  }

  const Expansion symbolic = mode == EstimateMode::Moment ? expand(expr, opts) : connected_expand(expr, opts);

  const auto n = static_cast<std::size_t>(config.samples);
  std::vector<std::vector<double>> values(n);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(config.threads, n));
  auto work = [&](std::size_t w) {
    SampleEvaluator eval(expr, config);
    for (std::size_t s = w; s < n; s += workers) values[s] = eval(s);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  EstimateReport r;
  r.mode = mode;
  r.samples = config.samples;
  r.N = config.N;
  r.M = config.M();

  auto mean_and_se = [](const std::vector<double>& x) {
    double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double var = x.size() > 1 ? ss / static_cast<double>(x.size() - 1) : 0.0;
    return std::pair{mean, std::sqrt(var / static_cast<double>(x.size()))};
  };

  if (mode == EstimateMode::Moment) {
    std::vector<double> products(n);
    for (std::size_t s = 0; s < n; ++s) {
      double p = 1;
      for (double v : values[s]) p *= v;
      products[s] = p;
    }
    std::tie(r.mean, r.standard_error) = mean_and_se(products);
  } else {
    std::vector<double> a(n), b(n);
    for (std::size_t s = 0; s < n; ++s) {
      a[s] = values[s][0];
      b[s] = values[s][1];
    }
    const double ma = mean_and_se(a).first;
    const double mb = mean_and_se(b).first;
    std::vector<double> d(n);
    for (std::size_t s = 0; s < n; ++s) d[s] = (a[s] - ma) * (b[s] - mb);
    auto [md, se] = mean_and_se(d);
    const double bessel = n > 1 ? static_cast<double>(n) / static_cast<double>(n - 1) : 1.0;
    r.mean = md * bessel;
    r.standard_error = se * bessel;
  }

  std::optional<std::map<TraceMonomial, double>> y_values;
  if (!labels.empty()) {
    y_values.emplace();
    for (const auto& t : symbolic) {
      for (const auto& m : t.monomials) (*y_values)[m] = monomial_value(m, config.y);
    }
  }
  const double c_eff = static_cast<double>(r.M) / static_cast<double>(r.N);
  r.expansion_value = evaluate(symbolic, static_cast<double>(config.N), c_eff, y_values);
  r.z_score = r.standard_error > 0 ? (r.mean - r.expansion_value) / r.standard_error : 0.0;
  return r;
}

std::map<int, Eigen::MatrixXd> parse_y_matrices(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("Y matrix file: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("Y matrix file must hold a JSON object");
  std::map<int, Eigen::MatrixXd> out;
  for (const auto& [key, rows] : doc.items()) {
    if (key.size() < 2 || key[0] != 'Y' ||
        !std::all_of(key.begin() + 1, key.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      throw ParseError("Y matrix file: bad key \"" + key + "\"");
    }
    const int label = std::stoi(key.substr(1));
    if (!rows.is_array() || rows.empty()) throw ParseError("Y matrix file: " + key + " must be a non-empty array");
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = static_cast<Eigen::Index>(rows.front().is_array() ? rows.front().size() : 0);
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) {
        throw ParseError("Y matrix file: ragged rows in " + key);
      }
      for (Eigen::Index j = 0; j < c; ++j) {
        const auto& v = row[static_cast<std::size_t>(j)];
        if (!v.is_number()) throw ParseError("Y matrix file: non-numeric entry in " + key);
        m(i, j) = v.get<double>();
      }
    }
    out[label] = std::move(m);
  }
  return out;
}

std::map<int, Eigen::MatrixXd> load_y_matrices(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_y_matrices(ss.str());
}

}  // namespace genus

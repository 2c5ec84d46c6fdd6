#include "genus/gluing.hpp"

#include <cstdlib>
#include <string>

#include "genus/errors.hpp"

namespace genus {

namespace {

enum class Side { Column, Row };  // [N] or [M]

struct CompiledLetter {
  bool spectator = false;
  GaussianId id;
  int epsilon = 1;
  SpectatorFactor factor;
  Side left = Side::Column;
  Side right = Side::Column;
};

std::vector<CompiledLetter> lower(const TraceWord& word) {
  std::vector<CompiledLetter> out;
  auto gaussian = [&out](Ensemble e, int instance, bool transposed) {
    CompiledLetter c;
    c.id = GaussianId{e, instance};
    c.epsilon = transposed ? -1 : 1;
    if (e == Ensemble::Rectangular) {
      c.left = transposed ? Side::Column : Side::Row;
      c.right = transposed ? Side::Row : Side::Column;
    }
    out.push_back(c);
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
        // W = XᵀX is symmetric, so W' compiles the same way.
        gaussian(Ensemble::Rectangular, l.index, true);
        gaussian(Ensemble::Rectangular, l.index, false);
        break;
      case LetterKind::Spectator: {
        CompiledLetter c;
        c.spectator = true;
        c.factor = SpectatorFactor{l.index, l.transposed};
        out.push_back(c);
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::map<GaussianId, std::vector<int>> GluingSpec::classes() const {
  std::map<GaussianId, std::vector<int>> out;
  for (int k = 1; k <= n; ++k) out[id(k)].push_back(k);
  return out;
}

GluingSpec compile(const Expression& expr) {
  if (expr.traces.empty()) throw ContractError("empty expression");
  GluingSpec spec;
  spec.trace_count = static_cast<int>(expr.traces.size());
  std::vector<Cycle> gamma_cycles;

  for (const auto& word : expr.traces) {
    const std::vector<CompiledLetter> letters = lower(word);
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const auto& next = letters[(i + 1) % letters.size()];
      if (letters[i].right != next.left) {
        throw ContractError("dimension mismatch in tr(" + to_string(word) + ")");
      }
    }

    std::vector<std::size_t> gaussian_at;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (!letters[i].spectator) gaussian_at.push_back(i);
    }
    if (gaussian_at.empty()) {
      Fragment f;
      for (const auto& c : letters) f.push_back(c.factor);
      TraceMonomial m(std::move(f));
      if (!m.is_identity()) spec.constants.push_back(std::move(m));
      continue;
    }

    Cycle face;
    for (std::size_t g = 0; g < gaussian_at.size(); ++g) {
      const auto& c = letters[gaussian_at[g]];
      const int k = ++spec.n;
      face.push_back(k);
      spec.epsilon.push_back(c.epsilon);
      spec.ensemble.push_back(c.id);
      spec.row_corner.push_back(c.right == Side::Row);
      // Spectators up to the next Gaussian letter, wrapping around the trace.
      Fragment frag;
      for (std::size_t j = (gaussian_at[g] + 1) % letters.size(); letters[j].spectator;
           j = (j + 1) % letters.size()) {
        frag.push_back(letters[j].factor);
      }
      spec.y_after.push_back(std::move(frag));
    }
    gamma_cycles.push_back(std::move(face));
  }
  spec.faces = FaceData(SignedPermutation::from_cycles(spec.n, gamma_cycles));
  return spec;
}

SignedPermutation delta_epsilon(const GluingSpec& spec) {
  std::vector<Cycle> swaps;
  for (int k = 1; k <= spec.n; ++k) {
    if (spec.eps(k) < 0) swaps.push_back({k, -k});
  }
  return SignedPermutation::from_cycles(spec.n, swaps);
}

void check_letter_budget(const GluingSpec& spec, int max_letters) {
  for (const auto& [id, positions] : spec.classes()) {
    if (static_cast<int>(positions.size()) > max_letters) {
      throw GuardError(std::string(ensemble_name(id.ensemble)) + " instance " + std::to_string(id.instance) +
                       " has " + std::to_string(positions.size()) + " letters; the enumeration limit is " +
                       std::to_string(max_letters));
    }
  }
}

GluingEnumerator::GluingEnumerator(const GluingSpec& spec) : spec_(spec) {
  for (auto& [id, positions] : spec.classes()) {
    if (positions.size() % 2 != 0) feasible_ = false;
    classes_.push_back(positions);
    goe_.push_back(id.ensemble == Ensemble::Goe);
  }
}

std::size_t GluingEnumerator::chunk_count() const {
  if (!feasible_) return 0;
  if (classes_.empty()) return 1;
  return classes_.front().size() - 1;
}

void GluingEnumerator::for_each(const GluingVisitor& visit) const {
  for (std::size_t c = 0; c < chunk_count(); ++c) for_each_in_chunk(c, visit);
}

void GluingEnumerator::for_each_in_chunk(std::size_t chunk, const GluingVisitor& visit) const {
  if (chunk >= chunk_count()) return;
  std::vector<int> partner(static_cast<std::size_t>(spec_.n) + 1, 0);
  std::vector<char> twist(static_cast<std::size_t>(spec_.n) + 1, 0);
  recurse(0, partner, twist, visit, classes_.empty() ? -1 : static_cast<std::ptrdiff_t>(chunk));
}

std::uint64_t GluingEnumerator::count() const {
  std::uint64_t total = 0;
  for_each([&total](const Gluing&) { ++total; });
  return total;
}

void GluingEnumerator::recurse(std::size_t cls, std::vector<int>& partner, std::vector<char>& twist,
                               const GluingVisitor& visit, std::ptrdiff_t forced_first) const {
  if (cls == classes_.size()) {
    emit(partner, twist, visit);
    return;
  }
  const auto& positions = classes_[cls];
  std::size_t i = 0;
  while (i < positions.size() && partner[positions[i]] != 0) ++i;
  if (i == positions.size()) {
    recurse(cls + 1, partner, twist, visit, -1);
    return;
  }
  const int k = positions[i];
  for (std::size_t j = i + 1; j < positions.size(); ++j) {
    const int l = positions[j];
    if (partner[l] != 0) continue;
    if (forced_first >= 0 && j != static_cast<std::size_t>(forced_first) + 1) continue;
    partner[k] = l;
    partner[l] = k;
    if (goe_[cls]) {
      for (char t : {0, 1}) {
        twist[k] = t;
        recurse(cls, partner, twist, visit, -1);
      }
    } else {
      twist[k] = spec_.eps(k) == spec_.eps(l) ? 1 : 0;
      recurse(cls, partner, twist, visit, -1);
    }
    partner[k] = 0;
    partner[l] = 0;
  }
}

void GluingEnumerator::emit(const std::vector<int>& partner, const std::vector<char>& twist,
                            const GluingVisitor& visit) const {
  Gluing g;
  std::vector<Cycle> cycles;
  cycles.reserve(static_cast<std::size_t>(spec_.n));
  for (int k = 1; k <= spec_.n; ++k) {
    const int l = partner[k];
    if (l < k) continue;
    const bool t = twist[k] != 0;
    g.pairs.emplace_back(k, l);
    g.twisted.push_back(t);
    if (t) {
      cycles.push_back({k, -l});
      cycles.push_back({-k, l});
    } else {
      cycles.push_back({k, l});
      cycles.push_back({-k, -l});
    }
  }
  g.pi = Premap(SignedPermutation::from_cycles(spec_.n, cycles));
  visit(g);
}

std::vector<Gluing> enumerate_gluings(const GluingSpec& spec) {
  std::vector<Gluing> out;
  GluingEnumerator(spec).for_each([&out](const Gluing& g) { out.push_back(g); });
  return out;
}

VertexReading read_vertices(const GluingSpec& spec, const Premap& pi) {
  VertexReading r;
  r.vertices = half_quotient(vertex_premap(spec.faces, pi));
  for (const auto& v : r.vertices) {
    Fragment word;
    const bool row = spec.row_corner[std::abs(v.front()) - 1];
    for (int e : v) {
      const auto& frag = spec.y_after[std::abs(e) - 1];
      if (e > 0) {
        word.insert(word.end(), frag.begin(), frag.end());
      } else {
        const Fragment back = reverse_transpose(frag);
        word.insert(word.end(), back.begin(), back.end());
      }
      if (spec.row_corner[std::abs(e) - 1] != row) {
        throw ContractError("vertex " + format_cycle(v) + " mixes row and column corners");
      }
    }
    r.monomials.emplace_back(std::move(word));
    r.row_vertex.push_back(row);
    if (row) ++r.row_vertex_count;
  }
  return r;
}

}  // namespace genus

#include "genus/asymptotics.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "genus/errors.hpp"

namespace genus {

LeadingPart leading(const Expansion& terms) {
  if (terms.empty()) throw ContractError("leading term of an empty expansion");
  LeadingPart out;
  out.n_exponent = std::max_element(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
                     return a.n_exponent < b.n_exponent;
                   })->n_exponent;
  for (const auto& t : terms) {
    if (t.n_exponent == out.n_exponent) out.terms.push_back(t);
  }
  return out;
}

namespace {

void require_spectator_free(const TraceWord& w) {
  if (has_spectators(w)) throw ContractError("limits need spectator-free words: " + to_string(w));
}

Rational coefficient_at(const Expansion& terms, int n_exponent, const Rational& c) {
  Rational total = 0;
  for (const auto& t : terms) {
    if (t.n_exponent == n_exponent) total += Rational(static_cast<long>(t.coefficient)) * power(c, t.c_exponent);
  }
  return total;
}

std::optional<GaussianId> single_class(const TraceWord& w) {
  const GluingSpec spec = compile(Expression{{w}});
  std::optional<GaussianId> id;
  for (int k = 1; k <= spec.n; ++k) {
    if (id && *id != spec.id(k)) throw ContractError("word mixes random matrices: " + to_string(w));
    id = spec.id(k);
  }
  return id;
}

}  // namespace

Rational limit_moment(const TraceWord& word, const Rational& c, const ExpandOptions& opts) {
  require_spectator_free(word);
  return coefficient_at(expand(Expression{{word}}, opts), 0, c);
}

Rational limit_covariance(const TraceWord& t1, const TraceWord& t2, const Rational& c, const ExpandOptions& opts) {
  require_spectator_free(t1);
  require_spectator_free(t2);
  return coefficient_at(connected_expand(Expression{{t1, t2}}, opts), -2, c);
}

OrientationCounts count_sphere_gluings(const TraceWord& t1, const TraceWord& t2, const ExpandOptions& opts) {
  require_spectator_free(t1);
  require_spectator_free(t2);
  const auto id1 = single_class(t1);
  const auto id2 = single_class(t2);
  OrientationCounts counts;
  if (!id1 || !id2 || *id1 != *id2) return counts;

  const GluingSpec spec = compile(Expression{{t1, t2}});
  check_letter_budget(spec, opts.max_class_letters);
  if (spec.faces.face_count() != 2) return counts;
  const int first = spec.faces.faces()[0].front();
  const int second = spec.faces.faces()[1].front();
  GluingEnumerator(spec).for_each([&](const Gluing& g) {
    const auto comps = classify_surface(spec.faces, g.pi);
    if (comps.size() != 1 || comps.front().type.kind != SurfaceType::Kind::Sphere) return;
    // Walk the front of face 1 through the cover; reaching the front of face
    // 2 means no flip is needed.
    const int n = spec.n;
    std::vector<bool> seen(2 * static_cast<std::size_t>(n) + 1, false);
    std::vector<int> stack{first};
    seen[first + n] = true;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y : {spec.faces.cover_faces()(x), g.pi(x)}) {
        if (!seen[y + n]) {
          seen[y + n] = true;
          stack.push_back(y);
        }
      }
    }
    if (seen[second + n]) {
      ++counts.same;
    } else {
      ++counts.flipped;
    }
  });
  return counts;
}

SpokeResult spoke_covariance(const SpokeProblem& p, const Rational& c, const ExpandOptions& opts) {
  SpokeResult result;
  result.value = 0;
  const std::size_t s = p.a_words.size();
  if (s == 0 || s != p.b_words.size()) return result;

  std::map<TraceWord, Rational> limits;
  auto limit = [&](const TraceWord& w) -> Rational {
    auto it = limits.find(w);
    if (it == limits.end()) it = limits.emplace(w, limit_moment(w, c, opts)).first;
    return it->second;
  };

  for (bool reversed : {false, true}) {
    for (std::size_t offset = 0; offset < s; ++offset) {
      SpokeAlignment a;
      a.reversed = reversed;
      a.offset = static_cast<int>(offset);
      a.product = 1;
      for (std::size_t k = 0; k < s; ++k) {
        const std::size_t l = reversed ? (offset + k) % s : (offset + s - k) % s;
        const TraceWord b = reversed ? transpose(p.b_words[l]) : p.b_words[l];
        const TraceWord& ak = p.a_words[k];
        Rational factor = limit(concat(ak, b)) - limit(ak) * limit(b);
        a.partner.push_back(static_cast<int>(l));
        a.product *= factor;
        a.factors.push_back(std::move(factor));
      }
      result.value += a.product;
      result.alignments.push_back(std::move(a));
    }
  }
  return result;
}

}  // namespace genus

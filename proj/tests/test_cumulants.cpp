#include <doctest.h>

#include "genus/cumulants.hpp"
#include "genus/errors.hpp"
#include "genus/expansion.hpp"
#include "genus/gluing.hpp"
#include "genus/premap.hpp"
#include "support.hpp"

using namespace genus;
using namespace genus::testing;

namespace {

int gaussian_length(const TraceWord& w) {
  int n = 0;
  for (const auto& l : w) n += l.is_spectator() ? 0 : (l.kind == LetterKind::Wishart ? 2 : 1);
  return n;
}

CentredExpression centred(const std::vector<std::vector<std::pair<std::string, bool>>>& traces) {
  CentredExpression e;
  for (const auto& t : traces) {
    CentredTrace ct;
    for (const auto& [w, c] : t) ct.push_back({parse_word(w), c});
    e.traces.push_back(ct);
  }
  return e;
}

// Sum over gluings of the flattened product that connect every trace and
// leave no centred segment paired only with itself.
Expansion diagram_filter(const CentredExpression& e) {
  Expression flat;
  std::vector<std::pair<int, int>> centred_ranges;
  int pos = 1;
  for (const auto& t : e.traces) {
    for (const auto& s : t) {
      int len = gaussian_length(s.word);
      if (s.centred) centred_ranges.push_back({pos, pos + len - 1});
      pos += len;
    }
    flat.traces.push_back(flatten(t));
  }
  auto spec = compile(flat);
  const bool need_connected = e.traces.size() > 1;
  return expand_filtered(spec, [&](const GluingSpec& sp, const Gluing& g) {
    for (auto [lo, hi] : centred_ranges) {
      bool closed = true;
      for (int k = lo; k <= hi && closed; ++k) {
        int p = std::abs(g.pi(k));
        closed = p >= lo && p <= hi;
      }
      if (closed) return false;
    }
    return !need_connected || face_components(sp.faces, g.pi).size() == 1;
  });
}

}  // namespace

TEST_CASE("set partitions are counted by Bell numbers") {
  const std::vector<std::size_t> bell{1, 1, 2, 5, 15, 52, 203};
  for (int r = 1; r <= 6; ++r) CHECK(set_partitions(r).size() == bell[r]);
  auto p2 = set_partitions(2);
  CHECK(p2[0] == SetPartition{{0, 1}});
  CHECK(p2[1] == SetPartition{{0}, {1}});
}

TEST_CASE("first cumulant is the mean") {
  CHECK(to_string(cumulant({parse_word("T T")})) == "1 + N^-1");
}

TEST_CASE("second cumulant is the covariance") {
  auto a = parse_word("Z Z'");
  auto k2 = cumulant({a, a});
  auto direct = add(expand(product({a, a})), scale(multiply(expand(product({a})), expand(product({a}))), -1));
  CHECK(k2 == direct);
  CHECK(k2 == connected_expand(product({a, a})));
}

TEST_CASE("k2 equals connected_expand term-for-term") {
  const std::vector<std::string> words{"Z", "Z'", "T", "Z Z'", "Z Z", "T T", "Z T", "T Z'", "Z Z Z'", "T T T",
                                       "Z Z' Z", "X' X", "W", "Z Y1 Z'", "T Y1 T"};
  for (const auto& u : words)
    for (const auto& v : words) {
      auto a = parse_word(u), b = parse_word(v);
      if (gaussian_length(a) + gaussian_length(b) > 6) continue;
      INFO(u, " | ", v);
      CHECK(cumulant({a, b}) == connected_expand(product({a, b})));
    }
}

TEST_CASE("Moebius roundtrip: moments rebuilt from cumulants, r <= 3") {
  const std::vector<std::vector<std::string>> suites{
      {"T T"},
      {"Z Z'", "Z Z'"},
      {"Z", "Z'"},
      {"T T", "T T"},
      {"Z Z' Z Z'", "Z Z"},
      {"Z Z'", "T", "T"},
      {"T T", "Z Z'", "Z' Z"},
      {"Z Z Z' Z'", "T T", "Z Z'"},
      {"W", "W", "X' X"},
      {"T Y1 T", "T", "Y2 T"},
      {"Z", "Z Z'", "Z'"},
  };
  for (const auto& s : suites) {
    std::vector<TraceWord> traces;
    for (const auto& w : s) traces.push_back(parse_word(w));
    INFO(s.size(), " traces starting ", s[0]);
    CHECK(moment_from_cumulants(traces) == expand(product(traces)));
  }
}

TEST_CASE("connected terms of r traces have n_exponent <= 2 - 2r") {
  const std::vector<std::vector<std::string>> suites{{"Z Z'", "Z Z'"}, {"T T", "T T", "T T"}, {"Z Z Z' Z'", "Z Z' Z Z'"},
                                                     {"T", "T T T"},   {"W", "W", "W"}};
  for (const auto& s : suites) {
    std::vector<TraceWord> traces;
    for (const auto& w : s) traces.push_back(parse_word(w));
    const int r = static_cast<int>(traces.size());
    for (const auto& t : cumulant(traces)) CHECK(t.n_exponent <= 2 - 2 * r);
  }
}

TEST_CASE("centring kills the first cumulant") {
  auto e = centred({{{"Z Z'", true}}});
  CHECK(centred_cumulant(e, 1).empty());
}

TEST_CASE("centring constants cancel in k2") {
  auto e = centred({{{"T T", true}}, {{"T T", true}}});
  auto tt = parse_word("T T");
  CHECK(centred_cumulant(e, 2) == cumulant({tt, tt}));
  CHECK(to_string(centred_cumulant(e, 2)) == "4 N^-2 + 4 N^-3");
}

TEST_CASE("uncentred segments reduce to the plain cumulant") {
  auto e = centred({{{"Z", false}, {"Z'", false}}, {{"T T", false}}});
  CHECK(centred_cumulant(e, 2) == cumulant({parse_word("Z Z'"), parse_word("T T")}));
}

TEST_CASE("a centred empty segment is the zero matrix") {
  auto e = centred({{{"Z Z'", false}, {"", true}}});
  CHECK(centred_cumulant(e, 1).empty());
}

TEST_CASE("order must match the number of traces") {
  auto e = centred({{{"Z Z'", true}}});
  CHECK_THROWS_AS(centred_cumulant(e, 2), ContractError);
}

TEST_CASE("inclusion-exclusion matches the diagram-level cancellation") {
  // tr(Å1 Å2) with A1 = A2 = Z Z'
  auto base = centred({{{"Z Z'", true}, {"Z Z'", true}}});
  CHECK(centred_cumulant(base, 1) == diagram_filter(base));
  CHECK_FALSE(centred_cumulant(base, 1).empty());

  const std::vector<CentredExpression> cases{
      centred({{{"Z Z", true}, {"Z' Z'", true}}}),
      centred({{{"T T", true}, {"T T", true}}}),
      centred({{{"T T", true}, {"T T", false}, {"T T", true}}}),
      centred({{{"Z Z'", true}, {"T", false}, {"T", false}}}),
      centred({{{"Z Z' Z", true}, {"Z'", false}}}),
      centred({{{"Z Z'", true}, {"Z Z'", true}}, {{"Z Z'", true}}}),
      centred({{{"T T", true}, {"T", false}}, {{"T", false}, {"T T", true}}}),
      centred({{{"W", true}, {"W", true}}}),
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    INFO("case ", i);
    CHECK(centred_cumulant(cases[i], static_cast<int>(cases[i].traces.size())) == diagram_filter(cases[i]));
  }
}

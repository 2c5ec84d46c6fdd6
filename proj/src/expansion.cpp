#include "genus/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "genus/errors.hpp"

namespace genus {

ExpandOptions default_expand_options() {
  ExpandOptions opts;
  if (const char* env = std::getenv("GENUS_MAX_LETTERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) opts.max_class_letters = static_cast<int>(v);
  }
  return opts;
}

bool TermCollector::Key::operator<(const Key& o) const {
  if (n_exponent != o.n_exponent) return n_exponent > o.n_exponent;
  if (monomials != o.monomials) return monomials < o.monomials;
  return c_exponent > o.c_exponent;
}

void TermCollector::add(ExpansionTerm term) {
  if (term.coefficient == 0) return;
  std::sort(term.monomials.begin(), term.monomials.end());
  sums_[Key{term.n_exponent, term.c_exponent, std::move(term.monomials)}] += term.coefficient;
}

void TermCollector::add(const Expansion& terms, std::int64_t scale) {
  for (auto t : terms) {
    t.coefficient *= scale;
    add(std::move(t));
  }
}

void TermCollector::merge(const TermCollector& other) {
  for (const auto& [key, value] : other.sums_) sums_[key] += value;
}

Expansion TermCollector::terms() const {
  Expansion out;
  for (const auto& [key, value] : sums_) {
    if (value == 0) continue;
    out.push_back(ExpansionTerm{value, key.n_exponent, key.c_exponent, key.monomials});
  }
  return out;
}

ExpansionTerm gluing_term(const GluingSpec& spec, const Premap& pi) {
  const int chi = euler_characteristic(spec.faces, pi);
  const VertexReading reading = read_vertices(spec, pi);
  ExpansionTerm t;
  t.coefficient = 1;
  t.n_exponent = chi - 2 * spec.faces.face_count();
  t.c_exponent = reading.row_vertex_count;
  for (const auto& m : reading.monomials) {
    if (!m.is_identity()) t.monomials.push_back(m);
  }
  t.monomials.insert(t.monomials.end(), spec.constants.begin(), spec.constants.end());
  std::sort(t.monomials.begin(), t.monomials.end());
  return t;
}

Expansion expand_filtered(const GluingSpec& spec, const GluingFilter& keep, const ExpandOptions& opts) {
  check_letter_budget(spec, opts.max_class_letters);
  const GluingEnumerator gluings(spec);
  const std::size_t chunks = gluings.chunk_count();
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(opts.threads, chunks));

  std::vector<TermCollector> partial(workers);
  auto work = [&](std::size_t w) {
    for (std::size_t c = w; c < chunks; c += workers) {
      gluings.for_each_in_chunk(c, [&](const Gluing& g) {
        if (!keep || keep(spec, g)) partial[w].add(gluing_term(spec, g.pi));
      });
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (std::size_t w = 1; w < workers; ++w) partial[0].merge(partial[w]);
  return partial[0].terms();
}

Expansion expand(const GluingSpec& spec, const ExpandOptions& opts) { return expand_filtered(spec, {}, opts); }

Expansion expand(const Expression& expr, const ExpandOptions& opts) { return expand(compile(expr), opts); }

Expansion connected_expand(const Expression& expr, const ExpandOptions& opts) {
  return expand_filtered(
      compile(expr),
      [](const GluingSpec& spec, const Gluing& g) { return face_components(spec.faces, g.pi).size() <= 1; },
      opts);
}

Expansion multiply(const Expansion& a, const Expansion& b) {
  TermCollector out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      ExpansionTerm t;
      t.coefficient = x.coefficient * y.coefficient;
      t.n_exponent = x.n_exponent + y.n_exponent;
      t.c_exponent = x.c_exponent + y.c_exponent;
      t.monomials = x.monomials;
      t.monomials.insert(t.monomials.end(), y.monomials.begin(), y.monomials.end());
      out.add(std::move(t));
    }
  }
  return out.terms();
}

Expansion add(const Expansion& a, const Expansion& b) {
  TermCollector out;
  out.add(a);
  out.add(b);
  return out.terms();
}

Expansion scale(const Expansion& a, std::int64_t factor) {
  TermCollector out;
  out.add(a, factor);
  return out.terms();
}

Expansion shift_n(const Expansion& a, int shift) {
  Expansion out = a;
  for (auto& t : out) t.n_exponent += shift;
  return out;
}

namespace {

template <typename Number, typename Pow>
Number evaluate_impl(const Expansion& terms, const Number& N, const Number& c,
                     const std::optional<std::map<TraceMonomial, Number>>& y_values, Pow pow) {
  Number total = 0;
  for (const auto& t : terms) {
    Number value(static_cast<long>(t.coefficient));
    value *= pow(N, t.n_exponent);
    value *= pow(c, t.c_exponent);
    if (y_values) {
      for (const auto& m : t.monomials) {
        auto it = y_values->find(m);
        if (it == y_values->end()) throw ContractError("no value supplied for " + m.to_string());
        value *= it->second;
      }
    }
    total += value;
  }
  return total;
}

}  // namespace

double evaluate(const Expansion& terms, double N, double c,
                const std::optional<std::map<TraceMonomial, double>>& y_values) {
  if (!(N > 0) || !(c > 0)) throw ContractError("N and c must be positive");
  return evaluate_impl<double>(terms, N, c, y_values, [](double b, int e) { return std::pow(b, e); });
}

Rational evaluate_exact(const Expansion& terms, const Rational& N, const Rational& c,
                        const std::optional<std::map<TraceMonomial, Rational>>& y_values) {
  if (sgn(N) <= 0 || sgn(c) <= 0) throw ContractError("N and c must be positive");
  Rational n = N, ratio = c;
  n.canonicalize();
  ratio.canonicalize();
  return evaluate_impl<Rational>(terms, n, ratio, y_values,
                                 [](const Rational& b, int e) { return power(b, e); });
}

std::string to_string(const ExpansionTerm& t) {
  std::string factors;
  for (const auto& m : t.monomials) {
    if (!factors.empty()) factors += ' ';
    factors += m.to_string();
  }
  auto append = [&factors](const std::string& s) {
    if (!factors.empty()) factors += ' ';
    factors += s;
  };
  if (t.c_exponent != 0) append(t.c_exponent == 1 ? "c" : "c^" + std::to_string(t.c_exponent));
  if (t.n_exponent != 0) append(t.n_exponent == 1 ? "N" : "N^" + std::to_string(t.n_exponent));
  const std::int64_t mag = t.coefficient < 0 ? -t.coefficient : t.coefficient;
  if (factors.empty()) return std::to_string(mag);
  return mag == 1 ? factors : std::to_string(mag) + " " + factors;
}

std::string to_string(const Expansion& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const bool negative = terms[i].coefficient < 0;
    if (i == 0) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += to_string(terms[i]);
  }
  return out;
}

}  // namespace genus

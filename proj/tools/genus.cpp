// genus: command-line front end for the expansion engine.
//
//   genus expand   --expr "tr(T T)" [--mode moment|connected] [--json] [--Tr]
//   genus chi      --gamma "(1,2,3,4,5)(6,7,8)" --pi "(1,-7)(-1,7)..."
//   genus cumulant --trace "Z Z'" --trace "~Z Z' | T T" [--order r] [--centred]
//   genus limit    --expr "tr(Z Z' Z Z')" | --covariance t1 t2 | --spokes a b
//   genus mc       --expr "tr(T T)" --N 64 --samples 20000 --seed 42
//   genus dot      --expr "tr(T T)" --gluing-index 0
//
// Exit codes: 0 ok, 2 parse error, 3 letter budget exceeded, 4 numeric or
// contract error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "genus/asymptotics.hpp"
#include "genus/cumulants.hpp"
#include "genus/dot_export.hpp"
#include "genus/errors.hpp"
#include "genus/expansion.hpp"
#include "genus/gluing.hpp"
#include "genus/mc_oracle.hpp"
#include "genus/premap.hpp"

using nlohmann::ordered_json;
using namespace genus;

namespace {

enum Exit { kOk = 0, kParse = 2, kGuard = 3, kContract = 4 };

ordered_json term_records(const Expansion& terms) {
  ordered_json out = ordered_json::array();
  for (const auto& t : terms) {
    ordered_json traces = ordered_json::array();
    for (const auto& m : t.monomials) traces.push_back(m.spelled());
    out.push_back({{"c_exponent", t.c_exponent},
                   {"coefficient", t.coefficient},
                   {"n_exponent", t.n_exponent},
                   {"traces", traces}});
  }
  return out;
}

void emit_terms(const Expansion& terms, bool json) {
  if (json)
    std::cout << term_records(terms).dump(2) << "\n";
  else
    std::cout << (terms.empty() ? std::string("0") : to_string(terms)) << "\n";
}

ExpandOptions options(std::optional<int> max_letters) {
  ExpandOptions opts = default_expand_options();
  if (max_letters) opts.max_class_letters = *max_letters;
  return opts;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// "tr(...)" wrapper optional; '|' separates segments; a leading '~' centres one.
CentredTrace parse_centred_trace(std::string text, bool centre_all) {
  text = trim(text);
  if (text.rfind("tr(", 0) == 0) {
    if (text.back() != ')') throw ParseError("unterminated tr( in \"" + text + "\"");
    text = text.substr(3, text.size() - 4);
  }
  CentredTrace trace;
  for (auto& seg : split(text, '|')) {
    CentredSegment s;
    s.centred = centre_all;
    if (!seg.empty() && seg.front() == '~') {
      s.centred = true;
      seg = trim(seg.substr(1));
    }
    s.word = parse_word(seg);
    trace.push_back(std::move(s));
  }
  return trace;
}

std::string rational_text(const Rational& q) { return to_string(q); }

int run_chi(const std::string& gamma_text, const std::string& pi_text, std::optional<int> n_opt) {
  int n = n_opt.value_or(std::max(max_element_in(gamma_text), max_element_in(pi_text)));
  FaceData faces(parse_cycles(gamma_text, n));
  Premap pi(parse_cycles(pi_text, n));
  auto comps = classify_surface(faces, pi);

  ordered_json components = ordered_json::array();
  bool orientable = true;
  std::vector<std::string> names;
  for (const auto& c : comps) {
    ordered_json fs = ordered_json::array();
    for (int f : c.faces) fs.push_back(f + 1);
    components.push_back({{"faces", fs},
                          {"euler_characteristic", c.euler_characteristic},
                          {"orientable", c.orientable},
                          {"surface", c.type.name()}});
    orientable = orientable && c.orientable;
    names.push_back(c.type.name());
  }
  ordered_json out;
  out["chi"] = euler_characteristic(faces, pi);
  out["connected"] = comps.size() == 1;
  out["orientable"] = orientable;
  out["surfaces"] = names;
  out["components"] = components;
  out["vertex_premap"] = vertex_premap(faces, pi).permutation().to_string(true);
  out["half_quotient"] = format_cycles(half_quotient(vertex_premap(faces, pi)));
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int run_dot(const std::optional<std::string>& expr_text, const std::optional<std::string>& gamma_text,
            const std::optional<std::string>& pi_text, std::optional<long long> index) {
  if (expr_text) {
    GluingSpec spec = compile(parse_expression(*expr_text));
    if (pi_text) {
      std::cout << gluing_to_dot(spec.faces, Premap(parse_cycles(*pi_text, spec.n)), &spec);
      return kOk;
    }
    long long want = index.value_or(0);
    if (want < 0) throw ContractError("gluing index must be non-negative");
    std::optional<Premap> found;
    long long seen = 0;
    GluingEnumerator(spec).for_each([&](const Gluing& g) {
      if (seen++ == want) found = g.pi;
    });
    if (!found)
      throw ContractError("gluing index " + std::to_string(want) + " out of range (" + std::to_string(seen) +
                          " gluings)");
    std::cout << gluing_to_dot(spec.faces, *found, &spec);
    return kOk;
  }
  if (!gamma_text || !pi_text) throw ParseError("dot needs --expr, or --gamma with --pi");
  int n = std::max(max_element_in(*gamma_text), max_element_in(*pi_text));
  FaceData faces(parse_cycles(*gamma_text, n));
  std::cout << gluing_to_dot(faces, Premap(parse_cycles(*pi_text, n)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genus expansions of real Gaussian random matrix traces"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<int> max_letters;
  app.add_option("--max-letters", max_letters, "Per-matrix letter budget (default 16 or $GENUS_MAX_LETTERS)");

  // expand
  auto* expand_cmd = app.add_subcommand("expand", "Genus expansion of E(tr ... tr ...)");
  std::string expand_expr, expand_mode = "moment";
  bool expand_json = false, expand_tr = false;
  expand_cmd->add_option("--expr", expand_expr, "Product of traces, e.g. \"tr(Z Z') tr(T)\"")->required();
  expand_cmd->add_option("--mode", expand_mode)->check(CLI::IsMember({"moment", "connected"}));
  expand_cmd->add_flag("--json", expand_json);
  expand_cmd->add_flag("--Tr", expand_tr, "Report unnormalized traces");

  // chi
  auto* chi_cmd = app.add_subcommand("chi", "Euler characteristic and surface type of a gluing");
  std::string chi_gamma, chi_pi;
  std::optional<int> chi_n;
  chi_cmd->add_option("--gamma", chi_gamma, "Faces on positive elements")->required();
  chi_cmd->add_option("--pi", chi_pi, "Edge premap on ±[n]")->required();
  chi_cmd->add_option("--n", chi_n);

  // cumulant
  auto* cum_cmd = app.add_subcommand("cumulant", "Classical cumulant of traces");
  std::vector<std::string> cum_traces;
  std::optional<int> cum_order;
  bool cum_centred = false, cum_json = false, cum_tr = false;
  cum_cmd->add_option("--trace", cum_traces, "One trace; '|' separates segments, '~' centres one")
      ->required()
      ->allow_extra_args(false);
  cum_cmd->add_option("--order", cum_order);
  cum_cmd->add_flag("--centred", cum_centred, "Centre every segment");
  cum_cmd->add_flag("--json", cum_json);
  cum_cmd->add_flag("--Tr", cum_tr);

  // limit
  auto* limit_cmd = app.add_subcommand("limit", "Large-N limits");
  std::optional<std::string> limit_expr;
  std::vector<std::string> limit_cov, limit_spokes;
  std::string limit_c = "1";
  bool limit_json = false;
  auto* lim_expr_opt = limit_cmd->add_option("--expr", limit_expr);
  auto* lim_cov_opt = limit_cmd->add_option("--covariance", limit_cov)->expected(2);
  auto* lim_spoke_opt = limit_cmd->add_option("--spokes", limit_spokes, "Two ';'-separated spoke lists")->expected(2);
  lim_expr_opt->excludes(lim_cov_opt)->excludes(lim_spoke_opt);
  lim_cov_opt->excludes(lim_spoke_opt);
  limit_cmd->add_option("--c", limit_c, "Aspect ratio M/N (exact)");
  limit_cmd->add_flag("--json", limit_json);

  // mc
  auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo estimate");
  std::string mc_expr, mc_mode = "moment";
  std::optional<std::string> mc_y_file;
  SampleConfig cfg;
  cfg.N = 32;
  cfg.samples = 10000;
  mc_cmd->add_option("--expr", mc_expr)->required();
  mc_cmd->add_option("--N", cfg.N)->check(CLI::PositiveNumber);
  mc_cmd->add_option("--c", cfg.c)->check(CLI::PositiveNumber);
  mc_cmd->add_option("--samples", cfg.samples)->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  mc_cmd->add_option("--seed", cfg.seed);
  mc_cmd->add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
  mc_cmd->add_option("--y-file", mc_y_file);
  mc_cmd->add_option("--mode", mc_mode)->check(CLI::IsMember({"moment", "k2"}));

  // dot
  auto* dot_cmd = app.add_subcommand("dot", "Graphviz view of a gluing");
  std::optional<std::string> dot_expr, dot_gamma, dot_pi;
  std::optional<long long> dot_index;
  auto* dot_expr_opt = dot_cmd->add_option("--expr", dot_expr);
  dot_cmd->add_option("--gamma", dot_gamma)->excludes(dot_expr_opt);
  dot_cmd->add_option("--pi", dot_pi);
  dot_cmd->add_option("--gluing-index", dot_index, "0-based position in enumeration order")->needs(dot_expr_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    ExpandOptions opts = options(max_letters);

    if (*expand_cmd) {
      Expression expr = parse_expression(expand_expr);
      Expansion terms = expand_mode == "connected" ? connected_expand(expr, opts) : expand(expr, opts);
      if (expand_tr) terms = shift_n(terms, static_cast<int>(expr.traces.size()));
      emit_terms(terms, expand_json);
      return kOk;
    }

    if (*chi_cmd) return run_chi(chi_gamma, chi_pi, chi_n);

    if (*cum_cmd) {
      CentredExpression cexpr;
      bool any_centred = false;
      for (const auto& t : cum_traces) {
        cexpr.traces.push_back(parse_centred_trace(t, cum_centred));
        for (const auto& s : cexpr.traces.back()) any_centred = any_centred || s.centred;
      }
      int order = cum_order.value_or(static_cast<int>(cexpr.traces.size()));
      Expansion terms;
      if (any_centred) {
        terms = centred_cumulant(cexpr, order, opts);
      } else {
        if (order != static_cast<int>(cexpr.traces.size()))
          throw ContractError("--order must equal the number of traces");
        std::vector<TraceWord> words;
        for (const auto& t : cexpr.traces) words.push_back(flatten(t));
        terms = cumulant(words, opts);
      }
      if (cum_tr) terms = shift_n(terms, order);
      emit_terms(terms, cum_json);
      return kOk;
    }

    if (*limit_cmd) {
      Rational c = parse_rational(limit_c);
      ordered_json out;
      if (limit_expr) {
        Expression expr = parse_expression(*limit_expr);
        Rational value = 1;
        for (const auto& w : expr.traces) value *= limit_moment(w, c, opts);
        out["value"] = rational_text(value);
      } else if (!limit_cov.empty()) {
        TraceWord a = parse_trace(limit_cov[0]), b = parse_trace(limit_cov[1]);
        out["value"] = rational_text(limit_covariance(a, b, c, opts));
        auto counts = count_sphere_gluings(a, b, opts);
        out["orientation_counts"] = {{"same", counts.same}, {"flipped", counts.flipped}};
      } else if (!limit_spokes.empty()) {
        SpokeProblem p;
        for (const auto& s : split(limit_spokes[0], ';')) p.a_words.push_back(parse_trace(s));
        for (const auto& s : split(limit_spokes[1], ';')) p.b_words.push_back(parse_trace(s));
        auto r = spoke_covariance(p, c, opts);
        out["value"] = rational_text(r.value);
        ordered_json aligns = ordered_json::array();
        for (const auto& a : r.alignments) {
          ordered_json factors = ordered_json::array();
          for (const auto& f : a.factors) factors.push_back(rational_text(f));
          aligns.push_back({{"reversed", a.reversed},
                            {"offset", a.offset},
                            {"partner", a.partner},
                            {"factors", factors},
                            {"product", rational_text(a.product)}});
        }
        out["alignments"] = aligns;
      } else {
        throw ParseError("limit needs --expr, --covariance or --spokes");
      }
      if (limit_json)
        std::cout << out.dump(2) << "\n";
      else
        std::cout << out["value"].get<std::string>() << "\n";
      return kOk;
    }

    if (*mc_cmd) {
      Expression expr = parse_expression(mc_expr);
      if (mc_y_file) cfg.y = load_y_matrices(*mc_y_file);
      auto mode = mc_mode == "k2" ? EstimateMode::SecondCumulant : EstimateMode::Moment;
      EstimateReport r = estimate(expr, cfg, mode, opts);
      ordered_json out{{"mode", mc_mode},     {"N", r.N},
                       {"M", r.M},            {"samples", r.samples},
                       {"seed", cfg.seed},    {"mean", r.mean},
                       {"standard_error", r.standard_error},
                       {"expansion_value", r.expansion_value},
                       {"z_score", r.z_score}};
      std::cout << out.dump(2) << "\n";
      return kOk;
    }

    if (*dot_cmd) return run_dot(dot_expr, dot_gamma, dot_pi, dot_index);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kGuard;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kContract;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kContract;
  }
  return kOk;
}

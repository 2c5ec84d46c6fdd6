#include "genus/dot_export.hpp"

#include <cstdlib>
#include <sstream>

#include "genus/errors.hpp"

namespace genus {

std::string gluing_to_dot(const FaceData& faces, const Premap& pi, const GluingSpec* spec) {
  const auto pairs = half_quotient(pi);
  for (const auto& c : pairs) {
    if (c.size() != 2) throw ContractError("DOT export needs a pairing; found cycle " + format_cycle(c));
  }
  const Premap vertices = vertex_premap(faces, pi);
  const auto reps = half_quotient(vertices);

  std::ostringstream os;
  os << "graph gluing {\n";
  for (int f = 0; f < faces.face_count(); ++f) {
    os << "  f" << f + 1 << " [shape=box, label=\"face " << format_cycle(faces.faces()[f]) << "\"];\n";
  }
  std::vector<TraceMonomial> monomials;
  if (spec) monomials = read_vertices(*spec, pi).monomials;
  for (std::size_t v = 0; v < reps.size(); ++v) {
    os << "  v" << v + 1 << " [shape=ellipse, label=\"";
    if (spec && !monomials[v].is_identity()) os << monomials[v].to_string() << " ";
    os << "vertex " << format_cycle(reps[v]) << "\"];\n";
  }
  for (const auto& c : pairs) {
    const int k = c[0];
    const int l = c[1];
    os << "  f" << faces.face_of(k) + 1 << " -- f" << faces.face_of(l) + 1 << " [label=\"" << k << "~"
       << std::abs(l) << "\", twist=" << (l < 0 ? "true" : "false") << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace genus

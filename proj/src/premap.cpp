#include "genus/premap.hpp"

#include <algorithm>
#include <map>

#include "disjoint_sets.hpp"
#include "genus/errors.hpp"

namespace genus {

bool is_premap(const SignedPermutation& p) {
  const int n = p.size();
  for (int x = -n; x <= n; ++x) {
    if (x == 0) continue;
    if (p(-p(x)) != -x) return false;
  }
  // Mirror closure holds; a cycle is its own mirror iff it holds both x and -x.
  for (const auto& c : p.cycles()) {
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int x : c) {
      const int a = x < 0 ? -x : x;
      if (seen[a]) return false;
      seen[a] = true;
    }
  }
  return true;
}

Cycle mirror(const Cycle& c) {
  Cycle m(c.rbegin(), c.rend());
  for (int& x : m) x = -x;
  return m;
}

Premap::Premap(SignedPermutation p) : perm_(std::move(p)) {
  if (!is_premap(perm_)) throw ContractError("not a premap: " + perm_.to_string(true));
}

Premap Premap::inverse() const { return Premap(perm_.inverse()); }

std::vector<Cycle> half_quotient(const Premap& p) {
  // cycles() starts every cycle at its element_less-minimum, so the
  // representative of a mirror pair is the one that starts positive.
  std::vector<Cycle> out;
  for (auto& c : p.permutation().cycles()) {
    if (c.front() > 0) out.push_back(std::move(c));
  }
  return out;
}

FaceData::FaceData(SignedPermutation gamma) : gamma_(std::move(gamma)) {
  if (!gamma_.fixes_negatives()) {
    throw ContractError("face permutation must fix negative elements: " + gamma_.to_string());
  }
  const int n = gamma_.size();
  std::vector<Cycle> minus_cycles;
  for (const auto& c : gamma_.cycles()) {
    if (c.front() < 0) continue;
    faces_.push_back(c);
    Cycle neg = c;
    for (int& x : neg) x = -x;
    minus_cycles.push_back(std::move(neg));
  }
  gamma_minus_ = SignedPermutation::from_cycles(n, minus_cycles);
  cover_faces_ = gamma_ * gamma_minus_.inverse();
  face_of_.assign(static_cast<std::size_t>(n) + 1, -1);
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    for (int k : faces_[f]) face_of_[k] = static_cast<int>(f);
  }
}

FaceData lift_faces(const SignedPermutation& gamma) { return FaceData(gamma); }

namespace {

void require_same_ground(const FaceData& faces, const Premap& pi) {
  if (faces.size() != pi.size()) {
    throw ContractError("ground-set mismatch between faces (±[" + std::to_string(faces.size()) +
                        "]) and premap (±[" + std::to_string(pi.size()) + "])");
  }
}

SignedPermutation dual_vertices(const FaceData& faces, const Premap& pi) {
  return faces.gamma_minus().inverse() * pi.permutation().inverse() * faces.gamma_plus();
}

// Face-component id per element of ±[n], plus the component blocks.
struct ComponentMap {
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of_face;
};

ComponentMap components(const FaceData& faces, const Premap& pi) {
  require_same_ground(faces, pi);
  detail::DisjointSets sets(static_cast<std::size_t>(faces.face_count()));
  for (const auto& c : pi.permutation().cycles()) {
    for (int x : c) sets.unite(faces.face_of(c.front()), faces.face_of(x));
  }
  ComponentMap m;
  m.block_of_face.assign(static_cast<std::size_t>(faces.face_count()), -1);
  std::map<std::size_t, int> id;
  for (int f = 0; f < faces.face_count(); ++f) {
    auto [it, inserted] = id.emplace(sets.find(f), static_cast<int>(m.blocks.size()));
    if (inserted) m.blocks.emplace_back();
    m.blocks[it->second].push_back(f);
    m.block_of_face[f] = it->second;
  }
  return m;
}

int count_cycles_in(const SignedPermutation& p, const FaceData& faces, const std::vector<int>& block_of_face,
                    int block) {
  int count = 0;
  for (const auto& c : p.cycles()) {
    if (block_of_face[faces.face_of(c.front())] == block) ++count;
  }
  return count;
}

}  // namespace

int euler_characteristic(const FaceData& faces, const Premap& pi) {
  require_same_ground(faces, pi);
  const int total = faces.cover_faces().cycle_count() + pi.permutation().cycle_count() +
                    dual_vertices(faces, pi).cycle_count();
  return total / 2 - faces.size();
}

Premap vertex_premap(const FaceData& faces, const Premap& pi) {
  require_same_ground(faces, pi);
  SignedPermutation v = faces.gamma_minus().inverse() * pi.permutation() * faces.gamma_plus();
  if (!is_premap(v)) throw ContractError("vertex permutation is not a premap: " + v.to_string(true));
  return Premap(std::move(v));
}

std::vector<std::vector<int>> face_components(const FaceData& faces, const Premap& pi) {
  return components(faces, pi).blocks;
}

std::vector<bool> orientability(const FaceData& faces, const Premap& pi) {
  const ComponentMap m = components(faces, pi);
  const int n = faces.size();
  auto slot = [n](int x) { return static_cast<std::size_t>(x + n); };
  detail::DisjointSets sheets(2 * static_cast<std::size_t>(n) + 1);
  for (int x = -n; x <= n; ++x) {
    if (x == 0) continue;
    sheets.unite(slot(x), slot(faces.cover_faces()(x)));
    sheets.unite(slot(x), slot(pi(x)));
  }
  std::vector<bool> out;
  for (const auto& block : m.blocks) {
    const int k = faces.faces()[block.front()].front();
    out.push_back(sheets.find(slot(k)) != sheets.find(slot(-k)));
  }
  return out;
}

std::string SurfaceType::name() const {
  switch (kind) {
    case Kind::Sphere:
      return "sphere";
    case Kind::TorusSum:
      return count == 1 ? "torus" : "connected sum of " + std::to_string(count) + " tori";
    case Kind::ProjectivePlaneSum:
      if (count == 1) return "projective plane";
      if (count == 2) return "Klein bottle";
      return "connected sum of " + std::to_string(count) + " projective planes";
  }
  return "unknown";
}

std::vector<SurfaceComponent> classify_surface(const FaceData& faces, const Premap& pi) {
  const ComponentMap m = components(faces, pi);
  const std::vector<bool> orientable = orientability(faces, pi);
  const SignedPermutation dual = dual_vertices(faces, pi);

  std::vector<SurfaceComponent> out;
  for (std::size_t b = 0; b < m.blocks.size(); ++b) {
    const int block = static_cast<int>(b);
    int letters = 0;
    for (int f : m.blocks[b]) letters += static_cast<int>(faces.faces()[f].size());
    const int doubled = count_cycles_in(faces.cover_faces(), faces, m.block_of_face, block) +
                        count_cycles_in(pi.permutation(), faces, m.block_of_face, block) +
                        count_cycles_in(dual, faces, m.block_of_face, block);
    SurfaceComponent comp;
    comp.faces = m.blocks[b];
    comp.euler_characteristic = doubled / 2 - letters;
    comp.orientable = orientable[b];
    if (comp.orientable) {
      if (comp.euler_characteristic % 2 != 0 || comp.euler_characteristic > 2) {
        throw ContractError("orientable component with χ=" + std::to_string(comp.euler_characteristic));
      }
      comp.type = comp.euler_characteristic == 2
                      ? SurfaceType{SurfaceType::Kind::Sphere, 0}
                      : SurfaceType{SurfaceType::Kind::TorusSum, (2 - comp.euler_characteristic) / 2};
    } else {
      if (comp.euler_characteristic > 1) {
        throw ContractError("nonorientable component with χ=" + std::to_string(comp.euler_characteristic));
      }
      comp.type = SurfaceType{SurfaceType::Kind::ProjectivePlaneSum, 2 - comp.euler_characteristic};
    }
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace genus

#pragma once

#include <string>
#include <vector>

#include "genus/signed_permutation.hpp"

namespace genus {

bool is_premap(const SignedPermutation& p);

// Reverse-and-negate: the same cycle seen from the other side of the surface.
Cycle mirror(const Cycle& c);

/// A signed permutation whose cycle set is closed under mirror(), with no
/// cycle equal to its own mirror. Construction throws ContractError otherwise.
class Premap {
 public:
  Premap() = default;
  explicit Premap(SignedPermutation p);

  const SignedPermutation& permutation() const { return perm_; }
  int size() const { return perm_.size(); }
  int operator()(int x) const { return perm_(x); }
  Premap inverse() const;

  friend bool operator==(const Premap&, const Premap&) = default;

 private:
  SignedPermutation perm_;
};

/// One cycle from each mirror pair: the one holding +m where m is the least
/// absolute value in the pair, rotated to start at +m, sorted by m.
std::vector<Cycle> half_quotient(const Premap& p);

/// Faces of a gluing lifted to the orientable double cover.
class FaceData {
 public:
  FaceData() = default;
  explicit FaceData(SignedPermutation gamma);

  int size() const { return gamma_.size(); }
  const SignedPermutation& gamma() const { return gamma_; }
  const SignedPermutation& gamma_plus() const { return gamma_; }
  const SignedPermutation& gamma_minus() const { return gamma_minus_; }
  // γ₊γ₋⁻¹: fronts plus the reversed backs.
  const SignedPermutation& cover_faces() const { return cover_faces_; }

  // Cycles of γ on the positive elements, in canonical order.
  const std::vector<Cycle>& faces() const { return faces_; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  // Index into faces() of the face holding ±k.
  int face_of(int k) const { return face_of_[k < 0 ? -k : k]; }

 private:
  SignedPermutation gamma_;
  SignedPermutation gamma_minus_;
  SignedPermutation cover_faces_;
  std::vector<Cycle> faces_;
  std::vector<int> face_of_;
};

// Throws ContractError if gamma moves a negative element.
FaceData lift_faces(const SignedPermutation& gamma);

/// #(γ₊γ₋⁻¹)/2 + #(π)/2 + #(γ₋⁻¹π⁻¹γ₊)/2 − n
int euler_characteristic(const FaceData& faces, const Premap& pi);

/// γ₋⁻¹πγ₊, whose cycles read the spectator traces at the vertices.
Premap vertex_premap(const FaceData& faces, const Premap& pi);

/// Blocks of face indices joined whenever a cycle of π meets both faces.
/// Blocks are ordered by their least face index.
std::vector<std::vector<int>> face_components(const FaceData& faces, const Premap& pi);

/// Per face_components() block: true iff the double cover of that component
/// splits into two sheets exchanged by negation.
std::vector<bool> orientability(const FaceData& faces, const Premap& pi);

struct SurfaceType {
  enum class Kind { Sphere, TorusSum, ProjectivePlaneSum };
  Kind kind = Kind::Sphere;
  int count = 0;  // tori or cross-caps

  std::string name() const;
  friend bool operator==(const SurfaceType&, const SurfaceType&) = default;
};

struct SurfaceComponent {
  std::vector<int> faces;
  int euler_characteristic = 0;
  bool orientable = true;
  SurfaceType type;
};

/// Component-wise χ, orientability and classification. Throws ContractError
/// on an orientable component with odd χ.
std::vector<SurfaceComponent> classify_surface(const FaceData& faces, const Premap& pi);

}  // namespace genus

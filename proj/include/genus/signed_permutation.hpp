#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace genus {

using Cycle = std::vector<int>;

// Order on signed elements used for canonical output: 1 < -1 < 2 < -2 < ...
inline bool element_less(int a, int b) {
  const int aa = a < 0 ? -a : a;
  const int bb = b < 0 ? -b : b;
  if (aa != bb) return aa < bb;
  return a > b;
}

/// A bijection of the signed ground set {-n..-1, 1..n}.
///
/// Composition follows (p * q)(x) = p(q(x)). cycles() lists every cycle,
/// fixed points included, each rotated to start at its least element under
/// element_less and sorted by that element.
class SignedPermutation {
 public:
  SignedPermutation() = default;
  explicit SignedPermutation(int n);

  static SignedPermutation from_cycles(int n, const std::vector<Cycle>& cycles);

  int size() const { return n_; }
  bool contains(int x) const { return x != 0 && x >= -n_ && x <= n_; }
  int operator()(int x) const;

  SignedPermutation inverse() const;
  std::vector<Cycle> cycles() const;
  int cycle_count() const;
  bool is_identity() const;
  bool fixes_negatives() const;

  std::string to_string(bool show_fixed_points = false) const;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;

 private:
  friend SignedPermutation compose(const SignedPermutation&, const SignedPermutation&);

  int n_ = 0;
  std::vector<int> image_;  // image_[x + n_], slot n_ unused
};

SignedPermutation compose(const SignedPermutation& p, const SignedPermutation& q);
inline SignedPermutation operator*(const SignedPermutation& p, const SignedPermutation& q) {
  return compose(p, q);
}

/// Parses "(1,-7)(-1,7)"-style disjoint cycle notation over ±[n]; whitespace is
/// ignored and omitted elements are fixed. Throws ParseError.
SignedPermutation parse_cycles(std::string_view text, int n);

// Largest |x| mentioned in cycle text; useful for inferring n.
int max_element_in(std::string_view text);

std::string format_cycle(const Cycle& c);
std::string format_cycles(const std::vector<Cycle>& cycles);

// Rotates so the cycle starts at its least element (element_less).
Cycle rotate_canonical(Cycle c);

}  // namespace genus

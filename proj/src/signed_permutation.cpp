#include "genus/signed_permutation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "genus/errors.hpp"

namespace genus {

SignedPermutation::SignedPermutation(int n) : n_(n), image_(2 * static_cast<std::size_t>(n) + 1) {
  if (n < 0) throw ContractError("ground set size must be non-negative");
  for (int x = -n; x <= n; ++x) image_[x + n] = x;
}

SignedPermutation SignedPermutation::from_cycles(int n, const std::vector<Cycle>& cycles) {
  SignedPermutation p(n);
  std::vector<bool> seen(p.image_.size(), false);
  for (const auto& c : cycles) {
    for (int x : c) {
      if (!p.contains(x)) {
        throw ParseError("element " + std::to_string(x) + " outside ±[" + std::to_string(n) + "]");
      }
      if (seen[x + n]) throw ParseError("element " + std::to_string(x) + " repeated");
      seen[x + n] = true;
    }
    for (std::size_t i = 0; i < c.size(); ++i) p.image_[c[i] + n] = c[(i + 1) % c.size()];
  }
  return p;
}

int SignedPermutation::operator()(int x) const {
  if (!contains(x)) throw ContractError("element " + std::to_string(x) + " outside ground set");
  return image_[x + n_];
}

SignedPermutation SignedPermutation::inverse() const {
  SignedPermutation r(n_);
  for (int x = -n_; x <= n_; ++x) {
    if (x != 0) r.image_[image_[x + n_] + n_] = x;
  }
  return r;
}

std::vector<Cycle> SignedPermutation::cycles() const {
  std::vector<Cycle> out;
  std::vector<bool> seen(image_.size(), false);
  for (int a = 1; a <= n_; ++a) {
    for (int x : {a, -a}) {
      if (seen[x + n_]) continue;
      Cycle c;
      for (int y = x; !seen[y + n_]; y = image_[y + n_]) {
        seen[y + n_] = true;
        c.push_back(y);
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

int SignedPermutation::cycle_count() const {
  int count = 0;
  std::vector<bool> seen(image_.size(), false);
  for (int x = -n_; x <= n_; ++x) {
    if (x == 0 || seen[x + n_]) continue;
    ++count;
    for (int y = x; !seen[y + n_]; y = image_[y + n_]) seen[y + n_] = true;
  }
  return count;
}

bool SignedPermutation::is_identity() const {
  for (int x = -n_; x <= n_; ++x) {
    if (image_[x + n_] != x) return false;
  }
  return true;
}

bool SignedPermutation::fixes_negatives() const {
  for (int x = 1; x <= n_; ++x) {
    if (image_[n_ - x] != -x) return false;
  }
  return true;
}

std::string SignedPermutation::to_string(bool show_fixed_points) const {
  std::string out;
  for (const auto& c : cycles()) {
    if (c.size() == 1 && !show_fixed_points) continue;
    out += format_cycle(c);
  }
  return out.empty() ? "()" : out;
}

SignedPermutation compose(const SignedPermutation& p, const SignedPermutation& q) {
  if (p.size() != q.size()) {
    throw ContractError("ground-set mismatch: ±[" + std::to_string(p.size()) + "] vs ±[" +
                        std::to_string(q.size()) + "]");
  }
  const int n = p.size();
  SignedPermutation r(n);
  for (int x = -n; x <= n; ++x) {
    if (x != 0) r.image_[x + n] = p.image_[q.image_[x + n] + n];
  }
  return r;
}

namespace {

class CycleParser {
 public:
  explicit CycleParser(std::string_view text) : text_(text) {}

  std::vector<Cycle> parse() {
    std::vector<Cycle> out;
    skip_ws();
    while (pos_ < text_.size()) {
      expect('(');
      Cycle c;
      skip_ws();
      if (peek() != ')') {
        c.push_back(integer());
        skip_ws();
        while (peek() == ',') {
          ++pos_;
          c.push_back(integer());
          skip_ws();
        }
      }
      expect(')');
      if (!c.empty()) out.push_back(std::move(c));
      skip_ws();
    }
    return out;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char ch) {
    skip_ws();
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  int integer() {
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    long value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (text_[pos_++] - '0');
      if (value > 1'000'000) fail("element too large");
    }
    return static_cast<int>(negative ? -value : value);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cycle notation: " + what + " at offset " + std::to_string(pos_) + " in \"" +
                     std::string(text_) + "\"");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SignedPermutation parse_cycles(std::string_view text, int n) {
  return SignedPermutation::from_cycles(n, CycleParser(text).parse());
}

int max_element_in(std::string_view text) {
  int best = 0;
  for (const auto& c : CycleParser(text).parse()) {
    for (int x : c) best = std::max(best, std::abs(x));
  }
  return best;
}

std::string format_cycle(const Cycle& c) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  os << ')';
  return os.str();
}

std::string format_cycles(const std::vector<Cycle>& cycles) {
  std::string out;
  for (const auto& c : cycles) out += format_cycle(c);
  return out;
}

Cycle rotate_canonical(Cycle c) {
  auto it = std::min_element(c.begin(), c.end(), element_less);
  std::rotate(c.begin(), it, c.end());
  return c;
}

}  // namespace genus

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace trunk {

// Permutation of {0, ..., degree-1} stored as an image table.
//
// Composition is right-action throughout the library: (a * b) applies a
// first, then b, so (a * b)[i] == b[a[i]]. Points are 0-indexed everywhere.
class Perm {
 public:
  Perm() = default;
  explicit Perm(int degree);  // identity

  // Validates that images is a bijection on {0..n-1}.
  static Perm from_images(std::vector<int> images);

  // Parses cycle notation "(0 1 2)(3 4)"; "()" is the identity. Every point
  // mentioned must be < degree. Reports malformed input with its offset.
  static Perm from_cycles(const std::string& text, int degree);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator[](int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }

  Perm operator*(const Perm& rhs) const;  // this first, then rhs
  Perm inverse() const;

  bool is_identity() const;
  bool is_even() const;
  std::vector<int> fixed_points() const;

  // Cycle notation with fixed points omitted; identity prints as "()".
  std::string to_cycles() const;

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

 private:
  std::vector<int> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const;
};

// Conjugate of g by b: apply b-inverse, then g, then b. Maps the action of g
// through the point bijection b (degrees must match).
Perm conjugate(const Perm& g, const Perm& b);

int sign_of_images(const std::vector<int>& images);  // +1 / -1

}  // namespace trunk

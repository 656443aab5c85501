#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "basilica/errors.hpp"

namespace basilica {

// Permutation of the letters 1..p.  Composition is left to right throughout
// the library: x^(fg) = (x^f)^g, matching the right action of automorphisms
// on the tree.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int degree);  // identity
  static Permutation from_images(std::vector<int> images);

  int degree() const { return static_cast<int>(img_.size()); }
  int image(int letter) const { return img_[letter - 1]; }
  const std::vector<int>& images() const { return img_; }

  Permutation then(const Permutation& g) const;  // *this, then g
  Permutation inverse() const;
  bool is_identity() const;
  std::uint64_t order() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> img_;  // img_[i] is the image of letter i+1
};

// Degree and root permutation shared by every object built over one tree.
// sigma is the p-cycle sending 1 -> 2 -> ... -> p -> 1.
class TreeContext {
 public:
  static constexpr std::size_t kDefaultLeafCap = 1'000'000;

  explicit TreeContext(int p, std::size_t max_leaves = kDefaultLeafCap);

  int p() const { return p_; }
  const Permutation& sigma() const { return sigma_; }
  std::size_t max_leaves() const { return max_leaves_; }

 private:
  int p_;
  Permutation sigma_;
  std::size_t max_leaves_;
};

inline bool same_degree(const TreeContext& a, const TreeContext& b) {
  return a.p() == b.p();
}

// A vertex is a finite string of letters from 1..p; the root is the empty
// string.  Serialized form is comma separated, e.g. "3,3,1".
class Vertex {
 public:
  Vertex() = default;  // the root
  Vertex(const TreeContext& ctx, std::vector<int> letters);
  static Vertex parse(const TreeContext& ctx, std::string_view text);

  int level() const { return static_cast<int>(letters_.size()); }
  bool is_root() const { return letters_.empty(); }
  int letter(int i) const { return letters_[i]; }  // position 0-based
  const std::vector<int>& letters() const { return letters_; }
  std::string str() const;

  friend bool operator==(const Vertex&, const Vertex&) = default;

 private:
  std::vector<int> letters_;
};

// p^level, guarded by the context's leaf cap.
std::uint64_t checked_leaf_count(const TreeContext& ctx, int level);

// All vertices of the given level in lexicographic order.  This ordering is
// the indexing contract for everything that talks about leaves.
std::vector<Vertex> vertices_at_level(const TreeContext& ctx, int level);

// Rank of a vertex among the vertices of its level, lexicographic, 0-based.
std::uint64_t leaf_index(const TreeContext& ctx, const Vertex& v);

// Inverse of leaf_index at a fixed level.
Vertex vertex_at_index(const TreeContext& ctx, int level, std::uint64_t index);

}  // namespace basilica

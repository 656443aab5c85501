#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "basilica/tree.hpp"

namespace basilica {

// The two generators and their inverses, in the order used by the text
// syntax: 'a', 'A' = a^-1, 'b', 'B' = b^-1.
enum class Gen : std::uint8_t { a = 0, A = 1, b = 2, B = 3 };

inline Gen inverse_of(Gen g) {
  return static_cast<Gen>(static_cast<std::uint8_t>(g) ^ 1u);
}
inline char gen_char(Gen g) { return "aAbB"[static_cast<std::uint8_t>(g)]; }

// Freely reduced word over {a, A, b, B}, tied to a tree context.  Reduction
// is an invariant: push() cancels against the last letter, so no operation
// can produce an adjacent inverse pair.  operator== is letter-for-letter
// identity; equality in the group is the word problem solver's job.
class Word {
 public:
  explicit Word(const TreeContext& ctx) : ctx_(&ctx) {}

  // Text grammar:
  //   expr     := term+
  //   term     := atom ('^' exponent)?
  //   atom     := 'a' | 'A' | 'b' | 'B' | '1' | '(' expr ')' | '[' expr ',' expr ']'
  //   exponent := '-'? digits | '(' expr ')'
  // '^' with an integer is a power, with a parenthesised expression a
  // conjugation x^(h) = h^-1 x h.  '[x,y]' is x^-1 y^-1 x y.  Whitespace is
  // ignored; empty input (and '1') is the identity.
  static Word parse(const TreeContext& ctx, std::string_view text);

  const TreeContext& context() const { return *ctx_; }
  const std::vector<Gen>& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }

  void push(Gen g);             // right multiply by one generator
  void append(const Word& w);   // right multiply by a word

  // Inverse of parse, with runs printed as powers; the identity prints "1".
  std::string str() const;

  friend bool operator==(const Word& u, const Word& v) {
    return u.ctx_->p() == v.ctx_->p() && u.letters_ == v.letters_;
  }

 private:
  const TreeContext* ctx_;
  std::vector<Gen> letters_;
};

Word multiply(const Word& u, const Word& v);
Word inverse(const Word& w);
Word power(const Word& w, long long k);
Word conjugate(const Word& w, const Word& h);   // h^-1 w h
Word commutator(const Word& x, const Word& y);  // x^-1 y^-1 x y

// Image of a word under the wreath recursion: the root permutation plus one
// section word per subtree.  sections[i] lives at the letter i+1.
struct Decomposition {
  Permutation root;
  std::vector<Word> sections;
};

Decomposition decompose(const Word& w);
Permutation root_label(const Word& w);
int root_exponent(const Word& w);  // root label as a power of sigma, in 0..p-1

// Section at a single letter (a level-1 vertex) or at an arbitrary vertex.
Word first_section(const Word& w, int letter);
Word section(const Word& w, const Vertex& u);

// Image of a vertex under the right action of w.
Vertex act(const Word& w, const Vertex& u);

// Permutation induced on the p^level leaves, in lexicographic leaf order
// (images are 0-based leaf indices).
struct LevelPermutation {
  int level = 0;
  std::vector<std::uint32_t> images;

  std::size_t degree() const { return images.size(); }
  bool is_identity() const;
  LevelPermutation then(const LevelPermutation& g) const;
  LevelPermutation inverse() const;

  friend bool operator==(const LevelPermutation&, const LevelPermutation&) =
      default;
};

LevelPermutation level_perm(const Word& w, int level);

// Memoises leaf images across calls; worth holding on to when many related
// words (sections of each other, powers) get evaluated at the same level.
class LevelPermCache {
 public:
  explicit LevelPermCache(const TreeContext& ctx) : ctx_(&ctx) {}
  const std::vector<std::uint32_t>& images(const Word& w, int level);
  std::size_t size() const { return memo_.size(); }

 private:
  const TreeContext* ctx_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> memo_;
};

}  // namespace basilica

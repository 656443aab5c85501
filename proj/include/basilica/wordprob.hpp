#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "basilica/element.hpp"

namespace basilica {

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

// Closure of a word under first-level sections, explored breadth first with
// freely reduced words as states.  Sections never get longer than the word
// they come from, so the closure is finite; the cap is a safety valve, not a
// correctness device.  The element is trivial in the group exactly when
// every state carries the trivial root permutation.
class SectionAutomaton {
 public:
  static SectionAutomaton build(const Word& start,
                                std::size_t max_states = kDefaultStateCap);

  std::size_t size() const { return states_.size(); }
  int p() const { return p_; }
  const Word& state_word(std::size_t s) const { return states_[s]; }
  int root_exponent_of(std::size_t s) const { return root_exp_[s]; }
  // child state reached by the section at a 1-based letter
  std::size_t child(std::size_t s, int letter) const {
    return trans_[s * p_ + (letter - 1)];
  }
  bool all_roots_trivial() const;

 private:
  int p_ = 0;
  std::vector<Word> states_;
  std::vector<int> root_exp_;
  std::vector<std::uint32_t> trans_;
};

// Word problem: explores the same closure but stops at the first nontrivial
// root label.
bool is_trivial(const Word& w, std::size_t max_states = kDefaultStateCap);
bool equals(const Word& u, const Word& v,
            std::size_t max_states = kDefaultStateCap);

// Max over the level-n vertices of the reduced length of the section there.
int ell(const Word& w, int level);

// Smallest level (up to max_level) on which w acts nontrivially.
std::optional<int> separating_level(const Word& w, int max_level);

// Shared shape of the audit results; serialisation lives in report.hpp.
struct CheckReport {
  std::string check;
  int p = 0;
  std::vector<std::pair<std::string, long long>> bounds;
  bool passed = false;
  std::vector<std::string> counterexamples;
  std::vector<std::pair<std::string, long long>> stats;
  long long wallclock_ms = 0;
};

// Checks ell_2(g) <= (2/3)|g| + 1 for every freely reduced word up to lmax,
// and ell_2(h) <= 2 for every word of length exactly 3.
CheckReport contraction_audit(const TreeContext& ctx, int lmax);

// Checks that the positive words in a, b of length 1..lmax are pairwise
// distinct in the group: 2^(lmax+1) - 2 elements.  Words are bucketed by
// their action on a level deep enough to have that many vertices, and exact
// equality runs only within buckets; the seed only salts the bucket hash, so
// results are independent of it.
CheckReport free_semigroup_check(const TreeContext& ctx, int lmax,
                                 std::uint64_t hash_seed = 0);

// Checks that w^k stays nontrivial for every nontrivial reduced word with
// |w| <= lmax and every 2 <= k <= kmax.
CheckReport torsion_spotcheck(const TreeContext& ctx, int lmax, int kmax);

}  // namespace basilica

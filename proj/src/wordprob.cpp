#include "basilica/wordprob.hpp"

#include <chrono>
#include <unordered_map>
#include <unordered_set>

namespace basilica {

namespace {

std::string word_key(const Word& w) {
  std::string k;
  k.reserve(w.letters().size());
  for (Gen g : w.letters())
    k.push_back(static_cast<char>('0' + static_cast<int>(g)));
  return k;
}

class Stopwatch {
 public:
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

// FNV-1a over the leaf images, salted by the seed.
std::uint64_t hash_images(const std::vector<std::uint32_t>& img,
                          std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (std::uint32_t v : img) {
    for (int byte = 0; byte < 4; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

// Enumerates all freely reduced words of length 1..lmax, depth first in
// letter order a < A < b < B, calling visit(word, length).
template <typename F>
void for_each_reduced_word(const TreeContext& ctx, int lmax, F&& visit) {
  std::vector<Gen> stack;
  Word w(ctx);
  auto rec = [&](auto&& self) -> void {
    if (!stack.empty()) visit(w, static_cast<int>(stack.size()));
    if (static_cast<int>(stack.size()) == lmax) return;
    for (int c = 0; c < 4; ++c) {
      Gen g = static_cast<Gen>(c);
      if (!stack.empty() && inverse_of(stack.back()) == g) continue;
      stack.push_back(g);
      w.push(g);
      self(self);
      stack.pop_back();
      w = Word(ctx);
      for (Gen h : stack) w.push(h);
    }
  };
  rec(rec);
}

}  // namespace

SectionAutomaton SectionAutomaton::build(const Word& start,
                                         std::size_t max_states) {
  SectionAutomaton au;
  au.p_ = start.context().p();
  std::unordered_map<std::string, std::uint32_t> index;

  auto intern = [&](const Word& w) -> std::uint32_t {
    auto [it, inserted] = index.emplace(word_key(w), au.states_.size());
    if (inserted) {
      if (au.states_.size() + 1 > max_states)
        throw StateCapExceededError(max_states);
      au.states_.push_back(w);
      au.root_exp_.push_back(root_exponent(w));
    }
    return it->second;
  };

  intern(start);
  for (std::size_t head = 0; head < au.states_.size(); ++head) {
    const Word cur = au.states_[head];  // copy: states_ may reallocate
    for (int x = 1; x <= au.p_; ++x)
      au.trans_.push_back(intern(first_section(cur, x)));
  }
  return au;
}

bool SectionAutomaton::all_roots_trivial() const {
  for (int e : root_exp_)
    if (e != 0) return false;
  return true;
}

bool is_trivial(const Word& w, std::size_t max_states) {
  if (root_exponent(w) != 0) return false;
  const int p = w.context().p();
  std::unordered_set<std::string> seen;
  std::vector<Word> queue;
  seen.insert(word_key(w));
  queue.push_back(w);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Word cur = queue[head];
    for (int x = 1; x <= p; ++x) {
      Word s = first_section(cur, x);
      if (root_exponent(s) != 0) return false;
      if (seen.insert(word_key(s)).second) {
        if (queue.size() + 1 > max_states)
          throw StateCapExceededError(max_states);
        queue.push_back(std::move(s));
      }
    }
  }
  return true;
}

bool equals(const Word& u, const Word& v, std::size_t max_states) {
  return is_trivial(multiply(u, inverse(v)), max_states);
}

int ell(const Word& w, int level) {
  checked_leaf_count(w.context(), level);
  const int p = w.context().p();
  std::vector<Word> cur{w};
  for (int k = 0; k < level; ++k) {
    std::unordered_set<std::string> seen;
    std::vector<Word> next;
    for (const Word& v : cur) {
      for (int x = 1; x <= p; ++x) {
        Word s = first_section(v, x);
        if (seen.insert(word_key(s)).second) next.push_back(std::move(s));
      }
    }
    cur = std::move(next);
  }
  int best = 0;
  for (const Word& v : cur) best = std::max(best, v.length());
  return best;
}

std::optional<int> separating_level(const Word& w, int max_level) {
  LevelPermCache cache(w.context());
  for (int n = 1; n <= max_level; ++n) {
    const auto& img = cache.images(w, n);
    for (std::size_t i = 0; i < img.size(); ++i)
      if (img[i] != i) return n;
  }
  return std::nullopt;
}

CheckReport contraction_audit(const TreeContext& ctx, int lmax) {
  Stopwatch clock;
  CheckReport r;
  r.check = "contraction";
  r.p = ctx.p();
  r.bounds = {{"lmax", lmax}};
  r.passed = true;

  long long words = 0;
  long long max_ell2_len3 = 0;
  long long worst_num = 0, worst_den = 1;  // max of ell_2 / |g|

  for_each_reduced_word(ctx, lmax, [&](const Word& w, int len) {
    ++words;
    const int e2 = ell(w, 2);
    if (3 * e2 > 2 * len + 3) {
      r.passed = false;
      if (r.counterexamples.size() < 10)
        r.counterexamples.push_back(w.str() + " has ell_2 = " +
                                    std::to_string(e2));
    }
    if (len == 3) {
      max_ell2_len3 = std::max<long long>(max_ell2_len3, e2);
      if (e2 > 2) {
        r.passed = false;
        if (r.counterexamples.size() < 10)
          r.counterexamples.push_back(w.str() + " has ell_2 = " +
                                      std::to_string(e2) + " at length 3");
      }
    }
    if (static_cast<long long>(e2) * worst_den > worst_num * len) {
      worst_num = e2;
      worst_den = len;
    }
  });

  r.stats = {{"words", words},
             {"max_ell2_len3", max_ell2_len3},
             {"worst_ratio_num", worst_num},
             {"worst_ratio_den", worst_den}};
  r.wallclock_ms = clock.ms();
  return r;
}

CheckReport free_semigroup_check(const TreeContext& ctx, int lmax,
                                 std::uint64_t hash_seed) {
  Stopwatch clock;
  CheckReport r;
  r.check = "free_semigroup";
  r.p = ctx.p();
  r.bounds = {{"lmax", lmax}};

  // level deep enough that the expected number of elements fits
  const long long expected = (2ll << lmax) - 2;
  int level = 0;
  std::uint64_t leaves = 1;
  while (leaves < (1ull << lmax)) {
    leaves *= static_cast<std::uint64_t>(ctx.p());
    ++level;
  }
  checked_leaf_count(ctx, level);

  // positive words in a, b of length 1..lmax, in lexicographic order
  std::vector<Word> words;
  {
    std::vector<Gen> stack;
    auto rec = [&](auto&& self) -> void {
      if (!stack.empty()) {
        Word w(ctx);
        for (Gen g : stack) w.push(g);
        words.push_back(std::move(w));
      }
      if (static_cast<int>(stack.size()) == lmax) return;
      for (Gen g : {Gen::a, Gen::b}) {
        stack.push_back(g);
        self(self);
        stack.pop_back();
      }
    };
    rec(rec);
  }

  LevelPermCache cache(ctx);
  std::vector<const std::vector<std::uint32_t>*> imgs(words.size());
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < words.size(); ++i) {
    imgs[i] = &cache.images(words[i], level);
    buckets[hash_images(*imgs[i], hash_seed)].push_back(i);
  }

  // within a bucket, words with different leaf images are already distinct;
  // exact equality decides the rest
  long long exact_checks = 0;
  long long distinct = 0;
  for (auto& [h, members] : buckets) {
    std::vector<std::size_t> reps;  // class representatives inside the bucket
    for (std::size_t i : members) {
      bool fresh = true;
      for (std::size_t rep : reps) {
        if (*imgs[rep] != *imgs[i]) continue;
        ++exact_checks;
        if (equals(words[rep], words[i])) {
          fresh = false;
          r.passed = false;
          if (r.counterexamples.size() < 10)
            r.counterexamples.push_back(words[rep].str() + " = " +
                                        words[i].str());
          break;
        }
      }
      if (fresh) {
        reps.push_back(i);
        ++distinct;
      }
    }
  }

  r.passed = (distinct == expected) && r.counterexamples.empty();
  r.stats = {{"distinct", distinct},
             {"expected", expected},
             {"level", level},
             {"buckets", static_cast<long long>(buckets.size())},
             {"exact_checks", exact_checks}};
  r.wallclock_ms = clock.ms();
  return r;
}

CheckReport torsion_spotcheck(const TreeContext& ctx, int lmax, int kmax) {
  Stopwatch clock;
  CheckReport r;
  r.check = "torsion";
  r.p = ctx.p();
  r.bounds = {{"lmax", lmax}, {"kmax", kmax}};
  r.passed = true;

  long long base_words = 0, powers = 0;
  for_each_reduced_word(ctx, lmax, [&](const Word& w, int) {
    if (is_trivial(w)) return;
    ++base_words;
    for (int k = 2; k <= kmax; ++k) {
      ++powers;
      if (is_trivial(power(w, k))) {
        r.passed = false;
        if (r.counterexamples.size() < 10)
          r.counterexamples.push_back("(" + w.str() + ")^" +
                                      std::to_string(k));
      }
    }
  });

  r.stats = {{"nontrivial_words", base_words}, {"powers_checked", powers}};
  r.wallclock_ms = clock.ms();
  return r;
}

}  // namespace basilica

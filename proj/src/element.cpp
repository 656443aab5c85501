#include "basilica/element.hpp"

#include <cctype>

namespace basilica {

namespace {

// rotate a letter e steps around sigma's cycle; e may be negative
inline int rot(int x, int e, int p) {
  int r = (x - 1 + e) % p;
  if (r < 0) r += p;
  return r + 1;
}

// Every generator has exactly one nontrivial first-level section:
//   a = (1,...,1,b)            A = (1,...,1,B)
//   b = (1,...,1,a) sigma      B = (A,1,...,1) sigma^-1
// The B row follows from the inverse rule (g^-1)_u = (g_{u^(g^-1)})^-1; a
// unit test pins it against inverse(decompose(b)).
struct LetterRule {
  int root_shift;   // root label contribution, as an exponent of sigma
  int section_at;   // 1-based position of the nontrivial section
  Gen section_gen;
};

inline LetterRule rule_for(Gen g, int p) {
  switch (g) {
    case Gen::a: return {0, p, Gen::b};
    case Gen::A: return {0, p, Gen::B};
    case Gen::b: return {1, p, Gen::a};
    case Gen::B: return {-1, 1, Gen::A};
  }
  return {0, p, Gen::b};  // unreachable, keeps gcc quiet
}

class Parser {
 public:
  Parser(const TreeContext& ctx, std::string_view text)
      : ctx_(ctx), text_(text) {}

  Word run() {
    Word w = parse_expr(/*allow_empty=*/true);
    skip_ws();
    if (!at_end()) {
      if (text_[pos_] == ')' || text_[pos_] == ']')
        throw MismatchedBracketError(pos_, "no unmatched closing bracket");
      throw SyntaxError(pos_, "end of input");
    }
    return w;
  }

 private:
  const TreeContext& ctx_;
  std::string_view text_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= text_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool at_expr_end() {
    skip_ws();
    if (at_end()) return true;
    char c = text_[pos_];
    return c == ')' || c == ']' || c == ',';
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || text_[pos_] != c) {
      std::string what(1, c);
      if (c == ')' || c == ']')
        throw MismatchedBracketError(pos_, "'" + what + "'");
      throw SyntaxError(pos_, "'" + what + "'");
    }
    ++pos_;
  }

  Word parse_expr(bool allow_empty) {
    Word w(ctx_);
    bool any = false;
    while (!at_expr_end()) {
      w.append(parse_term());
      any = true;
    }
    if (!any && !allow_empty)
      throw SyntaxError(pos_, "a generator, '1', '(' or '['");
    return w;
  }

  Word parse_term() {
    Word atom = parse_atom();
    skip_ws();
    if (at_end() || text_[pos_] != '^') return atom;
    ++pos_;
    skip_ws();
    if (!at_end()) {
      char c = text_[pos_];
      if (c == '(') {
        ++pos_;
        Word h = parse_expr(false);
        expect(')');
        return conjugate(atom, h);
      }
      if (c == '-' || std::isdigit(static_cast<unsigned char>(c)))
        return power(atom, parse_int());
    }
    throw SyntaxError(pos_, "an integer or '(' after '^'");
  }

  Word parse_atom() {
    skip_ws();
    Word w(ctx_);
    if (at_end()) throw SyntaxError(pos_, "a generator, '1', '(' or '['");
    switch (text_[pos_]) {
      case 'a': ++pos_; w.push(Gen::a); return w;
      case 'A': ++pos_; w.push(Gen::A); return w;
      case 'b': ++pos_; w.push(Gen::b); return w;
      case 'B': ++pos_; w.push(Gen::B); return w;
      case '1': ++pos_; return w;
      case '(': {
        ++pos_;
        Word inner = parse_expr(false);
        expect(')');
        return inner;
      }
      case '[': {
        ++pos_;
        Word x = parse_expr(false);
        expect(',');
        // left-normed: [u,v,w] = [[u,v],w]
        x = commutator(x, parse_expr(false));
        skip_ws();
        while (!at_end() && text_[pos_] == ',') {
          ++pos_;
          x = commutator(x, parse_expr(false));
          skip_ws();
        }
        expect(']');
        return x;
      }
      default:
        throw SyntaxError(pos_, "a generator, '1', '(' or '['");
    }
  }

  long long parse_int() {
    bool neg = false;
    if (text_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw SyntaxError(pos_, "digits");
    long long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 10'000'000) throw SyntaxError(pos_, "an exponent below 10^7");
      ++pos_;
    }
    return neg ? -v : v;
  }
};

}  // namespace

Word Word::parse(const TreeContext& ctx, std::string_view text) {
  return Parser(ctx, text).run();
}

void Word::push(Gen g) {
  if (!letters_.empty() && letters_.back() == inverse_of(g))
    letters_.pop_back();
  else
    letters_.push_back(g);
}

void Word::append(const Word& w) {
  if (!same_degree(*ctx_, *w.ctx_)) throw MismatchedContextError();
  if (this == &w) {
    const std::vector<Gen> copy = letters_;
    for (Gen g : copy) push(g);
    return;
  }
  for (Gen g : w.letters_) push(g);
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < letters_.size()) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    const std::size_t run = j - i;
    const Gen g = letters_[i];
    if (run == 1) {
      out += gen_char(g);
    } else {
      const bool inv = (g == Gen::A || g == Gen::B);
      out += (g == Gen::a || g == Gen::A) ? 'a' : 'b';
      out += '^';
      if (inv) out += '-';
      out += std::to_string(run);
    }
    i = j;
  }
  return out;
}

Word multiply(const Word& u, const Word& v) {
  Word r = u;
  r.append(v);
  return r;
}

Word inverse(const Word& w) {
  Word r(w.context());
  const auto& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) r.push(inverse_of(*it));
  return r;
}

Word power(const Word& w, long long k) {
  if (k < 0) return power(inverse(w), -k);
  Word r(w.context());
  for (long long i = 0; i < k; ++i) r.append(w);
  return r;
}

Word conjugate(const Word& w, const Word& h) {
  Word r = inverse(h);
  r.append(w);
  r.append(h);
  return r;
}

Word commutator(const Word& x, const Word& y) {
  Word r = inverse(x);
  r.append(inverse(y));
  r.append(x);
  r.append(y);
  return r;
}

int root_exponent(const Word& w) {
  const int p = w.context().p();
  int e = 0;
  for (Gen g : w.letters()) e += rule_for(g, p).root_shift;
  e %= p;
  if (e < 0) e += p;
  return e;
}

Permutation root_label(const Word& w) {
  const TreeContext& ctx = w.context();
  Permutation r(ctx.p());
  const int e = root_exponent(w);
  for (int i = 0; i < e; ++i) r = r.then(ctx.sigma());
  return r;
}

Decomposition decompose(const Word& w) {
  const TreeContext& ctx = w.context();
  const int p = ctx.p();
  Decomposition d{Permutation(p), std::vector<Word>(p, Word(ctx))};
  int e = 0;  // root label sigma^e of the prefix consumed so far
  for (Gen g : w.letters()) {
    const LetterRule r = rule_for(g, p);
    // product rule (w g)_x = w_x g_{x^w}: g's section at position t shows up
    // in the section x that the prefix maps onto t
    d.sections[rot(r.section_at, -e, p) - 1].push(r.section_gen);
    e += r.root_shift;
  }
  e %= p;
  if (e < 0) e += p;
  for (int i = 0; i < e; ++i) d.root = d.root.then(ctx.sigma());
  return d;
}

Word first_section(const Word& w, int letter) {
  const int p = w.context().p();
  if (letter < 1 || letter > p)
    throw InvalidVertexError("letter " + std::to_string(letter) +
                             " out of range 1.." + std::to_string(p));
  Word out(w.context());
  int cur = letter;  // image of the chosen subtree under the growing prefix
  for (Gen g : w.letters()) {
    const LetterRule r = rule_for(g, p);
    if (cur == r.section_at) out.push(r.section_gen);
    cur = rot(cur, r.root_shift, p);
  }
  return out;
}

Word section(const Word& w, const Vertex& u) {
  Word cur = w;
  for (int i = 0; i < u.level(); ++i) cur = first_section(cur, u.letter(i));
  return cur;
}

Vertex act(const Word& w, const Vertex& u) {
  const TreeContext& ctx = w.context();
  const int p = ctx.p();
  std::vector<int> image;
  image.reserve(u.level());
  Word cur = w;
  for (int i = 0; i < u.level(); ++i) {
    const int x = u.letter(i);
    if (x < 1 || x > p)
      throw InvalidVertexError("vertex letter " + std::to_string(x) +
                               " out of range 1.." + std::to_string(p));
    image.push_back(rot(x, root_exponent(cur), p));
    cur = first_section(cur, x);
  }
  return Vertex(ctx, std::move(image));
}

bool LevelPermutation::is_identity() const {
  for (std::size_t i = 0; i < images.size(); ++i)
    if (images[i] != i) return false;
  return true;
}

LevelPermutation LevelPermutation::then(const LevelPermutation& g) const {
  if (level != g.level || images.size() != g.images.size())
    throw MismatchedLevelError(g.level, level);
  LevelPermutation r{level, std::vector<std::uint32_t>(images.size())};
  for (std::size_t i = 0; i < images.size(); ++i)
    r.images[i] = g.images[images[i]];
  return r;
}

LevelPermutation LevelPermutation::inverse() const {
  LevelPermutation r{level, std::vector<std::uint32_t>(images.size())};
  for (std::size_t i = 0; i < images.size(); ++i)
    r.images[images[i]] = static_cast<std::uint32_t>(i);
  return r;
}

const std::vector<std::uint32_t>& LevelPermCache::images(const Word& w,
                                                         int level) {
  const TreeContext& ctx = *ctx_;
  if (!same_degree(ctx, w.context())) throw MismatchedContextError();
  const std::uint64_t count = checked_leaf_count(ctx, level);

  std::string key;
  key.reserve(static_cast<std::size_t>(w.length()) + 1);
  key.push_back(static_cast<char>(level));
  for (Gen g : w.letters())
    key.push_back(static_cast<char>('0' + static_cast<int>(g)));
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  std::vector<std::uint32_t> res(count);
  if (level == 0) {
    res[0] = 0;
  } else {
    const int p = ctx.p();
    const std::uint64_t block = count / p;
    const int e = root_exponent(w);
    for (int x = 1; x <= p; ++x) {
      const auto& sub = images(first_section(w, x), level - 1);
      const std::uint64_t src = static_cast<std::uint64_t>(x - 1) * block;
      const std::uint64_t dst =
          static_cast<std::uint64_t>(rot(x, e, p) - 1) * block;
      for (std::uint64_t j = 0; j < block; ++j)
        res[src + j] = static_cast<std::uint32_t>(dst + sub[j]);
    }
  }
  return memo_.emplace(std::move(key), std::move(res)).first->second;
}

LevelPermutation level_perm(const Word& w, int level) {
  LevelPermCache cache(w.context());
  return LevelPermutation{level, cache.images(w, level)};
}

}  // namespace basilica

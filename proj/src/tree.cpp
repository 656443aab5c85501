#include "basilica/tree.hpp"

#include <algorithm>
#include <numeric>

namespace basilica {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

Permutation::Permutation(int degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), 1);
}

Permutation Permutation::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<char> seen(n, 0);
  for (int x : images) {
    if (x < 1 || x > n || seen[x - 1])
      throw Error("permutation images are not a bijection of 1..n");
    seen[x - 1] = 1;
  }
  Permutation f;
  f.img_ = std::move(images);
  return f;
}

Permutation Permutation::then(const Permutation& g) const {
  if (degree() != g.degree())
    throw Error("cannot compose permutations of different degree");
  Permutation r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = g.image(img_[i]);
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i)
    r.img_[img_[i] - 1] = static_cast<int>(i) + 1;
  return r;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != static_cast<int>(i) + 1) return false;
  return true;
}

std::uint64_t Permutation::order() const {
  std::vector<char> seen(img_.size(), 0);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = img_[j] - 1) {
      seen[j] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

TreeContext::TreeContext(int p, std::size_t max_leaves)
    : p_(p), max_leaves_(max_leaves) {
  if (!is_prime(p)) throw NonPrimeError(p);
  std::vector<int> img(p);
  for (int i = 0; i < p; ++i) img[i] = (i + 1) % p + 1;
  sigma_ = Permutation::from_images(std::move(img));
}

Vertex::Vertex(const TreeContext& ctx, std::vector<int> letters)
    : letters_(std::move(letters)) {
  for (int x : letters_)
    if (x < 1 || x > ctx.p())
      throw InvalidVertexError("vertex letter " + std::to_string(x) +
                               " out of range 1.." + std::to_string(ctx.p()));
}

Vertex Vertex::parse(const TreeContext& ctx, std::string_view text) {
  std::vector<int> letters;
  std::size_t i = 0;
  while (i < text.size() && text[i] == ' ') ++i;
  while (i < text.size()) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw InvalidVertexError("vertex must be comma separated letters, got '" +
                               std::string(text) + "'");
    int x = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      // stop accumulating once past p so huge digit strings cannot overflow;
      // the Vertex constructor reports the out-of-range letter
      if (x <= ctx.p()) x = x * 10 + (text[i] - '0');
      ++i;
    }
    letters.push_back(x);
    while (i < text.size() && text[i] == ' ') ++i;
    if (i < text.size()) {
      if (text[i] != ',')
        throw InvalidVertexError("expected ',' in vertex '" +
                                 std::string(text) + "'");
      ++i;
      while (i < text.size() && text[i] == ' ') ++i;
      if (i == text.size())
        throw InvalidVertexError("trailing ',' in vertex '" +
                                 std::string(text) + "'");
    }
  }
  return Vertex(ctx, std::move(letters));
}

std::string Vertex::str() const {
  std::string s;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(letters_[i]);
  }
  return s;
}

std::uint64_t checked_leaf_count(const TreeContext& ctx, int level) {
  if (level < 0) throw Error("negative level");
  std::uint64_t count = 1;
  for (int i = 0; i < level; ++i) {
    count *= static_cast<std::uint64_t>(ctx.p());
    if (count > ctx.max_leaves()) throw LevelTooLargeError(level, ctx.max_leaves());
  }
  return count;
}

std::vector<Vertex> vertices_at_level(const TreeContext& ctx, int level) {
  const std::uint64_t count = checked_leaf_count(ctx, level);
  std::vector<Vertex> out;
  out.reserve(count);
  std::vector<int> cur(level, 1);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.emplace_back(ctx, cur);
    // increment cur as a base-p counter, most significant letter first
    for (int j = level - 1; j >= 0; --j) {
      if (cur[j] < ctx.p()) {
        ++cur[j];
        break;
      }
      cur[j] = 1;
    }
  }
  return out;
}

std::uint64_t leaf_index(const TreeContext& ctx, const Vertex& v) {
  std::uint64_t idx = 0;
  for (int i = 0; i < v.level(); ++i)
    idx = idx * static_cast<std::uint64_t>(ctx.p()) +
          static_cast<std::uint64_t>(v.letter(i) - 1);
  return idx;
}

Vertex vertex_at_index(const TreeContext& ctx, int level, std::uint64_t index) {
  std::vector<int> letters(level);
  for (int i = level - 1; i >= 0; --i) {
    letters[i] = static_cast<int>(index % ctx.p()) + 1;
    index /= ctx.p();
  }
  return Vertex(ctx, std::move(letters));
}

}  // namespace basilica

#include "basilica/quotient.hpp"

#include <cassert>
#include <chrono>

#include "basilica/errors.hpp"

namespace basilica {

namespace {

using P = StabilizerChain::P;

// Left-to-right composition: point^(mul(a,b)) = (point^a)^b.
P mul(const P& a, const P& b) {
  P r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

P invert(const P& a) {
  P r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint32_t>(i);
  return r;
}

P identity(std::size_t n) {
  P r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<std::uint32_t>(i);
  return r;
}

bool is_identity_perm(const P& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != i) return false;
  return true;
}

}  // namespace

int logp_exact(const mpz_class& value, int p) {
  auto complain = [&] {
    return NotPPowerError(value.get_str() + " is not a power of " +
                          std::to_string(p));
  };
  if (value <= 0) throw complain();
  mpz_class v = value;
  int e = 0;
  while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
    ++e;
  }
  if (v != 1) throw complain();
  return e;
}

StabilizerChain::StabilizerChain(std::size_t degree)
    : degree_(degree), levels_(degree) {}

std::pair<P, std::size_t> StabilizerChain::sift(P g, std::size_t from) const {
  for (std::size_t l = from; l < degree_; ++l) {
    std::uint32_t x = g[l];
    if (x == l) continue;
    const Level& lv = levels_[l];
    if (!lv.active) return {std::move(g), l};
    std::int32_t s = lv.slot[x];
    if (s < 0) return {std::move(g), l};
    g = mul(g, lv.trans_inv[static_cast<std::size_t>(s)]);
  }
  return {std::move(g), degree_};
}

void StabilizerChain::activate(std::size_t l) {
  Level& lv = levels_[l];
  lv.active = true;
  lv.orbit = {static_cast<std::uint32_t>(l)};
  lv.slot.assign(degree_, -1);
  lv.slot[l] = 0;
  lv.trans = {identity(degree_)};
  lv.trans_inv = {identity(degree_)};
  lv.watermark.assign(pool_.size(), 0);
}

void StabilizerChain::orbit_add_point(std::size_t l, std::uint32_t point, P rep) {
  Level& lv = levels_[l];
  lv.slot[point] = static_cast<std::int32_t>(lv.orbit.size());
  lv.orbit.push_back(point);
  lv.trans_inv.push_back(invert(rep));
  lv.trans.push_back(std::move(rep));
}

void StabilizerChain::extend_orbit(std::size_t l, std::size_t gen_index) {
  Level& lv = levels_[l];
  const std::size_t before = lv.orbit.size();
  // Push the new generator across the points known so far.
  for (std::size_t idx = 0; idx < before; ++idx) {
    std::uint32_t y = pool_[gen_index][lv.orbit[idx]];
    if (lv.slot[y] < 0) orbit_add_point(l, y, mul(lv.trans[idx], pool_[gen_index]));
  }
  // Close the freshly discovered points under every generator of this level.
  for (std::size_t idx = before; idx < lv.orbit.size(); ++idx) {
    for (std::size_t gj = 0; gj < pool_.size(); ++gj) {
      if (pool_level_[gj] < l) continue;
      std::uint32_t y = pool_[gj][lv.orbit[idx]];
      if (lv.slot[y] < 0) orbit_add_point(l, y, mul(lv.trans[idx], pool_[gj]));
    }
  }
}

void StabilizerChain::insert_gen(P g, std::size_t level) {
  pool_.push_back(std::move(g));
  pool_level_.push_back(level);
  const std::size_t gi = pool_.size() - 1;
  // The generator fixes every base below its level, so it can only move other
  // points of those orbits; inactive shallow levels stay inactive.
  for (std::size_t l = 0; l < level; ++l) {
    if (!levels_[l].active) continue;
    extend_orbit(l, gi);
    dirty_.insert(l);
  }
  if (!levels_[level].active) activate(level);
  extend_orbit(level, gi);
  dirty_.insert(level);
}

void StabilizerChain::process_new_pairs(std::size_t l) {
  Level& lv = levels_[l];
  if (!lv.active) return;
  lv.watermark.resize(pool_.size(), 0);
  const std::size_t pool_count = pool_.size();
  const std::size_t orbit_count = lv.orbit.size();
  for (std::size_t gi = 0; gi < pool_count; ++gi) {
    if (pool_level_[gi] < l) continue;
    const std::size_t start = lv.watermark[gi];
    if (start >= orbit_count) continue;
    // insert_gen below can reallocate pool_ and grow this orbit; anything
    // beyond the snapshot is picked up when the level is revisited.
    P g = pool_[gi];
    for (std::size_t idx = start; idx < orbit_count; ++idx) {
      std::uint32_t q = lv.orbit[idx];
      std::int32_t target = lv.slot[g[q]];
      assert(target >= 0);
      P s = mul(mul(lv.trans[idx], g), lv.trans_inv[static_cast<std::size_t>(target)]);
      if (is_identity_perm(s)) continue;
      auto [res, at] = sift(std::move(s), l + 1);
      if (at < degree_) insert_gen(std::move(res), at);
    }
    lv.watermark[gi] = orbit_count;
  }
}

void StabilizerChain::settle() {
  while (!dirty_.empty()) {
    auto it = std::prev(dirty_.end());
    std::size_t l = *it;
    dirty_.erase(it);
    process_new_pairs(l);
  }
}

bool StabilizerChain::add_generator(const P& g) {
  if (g.size() != degree_)
    throw Error("generator degree " + std::to_string(g.size()) +
                " does not match chain degree " + std::to_string(degree_));
  auto [res, at] = sift(g, 0);
  if (at == degree_) return false;
  insert_gen(std::move(res), at);
  settle();
  return true;
}

bool StabilizerChain::contains(const P& g) const {
  if (g.size() != degree_)
    throw Error("permutation degree " + std::to_string(g.size()) +
                " does not match chain degree " + std::to_string(degree_));
  return sift(g, 0).second == degree_;
}

mpz_class StabilizerChain::order() const {
  mpz_class r = 1;
  for (const Level& lv : levels_)
    if (lv.active) r *= static_cast<unsigned long>(lv.orbit.size());
  return r;
}

std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>>
StabilizerChain::orbit_shape() const {
  std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> out;
  for (std::size_t l = 0; l < degree_; ++l)
    if (levels_[l].active && levels_[l].orbit.size() > 1)
      out.emplace_back(static_cast<std::uint32_t>(l), levels_[l].orbit);
  return out;
}

LevelQuotient build_quotient(const TreeContext& ctx, int n) {
  std::uint64_t leaves = checked_leaf_count(ctx, n);
  Word wa(ctx), wb(ctx);
  wa.push(Gen::a);
  wb.push(Gen::b);
  LevelQuotient q{&ctx, n, level_perm(wa, n), level_perm(wb, n),
                  StabilizerChain(static_cast<std::size_t>(leaves))};
  q.chain.add_generator(q.gen_a.images);
  q.chain.add_generator(q.gen_b.images);
  return q;
}

LevelPermutation image_of(const LevelQuotient& q, const Word& w) {
  if (!same_degree(w.context(), *q.ctx)) throw MismatchedContextError();
  return level_perm(w, q.level);
}

bool contains(const LevelQuotient& q, const LevelPermutation& g) {
  if (g.level != q.level) throw MismatchedLevelError(g.level, q.level);
  return q.chain.contains(g.images);
}

int order_logp(const LevelQuotient& q) {
  return logp_exact(q.chain.order(), q.ctx->p());
}

mpz_class element_order_mod_level(const Word& w, int n) {
  LevelPermutation lp = level_perm(w, n);
  std::vector<char> seen(lp.images.size(), 0);
  mpz_class ord = 1;
  for (std::size_t i = 0; i < lp.images.size(); ++i) {
    if (seen[i]) continue;
    unsigned long len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = lp.images[j];
      ++len;
    }
    mpz_class c(len);
    mpz_lcm(ord.get_mpz_t(), ord.get_mpz_t(), c.get_mpz_t());
  }
  return ord;
}

SubgroupImage normal_closure(const LevelQuotient& q,
                             const std::vector<Word>& seeds, SubgroupTag tag) {
  SubgroupImage h{tag, q.level, StabilizerChain(q.chain.degree())};
  for (const Word& w : seeds) h.chain.add_generator(image_of(q, w).images);
  const P conj[4] = {q.gen_a.images, invert(q.gen_a.images), q.gen_b.images,
                     invert(q.gen_b.images)};
  P cinv[4];
  for (int k = 0; k < 4; ++k) cinv[k] = invert(conj[k]);
  // Conjugate every strong generator, including the ones this loop adds;
  // once the index catches up the subgroup is closed under conjugation.
  for (std::size_t i = 0; i < h.chain.generator_count(); ++i) {
    P s = h.chain.generator(i);
    for (int k = 0; k < 4; ++k) h.chain.add_generator(mul(mul(cinv[k], s), conj[k]));
  }
  return h;
}

SubgroupImage derived_image(const LevelQuotient& q) {
  Word wa(*q.ctx), wb(*q.ctx);
  wa.push(Gen::a);
  wb.push(Gen::b);
  return normal_closure(q, {commutator(wa, wb)}, SubgroupTag::derived);
}

SubgroupImage gamma3_image(const LevelQuotient& q) {
  Word wa(*q.ctx), wb(*q.ctx);
  wa.push(Gen::a);
  wb.push(Gen::b);
  Word c = commutator(wa, wb);
  return normal_closure(q, {commutator(c, wa), commutator(c, wb)},
                        SubgroupTag::gamma3);
}

bool contains(const SubgroupImage& h, const LevelPermutation& g) {
  if (g.level != h.level) throw MismatchedLevelError(g.level, h.level);
  return h.chain.contains(g.images);
}

mpz_class index_of(const LevelQuotient& q, const SubgroupImage& h) {
  mpz_class qo = q.chain.order(), ho = h.chain.order();
  if (!mpz_divisible_p(qo.get_mpz_t(), ho.get_mpz_t()))
    throw Error("subgroup order does not divide group order");
  return qo / ho;
}

int index_logp(const LevelQuotient& q, const SubgroupImage& h) {
  return logp_exact(index_of(q, h), q.ctx->p());
}

mpz_class order_mod(const SubgroupImage& h, const LevelPermutation& g, int p) {
  if (g.level != h.level) throw MismatchedLevelError(g.level, h.level);
  P cur = g.images;
  mpz_class ord = 1;
  std::size_t guard = 0;
  while (!h.chain.contains(cur)) {
    if (++guard > h.chain.degree() + 1)
      throw Error("runaway p-power loop in order_mod");
    P next = cur;
    for (int k = 1; k < p; ++k) next = mul(next, cur);
    cur = std::move(next);
    ord *= p;
  }
  return ord;
}

std::pair<mpz_class, mpz_class> abelian_invariants(
    const LevelQuotient& q, const SubgroupImage& derived) {
  int p = q.ctx->p();
  return {order_mod(derived, q.gen_a, p), order_mod(derived, q.gen_b, p)};
}

QuotientRecord quotient_record(const TreeContext& ctx, int n,
                               const mpz_class& expected_logp) {
  auto t0 = std::chrono::steady_clock::now();
  QuotientRecord r;
  r.p = ctx.p();
  r.n = n;
  LevelQuotient q = build_quotient(ctx, n);
  r.logp_order = order_logp(q);
  r.matches_formula = (mpz_class(r.logp_order) == expected_logp);
  SubgroupImage der = derived_image(q);
  r.derived_index_logp = index_logp(q, der);
  auto inv = abelian_invariants(q, der);
  r.abelian_a = inv.first;
  r.abelian_b = inv.second;
  SubgroupImage g3 = gamma3_image(q);
  r.gamma3_index_logp = index_logp(q, g3);
  Word wa(ctx), wb(ctx);
  wa.push(Gen::a);
  wb.push(Gen::b);
  r.comm_order_logp =
      logp_exact(order_mod(g3, image_of(q, commutator(wa, wb)), ctx.p()), ctx.p());
  r.wallclock_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return r;
}

}  // namespace basilica

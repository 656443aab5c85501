#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "basilica/element.hpp"

namespace basilica {

// Exact log_p of a positive integer that must be a p-power.
int logp_exact(const mpz_class& value, int p);

// Deterministic stabilizer chain on the points 0..degree-1 with the base
// fixed to 0, 1, 2, ... in that order.  Generators are added incrementally;
// after every add_generator call the chain is complete, so order() and
// contains() are exact.  Rebuilding with the same generator sequence yields
// bit-identical internals, which the tests rely on.
class StabilizerChain {
 public:
  using P = std::vector<std::uint32_t>;

  explicit StabilizerChain(std::size_t degree);

  // Returns true when the generated group grew.
  bool add_generator(const P& g);
  bool contains(const P& g) const;
  mpz_class order() const;

  std::size_t degree() const { return degree_; }
  std::size_t generator_count() const { return pool_.size(); }
  const P& generator(std::size_t i) const { return pool_[i]; }

  // (base point, orbit in discovery order) for every base with a nontrivial
  // orbit; used by determinism checks and diagnostics.
  std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>>
  orbit_shape() const;

 private:
  struct Level {
    bool active = false;
    std::vector<std::uint32_t> orbit;        // orbit[0] is the base point
    std::vector<std::int32_t> slot;          // point -> orbit index, -1 outside
    std::vector<P> trans, trans_inv;         // indexed like orbit
    std::vector<std::size_t> watermark;      // per pool gen: points processed
  };

  std::size_t degree_;
  std::vector<P> pool_;
  std::vector<std::size_t> pool_level_;  // first base point a generator moves
  std::vector<Level> levels_;
  std::set<std::size_t> dirty_;

  // Strips g through levels from..end; returns the level where it got stuck,
  // or degree() when it reduced to the identity.
  std::pair<P, std::size_t> sift(P g, std::size_t from) const;

  void activate(std::size_t l);
  void orbit_add_point(std::size_t l, std::uint32_t point, P rep);
  void extend_orbit(std::size_t l, std::size_t gen_index);
  void insert_gen(P g, std::size_t level);
  void process_new_pairs(std::size_t l);
  void settle();
};

// Finite quotient acting on the p^n leaves of level n.
struct LevelQuotient {
  const TreeContext* ctx;
  int level;
  LevelPermutation gen_a, gen_b;
  StabilizerChain chain;
};

LevelQuotient build_quotient(const TreeContext& ctx, int n);

LevelPermutation image_of(const LevelQuotient& q, const Word& w);
bool contains(const LevelQuotient& q, const LevelPermutation& g);
int order_logp(const LevelQuotient& q);

// Multiplicative order of the permutation induced on level n.
mpz_class element_order_mod_level(const Word& w, int n);

enum class SubgroupTag { derived, gamma3, custom };

struct SubgroupImage {
  SubgroupTag tag;
  int level;
  StabilizerChain chain;
};

// Smallest subgroup of the quotient containing the seed images and closed
// under conjugation by the generators of the quotient.
SubgroupImage normal_closure(const LevelQuotient& q,
                             const std::vector<Word>& seeds, SubgroupTag tag);
SubgroupImage derived_image(const LevelQuotient& q);
SubgroupImage gamma3_image(const LevelQuotient& q);

bool contains(const SubgroupImage& h, const LevelPermutation& g);
mpz_class index_of(const LevelQuotient& q, const SubgroupImage& h);
int index_logp(const LevelQuotient& q, const SubgroupImage& h);

// Smallest p-power p^j with g^(p^j) in h.
mpz_class order_mod(const SubgroupImage& h, const LevelPermutation& g, int p);

// Orders of the images of a and b in the abelianisation of the quotient.
std::pair<mpz_class, mpz_class> abelian_invariants(const LevelQuotient& q,
                                                   const SubgroupImage& derived);

// The whole battery for one (p, n), ready for serialisation.
struct QuotientRecord {
  int p = 0;
  int n = 0;
  int logp_order = 0;
  bool matches_formula = false;
  int derived_index_logp = 0;
  mpz_class abelian_a, abelian_b;
  int gamma3_index_logp = 0;
  int comm_order_logp = 0;  // order of [a,b] against the gamma3 image
  long long wallclock_ms = 0;
};

// expected_logp comes from the closed-form side; the record only stores
// whether the chain agreed with it.
QuotientRecord quotient_record(const TreeContext& ctx, int n,
                               const mpz_class& expected_logp);

}  // namespace basilica

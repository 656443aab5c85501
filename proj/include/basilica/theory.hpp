#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "basilica/element.hpp"
#include "basilica/wordprob.hpp"

namespace basilica {

// ceil(n/2); governs generator orders modulo level stabilizers.
int beta(int n);

// log_p of the index of the level-n stabilizer, closed form: with n = 2m+e,
// (p^(n+1) - p^(1+e)) / (p^2 - 1) + m + e.  logp_index_recurrence computes
// the same quantity via logp(n) = p*logp(n-1) - (p-1)(m+e-1) + 1; the two
// must agree everywhere.
mpz_class logp_index_formula(int p, int n);
mpz_class logp_index_recurrence(int p, int n);

// Same index inside the full group of p-adic automorphisms: (p^n - 1)/(p - 1).
mpz_class gamma_logp_index(int p, int n);

struct HausdorffEntry {
  int n = 0;
  mpz_class logp_g, logp_gamma;
  mpq_class ratio;  // exact
};

struct HausdorffSeries {
  int p = 0;
  std::vector<HausdorffEntry> entries;
  mpq_class limit;  // p/(p+1)
};

HausdorffSeries hausdorff_series(int p, int nmax);

// Substitution endomorphism of the free group on a, b.
struct Endomorphism {
  Word image_of_a, image_of_b;
};

// xi: a -> b^p, b -> a.
Endomorphism xi(const TreeContext& ctx);
// theta: a -> a^(b^p) * a, b -> b (conjugate first, then multiply).
Endomorphism theta(const TreeContext& ctx);
// The other reading of the exponent, a -> a * a^(b^p); kept around so the
// relator battery can show both substitution orders behave the same.
Endomorphism theta_alternative(const TreeContext& ctx);

Word apply(const Endomorphism& e, const Word& w);

// All xi^k(theta^m([a, a^(b^l)])) for 0 <= k <= kmax, 0 <= m <= mmax,
// 1 <= l <= p-1, enumerated with k outermost and l innermost.
std::vector<Word> relators(const TreeContext& ctx, int kmax, int mmax);
std::vector<Word> relators_with(const TreeContext& ctx, int kmax, int mmax,
                                const Endomorphism& th);

// Words with conventional names: c_i = [b^-1,a]^(b^-i) for 0 <= i <= p-2,
// followed by y_i = c_(i-1) * c_i^-1 for 1 <= i <= p-2.
struct NamedElement {
  std::string name;
  Word word;
};
std::vector<NamedElement> named_elements(const TreeContext& ctx);

struct SuiteItem {
  std::string id;
  std::string claim;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  int p = 0;
  std::vector<SuiteItem> items;
  long long wallclock_ms = 0;
  bool all_passed() const;
};

struct RelatorEntry {
  int k = 0, m = 0, l = 0;
  std::size_t length = 0;
  std::size_t states = 0;  // section-closure size
  bool trivial = false;
};

struct RelatorReport {
  int p = 0;
  int kmax = 0, mmax = 0;
  bool alternative_reading = false;
  std::vector<RelatorEntry> entries;
  bool all_trivial = false;
  long long wallclock_ms = 0;
};

RelatorReport verify_relators(const TreeContext& ctx, int kmax, int mmax,
                              std::size_t max_states = kDefaultStateCap);
// Same battery with theta_alternative, reported separately.
RelatorReport verify_relators_alternative(
    const TreeContext& ctx, int kmax, int mmax,
    std::size_t max_states = kDefaultStateCap);

// Checks the displayed wreath-recursion identities (generator tuples, b^p
// diagonal, c_i tuples and their product, deep commutator placement,
// diagonal sections, and the two section seeds used for amenability) up to
// the given depth.  Items record pass/fail individually; the suite never
// throws on a failed identity.
SuiteReport identity_suite(const TreeContext& ctx, int depth,
                           std::size_t max_states = kDefaultStateCap);

}  // namespace basilica

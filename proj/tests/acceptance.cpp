// End-to-end acceptance battery.  Each criterion prints one PASS/FAIL line
// with its wallclock; the process exits 0 only when every criterion holds.
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "basilica/element.hpp"
#include "basilica/errors.hpp"
#include "basilica/quotient.hpp"
#include "basilica/theory.hpp"
#include "basilica/wordprob.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace basilica;

namespace {

struct Grid {
  int p;
  int nmax;
};
const Grid kGrid[] = {{2, 9}, {3, 5}, {5, 3}};

int failures = 0;

void criterion(int idx, const std::string& label,
               const std::function<bool(std::string&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  std::printf("[%s] criterion %2d: %s (%lld ms)%s%s\n", ok ? "PASS" : "FAIL",
              idx, label.c_str(), ms, detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

mpz_class zp(int p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e));
  return r;
}

Word gen_word(const TreeContext& ctx, Gen g) {
  Word w(ctx);
  w.push(g);
  return w;
}

}  // namespace

int main() {
  criterion(1, "congruence-quotient orders equal the closed form on the grid",
            [](std::string& detail) {
              for (const Grid& g : kGrid) {
                TreeContext ctx(g.p);
                for (int n = 1; n <= g.nmax; ++n) {
                  if (mpz_class(order_logp(build_quotient(ctx, n))) !=
                      logp_index_formula(g.p, n)) {
                    detail = "p=" + std::to_string(g.p) +
                             " n=" + std::to_string(n);
                    return false;
                  }
                }
              }
              return true;
            });

  criterion(2, "generator orders modulo level stabilizers follow beta",
            [](std::string& detail) {
              for (const Grid& g : kGrid) {
                TreeContext ctx(g.p);
                Word a = gen_word(ctx, Gen::a), b = gen_word(ctx, Gen::b);
                for (int n = 1; n <= g.nmax; ++n) {
                  if (element_order_mod_level(a, n) != zp(g.p, beta(n - 1)) ||
                      element_order_mod_level(b, n) != zp(g.p, beta(n))) {
                    detail = "p=" + std::to_string(g.p) +
                             " n=" + std::to_string(n);
                    return false;
                  }
                }
              }
              return true;
            });

  criterion(3, "derived index p^n and abelian invariants on the grid",
            [](std::string& detail) {
              for (const Grid& g : kGrid) {
                TreeContext ctx(g.p);
                for (int n = 1; n <= g.nmax; ++n) {
                  LevelQuotient q = build_quotient(ctx, n);
                  SubgroupImage der = derived_image(q);
                  auto [oa, ob] = abelian_invariants(q, der);
                  if (index_logp(q, der) != n || oa != zp(g.p, beta(n - 1)) ||
                      ob != zp(g.p, beta(n))) {
                    detail = "p=" + std::to_string(g.p) +
                             " n=" + std::to_string(n);
                    return false;
                  }
                }
              }
              return true;
            });

  criterion(4, "order of [a,b] modulo the gamma3 image is at least p^beta(n-1)",
            [](std::string& detail) {
              for (const Grid& g : kGrid) {
                TreeContext ctx(g.p);
                Word c = commutator(gen_word(ctx, Gen::a), gen_word(ctx, Gen::b));
                for (int n = 1; n <= g.nmax; ++n) {
                  LevelQuotient q = build_quotient(ctx, n);
                  SubgroupImage g3 = gamma3_image(q);
                  if (order_mod(g3, image_of(q, c), g.p) <
                      zp(g.p, beta(n - 1))) {
                    detail = "p=" + std::to_string(g.p) +
                             " n=" + std::to_string(n);
                    return false;
                  }
                }
              }
              return true;
            });

  criterion(5, "dimension series converges and matches computed orders",
            [](std::string& detail) {
              for (int p : {2, 3, 5, 7}) {
                HausdorffSeries s = hausdorff_series(p, 40);
                mpq_class dev = s.entries.back().ratio - s.limit;
                if (dev < 0) dev = -dev;
                if (!(dev < mpq_class(1, 1000))) {
                  detail = "p=" + std::to_string(p) + " dev=" + dev.get_str();
                  return false;
                }
              }
              for (const Grid& g : kGrid) {
                TreeContext ctx(g.p);
                HausdorffSeries s = hausdorff_series(g.p, g.nmax);
                for (int n = 1; n <= g.nmax; ++n) {
                  mpq_class computed(
                      mpz_class(order_logp(build_quotient(ctx, n))),
                      gamma_logp_index(g.p, n));
                  computed.canonicalize();
                  if (computed != s.entries[n - 1].ratio) {
                    detail = "p=" + std::to_string(g.p) +
                             " n=" + std::to_string(n);
                    return false;
                  }
                }
              }
              return true;
            });

  criterion(6, "section lengths contract: ell_2 <= (2/3)|g|+1, and <= 2 at |g|=3",
            [](std::string& detail) {
              for (int p : {3, 2}) {
                TreeContext ctx(p);
                CheckReport r = contraction_audit(ctx, p == 2 ? 10 : 9);
                if (!r.passed) {
                  detail = "p=" + std::to_string(p);
                  if (!r.counterexamples.empty())
                    detail += " " + r.counterexamples.front();
                  return false;
                }
              }
              return true;
            });

  criterion(7, "solver verdicts agree with leaf permutations up to level 6",
            [](std::string& detail) {
              for (int p : {2, 3}) {
                TreeContext ctx(p);
                for (int len = 1; len <= 5; ++len) {
                  for (const Word& w :
                       testutil::reduced_words_of_length(ctx, len)) {
                    bool solver = is_trivial(w);
                    bool oracle_triv = oracle::trivial_up_to(ctx, w, 6);
                    if (solver != oracle_triv) {
                      detail = "p=" + std::to_string(p) + " w=" + w.str();
                      return false;
                    }
                    if (!solver) {
                      std::optional<int> sl = separating_level(w, 6);
                      if (!sl || *sl != oracle::separating_level(ctx, w, 6)) {
                        detail = "p=" + std::to_string(p) + " w=" + w.str() +
                                 " separating level mismatch";
                        return false;
                      }
                    }
                  }
                }
              }
              return true;
            });

  criterion(8, "all endomorphic-orbit relators up to k,m=3 are trivial",
            [](std::string& detail) {
              for (int p : {2, 3, 5}) {
                TreeContext ctx(p);
                RelatorReport r = verify_relators(ctx, 3, 3);
                if (!r.all_trivial) {
                  detail = "p=" + std::to_string(p);
                  return false;
                }
              }
              return true;
            });

  criterion(9, "structural identity suite passes at depth 4",
            [](std::string& detail) {
              for (int p : {2, 3, 5}) {
                TreeContext ctx(p);
                SuiteReport rep = identity_suite(ctx, 4);
                if (!rep.all_passed()) {
                  for (const SuiteItem& it : rep.items)
                    if (!it.passed)
                      detail += " p=" + std::to_string(p) + ":" + it.id;
                  return false;
                }
              }
              return true;
            });

  criterion(10, "positive words of length <= 10 are 2046 distinct elements",
            [](std::string& detail) {
              TreeContext ctx(3);
              CheckReport r = free_semigroup_check(ctx, 10);
              if (!r.passed) {
                for (const auto& [k, v] : r.stats)
                  detail += " " + k + "=" + std::to_string(v);
                return false;
              }
              for (const auto& [k, v] : r.stats)
                if (k == "distinct" && v != 2046) {
                  detail = "distinct=" + std::to_string(v);
                  return false;
                }
              return true;
            });

  criterion(11, "no nontrivial word of length <= 4 has torsion up to exponent 10",
            [](std::string& detail) {
              for (int p : {2, 3}) {
                TreeContext ctx(p);
                CheckReport r = torsion_spotcheck(ctx, 4, 10);
                if (!r.passed) {
                  detail = "p=" + std::to_string(p);
                  if (!r.counterexamples.empty())
                    detail += " " + r.counterexamples.front();
                  return false;
                }
              }
              return true;
            });

  if (failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", failures);
  return 1;
}

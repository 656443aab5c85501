#include "basilica/theory.hpp"

#include <chrono>

#include "basilica/errors.hpp"

namespace basilica {

namespace {

mpz_class zpow(int p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e));
  return r;
}

Word gw(const TreeContext& ctx, Gen g) {
  Word w(ctx);
  w.push(g);
  return w;
}

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

}  // namespace

int beta(int n) {
  if (n < 0) throw Error("beta expects n >= 0");
  return (n + 1) / 2;
}

mpz_class logp_index_formula(int p, int n) {
  if (n < 0) throw Error("level must be >= 0");
  int e = n % 2, m = n / 2;
  mpz_class t = zpow(p, n + 1) - zpow(p, 1 + e);
  mpz_class d = mpz_class(p) * p - 1;
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), t.get_mpz_t(), d.get_mpz_t());
  return q + m + e;
}

mpz_class logp_index_recurrence(int p, int n) {
  if (n < 0) throw Error("level must be >= 0");
  if (n == 0) return 0;
  mpz_class v = 1;
  for (int k = 2; k <= n; ++k) {
    int e = k % 2, m = k / 2;
    v = mpz_class(p) * v - mpz_class(p - 1) * (m + e - 1) + 1;
  }
  return v;
}

mpz_class gamma_logp_index(int p, int n) {
  if (n < 0) throw Error("level must be >= 0");
  mpz_class t = zpow(p, n) - 1;
  mpz_class q;
  mpz_divexact_ui(q.get_mpz_t(), t.get_mpz_t(),
                  static_cast<unsigned long>(p - 1));
  return q;
}

HausdorffSeries hausdorff_series(int p, int nmax) {
  if (nmax < 1) throw Error("series needs nmax >= 1");
  HausdorffSeries s;
  s.p = p;
  s.limit = mpq_class(p, p + 1);
  s.limit.canonicalize();
  for (int n = 1; n <= nmax; ++n) {
    HausdorffEntry e;
    e.n = n;
    e.logp_g = logp_index_formula(p, n);
    e.logp_gamma = gamma_logp_index(p, n);
    e.ratio = mpq_class(e.logp_g, e.logp_gamma);
    e.ratio.canonicalize();
    s.entries.push_back(std::move(e));
  }
  return s;
}

Endomorphism xi(const TreeContext& ctx) {
  return {power(gw(ctx, Gen::b), ctx.p()), gw(ctx, Gen::a)};
}

Endomorphism theta(const TreeContext& ctx) {
  Word a = gw(ctx, Gen::a), b = gw(ctx, Gen::b);
  return {multiply(conjugate(a, power(b, ctx.p())), a), b};
}

Endomorphism theta_alternative(const TreeContext& ctx) {
  Word a = gw(ctx, Gen::a), b = gw(ctx, Gen::b);
  return {multiply(a, conjugate(a, power(b, ctx.p()))), b};
}

Word apply(const Endomorphism& e, const Word& w) {
  Word out(w.context());
  Word inv_a = inverse(e.image_of_a), inv_b = inverse(e.image_of_b);
  for (Gen g : w.letters()) {
    switch (g) {
      case Gen::a: out.append(e.image_of_a); break;
      case Gen::A: out.append(inv_a); break;
      case Gen::b: out.append(e.image_of_b); break;
      case Gen::B: out.append(inv_b); break;
    }
  }
  return out;
}

std::vector<Word> relators_with(const TreeContext& ctx, int kmax, int mmax,
                                const Endomorphism& th) {
  if (kmax < 0 || mmax < 0) throw Error("relator bounds must be >= 0");
  Endomorphism x = xi(ctx);
  Word a = gw(ctx, Gen::a), b = gw(ctx, Gen::b);
  std::vector<Word> out;
  for (int k = 0; k <= kmax; ++k)
    for (int m = 0; m <= mmax; ++m)
      for (int l = 1; l <= ctx.p() - 1; ++l) {
        Word r = commutator(a, conjugate(a, power(b, l)));
        for (int i = 0; i < m; ++i) r = apply(th, r);
        for (int i = 0; i < k; ++i) r = apply(x, r);
        out.push_back(std::move(r));
      }
  return out;
}

std::vector<Word> relators(const TreeContext& ctx, int kmax, int mmax) {
  return relators_with(ctx, kmax, mmax, theta(ctx));
}

std::vector<NamedElement> named_elements(const TreeContext& ctx) {
  Word a = gw(ctx, Gen::a), b = gw(ctx, Gen::b);
  Word base = commutator(inverse(b), a);
  std::vector<NamedElement> out;
  for (int i = 0; i <= ctx.p() - 2; ++i)
    out.push_back({"c_" + std::to_string(i), conjugate(base, power(b, -i))});
  for (int i = 1; i <= ctx.p() - 2; ++i)
    out.push_back({"y_" + std::to_string(i),
                   multiply(out[i - 1].word, inverse(out[i].word))});
  return out;
}

bool SuiteReport::all_passed() const {
  for (const SuiteItem& it : items)
    if (!it.passed) return false;
  return true;
}

namespace {

RelatorReport run_relators(const TreeContext& ctx, int kmax, int mmax,
                           const Endomorphism& th, bool alternative,
                           std::size_t max_states) {
  Stopwatch sw;
  RelatorReport rep;
  rep.p = ctx.p();
  rep.kmax = kmax;
  rep.mmax = mmax;
  rep.alternative_reading = alternative;
  rep.all_trivial = true;
  int idx = 0;
  std::vector<Word> rs = relators_with(ctx, kmax, mmax, th);
  for (int k = 0; k <= kmax; ++k)
    for (int m = 0; m <= mmax; ++m)
      for (int l = 1; l <= ctx.p() - 1; ++l) {
        const Word& r = rs[idx++];
        SectionAutomaton aut = SectionAutomaton::build(r, max_states);
        RelatorEntry e{k, m, l, static_cast<std::size_t>(r.length()),
                       aut.size(), aut.all_roots_trivial()};
        rep.all_trivial = rep.all_trivial && e.trivial;
        rep.entries.push_back(e);
      }
  rep.wallclock_ms = sw.ms();
  return rep;
}

}  // namespace

RelatorReport verify_relators(const TreeContext& ctx, int kmax, int mmax,
                              std::size_t max_states) {
  return run_relators(ctx, kmax, mmax, theta(ctx), false, max_states);
}

RelatorReport verify_relators_alternative(const TreeContext& ctx, int kmax,
                                          int mmax, std::size_t max_states) {
  return run_relators(ctx, kmax, mmax, theta_alternative(ctx), true,
                      max_states);
}

SuiteReport identity_suite(const TreeContext& ctx, int depth,
                           std::size_t max_states) {
  Stopwatch sw;
  const int p = ctx.p();
  SuiteReport rep;
  rep.suite = "identities";
  rep.p = p;

  Word a = gw(ctx, Gen::a), b = gw(ctx, Gen::b);
  Word one(ctx);
  auto eq = [&](const Word& u, const Word& v) {
    return equals(u, v, max_states);
  };
  auto add = [&](std::string id, std::string claim, bool ok,
                 std::string detail = "") {
    rep.items.push_back(
        {std::move(id), std::move(claim), ok, std::move(detail)});
  };

  // (1) generator tuples
  {
    Decomposition da = decompose(a), db = decompose(b);
    bool ok = da.root.is_identity() && root_exponent(b) == 1;
    for (int i = 1; i <= p - 1; ++i) {
      ok = ok && eq(da.sections[i - 1], one) && eq(db.sections[i - 1], one);
    }
    ok = ok && eq(da.sections[p - 1], b) && eq(db.sections[p - 1], a);
    add("generator-tuples", "psi(a)=(1,...,1,b) and psi(b)=(1,...,1,a)sigma",
        ok);
  }

  // (2) b^p is the diagonal of a
  {
    Decomposition d = decompose(power(b, p));
    bool ok = d.root.is_identity();
    for (int i = 1; i <= p; ++i) ok = ok && eq(d.sections[i - 1], a);
    add("b-power-diagonal", "psi(b^p)=(a,...,a)", ok);
  }

  // (3) the left-normed commutator [b,a,a] dies
  add("bracket-baa", "[b,a,a]=1",
      is_trivial(commutator(commutator(b, a), a), max_states));

  // (4) conjugates of [b^-1,a] produce the c_i tuples
  {
    bool ok = true;
    std::string detail;
    for (int i = 0; i <= p - 2; ++i) {
      Word ci = conjugate(commutator(inverse(b), a), power(b, -i));
      Decomposition d = decompose(ci);
      bool here = d.root.is_identity();
      for (int pos = 1; pos <= p; ++pos) {
        const Word& got = d.sections[pos - 1];
        if (pos == p - i - 1)
          here = here && eq(got, inverse(b));
        else if (pos == p - i)
          here = here && eq(got, b);
        else
          here = here && eq(got, one);
      }
      if (!here) detail += (detail.empty() ? "i=" : ", i=") + std::to_string(i);
      ok = ok && here;
    }
    add("c-element-tuples",
        "psi([b^-1,a]^(b^-i)) = (1,...,1,b^-1,b,1,...(i)...,1)", ok, detail);
  }

  // (5) product of all c_i
  {
    Word prod(ctx);
    for (int i = 0; i <= p - 2; ++i)
      prod.append(conjugate(commutator(inverse(b), a), power(b, -i)));
    Decomposition d = decompose(prod);
    bool ok = d.root.is_identity() && eq(d.sections[0], inverse(b)) &&
              eq(d.sections[p - 1], b);
    for (int pos = 2; pos <= p - 1; ++pos) ok = ok && eq(d.sections[pos - 1], one);
    add("c-product", "c_0 c_1 ... c_(p-2) = (b^-1,1,...,1,b)", ok);
  }

  // (6) [b^p, a] lands in the last coordinate as [a,b]
  {
    Decomposition d = decompose(commutator(power(b, p), a));
    bool ok = d.root.is_identity();
    for (int pos = 1; pos <= p - 1; ++pos) ok = ok && eq(d.sections[pos - 1], one);
    ok = ok && eq(d.sections[p - 1], commutator(a, b));
    add("bracket-bp-a", "psi([b^p,a]) = (1,...,1,[a,b])", ok);
  }

  // (7) level-n commutator sits at the last level-n vertex as [b,a]
  {
    bool ok = true;
    std::string detail;
    Word ba = commutator(b, a);
    for (int n = 1; n <= depth; ++n) {
      Word g = (n % 2 == 0)
                   ? commutator(power(b, zpow(p, n / 2).get_si()),
                                power(a, zpow(p, n / 2).get_si()))
                   : commutator(power(a, zpow(p, (n - 1) / 2).get_si()),
                                power(b, zpow(p, (n + 1) / 2).get_si()));
      bool here = level_perm(g, n).is_identity();
      std::vector<Vertex> vs = vertices_at_level(ctx, n);
      for (std::size_t i = 0; here && i < vs.size(); ++i) {
        Word sec = section(g, vs[i]);
        here = (i + 1 == vs.size()) ? eq(sec, ba) : is_trivial(sec, max_states);
      }
      if (!here) detail += (detail.empty() ? "n=" : ", n=") + std::to_string(n);
      ok = ok && here;
    }
    add("deep-last-commutator",
        "psi_n of the level-n power commutator is (1,...,1,[b,a])", ok,
        detail);
  }

  // (8) sections along the rightmost path swap the generators
  {
    bool ok = true;
    std::string detail;
    for (int n = 1; 2 * n <= depth; ++n) {
      Vertex u_odd(ctx, std::vector<int>(2 * n - 1, p));
      Vertex u_even(ctx, std::vector<int>(2 * n, p));
      Word bpn = power(b, zpow(p, n).get_si());
      Word apn1 = power(a, zpow(p, n - 1).get_si());
      Word apn = power(a, zpow(p, n).get_si());
      bool here = act(bpn, u_odd) == u_odd && eq(section(bpn, u_odd), a) &&
                  act(apn1, u_odd) == u_odd && eq(section(apn1, u_odd), b) &&
                  act(bpn, u_even) == u_even && eq(section(bpn, u_even), b) &&
                  act(apn, u_even) == u_even && eq(section(apn, u_even), a);
      if (!here) detail += (detail.empty() ? "n=" : ", n=") + std::to_string(n);
      ok = ok && here;
    }
    add("rightmost-path-sections",
        "sections of b^(p^n), a^(p^(n-1)), a^(p^n) along p,p,...,p alternate "
        "between a and b",
        ok, detail);
  }

  // (9) the two tuples behind the amenability argument
  {
    Decomposition d1 = decompose(power(commutator(inverse(b), a), p));
    bool ok1 = d1.root.is_identity();
    for (int pos = 1; pos <= p - 2; ++pos)
      ok1 = ok1 && eq(d1.sections[pos - 1], one);
    if (p >= 2) {
      ok1 = ok1 && eq(d1.sections[p - 2], power(b, -p)) &&
            eq(d1.sections[p - 1], power(b, p));
    }
    Decomposition d2 = decompose(commutator(a, power(b, p)));
    bool ok2 = d2.root.is_identity();
    for (int pos = 1; pos <= p - 1; ++pos)
      ok2 = ok2 && eq(d2.sections[pos - 1], one);
    ok2 = ok2 && eq(d2.sections[p - 1], commutator(b, a));
    add("amenability-seeds",
        "psi([b^-1,a]^p) = (1,...,1,b^-p,b^p) and psi([a,b^p]) = "
        "(1,...,1,[b,a])",
        ok1 && ok2);
  }

  rep.wallclock_ms = sw.ms();
  return rep;
}

}  // namespace basilica

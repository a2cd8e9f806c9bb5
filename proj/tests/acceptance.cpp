// One pass/fail line per acceptance criterion; exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "prismslice/chart.hpp"
#include "prismslice/cli.hpp"
#include "prismslice/gold.hpp"
#include "prismslice/mackey.hpp"
#include "prismslice/prism.hpp"
#include "prismslice/reps.hpp"
#include "prismslice/slice.hpp"
#include "prismslice/witt.hpp"

using namespace prismslice;

namespace {

// Collects the first failure of a criterion.
struct Check {
  std::string failure;
  void operator()(bool cond, const std::string& what) {
    if (!cond && failure.empty()) failure = what;
  }
  bool ok() const { return failure.empty(); }
};

std::string str(std::initializer_list<std::pair<const char*, std::int64_t>> kv) {
  std::ostringstream s;
  for (const auto& [k, v] : kv) s << " " << k << "=" << v;
  return s.str();
}

std::vector<u64> range(u64 a, u64 b) {
  std::vector<u64> v(b - a);
  std::iota(v.begin(), v.end(), a);
  return v;
}

std::vector<Model> all_models(u64 p) {
  return {Model::q_crystalline(p), Model::perfect_q(p, 1), Model::crystalline(p), Model::kisin(p)};
}

// --------------------------------------------------------------------------

void legendre(Check& c) {
  for (u64 p : {2, 3, 5, 7}) {
    oracle::BigInt f = 1;
    unsigned counted = 0;
    for (unsigned n = 1; n <= 2000; ++n) {
      f *= n;
      counted += oracle::valuation_of(n, p);
      c(legendre_valuation(p, n) == counted, str({{"p", p}, {"n", n}}));
      if (n % 97 == 0 || n == 2000) c(legendre_valuation(p, n) == oracle::valuation_of(f, p), str({{"p", p}, {"n!", n}}));
    }
  }
}

void q_legendre(Check& c) {
  for (u64 p : {2, 3})
    for (u64 n = 1; n <= 40; ++n) {
      auto r = q_legendre_report(p, n, 24);
      c(r.phi_form && r.bracket_form && is_unit(r.unit), str({{"p", p}, {"n", n}}));
    }
}

void reps(Check& c) {
  for (u64 p : {2, 3, 5})
    for (u64 n = 0; n <= 500; ++n) {
      c(brace_rep(p, n) == p_typify(p, range(1, n + 1)), "brace" + str({{"p", p}, {"n", n}}));
      c(bracket_rep(p, n) == p_typify(p, range(0, n)), "bracket" + str({{"p", p}, {"n", n}}));
    }
  using R = PTypicalRep;
  c(brace_rep(3, 4) == R::lambda(0, 3) + R::lambda(1), "{4} at p=3");
  c(bracket_rep(3, 9) == R::lambda(0, 6) + R::lambda(1, 2) + R::lambda_inf(), "[9] at p=3");
}

template <class W, class V>
bool ring_axioms(const W& Wc, const V& a, const V& b, const V& d) {
  return Wc.eq(Wc.add(a, b), Wc.add(b, a)) && Wc.eq(Wc.mul(a, b), Wc.mul(b, a)) &&
         Wc.eq(Wc.add(Wc.add(a, b), d), Wc.add(a, Wc.add(b, d))) &&
         Wc.eq(Wc.mul(Wc.mul(a, b), d), Wc.mul(a, Wc.mul(b, d))) &&
         Wc.eq(Wc.mul(a, Wc.add(b, d)), Wc.add(Wc.mul(a, b), Wc.mul(a, d)));
}

void witt(Check& c) {
  for (u64 p : {2, 3}) {
    ZmodRing R(p, 2);
    WittCalc<ZmodRing> W(R, p);
    std::vector<WittVector<ZmodRing>> all;
    for (u64 x = 0; x < R.mod; ++x)
      for (u64 y = 0; y < R.mod; ++y) all.push_back({{x, y}});
    for (const auto& a : all) {
      c(W.eq(W.add(a, W.zero(2)), a) && W.eq(W.mul(a, W.one(2)), a) && W.eq(W.add(a, W.neg(a)), W.zero(2)),
        "identities over W_2(Z/p^2)");
      for (const auto& b : all)
        for (const auto& d : all)
          if (!ring_axioms(W, a, b, d)) {
            c(false, "ring axioms over W_2(Z/p^2)" + str({{"p", p}}));
            goto next_prime;
          }
    }
  next_prime:;
  }
  {
    ZmodRing R(3, 2);
    WittCalc<ZmodRing> W(R, 3);
    for (u64 a = 0; a < 9; ++a)
      for (u64 b = 0; b < 9; ++b) {
        WittVector<ZmodRing> x{{a, b}};
        c(W.eq(W.frobenius_F(W.verschiebung_V(x)), W.add(x, W.add(x, x))), "F V = 3 on W_2(Z/9)");
      }
  }
  std::mt19937_64 rng(7);
  {
    IntegerRing Z;
    for (u64 p : {2, 3, 5}) {
      WittCalc<IntegerRing> W(Z, p);
      for (int s = 0; s < 50; ++s) {
        WittVector<IntegerRing> a;
        for (unsigned i = 0; i < 4; ++i) a.x.push_back(BigInt(std::int64_t(rng() % 201) - 100));
        c(W.eq(W.from_ghost(W.ghost(a)), a), "ghost round trip" + str({{"p", p}}));
      }
    }
  }
  int pairs = 0;
  for (u64 p : {2, 3}) {
    FpPolyRing F(p, 5);
    WittCalc<FpPolyRing> W(F, p);
    auto rnd = [&](std::size_t n) {
      WittVector<FpPolyRing> w;
      for (std::size_t i = 0; i < n; ++i) {
        auto e = F.zero();
        for (auto& x : e) x = rng() % p;
        w.x.push_back(e);
      }
      return w;
    };
    for (std::size_t n : {2, 3})
      for (int s = 0; s < 60; ++s, ++pairs) {
        auto a = rnd(n), b = rnd(n);
        c(W.eq(W.norm(W.mul(a, b)), W.mul(W.norm(a), W.norm(b))), "norm multiplicativity" + str({{"p", p}}));
      }
  }
  c(pairs >= 200, "fewer than 200 norm pairs");
  for (u64 p : {2, 3}) {
    Model m = Model::perfect_q(p, 1, {p == 2 ? 128u : 192u, 20});
    Prism P = make_prism(m);
    auto U = extended_units(P, 2, 2);
    std::vector<LocalQElem> xs{q_integer(m, 5, 1), q_power(m, 2) - one(m),
                               one(m) + ring_scale(variable(m), 3) + ring_pow(variable(m), 2)};
    for (unsigned n = 1; n <= 2; ++n)
      for (const auto& x : xs) {
        auto rep = norm_lift_report(P, n, borger_norm_lift(P, U, n, x), x);
        c(rep.witt_diagram.value_or(false) && rep.ok(), "norm-lift diagram" + str({{"p", p}, {"n", n}}));
      }
  }
}

void prisms(Check& c) {
  for (u64 p : {2, 3})
    for (const Model& base : all_models(p)) {
      Model m = unit_table_model(base, 4, 4);
      Prism P = make_prism(m);
      c(is_unit(prism_condition(P)), "prism condition " + m.name());
      if (m.kind == ModelKind::QCrystalline)
        c(congruent_mod(P.delta_unit, one(m), orientation(m)), "delta([p]_q) = 1 mod [p]_q, p=" + std::to_string(p));
      auto U = extended_units(P, 4, 4);
      for (unsigned i = 1; i <= 4; ++i)
        for (unsigned j = i; j <= 4; ++j)
          c(is_unit(U.at(i, j)) && verify_congruence(P, U, i, j), "unit table " + m.name() + str({{"i", i}, {"j", j}}));
      for (unsigned i = 1; i <= 3; ++i)
        for (unsigned j = i; j <= 4; ++j)
          for (unsigned r = i; r <= 4; ++r)
            c(corollary_congruence(P, i, j, r), "corollary " + m.name() + str({{"i", i}, {"j", j}, {"r", r}}));
    }
}

void warning(Check& c) {
  for (auto [a, b] : {std::pair<u64, u64>{1, 0}, {2, 1}, {3, 2}, {5, 1}})
    c(warning_identity_check(a, b), str({{"a", a}, {"b", b}}));
}

unsigned crys_len(const CyclicAModule& m) { return m.crystalline_length(24); }

void slice_oracle(Check& c) {
  for (u64 p : {2, 3}) {
    auto crys = Model::crystalline(p);
    for (u64 n = 1; n <= 30; ++n)
      for (u64 i = 1; i <= n; ++i) {
        auto o = oracle_slice_homotopy(p, n, i, crys, 6);
        auto even = slice_homotopy_even(p, std::int64_t(n), std::int64_t(i));
        auto odd = slice_homotopy_odd(p, std::int64_t(n), std::int64_t(i));
        for (unsigned k = 0; k <= 6; ++k) {
          c(crys_len(o.even[k]) == crys_len(realize(even, k)), "even" + str({{"p", p}, {"n", n}, {"i", i}, {"k", k}}));
          c(crys_len(o.odd[k]) == crys_len(realize(odd, k)), "odd" + str({{"p", p}, {"n", n}, {"i", i}, {"k", k}}));
        }
      }
  }
  auto crys = Model::crystalline(3);
  std::vector<std::int64_t> vals;
  for (auto [n, i] : {std::pair<u64, u64>{4, 1}, {3, 2}, {6, 2}})
    vals.push_back(oracle_slice_homotopy(3, n, i, crys).multiplier.crystalline_valuation());
  c(vals == std::vector<std::int64_t>{1, 1, 2}, "proof multiplier valuations");
}

void filtration(Check& c) {
  for (u64 p : {2, 3})
    for (u64 i = 1; i <= 10; ++i)
      for (std::int64_t j = 1; j <= 10; ++j) {
        auto v = filtration_gen_even(p, i, j).crystalline_valuation();
        auto prev = filtration_gen_even(p, i, j - 1).crystalline_valuation();
        c(u64(v) == slice_f(p, i + u64(j), i), "slice_f" + str({{"p", p}, {"i", i}, {"j", j}}));
        c(v - prev == std::int64_t(slice_h(p, i + u64(j) - 1, i)) + 1, "slice_h" + str({{"p", p}, {"i", i}, {"j", j}}));
      }
}

void gold(Check& c) {
  for (u64 p : {2, 3})
    for (u64 k = 1; k <= 12; ++k) {
      auto rep = brace_rep(p, k);
      auto r = reduce_ratio(GoldMonomial::sigma(std::int64_t(k)) * GoldMonomial::a_of(rep), GoldMonomial::u_of(rep));
      c(r && *r == AtomProduct::factorial(p, p * k), "atoms" + str({{"p", p}, {"k", k}}));
      c(key_identity(p, k), "ring" + str({{"p", p}, {"k", k}}));
    }
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    GoldMonomial m2 = GoldMonomial::sigma(std::int64_t(rng() % 5)), shift;
    for (unsigned i = 0; i < 4; ++i) m2 = m2 * GoldMonomial::a(i, std::int64_t(rng() % 4)) * GoldMonomial::u(i, std::int64_t(rng() % 4));
    for (unsigned j = 0; j < 4; ++j) {
      std::int64_t k = std::int64_t(rng() % 4);
      shift = shift * GoldMonomial::sigma(k) * GoldMonomial::a(j, k) * GoldMonomial::u(j, -k);
    }
    GoldMonomial m1 = m2 * shift;
    auto fixed = rewrite_ratio(m1, m2).coefficient;
    c(rewrite_ratio(m1, m2, &rng).coefficient == fixed, "confluence order " + std::to_string(t));
  }
}

void mackey(Check& c) {
  for (u64 p : {2, 3})
    for (const Model& base : {Model::crystalline(p), Model::perfect_q(p, 1)}) {
      auto R2 = make_mackey_ring(base, 2);
      for (const auto& s : example_sequences(p)) {
        auto rep = exactness_report(s.A, s.B, s.C, s.f, s.g, R2);
        c(rep.ok, s.name + " " + base.name() + ": " + rep.detail);
      }
      auto R4 = make_mackey_ring(base, 4);
      for (unsigned n = 1; n <= 4; ++n)
        c(axiom_check(witt_tower(p, n), R4), "axiom " + base.name() + str({{"n", n}}));
    }
}

std::string cli_bytes(std::vector<std::string> args) {
  args.insert(args.begin(), "prismslice");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  run_cli(int(argv.size()), argv.data(), out, err);
  return out.str();
}

void charts(Check& c) {
  for (u64 p : {2, 3}) {
    auto q = Model::perfect_q(p, 1);
    for (const auto& e : e2_page(p, RingKind::Torsionfree, 40, 40).entries) {
      c(e.x % 2 == 0 && (e.x + e.y) % 2 == 0, "odd column" + str({{"p", p}, {"x", e.x}, {"y", e.y}}));
      std::int64_t i = e.x / 2, n = (e.x + e.y) / 2;
      c(e.mackey == slice_homotopy_even(p, n, i), "descriptor" + str({{"p", p}, {"x", e.x}, {"y", e.y}}));
      if (0 < i && i < n && n <= 20) {
        // atom-level collapse: the torsionfree four-term sequence has no odd part
        auto o = oracle_slice_homotopy(p, u64(n), u64(i), q, 4);
        for (unsigned k = 0; k <= 4; ++k)
          c(o.odd[k].is_zero() && o.even[k] == realize(e.mackey, k), "collapse" + str({{"p", p}, {"n", n}, {"i", i}}));
      }
    }
    for (const auto& e : einf_page(p, 20, 20).entries) {
      if (e.x == 0) continue;
      u64 i = u64(e.x / 2), n = u64((e.x + e.y) / 2);
      std::int64_t j = e.y / 2;
      c(e.fh && e.fh->first == slice_f(p, n, i) && e.fh->second == slice_h(p, n, i), "(f,h)" + str({{"x", e.x}, {"y", e.y}}));
      auto f0 = filtration_gen_even(p, i, j).crystalline_valuation();
      auto f1 = filtration_gen_even(p, i, j + 1).crystalline_valuation();
      c(e.fh && std::int64_t(e.fh->first) == f0 && f1 - f0 == std::int64_t(e.fh->second) + 1,
        "(f,h) vs filtration" + str({{"x", e.x}, {"y", e.y}}));
      for (unsigned k = 0; k <= 8; ++k) {
        auto clip = [&](std::int64_t v) { return std::clamp<std::int64_t>(std::int64_t(k) + 1 - v, 0, k + 1); };
        c(std::int64_t(crys_len(realize(e.mackey, k))) == clip(f0) - clip(f1), "E-infinity level" + str({{"k", k}}));
      }
    }
  }
  for (auto args : std::vector<std::vector<std::string>>{{"rsss", "--p", "3", "--ring", "fp", "--page", "einf", "--max-col", "20"},
                                                         {"rsss", "--p", "2", "--ring", "torsionfree", "--page", "e2"},
                                                         {"legendre", "--p", "2", "--n-max", "64", "--format", "json"}}) {
    auto a = cli_bytes(args), b = cli_bytes(args);
    c(!a.empty() && a == b, "nondeterministic output for " + args[0]);
  }
  c(chart_json(einf_page(3, 20, 20)).dump(2) == chart_json(einf_page(3, 20, 20)).dump(2), "chart_json");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {"Legendre valuation against factorials, p in {2,3,5,7}, n <= 2000", legendre},
      {"q-Legendre product forms associate to [n]_q!, p in {2,3}, n <= 40", q_legendre},
      {"brace/bracket decompositions against p_typify, n <= 500", reps},
      {"Witt calculus: axioms, F V = p, ghost round trip, norm, norm-lift diagram", witt},
      {"prisms: condition, unit table i <= j <= 4, corollary i <= 3", prisms},
      {"Warning identity at p = 3", warning},
      {"slice homotopy closed forms against the oracle, n <= 30, levels <= 6", slice_oracle},
      {"filtration valuations against slice_f and slice_h", filtration},
      {"gold key identity k <= 12 and rewrite confluence", gold},
      {"Mackey exactness at C_{p^2} and res tr = p to level 4", mackey},
      {"charts: torsionfree collapse, E-infinity (f,h), deterministic JSON", charts},
  };
  int failed = 0, idx = 0;
  for (const auto& cr : criteria) {
    ++idx;
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60) c(false, "exceeded 60 s");
    std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << std::setw(2) << idx << ": " << cr.name << " ("
              << std::fixed << std::setprecision(2) << secs << " s)";
    if (!c.ok()) std::cout << " -- first failure:" << c.failure;
    std::cout << std::endl;
    failed += !c.ok();
  }
  std::cout << (failed ? "FAILED " : "all ") << (failed ? std::to_string(failed) + " of " : "") << criteria.size()
            << " criteria" << (failed ? "" : " passed") << std::endl;
  return failed ? 1 : 0;
}

#include <doctest.h>

#include <random>

#include "prismslice/witt.hpp"

using namespace prismslice;

namespace {

using ZW = WittCalc<IntegerRing>;

std::vector<BigInt> big(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (long x : v) out.push_back(x);
  return out;
}

// Reference: lift to Z[x]/(x^m), combine ghost components, invert, reduce mod p.
template <class Op>
WittVector<FpPolyRing> via_ghost(const FpPolyRing& F, u64 p, const WittVector<FpPolyRing>& a,
                                 const WittVector<FpPolyRing>& b, Op op) {
  IntPolyRing Z(F.m);
  WittCalc<IntPolyRing> W(Z, p);
  auto lift = [&](const WittVector<FpPolyRing>& v) {
    WittVector<IntPolyRing> out;
    for (const auto& c : v.x) {
      IntPolyRing::Elem e(F.m);
      for (unsigned i = 0; i < F.m; ++i) e[i] = BigInt(c[i]);
      out.x.push_back(e);
    }
    return out;
  };
  auto ga = W.ghost(lift(a)), gb = W.ghost(lift(b));
  std::vector<IntPolyRing::Elem> g;
  for (std::size_t i = 0; i < ga.size(); ++i) g.push_back(op(Z, ga[i], gb[i]));
  auto x = W.from_ghost(g);
  WittVector<FpPolyRing> out;
  for (const auto& c : x.x) {
    FpPolyRing::Elem e(F.m);
    for (unsigned i = 0; i < F.m; ++i) {
      BigInt r = c[i] % p;
      if (r < 0) r += p;
      e[i] = static_cast<u64>(r);
    }
    out.x.push_back(e);
  }
  return out;
}

WittVector<FpPolyRing> random_fp(const FpPolyRing& F, std::size_t n, std::mt19937_64& rng) {
  WittVector<FpPolyRing> w;
  for (std::size_t i = 0; i < n; ++i) {
    FpPolyRing::Elem e(F.m);
    for (auto& c : e) c = rng() % F.p;
    w.x.push_back(e);
  }
  return w;
}

}  // namespace

TEST_CASE("ghost and from_ghost examples") {
  IntegerRing Z;
  ZW W(Z, 2);
  CHECK(W.ghost({big({5})}) == big({5}));
  CHECK(W.ghost({big({3, 1})}) == big({3, 11}));
  CHECK(W.ghost(W.teichmuller(3, 4)) == big({3, 9, 81, 6561}));
  CHECK(W.eq(W.from_ghost(big({3, 11})), {big({3, 1})}));
  CHECK(W.eq(W.from_ghost(big({7, 49})), {big({7, 0})}));
  CHECK_THROWS_AS(W.from_ghost(big({0, 1})), NotInImage);
}

TEST_CASE("addition and multiplication examples") {
  IntegerRing Z;
  ZW W(Z, 2);
  WittVector<IntegerRing> x{big({5, -3, 2})};
  CHECK(W.eq(W.add(x, W.zero(3)), x));
  CHECK(W.eq(W.mul(W.teichmuller(3, 3), W.teichmuller(5, 3)), W.teichmuller(15, 3)));
  CHECK(W.eq(W.add({big({1, 0})}, {big({1, 0})}), {big({2, -1})}));
  CHECK(W.eq(W.verschiebung_V(W.one(1)), {big({0, 1})}));
  CHECK(W.ghost(W.verschiebung_V(W.one(1))) == big({0, 2}));
  CHECK(W.eq(W.restriction_R(W.teichmuller(7, 3)), W.teichmuller(7, 2)));
}

TEST_CASE("universal polynomials agree with ghost arithmetic over the integers") {
  IntegerRing Z;
  std::mt19937_64 rng(3);
  for (u64 p : {2, 3}) {
    ZW W(Z, p);
    for (int s = 0; s < 30; ++s) {
      WittVector<IntegerRing> a, b;
      for (int i = 0; i < 3; ++i) {
        a.x.push_back(BigInt(long(rng() % 21) - 10));
        b.x.push_back(BigInt(long(rng() % 21) - 10));
      }
      auto ga = W.ghost(a), gb = W.ghost(b);
      std::vector<BigInt> gs, gp, gn;
      for (int i = 0; i < 3; ++i) {
        gs.push_back(ga[i] + gb[i]);
        gp.push_back(ga[i] * gb[i]);
        gn.push_back(-ga[i]);
      }
      CHECK(W.eq(W.add(a, b), W.from_ghost(gs)));
      CHECK(W.eq(W.mul(a, b), W.from_ghost(gp)));
      CHECK(W.eq(W.neg(a), W.from_ghost(gn)));
      CHECK(W.eq(W.from_ghost(W.ghost(a)), a));
      CHECK(W.ghost(W.from_ghost(ga)) == ga);
      auto gf = W.ghost(W.frobenius_F(a));
      CHECK(gf[0] == ga[1]);
      CHECK(gf[1] == ga[2]);
    }
  }
}

TEST_CASE("universal polynomials agree with the ghost oracle over F_p[x]/(x^4)") {
  std::mt19937_64 rng(17);
  for (u64 p : {2, 3}) {
    FpPolyRing F(p, 4);
    WittCalc<FpPolyRing> W(F, p);
    for (int s = 0; s < 25; ++s) {
      auto a = random_fp(F, 3, rng), b = random_fp(F, 3, rng);
      auto sum = via_ghost(F, p, a, b, [](const IntPolyRing& Z, const auto& x, const auto& y) { return Z.add(x, y); });
      auto prod = via_ghost(F, p, a, b, [](const IntPolyRing& Z, const auto& x, const auto& y) { return Z.mul(x, y); });
      CHECK(W.eq(W.add(a, b), sum));
      CHECK(W.eq(W.mul(a, b), prod));
    }
  }
}

TEST_CASE("ring axioms on random samples of W_3(F_p[x]/(x^4))") {
  std::mt19937_64 rng(23);
  for (u64 p : {2, 3}) {
    FpPolyRing F(p, 4);
    WittCalc<FpPolyRing> W(F, p);
    for (int s = 0; s < 40; ++s) {
      auto a = random_fp(F, 3, rng), b = random_fp(F, 3, rng), c = random_fp(F, 3, rng);
      CHECK(W.eq(W.add(a, b), W.add(b, a)));
      CHECK(W.eq(W.mul(a, b), W.mul(b, a)));
      CHECK(W.eq(W.add(W.add(a, b), c), W.add(a, W.add(b, c))));
      CHECK(W.eq(W.mul(W.mul(a, b), c), W.mul(a, W.mul(b, c))));
      CHECK(W.eq(W.mul(a, W.add(b, c)), W.add(W.mul(a, b), W.mul(a, c))));
      CHECK(W.eq(W.add(a, W.neg(a)), W.zero(3)));
      CHECK(W.eq(W.mul(a, W.one(3)), a));
      // over F_p-algebras F is the coordinatewise p-th power
      auto f = W.frobenius_F(a);
      for (int i = 0; i < 2; ++i) CHECK(F.eq(f.x[i], ring_power(F, a.x[i], p)));
      // Frobenius reciprocity
      auto x2 = random_fp(F, 2, rng);
      CHECK(W.eq(W.mul(W.verschiebung_V(x2), a), W.verschiebung_V(W.mul(x2, W.frobenius_F(a)))));
    }
  }
}

TEST_CASE("V and R relations") {
  IntegerRing Z;
  std::mt19937_64 rng(29);
  for (u64 p : {2, 3}) {
    ZW W(Z, p);
    for (int s = 0; s < 20; ++s) {
      WittVector<IntegerRing> a;
      for (int i = 0; i < 3; ++i) a.x.push_back(BigInt(long(rng() % 11) - 5));
      CHECK(W.eq(W.restriction_R(W.verschiebung_V(a)), W.verschiebung_V(W.restriction_R(a))));
      CHECK(W.eq(W.frobenius_F(W.verschiebung_V(a)), W.scale(std::int64_t(p), a)));
      CHECK(W.eq(W.restriction_R(W.frobenius_F(a)), W.frobenius_F(W.restriction_R(a))));
    }
  }
}

TEST_CASE("F o V = p exhaustively on W_2(Z/9)") {
  ZmodRing R(3, 2);
  WittCalc<ZmodRing> W(R, 3);
  for (u64 a = 0; a < 9; ++a)
    for (u64 b = 0; b < 9; ++b) {
      WittVector<ZmodRing> x{{a, b}};
      REQUIRE(W.eq(W.frobenius_F(W.verschiebung_V(x)), W.add(x, W.add(x, x))));
    }
}

TEST_CASE("norm examples") {
  IntegerRing Z;
  ZW W(Z, 2);
  CHECK(W.eq(W.norm({big({7})}), {big({7, 0})}));
  CHECK(W.eq(W.norm(W.one(3)), W.one(4)));
  for (long x0 = -3; x0 <= 3; ++x0)
    for (long x1 = -3; x1 <= 3; ++x1) CHECK(W.eq(W.norm({big({x0, x1})}), {big({x0, 0, x0 * x0 * x1 + x1 * x1})}));
  // the symbolic form
  const auto& N = universal_polys(2, WittOp::Norm, 2);
  REQUIRE(N.size() == 3);
  CHECK(N[1].terms.empty());
  CHECK(N[2].terms.size() == 2);
  ZmodRing Z64(2, 6);
  WittCalc<ZmodRing> W64(Z64, 2);
  CHECK(W64.eq(W64.norm({{3, 1}}), {{3, 0, 10}}));
  // ghost shape (w0, w0^p, w1^p, ...)
  ZW W3(Z, 3);
  WittVector<IntegerRing> x{big({2, -1, 4})};
  auto g = W3.ghost(x), gn = W3.ghost(W3.norm(x));
  CHECK(gn[0] == g[0]);
  CHECK(gn[1] == g[0] * g[0] * g[0]);
  CHECK(gn[3] == g[2] * g[2] * g[2]);
}

TEST_CASE("norm multiplicativity over F_p[x]/(x^5)") {
  std::mt19937_64 rng(31);
  for (u64 p : {2, 3}) {
    FpPolyRing F(p, 5);
    WittCalc<FpPolyRing> W(F, p);
    for (std::size_t n : {2, 3})
      for (int s = 0; s < 100; ++s) {
        auto a = random_fp(F, n, rng), b = random_fp(F, n, rng);
        REQUIRE(W.eq(W.norm(W.mul(a, b)), W.mul(W.norm(a), W.norm(b))));
      }
  }
}

TEST_CASE("cache bound") {
  CHECK_THROWS_AS(universal_polys(2, WittOp::Sum, kWittCacheBound + 1), DomainError);
  const auto& a = universal_polys(3, WittOp::Sum, 2);
  const auto& b = universal_polys(3, WittOp::Sum, 2);
  CHECK(&a == &b);
}

TEST_CASE("delta section") {
  Model c = Model::crystalline(3);
  std::vector<LocalQElem> consts;
  for (int v : {0, 1, 2, 5, 7, -4}) consts.push_back(constant(c, v));
  CHECK(delta_section_check(c, consts));
  Model q = Model::q_crystalline(2, {32, 16});
  std::vector<LocalQElem> xs{q_power(q, 1), q_integer(q, 2, 0), q_power(q, 1) + q_integer(q, 3, 0)};
  CHECK(delta_section_check(q, xs));
  CHECK_FALSE(delta_section_check(q, xs, [](const LocalQElem& x) { return ring_scale(x, 0); }));
  Model q3 = Model::q_crystalline(3, {32, 12});
  CHECK(delta_section_check(q3, {q_integer(q3, 3, 0), q_power(q3, 2) + one(q3)}));
}

TEST_CASE("iso_witt") {
  for (u64 p : {2, 3}) {
    Model m = Model::perfect_q(p, 1, {p == 2 ? 128u : 256u, 16});
    std::vector<LocalQElem> xs{q_integer(m, 5, 1), one(m) + ring_scale(variable(m), 3) + ring_pow(variable(m), 4),
                               q_power(m, 2) - q_integer(m, 3, 0)};
    for (const auto& x : xs) {
      auto one_ = iso_witt(x, 1);
      CHECK(one_.vec.x[0] == remainder_mod(x, orientation(m)));
      for (unsigned n = 1; n <= 2; ++n) {
        unsigned D = 1 + n;
        auto big_ = iso_witt(x, n + 1, D), small_ = iso_witt(x, n, D);
        WittCalc<ResidueRing> W(big_.ring, p);
        CHECK(W.eq(W.frobenius_F(big_.vec), small_.vec));
        auto killed = iso_witt(qA_pk(m, n) * x, n, D);
        for (const auto& c : killed.vec.x) CHECK(c.is_zero());
      }
    }
    CHECK_THROWS_AS(iso_witt(one(m), 3, 2), DomainError);
    CHECK_THROWS_AS(iso_witt(one(Model::q_crystalline(p)), 2), DomainError);
  }
}

TEST_CASE("aseq exactness") {
  auto r = aseq_exactness_check(1, 2, Model::crystalline(2));
  CHECK(r.exact);
  CHECK(aseq_exactness_check(2, 3, Model::crystalline(3)).exact);
  CHECK(aseq_exactness_check(1, 3, Model::crystalline(2)).exact);
  auto skip = aseq_exactness_check(2, 2, Model::crystalline(2));
  CHECK(skip.skipped);
  CHECK(aseq_exactness_check(1, 2, Model::perfect_q(2, 1, {128, 16})).exact);
  CHECK(aseq_exactness_check(1, 2, Model::perfect_q(3, 1, {256, 12})).exact);
  CHECK_THROWS_AS(aseq_exactness_check(3, 2, Model::crystalline(2)), DomainError);
}

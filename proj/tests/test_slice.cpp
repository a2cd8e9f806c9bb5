#include <doctest.h>

#include "prismslice/errors.hpp"
#include "prismslice/slice.hpp"

using namespace prismslice;

namespace {

using A = AtomProduct;
using D = MackeyDescriptor;
using G = GoldMonomial;
using R = PTypicalRep;

unsigned crys_len(const CyclicAModule& m) { return m.crystalline_length(24); }

}  // namespace

TEST_CASE("slice descriptors") {
  auto s = slice_descriptor(3, 9);
  CHECK(s.cover_rep == bracket_rep(3, 9));
  CHECK(s.form_A.mackey == D::trW(2));
  CHECK(s.form_B.mackey == D::quotient(D::W(), A::qA_pk(3)));
  for (u64 p : {2, 3})
    for (u64 n = 1; n <= 200; ++n) {
      auto d = slice_descriptor(p, n);
      REQUIRE(d.form_A.suspension - d.form_B.suspension == R::lambda(vp(p, n)) - R::lambda_inf());
      for (unsigned r = 0; r < 8; ++r)
        REQUIRE(dim_seq(d.cover_rep, r) == std::int64_t(ceil_div(n, sat_pow(p, r))));
      REQUIRE(hill_yarnall_certificate(p, n));
    }
  CHECK(slice_descriptor(2, 0).form_A.mackey == D::W());
}

TEST_CASE("Z-graded TF and TR") {
  CHECK(z_graded_tf(2).realize(0).is_free());
  CHECK(z_graded_tf(2).realize(3).is_zero());
  for (std::int64_t d = 0; d < 10; d += 2) CHECK(z_graded_tr(3, 2).realize(d) == CyclicAModule::quotient({A::qA_pk(2)}));
  CHECK(z_graded_tr(3, 2).realize(5).is_zero());
  CHECK(z_graded_tr(3, 2).realize(-2).is_zero());
}

TEST_CASE("tf_group examples") {
  auto a = tf_group(3, 2, R());
  CHECK(a.generator == G::sigma(2));
  CHECK(a.mackey == D::W());
  auto b = tf_group(3, 2, R::lambda(0, 2) + R::lambda(1));
  CHECK(b.generator == G::a(0) * G::u(0) * G::u(1));
  CHECK(b.mackey == D::phiW(0));
  auto c = tf_group(3, 1, R::lambda(0, 2) + R::lambda(1));
  CHECK(c.generator == G::a(0, 2) * G::u(1));
  CHECK(c.mackey == D::phiW(0));
  CHECK(tf_group(3, 0, R::lambda(0, 2) + R::lambda(1)).mackey == D::phiW(1));
}

TEST_CASE("tr_pos_group") {
  CHECK(tr_pos_group(2, 3, 1, -2) == D::trW(1));
  CHECK(tr_pos_group(2, 3, 1, 0) == D::W());
  CHECK(tr_pos_group(2, 3, 1, 4) == D::W());
  CHECK(tr_pos_group(2, 3, 1, -1).is_zero());
  CHECK_THROWS_AS(tr_pos_group(2, 3, 3, 0), DomainError);
}

TEST_CASE("closed forms") {
  CHECK(slice_homotopy_even(3, 4, 1) == D::quotient(D::phiW(1), A::qA_pk(1)));
  CHECK(slice_homotopy_even(3, 6, 2) == D::quotient(D::phiW(0), A::qA_pk(2)));
  CHECK(slice_homotopy_even(3, 5, 5) == D::constR());
  CHECK(slice_homotopy_even(3, 0, 0) == D::W());
  CHECK(slice_homotopy_even(3, 3, 4).is_zero());
  CHECK(slice_homotopy_odd(2, 4, 1) == D::trPhi(4, 2));
  for (std::int64_t n = 1; n < 20; ++n)
    for (std::int64_t i = 0; i <= n; ++i) CHECK(slice_homotopy_odd(3, n, i, RingKind::Torsionfree).is_zero());
  CHECK(slice_homotopy_lambda(3, 4, 4) == D::quotient(D::W(), A::qA_pk(1)));
  CHECK(slice_homotopy_lambda(3, 3, 2) == D::quotient(D::phiW(1), A::qA_pk(2)));
  CHECK(slice_homotopy_lambda(3, 0, 0) == D::W());
}

TEST_CASE("odd closed form matches the displayed level formulas") {
  for (u64 p : {2, 3})
    for (u64 n = 2; n <= 30; ++n)
      for (u64 i = 1; i < n; ++i) {
        auto s = slice_indices(p, n, i);
        auto d = slice_homotopy_odd(p, std::int64_t(n), std::int64_t(i));
        for (unsigned k = 0; k <= 8; ++k) {
          unsigned base = s.power_case ? s.m + 1 : s.m;
          unsigned cap = s.power_case ? s.h : s.h + 1;
          unsigned want = k <= base ? 0 : std::min(k - base, cap);
          REQUIRE(crys_len(realize(d, k)) == want);
        }
      }
}

TEST_CASE("oracle multipliers from the proof examples") {
  auto crys = Model::crystalline(3);
  auto o1 = oracle_slice_homotopy(3, 4, 1, crys);
  CHECK(o1.cover_upper.generator == G::a(0, 3) * G::a(1));
  CHECK(o1.cover_lower.generator == G::a(0, 2) * G::a(1));
  CHECK(o1.multiplier == A::xi(0));
  auto o2 = oracle_slice_homotopy(3, 3, 2, crys);
  CHECK(o2.cover_upper.generator == G::a(0, 2) * G::u(1));
  CHECK(o2.cover_lower.generator == G::a(0) * G::u(0));
  CHECK(o2.multiplier.crystalline_valuation() == 1);
  auto o3 = oracle_slice_homotopy(3, 6, 2, crys);
  CHECK(o3.cover_upper.generator == G::a(0, 4) * G::a(1) * G::u(1));
  CHECK(o3.cover_lower.generator == G::a(0, 4) * G::u(1));
  CHECK(o3.multiplier == A::qA_pk(2));
}

TEST_CASE("oracle equals the closed forms in the crystalline model") {
  for (u64 p : {2, 3}) {
    auto crys = Model::crystalline(p);
    for (u64 n = 1; n <= 30; ++n)
      for (u64 i = 1; i <= n; ++i) {
        auto o = oracle_slice_homotopy(p, n, i, crys);
        auto even = slice_homotopy_even(p, std::int64_t(n), std::int64_t(i));
        auto odd = slice_homotopy_odd(p, std::int64_t(n), std::int64_t(i));
        for (unsigned k = 0; k <= 6; ++k) {
          INFO("p=" << p << " n=" << n << " i=" << i << " k=" << k);
          REQUIRE(crys_len(o.even[k]) == crys_len(realize(even, k)));
          REQUIRE(crys_len(o.odd[k]) == crys_len(realize(odd, k)));
        }
      }
  }
}

TEST_CASE("atom-calculus oracle in the torsionfree model") {
  // A_inf is a domain: odd groups vanish and the cokernels are the closed forms
  for (u64 p : {2, 3}) {
    auto q = Model::perfect_q(p, 1);
    for (u64 n = 1; n <= 30; ++n)
      for (u64 i = 1; i <= n; ++i) {
        auto o = oracle_slice_homotopy(p, n, i, q);
        auto even = slice_homotopy_even(p, std::int64_t(n), std::int64_t(i));
        for (unsigned k = 0; k <= 6; ++k) {
          INFO("p=" << p << " n=" << n << " i=" << i << " k=" << k);
          REQUIRE(o.odd[k].is_zero());
          REQUIRE(o.even[k] == realize(even, k));
        }
      }
  }
}

TEST_CASE("filtration generators") {
  CHECK(filtration_gen_even(2, 1, 2) == A::xi(0, 2) * A::xi(1));
  CHECK(filtration_gen_lambda(3, 2, 0) == A::unit());
  CHECK(filtration_gen_even(3, 2, -1) == A::unit());
  for (u64 p : {2, 3})
    for (std::int64_t j = 1; j <= 10; ++j) {
      CHECK(filtration_gen_lambda(p, 1, j) == A::factorial(p, p * u64(j)));
      CHECK(filtration_gen_even(p, 1, j) == filtration_gen_lambda(p, 1, j));
    }
  CHECK_THROWS_AS(filtration_gen_even(2, 0, 1), DomainError);
}

TEST_CASE("filtration valuations against slice_f and slice_h") {
  for (u64 p : {2, 3})
    for (u64 i = 1; i <= 10; ++i)
      for (std::int64_t j = 1; j <= 10; ++j) {
        auto v = filtration_gen_even(p, i, j).crystalline_valuation();
        auto prev = filtration_gen_even(p, i, j - 1).crystalline_valuation();
        REQUIRE(u64(v) == slice_f(p, i + u64(j), i));
        REQUIRE(v - prev == std::int64_t(slice_h(p, i + u64(j) - 1, i)) + 1);
      }
}

TEST_CASE("i = 1 generators are [p]^j phi([j]!) in the ring") {
  for (u64 p : {2, 3}) {
    Model m = Model::perfect_q(p, 1, {p == 2 ? 160u : 320u, 16});
    for (std::int64_t j = 1; j <= 10; ++j) {
      auto g = to_ring(filtration_gen_even(p, 1, j), m);
      auto rhs = ring_pow(orientation(m), u64(j)) * frobenius(qA_factorial(m, u64(j)), 1);
      REQUIRE(associates(g, rhs));
    }
  }
}

TEST_CASE("E2 pages") {
  for (u64 p : {2, 3}) {
    auto tf = e2_page(p, RingKind::Torsionfree, 40, 40);
    for (const auto& e : tf.entries) {
      REQUIRE(e.x % 2 == 0);
      REQUIRE(e.mackey == slice_homotopy_even(p, (e.x + e.y) / 2, e.x / 2));
      if (e.y == 0 && e.x > 0) REQUIRE(e.mackey == D::constR());
    }
    auto fp = e2_page(p, RingKind::Fp, 40, 40);
    CHECK(std::any_of(fp.entries.begin(), fp.entries.end(), [](const auto& e) { return e.x % 2 == 1; }));
    CHECK(std::is_sorted(fp.entries.begin(), fp.entries.end(),
                         [](const auto& a, const auto& b) { return std::pair{a.x, a.y} < std::pair{b.x, b.y}; }));
  }
}

TEST_CASE("E-infinity page") {
  auto page = einf_page(2, 6, 6);
  bool found = false;
  for (const auto& e : page.entries)
    if (e.x == 2 && e.y == 2) {
      found = true;
      REQUIRE(e.fh.has_value());
      CHECK(e.fh->first == 1);
      CHECK(e.fh->second == 1);
      CHECK(e.mackey == D::quotient(D::phiW(0), A::p_power(2)));
    }
  CHECK(found);
  // the E-infinity entries are the filtration quotients of W, level by level
  for (u64 p : {2, 3})
    for (const auto& e : einf_page(p, 20, 20).entries) {
      if (e.x == 0) continue;
      u64 i = u64(e.x / 2);
      std::int64_t j = e.y / 2;
      auto f0 = filtration_gen_even(p, i, j).crystalline_valuation();
      auto f1 = filtration_gen_even(p, i, j + 1).crystalline_valuation();
      for (unsigned k = 0; k <= 8; ++k) {
        auto clip = [&](std::int64_t v) { return std::clamp<std::int64_t>(std::int64_t(k) + 1 - v, 0, k + 1); };
        REQUIRE(std::int64_t(crys_len(realize(e.mackey, k))) == clip(f0) - clip(f1));
      }
    }
}

TEST_CASE("hieroglyphs and colors") {
  CHECK(hieroglyph(D::W()) == "full");
  CHECK(color_level(D::W()) == 0);
  CHECK(hieroglyph(D::constR()) == "box_1");
  CHECK(hieroglyph(D::quotient(D::phiW(2), A::qA_pk(3))) == "box_3");
  CHECK(color_level(D::quotient(D::phiW(2), A::qA_pk(3))) == 3);
  CHECK(hieroglyph(D::trPhi(4, 2)) == "tr_2");
  CHECK(color_level(D::trPhi(4, 2)) == 3);
  CHECK(color_level(D::phiW(0)) == 1);
}

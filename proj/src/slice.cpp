#include "prismslice/slice.hpp"

#include <algorithm>
#include <set>

#include "prismslice/errors.hpp"

namespace prismslice {

namespace {

using D = MackeyDescriptor;

// [pn]_A = [p^{1 + v_p(n)}]_A
AtomProduct qA_pn(u64 p, u64 n) { return AtomProduct::qA_pk(1 + vp(p, n)); }

CyclicAModule crystalline_cyclic(unsigned len) {
  return len == 0 ? CyclicAModule::zero_module() : CyclicAModule::quotient({AtomProduct::p_power(len)});
}

unsigned log_p(u64 p, u64 x) {
  unsigned e = 0;
  while (x > 1) {
    x /= p;
    ++e;
  }
  return e;
}

}  // namespace

std::string to_string(RingKind k) { return k == RingKind::Fp ? "fp" : "torsionfree"; }
std::string to_string(PageKind k) { return k == PageKind::E2 ? "e2" : "einf"; }

SliceDescriptor slice_descriptor(u64 p, u64 n) {
  require_prime(p);
  SliceDescriptor s;
  s.n = n;
  s.cover_rep = bracket_rep(p, n);
  if (n == 0) {
    s.form_A = {PTypicalRep(), D::W()};
    s.form_B = {PTypicalRep(), D::W()};
    return s;
  }
  s.form_A = {brace_rep(p, n), D::trW(int(vp(p, n)))};
  s.form_B = {bracket_rep(p, n), D::quotient(D::W(), qA_pn(p, n))};
  return s;
}

CyclicAModule GradedPolyDescriptor::realize(std::int64_t d) const {
  if (d < 0 || d % generator_degree != 0) return CyclicAModule::zero_module();
  return coefficients;
}

GradedPolyDescriptor z_graded_tf(u64 p) {
  require_prime(p);
  return {CyclicAModule::free(), 2};
}

GradedPolyDescriptor z_graded_tr(u64 p, unsigned n) {
  require_prime(p);
  return {CyclicAModule::quotient({AtomProduct::qA_pk(n)}), 2};
}

TFGroup tf_group(u64 p, u64 i, const PTypicalRep& alpha) {
  GoldMonomial g = canonical_generator(p, i, alpha);
  const std::int64_t ii = std::int64_t(i);
  if (dim_seq(alpha, 0) <= ii) return {g, D::W()};
  for (unsigned r = 1;; ++r)
    if (dim_seq(alpha, r) <= ii) return {g, D::phiW(int(r) - 1)};
}

MackeyDescriptor tr_pos_group(u64 p, unsigned n, unsigned j, std::int64_t star) {
  require_prime(p);
  if (j >= n) throw DomainError("tr_pos_group needs j < n");
  if (star == -2) return D::trW(int(j));
  if (star >= 0 && star % 2 == 0) return D::W();
  return D::zero();
}

MackeyDescriptor slice_homotopy_even(u64 p, std::int64_t n, std::int64_t i) {
  require_prime(p);
  if (i < 0 || i > n) return D::zero();
  if (i == 0) return n == 0 ? D::W() : D::zero();
  if (i == n) return D::constR();
  auto s = slice_indices(p, u64(n), u64(i));
  return D::quotient(D::phiW(int(s.m)), AtomProduct::qA_pk(s.h + 1));
}

MackeyDescriptor slice_homotopy_odd(u64 p, std::int64_t n, std::int64_t i, RingKind kind) {
  require_prime(p);
  if (kind == RingKind::Torsionfree || i <= 0 || i >= n) return D::zero();
  auto s = slice_indices(p, u64(n), u64(i));
  int m = int(s.m), h = int(s.h);
  return D::trPhi(m + h + 1, s.power_case ? m + 1 : m);
}

MackeyDescriptor slice_homotopy_lambda(u64 p, u64 n, u64 i) {
  require_prime(p);
  if (i > n) return D::zero();
  if (i == 0) return n == 0 ? D::W() : D::zero();
  if (i == n) return D::quotient(D::W(), qA_pn(p, n));
  return D::quotient(D::phiW(int(ell(p, i, n))), qA_pn(p, n));
}

OracleResult oracle_slice_homotopy(u64 p, u64 n, u64 i, const Model& model, unsigned max_level) {
  require_prime(p);
  if (i == 0 || i > n) throw DomainError("oracle needs 0 < i <= n");
  if (model.p != p) throw ModelMismatch("oracle model has a different prime");
  OracleResult out{tf_group(p, i - 1, brace_rep(p, n - 1)), tf_group(p, i - 1, brace_rep(p, n)), {}, {}, {}};
  // sigma u_{lambda^n}^{-1} sends g2 to c g1
  auto c = reduce_ratio(GoldMonomial::sigma() * out.cover_upper.generator,
                        GoldMonomial::u(vp(p, n)) * out.cover_lower.generator);
  if (!c) throw InternalError("cover map multiplier is not in A");
  out.multiplier = *c;
  for (unsigned k = 0; k <= max_level; ++k) {
    CyclicAModule M1 = realize(out.cover_lower.mackey, k), M2 = realize(out.cover_upper.mackey, k);
    if (model.kind == ModelKind::Crystalline) {
      const unsigned a1 = M1.crystalline_length(model.M), a2 = M2.crystalline_length(model.M);
      const u64 q1 = sat_pow(p, a1), q2 = sat_pow(p, a2);
      if (q1 > (1u << 20) || q2 > (1u << 20)) throw DomainError("oracle level too large to enumerate");
      const u64 cv = sat_pow(p, unsigned(std::min<std::int64_t>(c->crystalline_valuation(), a1))) % q1;
      if (cv * (q2 % q1) % q1 != 0) throw InternalError("cover map is not well defined");
      std::set<u64> image;
      u64 kernel = 0;
      for (u64 x = 0; x < q2; ++x) {
        u64 y = cv * (x % q1) % q1;
        image.insert(y);
        if (y == 0) ++kernel;
      }
      out.even.push_back(crystalline_cyclic(a1 - log_p(p, image.size())));
      out.odd.push_back(crystalline_cyclic(log_p(p, kernel)));
    } else {
      AtomProduct I1 = M1.generator(), I2 = M2.generator();
      out.even.push_back(CyclicAModule::quotient({I1, *c}));
      AtomProduct col = I1.zero ? I1 : I1 / atom_gcd(I1, *c);
      if (!divides(col, I2)) throw InternalError("kernel is not cyclic in the atom calculus");
      out.odd.push_back(CyclicAModule::quotient({I2.zero ? I2 : I2 / col}));
    }
  }
  return out;
}

AtomProduct filtration_gen_lambda(u64 p, u64 i, std::int64_t j) {
  require_prime(p);
  if (i < 1) throw DomainError("filtration generator needs i >= 1");
  if (j <= 0) return AtomProduct::unit();
  AtomProduct g = AtomProduct::factorial(p, p * (i + u64(j) - 1)) / AtomProduct::factorial(p, p * (i - 1));
  if (!g.nonnegative()) throw InternalError("non-divisible factorial atoms");
  return g;
}

AtomProduct filtration_gen_even(u64 p, u64 i, std::int64_t j) {
  require_prime(p);
  if (i < 1) throw DomainError("filtration generator needs i >= 1");
  if (j <= 0) return AtomProduct::unit();
  const u64 top = i + u64(j) - 1;
  const unsigned r = slice_r(p, i, u64(j));
  AtomProduct den = phi_shift(AtomProduct::factorial(p, top / sat_pow(p, r - 1)), r);
  for (u64 t = 1; t < i; ++t) den = den * AtomProduct::qA_pk(r);
  AtomProduct g = AtomProduct::factorial(p, p * top) / den;
  if (!g.nonnegative()) throw InternalError("non-divisible factorial atoms");
  return g;
}

std::string hieroglyph(const MackeyDescriptor& d) {
  switch (d.kind) {
    case MackeyKind::Zero: return "zero";
    case MackeyKind::W:
    case MackeyKind::PhiW: return "full";
    case MackeyKind::ConstR: return "box_1";
    case MackeyKind::TrW: return "tr_" + std::to_string(d.r + 1);
    case MackeyKind::TrPhi: return "tr_" + std::to_string(d.s - d.r);
    case MackeyKind::Quotient: return "box_" + std::to_string(d.divisor.crystalline_valuation());
  }
  return "?";
}

int color_level(const MackeyDescriptor& d) { return d.phi_level() + 1; }

namespace {

ChartEntry make_entry(int x, int y, MackeyDescriptor d) {
  ChartEntry e;
  e.x = x;
  e.y = y;
  e.hieroglyph = hieroglyph(d);
  e.color_level = color_level(d);
  e.mackey = std::move(d);
  return e;
}

void sort_entries(ChartPage& page) {
  std::sort(page.entries.begin(), page.entries.end(),
            [](const ChartEntry& a, const ChartEntry& b) { return std::pair{a.x, a.y} < std::pair{b.x, b.y}; });
}

}  // namespace

ChartPage e2_page(u64 p, RingKind kind, int max_col, int max_row) {
  require_prime(p);
  if (max_col < 0 || max_row < 0) throw DomainError("chart bounds must be nonnegative");
  ChartPage page{p, kind, PageKind::E2, {}};
  for (std::int64_t i = 0; 2 * i <= max_col; ++i)
    for (std::int64_t n = i; 2 * (n - i) <= max_row; ++n) {
      auto even = slice_homotopy_even(p, n, i);
      if (!even.is_zero()) page.entries.push_back(make_entry(int(2 * i), int(2 * (n - i)), even));
      auto odd = slice_homotopy_odd(p, n, i, kind);
      int x = int(2 * i + 1), y = int(2 * (n - i) - 1);
      if (!odd.is_zero() && x <= max_col && y <= max_row) page.entries.push_back(make_entry(x, y, odd));
    }
  sort_entries(page);
  return page;
}

ChartPage einf_page(u64 p, int max_col, int max_row) {
  require_prime(p);
  if (max_col < 0 || max_row < 0) throw DomainError("chart bounds must be nonnegative");
  ChartPage page{p, RingKind::Fp, PageKind::Einf, {}};
  page.entries.push_back(make_entry(0, 0, D::W()));
  for (u64 i = 1; 2 * i <= u64(max_col); ++i)
    for (u64 n = i; 2 * (n - i) <= u64(max_row); ++n) {
      u64 f = slice_f(p, n, i);
      unsigned h = slice_h(p, n, i);
      auto d = D::quotient(D::phiW(int(f) - 1), AtomProduct::p_power(h + 1));
      ChartEntry e = make_entry(int(2 * i), int(2 * (n - i)), d);
      e.fh = std::pair{f, h};
      page.entries.push_back(e);
    }
  sort_entries(page);
  return page;
}

}  // namespace prismslice

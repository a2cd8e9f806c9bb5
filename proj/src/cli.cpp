#include "prismslice/cli.hpp"

#include <CLI11.hpp>

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "prismslice/chart.hpp"
#include "prismslice/errors.hpp"
#include "prismslice/prism.hpp"
#include "prismslice/slice.hpp"
#include "prismslice/witt.hpp"

namespace prismslice {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void need_prime(u64 p) {
  if (!is_prime(p)) throw UsageError("--p must be prime, got " + std::to_string(p));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

u64 reduce_mod(std::int64_t v, u64 mod) {
  std::int64_t r = v % std::int64_t(mod);
  return u64(r < 0 ? r + std::int64_t(mod) : r);
}

// ---------------------------------------------------------------------------
// legendre

struct LegendreArgs {
  u64 p = 2;
  u64 n_max = 16;
  std::string format = "txt";
};

int cmd_legendre(const LegendreArgs& a, std::ostream& out) {
  need_prime(a.p);
  if (a.n_max < 1) throw UsageError("--n-max must be at least 1");
  auto fig = legendre_figure(a.p, a.n_max);
  if (a.format == "json") out << legendre_json(fig).dump(2) << "\n";
  else if (a.format == "svg") out << legendre_svg(fig);
  else out << legendre_text(fig);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// rsss

struct RsssArgs {
  u64 p = 2;
  std::string ring = "torsionfree";
  std::string page = "e2";
  int max_col = 16;
  int max_row = 16;
  std::string format = "json";
};

int cmd_rsss(const RsssArgs& a, std::ostream& out) {
  need_prime(a.p);
  if (a.page == "einf" && a.ring != "fp") throw UsageError("--page einf requires --ring fp");
  ChartPage page = a.page == "einf" ? einf_page(a.p, a.max_col, a.max_row)
                                    : e2_page(a.p, a.ring == "fp" ? RingKind::Fp : RingKind::Torsionfree,
                                              a.max_col, a.max_row);
  if (a.format == "json") out << chart_json(page).dump(2) << "\n";
  else if (a.format == "svg") out << chart_svg(page);
  else out << chart_text(page);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// slice-filtration

struct FiltrationArgs {
  u64 p = 2;
  std::int64_t i = 1;
  std::int64_t j_max = 4;
  std::string grading = "lambda";
  std::string format = "txt";
};

int cmd_slice_filtration(const FiltrationArgs& a, std::ostream& out) {
  need_prime(a.p);
  if (a.i < 1) throw UsageError("--i must be at least 1");
  if (a.j_max < 0) throw UsageError("--j-max must be nonnegative");
  const u64 i = u64(a.i);
  const bool lambda = a.grading == "lambda";
  Json rows = Json::array();
  std::ostringstream txt;
  txt << "p=" << a.p << " i=" << i << " grading=" << a.grading << "\n";
  txt << "j\tgenerator\tvaluation\n";
  for (std::int64_t j = 0; j <= a.j_max; ++j) {
    AtomProduct g = lambda ? filtration_gen_lambda(a.p, i, j) : filtration_gen_even(a.p, i, j);
    std::string text = j == 0 ? "full" : g.to_string();
    Json row = {{"j", j}, {"generator", text}, {"atoms", to_json(g)}, {"valuation", g.crystalline_valuation()}};
    if (lambda && j > 0) {
      std::string expr = "[" + std::to_string(a.p * (i + u64(j) - 1)) + "]_A!";
      if (i > 1) expr += "/[" + std::to_string(a.p * (i - 1)) + "]_A!";
      row["expression"] = expr;
    }
    txt << j << "\t" << text << "\t" << g.crystalline_valuation() << "\n";
    rows.push_back(row);
  }
  if (a.format == "json")
    out << Json{{"p", a.p}, {"i", i}, {"grading", a.grading}, {"rows", rows}}.dump(2) << "\n";
  else
    out << txt.str();
  return kExitPass;
}

// ---------------------------------------------------------------------------
// prism-verify

struct PrismArgs {
  std::string model = "qcrys";
  u64 p = 2;
  unsigned depth = 1;
  unsigned imax = 3;
  unsigned jmax = 3;
  unsigned prec_n = default_precision().N;
  unsigned prec_m = default_precision().M;
};

Model build_model(const PrismArgs& a) {
  need_prime(a.p);
  if (a.prec_n < 2) throw UsageError("--prec-n must be at least 2");
  if (a.prec_m < 2) throw UsageError("--prec-m must be at least 2 (delta divides by p)");
  if (a.imax < 1 || a.jmax < 1 || a.imax > 6 || a.jmax > 6) throw UsageError("--imax and --jmax must lie in 1..6");
  if (a.imax > a.jmax) throw UsageError("--imax must not exceed --jmax");
  Precision pr{a.prec_n, a.prec_m};
  try {
    if (a.model == "qcrys") return Model::q_crystalline(a.p, pr);
    if (a.model == "perfq") {
      if (a.depth < 1 || a.depth > 4) throw UsageError("--depth must lie in 1..4");
      return Model::perfect_q(a.p, a.depth, pr);
    }
    if (a.model == "crys") return Model::crystalline(a.p, a.prec_m);
    return Model::kisin(a.p, pr);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::vector<LocalQElem> norm_samples(const Model& m) {
  std::vector<LocalQElem> xs{constant(m, 2), constant(m, 5)};
  if (m.kind != ModelKind::Crystalline) {
    auto t = variable(m);
    xs.push_back(t + constant(m, 3));
    xs.push_back(t * t - constant(m, 7) * t + constant(m, 1));
  }
  return xs;
}

int cmd_prism_verify(const PrismArgs& a, std::ostream& out) {
  Model base = build_model(a);
  Model m = unit_table_model(base, a.imax, a.jmax);
  Json rep;
  rep["model"] = m.name();
  rep["p"] = a.p;
  rep["precision"] = {{"N", m.N}, {"M", m.M}};
  bool ok = true;
  Prism P;
  try {
    P = make_prism(m);
  } catch (const PrismFailure& e) {
    rep["prism_condition"] = false;
    rep["witness"] = to_json(e.witness);
    rep["ok"] = false;
    out << rep.dump(2) << "\n";
    return kExitFail;
  }
  rep["prism_condition"] = true;
  rep["delta_orientation"] = to_json(P.delta_unit);
  bool sharp = sharper_base_congruence(P);
  rep["sharper_base_congruence"] = sharp;
  ok = ok && sharp;

  UnitTable U = extended_units(P, a.imax, a.jmax);
  Json units = Json::array();
  for (const auto& [ij, u] : U.entries()) {
    bool v = is_unit(u) && verify_congruence(P, U, ij.first, ij.second);
    ok = ok && v;
    units.push_back({{"i", ij.first}, {"j", ij.second}, {"pass", v}});
  }
  rep["extended_units"] = units;

  Json cor = Json::array();
  for (unsigned i = 1; i <= std::min(3u, a.imax); ++i)
    for (unsigned j = i; j <= a.jmax; ++j)
      for (unsigned r = i; r <= a.jmax; ++r) {
        bool v = corollary_congruence(P, i, j, r);
        ok = ok && v;
        cor.push_back({{"i", i}, {"j", j}, {"r", r}, {"pass", v}});
      }
  rep["corollary"] = cor;

  // the Borger lift involves phi^n([p]_A) and an inverse, so it runs with enough t-adic room
  const unsigned nmax = std::min(a.imax, 2u);
  Model mn = m.with_precision(std::max(m.N, m.kind == ModelKind::Crystalline ? 1u : 256u), m.M);
  Prism Pn = make_prism(mn);
  UnitTable Un = extended_units(Pn, nmax, nmax);
  Json norm = Json::array();
  auto samples = norm_samples(mn);
  for (unsigned n = 1; n <= nmax; ++n)
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const bool witt = mn.kind == ModelKind::PerfectQ;
      auto r = norm_lift_report(Pn, n, borger_norm_lift(Pn, Un, n, samples[s]), samples[s], witt);
      ok = ok && r.ok();
      Json row = {{"n", n},
                  {"sample", s},
                  {"phi_congruence", r.phi_congruence},
                  {"power_congruence", r.power_congruence}};
      if (r.witt_diagram) row["witt_diagram"] = *r.witt_diagram;
      row["pass"] = r.ok();
      norm.push_back(row);
    }
  rep["norm_lift"] = norm;

  Json leg = Json::array();
  for (u64 n = 1; n <= 12; ++n) {
    auto r = q_legendre_report(a.p, n, a.prec_m);
    ok = ok && r.ok();
    leg.push_back({{"n", n}, {"phi_form", r.phi_form}, {"bracket_form", r.bracket_form}, {"pass", r.ok()}});
  }
  rep["q_legendre"] = leg;

  if (a.model == "qcrys") {
    Json w = Json::array();
    for (auto [x, y] : {std::pair<u64, u64>{1, 0}, {2, 1}, {3, 2}, {5, 1}}) {
      bool v = warning_identity_check(x, y);
      ok = ok && v;
      w.push_back({{"a", x}, {"b", y}, {"pass", v}});
    }
    rep["warning_identity"] = w;
  }
  rep["ok"] = ok;
  out << rep.dump(2) << "\n";
  return ok ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// witt

struct WittArgs {
  std::string base = "zmod:2^6";
  std::string x;
  std::string y;
  unsigned length = 3;
  unsigned samples = 30;
};

template <class R>
using ParseFn = std::function<WittVector<R>(const std::string&)>;
template <class R>
using RandFn = std::function<typename R::Elem(std::mt19937_64&)>;

template <class R>
struct WittSuite {
  const WittCalc<R>& W;
  RandFn<R> rand;
  bool char_p;
  std::ostream& out;
  bool ok = true;

  WittVector<R> random(std::size_t n, std::mt19937_64& rng) const {
    WittVector<R> v;
    for (std::size_t i = 0; i < n; ++i) v.x.push_back(rand(rng));
    return v;
  }

  void report(const std::string& name, bool pass) {
    ok = ok && pass;
    out << (pass ? "pass " : "FAIL ") << name << "\n";
  }

  void run(unsigned max_len, unsigned samples) {
    std::mt19937_64 rng(2024);
    const R& r = W.base();
    const u64 p = W.prime();
    for (unsigned n = 1; n <= max_len; ++n) {
      bool ring = true, ghost = true, fv = true, proj = true, frob = true, norm = true, frob_p = true;
      for (unsigned s = 0; s < samples; ++s) {
        auto a = random(n, rng), b = random(n, rng), c = random(n, rng);
        ring = ring && W.eq(W.add(a, b), W.add(b, a)) && W.eq(W.mul(a, b), W.mul(b, a)) &&
               W.eq(W.add(W.add(a, b), c), W.add(a, W.add(b, c))) &&
               W.eq(W.mul(W.mul(a, b), c), W.mul(a, W.mul(b, c))) &&
               W.eq(W.mul(a, W.add(b, c)), W.add(W.mul(a, b), W.mul(a, c))) && W.eq(W.add(a, W.zero(n)), a) &&
               W.eq(W.mul(a, W.one(n)), a) && W.eq(W.add(a, W.neg(a)), W.zero(n));
        auto ga = W.ghost(a), gb = W.ghost(b), gs = W.ghost(W.add(a, b)), gm = W.ghost(W.mul(a, b));
        for (std::size_t i = 0; i < n; ++i)
          ghost = ghost && r.eq(gs[i], r.add(ga[i], gb[i])) && r.eq(gm[i], r.mul(ga[i], gb[i]));
        fv = fv && W.eq(W.frobenius_F(W.verschiebung_V(a)), W.scale(std::int64_t(p), a));
        auto big = random(n + 1, rng), big2 = random(n + 1, rng);
        proj = proj && W.eq(W.mul(W.verschiebung_V(a), big), W.verschiebung_V(W.mul(a, W.frobenius_F(big))));
        frob = frob && W.eq(W.frobenius_F(W.add(big, big2)), W.add(W.frobenius_F(big), W.frobenius_F(big2))) &&
               W.eq(W.frobenius_F(W.mul(big, big2)), W.mul(W.frobenius_F(big), W.frobenius_F(big2)));
        norm = norm && W.eq(W.norm(W.mul(a, b)), W.mul(W.norm(a), W.norm(b)));
        if (char_p) {
          auto fb = W.frobenius_F(big);
          for (std::size_t i = 0; i < n; ++i) frob_p = frob_p && r.eq(fb.x[i], ring_power(r, big.x[i], p));
        }
      }
      const std::string len = " (length " + std::to_string(n) + ")";
      report("ring axioms" + len, ring);
      report("ghost map is a ring map" + len, ghost);
      report("F(V(a)) = p a" + len, fv);
      report("V(a) b = V(a F(b))" + len, proj);
      report("F is a ring map" + len, frob);
      report("norm is multiplicative" + len, norm && W.eq(W.norm(W.one(n)), W.one(n + 1)));
      if (char_p) report("F is the coordinatewise p-th power" + len, frob_p);
    }
  }
};

template <class R>
int witt_dispatch(const std::string& op, const WittArgs& a, const WittCalc<R>& W, ParseFn<R> parse, RandFn<R> rand,
                  bool char_p, std::ostream& out) {
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) throw UsageError(std::string(flag) + " is required");
  };
  if (op == "check") {
    if (a.length < 1 || a.length > 3) throw UsageError("--length must lie in 1..3");
    WittSuite<R> suite{W, rand, char_p, out};
    suite.run(a.length, a.samples);
    return suite.ok ? kExitPass : kExitFail;
  }
  need(a.x, "--x");
  auto x = parse(a.x);
  if (x.length() < 1 || x.length() > kWittCacheBound - 1)
    throw UsageError("Witt vectors must have length 1.." + std::to_string(kWittCacheBound - 1));
  if (op == "ghost") {
    auto g = W.ghost(x);
    std::string s = "(";
    for (std::size_t i = 0; i < g.size(); ++i) s += (i ? ", " : "") + W.base().str(g[i]);
    out << s << ")\n";
  } else if (op == "norm") {
    out << W.str(W.norm(x)) << "\n";
  } else {
    need(a.y, "--y");
    auto y = parse(a.y);
    if (y.length() != x.length()) throw UsageError("--x and --y must have the same length");
    out << W.str(op == "add" ? W.add(x, y) : W.mul(x, y)) << "\n";
  }
  return kExitPass;
}

int cmd_witt(const std::string& op, const WittArgs& a, std::ostream& out) {
  auto colon = a.base.find(':');
  if (colon == std::string::npos) throw UsageError("--base must be zmod:P^K or fpx:P,M");
  const std::string kind = a.base.substr(0, colon), rest = a.base.substr(colon + 1);
  if (kind == "zmod") {
    auto caret = rest.find('^');
    const u64 p = u64(parse_int(rest.substr(0, caret)));
    const std::int64_t k = caret == std::string::npos ? 1 : parse_int(rest.substr(caret + 1));
    need_prime(p);
    if (k < 1 || sat_pow(p, unsigned(k)) >= (u64(1) << 62)) throw UsageError("zmod exponent out of range");
    ZmodRing R(p, unsigned(k));
    WittCalc<ZmodRing> W(R, p);
    ParseFn<ZmodRing> parse = [&](const std::string& s) {
      WittVector<ZmodRing> v;
      for (const auto& c : split(s, ',')) v.x.push_back(reduce_mod(parse_int(c), R.mod));
      return v;
    };
    RandFn<ZmodRing> rand = [&](std::mt19937_64& rng) { return rng() % R.mod; };
    return witt_dispatch<ZmodRing>(op, a, W, parse, rand, k == 1, out);
  }
  if (kind == "fpx") {
    auto parts = split(rest, ',');
    if (parts.size() != 2) throw UsageError("fpx base must be fpx:P,M");
    const u64 p = u64(parse_int(parts[0]));
    const std::int64_t m = parse_int(parts[1]);
    need_prime(p);
    if (m < 1 || m > 64) throw UsageError("fpx truncation must lie in 1..64");
    FpPolyRing R(p, unsigned(m));
    WittCalc<FpPolyRing> W(R, p);
    // coordinates separated by ';', coefficients (constant term first) by ','
    ParseFn<FpPolyRing> parse = [&](const std::string& s) {
      WittVector<FpPolyRing> v;
      for (const auto& coord : split(s, ';')) {
        auto cs = split(coord, ',');
        if (cs.size() > R.m) throw UsageError("coordinate '" + coord + "' has more than M coefficients");
        auto e = R.zero();
        for (std::size_t i = 0; i < cs.size(); ++i) e[i] = reduce_mod(parse_int(cs[i]), p);
        v.x.push_back(e);
      }
      return v;
    };
    RandFn<FpPolyRing> rand = [&](std::mt19937_64& rng) {
      auto e = R.zero();
      for (auto& c : e) c = rng() % p;
      return e;
    };
    return witt_dispatch<FpPolyRing>(op, a, W, parse, rand, true, out);
  }
  throw UsageError("unknown base kind '" + kind + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"prismslice: q-analogues, Witt vectors, prisms and slice charts"};
  app.require_subcommand(1);

  LegendreArgs la;
  auto* leg = app.add_subcommand("legendre", "q-Legendre stacked-bar figure");
  leg->add_option("--p", la.p, "prime");
  leg->add_option("--n-max", la.n_max, "last column");
  leg->add_option("--format", la.format)->check(CLI::IsMember({"svg", "txt", "json"}));

  RsssArgs ra;
  auto* rsss = app.add_subcommand("rsss", "regular slice spectral sequence chart");
  rsss->add_option("--p", ra.p, "prime");
  rsss->add_option("--ring", ra.ring)->check(CLI::IsMember({"torsionfree", "fp"}));
  rsss->add_option("--page", ra.page)->check(CLI::IsMember({"e2", "einf"}));
  rsss->add_option("--max-col", ra.max_col)->check(CLI::Range(0, 400));
  rsss->add_option("--max-row", ra.max_row)->check(CLI::Range(0, 400));
  rsss->add_option("--format", ra.format)->check(CLI::IsMember({"svg", "txt", "json"}));

  FiltrationArgs fa;
  auto* filt = app.add_subcommand("slice-filtration", "generators of the slice filtration");
  filt->add_option("--p", fa.p, "prime");
  filt->add_option("--i", fa.i);
  filt->add_option("--j-max", fa.j_max)->check(CLI::Range(std::int64_t(0), std::int64_t(500)));
  filt->add_option("--grading", fa.grading)->check(CLI::IsMember({"lambda", "even"}));
  filt->add_option("--format", fa.format)->check(CLI::IsMember({"txt", "json"}));

  PrismArgs pa;
  auto* prism = app.add_subcommand("prism-verify", "prism, unit table and norm-lift report");
  prism->add_option("--model", pa.model)->check(CLI::IsMember({"qcrys", "perfq", "crys", "kisin"}));
  prism->add_option("--p", pa.p, "prime");
  prism->add_option("--depth", pa.depth, "perfq depth");
  prism->add_option("--imax", pa.imax);
  prism->add_option("--jmax", pa.jmax);
  prism->add_option("--prec-n", pa.prec_n, "t-adic precision N");
  prism->add_option("--prec-m", pa.prec_m, "p-adic precision M");

  WittArgs wa;
  auto* witt = app.add_subcommand("witt", "Witt vector arithmetic over zmod:P^K or fpx:P,M");
  witt->add_option("--base", wa.base);
  witt->require_subcommand(1);
  witt->fallthrough();
  std::string witt_op;
  for (const char* op : {"add", "mul", "ghost", "norm", "check"}) {
    auto* sub = witt->add_subcommand(op);
    sub->fallthrough();
    sub->callback([&witt_op, op] { witt_op = op; });
    if (std::string(op) == "check") {
      sub->add_option("--length", wa.length, "largest Witt length tested (1..3)");
      sub->add_option("--samples", wa.samples, "random samples per length");
    } else {
      sub->add_option("--x", wa.x, "coordinates, e.g. 3,1 or for fpx 1,1;0,1");
      if (std::string(op) == "add" || std::string(op) == "mul") sub->add_option("--y", wa.y);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (leg->parsed()) return cmd_legendre(la, out);
    if (rsss->parsed()) return cmd_rsss(ra, out);
    if (filt->parsed()) return cmd_slice_filtration(fa, out);
    if (prism->parsed()) return cmd_prism_verify(pa, out);
    if (witt->parsed()) return cmd_witt(witt_op, wa, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModelMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "verification error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace prismslice

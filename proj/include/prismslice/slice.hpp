#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prismslice/gold.hpp"
#include "prismslice/mackey.hpp"
#include "prismslice/reps.hpp"

namespace prismslice {

enum class RingKind { Torsionfree, Fp };
enum class PageKind { E2, Einf };

std::string to_string(RingKind k);
std::string to_string(PageKind k);

struct SliceForm {
  PTypicalRep suspension;
  MackeyDescriptor mackey;
};

struct SliceDescriptor {
  u64 n = 0;
  PTypicalRep cover_rep;
  SliceForm form_A;
  SliceForm form_B;
};

SliceDescriptor slice_descriptor(u64 p, u64 n);

// A[sigma] or (A/[p^n]_A)[sigma], sigma in degree 2.
struct GradedPolyDescriptor {
  CyclicAModule coefficients;
  unsigned generator_degree = 2;
  // The group in degree d: coefficients for even d >= 0, zero otherwise.
  CyclicAModule realize(std::int64_t d) const;
};

GradedPolyDescriptor z_graded_tf(u64 p);
GradedPolyDescriptor z_graded_tr(u64 p, unsigned n);

struct TFGroup {
  GoldMonomial generator;
  MackeyDescriptor mackey;
};

TFGroup tf_group(u64 p, u64 i, const PTypicalRep& alpha);
// Levels 0..n are meant; star = -2 gives trW(j), star = 2i >= 0 gives W, otherwise 0.
MackeyDescriptor tr_pos_group(u64 p, unsigned n, unsigned j, std::int64_t star);

MackeyDescriptor slice_homotopy_even(u64 p, std::int64_t n, std::int64_t i);
MackeyDescriptor slice_homotopy_odd(u64 p, std::int64_t n, std::int64_t i, RingKind kind = RingKind::Fp);
MackeyDescriptor slice_homotopy_lambda(u64 p, u64 n, u64 i);

struct OracleResult {
  TFGroup cover_lower;  // pi_{2i} of the 2n cover, g1
  TFGroup cover_upper;  // pi_{2i} of the 2n+2 cover, g2
  AtomProduct multiplier;
  std::vector<CyclicAModule> even;  // cokernel per level
  std::vector<CyclicAModule> odd;   // kernel per level
};

// The four-term sequence computed directly from the cover groups. In the crystalline model
// kernels and cokernels are found by enumeration; in the q-models by the atom calculus.
OracleResult oracle_slice_homotopy(u64 p, u64 n, u64 i, const Model& model, unsigned max_level = 6);

AtomProduct filtration_gen_lambda(u64 p, u64 i, std::int64_t j);
AtomProduct filtration_gen_even(u64 p, u64 i, std::int64_t j);

struct ChartEntry {
  int x = 0;
  int y = 0;
  MackeyDescriptor mackey;
  std::string hieroglyph;
  int color_level = 0;
  // (f, h) of the E-infinity entries
  std::optional<std::pair<u64, unsigned>> fh;
};

struct ChartPage {
  u64 p = 2;
  RingKind ring = RingKind::Torsionfree;
  PageKind page = PageKind::E2;
  std::vector<ChartEntry> entries;  // sorted by (x, y)
};

std::string hieroglyph(const MackeyDescriptor& d);
// 0 for W and its quotients, r + 1 for Phi^{C_{p^r}}.
int color_level(const MackeyDescriptor& d);

ChartPage e2_page(u64 p, RingKind kind, int max_col, int max_row);
ChartPage einf_page(u64 p, int max_col, int max_row);

}  // namespace prismslice

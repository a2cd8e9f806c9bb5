#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "prismslice/gold.hpp"
#include "prismslice/json.hpp"
#include "prismslice/prism.hpp"

namespace prismslice {

// A/(g_1, ..., g_r). An empty generator list is the free module A; a unit generator is the
// zero module. Generators are kept normalized: no zero elements, none divisible by another.
struct CyclicAModule {
  std::vector<AtomProduct> annihilator;

  static CyclicAModule free() { return {}; }
  static CyclicAModule zero_module() { return CyclicAModule{{AtomProduct::unit()}}; }
  static CyclicAModule quotient(std::vector<AtomProduct> gens);

  bool is_free() const { return annihilator.empty(); }
  bool is_zero() const;
  bool principal() const { return annihilator.size() <= 1; }
  // Single generator; the zero element for the free module. Throws unless principal.
  AtomProduct generator() const;
  // log_p of the order in the crystalline model, capped at M.
  unsigned crystalline_length(unsigned M) const;
  std::string to_string() const;
};

bool operator==(const CyclicAModule& a, const CyclicAModule& b);
Json to_json(const CyclicAModule& a);

// u_{i,j}^exponent
struct UnitFactor {
  unsigned i = 1;
  unsigned j = 1;
  int exponent = 1;
};

// An atom product times explicit units from the unit table.
struct Multiplier {
  AtomProduct atoms;
  std::vector<UnitFactor> units;

  static Multiplier one() { return {}; }
  static Multiplier of(AtomProduct a) { return {std::move(a), {}}; }
  std::string to_string() const;
};

Multiplier operator*(const Multiplier& a, const Multiplier& b);

struct MackeyTower {
  u64 p = 2;
  std::vector<CyclicAModule> levels;
  // res[k]: level k+1 -> level k; tr[k]: level k -> level k+1.
  std::vector<Multiplier> res;
  std::vector<Multiplier> tr;

  unsigned top() const { return unsigned(levels.size()) - 1; }
};

enum class MackeyKind { Zero, W, TrW, PhiW, ConstR, Quotient, TrPhi };

struct MackeyDescriptor {
  MackeyKind kind = MackeyKind::Zero;
  // TrW(r), PhiW(r), TrPhi(s, r) = tr_{C_{p^s}} Phi^{C_{p^r}} W
  int r = 0;
  int s = 0;
  std::shared_ptr<const MackeyDescriptor> inner;
  AtomProduct divisor;

  static MackeyDescriptor zero() { return {}; }
  static MackeyDescriptor W();
  static MackeyDescriptor trW(int r);
  // phiW(-1) is W.
  static MackeyDescriptor phiW(int r);
  static MackeyDescriptor constR();
  static MackeyDescriptor quotient(const MackeyDescriptor& inner, const AtomProduct& divisor);
  static MackeyDescriptor trPhi(int s, int r);

  bool is_zero() const { return kind == MackeyKind::Zero; }
  // Phi-level: -1 for W and its quotients and transfers, r for Phi^{C_{p^r}}.
  int phi_level() const;
  std::string to_string() const;
};

bool operator==(const MackeyDescriptor& a, const MackeyDescriptor& b);
Json to_json(const MackeyDescriptor& d);

CyclicAModule realize(const MackeyDescriptor& d, unsigned k);
MackeyTower realize_tower(const MackeyDescriptor& d, u64 p, unsigned n);

// Witt Mackey functor restricted to C_{p^n}.
MackeyTower witt_tower(u64 p, unsigned n);

// Ring model with a unit table large enough for towers up to level n.
struct MackeyRing {
  Model model;
  UnitTable units;
};

MackeyRing make_mackey_ring(const Model& base, unsigned n);
LocalQElem to_ring(const Multiplier& m, const MackeyRing& R);

// res * tr == p modulo the lower level at every step.
bool axiom_check(const MackeyTower& t, const MackeyRing& R);

struct ExactnessReport {
  bool ok = true;
  std::string detail;
};

// 0 -> A -f-> B -g-> C -> 0 levelwise, with f and g commuting with res and tr.
ExactnessReport exactness_report(const MackeyTower& A, const MackeyTower& B, const MackeyTower& C,
                                 const std::vector<Multiplier>& f, const std::vector<Multiplier>& g,
                                 const MackeyRing& R, std::uint64_t seed = 1);
bool exactness_check(const MackeyTower& A, const MackeyTower& B, const MackeyTower& C,
                     const std::vector<Multiplier>& f, const std::vector<Multiplier>& g, const MackeyRing& R);

// Levelwise inclusion tr_{C_{p^r}}W -> tr_{C_{p^s}}W for r <= s (s < 0 means W itself).
std::vector<Multiplier> transfer_inclusion(int r, int s, unsigned n);

struct MackeySequence {
  std::string name;
  MackeyTower A, B, C;
  std::vector<Multiplier> f, g;
};

// The three short exact sequences for C_{p^2}: tr_e W -> W -> Phi^e W,
// tr_{C_p} W -> W -> Phi^{C_p} W and tr_e W -> tr_{C_p} W -> Phi^e tr_{C_p} W.
std::vector<MackeySequence> example_sequences(u64 p);

}  // namespace prismslice

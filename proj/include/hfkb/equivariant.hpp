#pragma once

// The deck involution on the lifted complex, the Borel complex over F2[q]
// with differential d + (1 + tau)q, localized ranks, and the rank verdicts.

#include "hfkb/algebra.hpp"
#include "hfkb/cover.hpp"
#include "hfkb/floer.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hfkb {

class EquivariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Permutation of cover generators induced by tau.
std::vector<int> tau_sharp(const CoveredDiagram& c, const FloerComplex& complex);

// A cover generator as a pair of lifts of base generators, if it splits.
std::optional<std::pair<Generator, Generator>> decompose_generator(const CoveredDiagram& c, const Generator& x);

struct EquivariantBlock {
  int orbit = 0;
  long long alexander = 0;     // aligned, before normalization
  std::vector<int> generators;
  PolyMatrix total;            // d + (1 + tau) q on the block
};

struct EquivariantComplex {
  const FloerComplex* complex = nullptr;
  std::vector<int> tau;
  int canonical_class = -1;
  std::vector<int> class_orbit;                 // orbit id per spin^c class; orbit 0 is canonical
  std::vector<std::vector<int>> orbit_classes;
  std::vector<int> conjugate_class;             // tau_* on classes
  // Gradings with each class s-bar transported from s through tau.
  std::vector<long long> alexander;
  std::vector<long long> maslov;
  std::vector<EquivariantBlock> blocks;         // sorted by (orbit, alexander)
};

// Checks tau^2 = id, d tau = tau d, that tau permutes classes, and that
// (d + (1 + tau) q)^2 = 0 on every block. Violations throw with a witness.
EquivariantComplex build_equivariant(const CoveredDiagram& c, const FloerComplex& complex);

struct BlockReport {
  int orbit = 0;
  long long alexander = 0;  // normalized
  std::size_t dim = 0;
  std::size_t e1 = 0;
  std::size_t localized = 0;
};

struct OrbitReport {
  std::vector<int> classes;
  bool canonical = false;
  std::optional<long long> shift;  // Alexander normalization; nullopt if no symmetric shift exists
  Bigraded e1;                     // normalized (A, M) ranks of H(d) on the orbit
  long long e1_total = 0;
  long long hat_total = 0;         // per-class division by V, summed
  long long localized_total = 0;
  bool conjugate_ranks_equal = true;
};

struct BorelReport {
  int n = 0;
  std::vector<OrbitReport> orbits;  // orbit 0 is canonical
  std::vector<BlockReport> blocks;
  long long e1_total = 0;
  long long hat_total = 0;
  long long localized_total = 0;
  Bigraded canonical_hat;           // s0 hat ranks, normalized
};

BorelReport localized_ranks(const EquivariantComplex& e, int n);

struct Verdict {
  std::string name;
  bool holds = false;
  long long lhs = 0;
  long long rhs = 0;
  std::string detail;
};

// base_tilde: normalized tilde ranks of the base knot.
std::vector<Verdict> rank_verdicts(const Bigraded& base_tilde, int base_n, const BorelReport& cover);

}  // namespace hfkb

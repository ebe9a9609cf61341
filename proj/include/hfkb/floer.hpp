#pragma once

// Generators, spin^c classes, domains, Maslov index and the combinatorial
// differential of a nice multi-pointed Heegaard diagram; graded ranks of
// the tilde knot Floer homology.

#include "hfkb/algebra.hpp"
#include "hfkb/diagram.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace hfkb {

class FloerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotNiceError : public FloerError {
 public:
  explicit NotNiceError(std::vector<int> regions);
  const std::vector<int>& regions() const { return regions_; }

 private:
  std::vector<int> regions_;
};

// points[i] is the intersection point on the i-th alpha curve.
struct Generator {
  std::vector<int> points;
  auto operator<=>(const Generator&) const = default;
};

std::vector<Generator> enumerate_generators(const Diagram& d);

struct Domain {
  Generator from;
  Generator to;
  std::vector<long long> multiplicity;  // per region
};

// Integer system a_{L(e)} - a_{R(e)} - c_{curve(e)} = gamma_e over regions
// and curve coefficients. The pointed variant drops basepoint regions, so its
// solutions have n_w = n_z = 0.
class DomainSolver {
 public:
  DomainSolver(const Diagram& d, bool pointed);

  const Diagram& diagram() const { return *d_; }
  bool pointed() const { return pointed_; }

  // Invariant factors of the cokernel: the torsion part and free rank.
  std::vector<BigInt> torsion() const;
  std::size_t free_rank() const;

  // Coordinates of a 1-chain's class in the cokernel.
  std::vector<BigInt> chain_class(const std::vector<long long>& chain) const;
  // Region multiplicities solving the system for a 1-chain, if solvable.
  std::optional<std::vector<long long>> solve_chain(const std::vector<long long>& chain) const;

  // Class and scaled particular solution of the potential of a generator:
  // the chain formed by alpha arcs from each curve's first point minus beta
  // arcs likewise. Two generators are joined by a domain iff their labels
  // agree, and then the domain is (potential(y) - potential(x)) / scale().
  std::vector<BigInt> label(const Generator& x) const;
  std::vector<BigInt> potential(const Generator& x) const;
  const BigInt& scale() const { return scale_; }
  std::vector<long long> domain_from_potentials(const std::vector<BigInt>& px,
                                                const std::vector<BigInt>& py) const;

  // Integer basis of the periodic domains seen by this system.
  const std::vector<std::vector<long long>>& periodic_basis() const { return periodic_; }

 private:
  std::vector<BigInt> transform(const std::vector<long long>& chain) const;
  std::vector<long long> generator_chain(const Generator& x) const;

  const Diagram* d_;
  bool pointed_;
  std::vector<int> region_col_;  // column per region, -1 if dropped
  std::vector<int> col_region_;
  SmithForm snf_;
  BigInt scale_;
  std::vector<std::vector<long long>> periodic_;
};

// 1-chain of shorter alpha arcs x -> y and shorter beta arcs y -> x (ties
// broken toward increasing position), one coefficient per edge.
std::vector<long long> connecting_chain(const Diagram& d, const Generator& x, const Generator& y);

// Class of the connecting chain in H_1(S) / <curves>; zero iff x and y share
// a spin^c structure.
std::vector<BigInt> epsilon(const Diagram& d, const Generator& x, const Generator& y);
std::optional<Domain> domain_between(const Diagram& d, const Generator& x, const Generator& y);

// Four times the Maslov index (the formula has quarter-integer terms).
long long maslov_index_times4(const Diagram& d, const Domain& dom);
// Throws FloerError when the index is not an integer.
long long maslov_index(const Diagram& d, const Domain& dom);

struct BasepointCounts {
  long long w = 0;
  long long z = 0;
};
BasepointCounts basepoint_counts(const Diagram& d, const std::vector<long long>& multiplicity);

// (M(x) - M(y), A(x) - A(y)), or nullopt when x and y are not comparable.
std::optional<std::pair<long long, long long>> relative_gradings(const Diagram& d, const Generator& x,
                                                                 const Generator& y);

struct ComplexOptions {
  int max_domain_coeff = 0;  // <= 0: number of regions
};

struct FloerComplex {
  std::vector<Generator> generators;
  std::vector<int> spinc;                       // class id per generator, by first occurrence
  std::vector<std::vector<BigInt>> class_labels;
  std::vector<BigInt> torsion;                  // invariant factors > 1 of H_1(S)/<curves>
  std::size_t free_rank = 0;
  std::vector<long long> maslov;                // relative, anchored at 0 per class
  std::vector<long long> alexander;
  F2Matrix differential;                        // entry (y, x) for x -> y
  std::size_t bigons = 0;
  std::size_t rectangles = 0;

  std::size_t num_classes() const { return class_labels.size(); }
  int index_of(const Generator& g) const;
};

// Throws NotNiceError if the diagram is not nice, FloerError if d^2 != 0 or
// a grading inconsistency is found.
FloerComplex build_complex(const Diagram& d, const ComplexOptions& opts = {});

// (class, A, M) -> rank of homology.
using GradedRanks = std::map<std::tuple<int, long long, long long>, std::size_t>;
GradedRanks homology_ranks(const FloerComplex& c);

// Homology of the differential restricted to a generator subset that the
// differential preserves, graded by the given (A, M) per generator.
std::map<std::pair<long long, long long>, std::size_t> graded_homology(
    const F2Matrix& differential, const std::vector<int>& subset,
    const std::vector<long long>& alexander, const std::vector<long long>& maslov);

using Bigraded = std::map<std::pair<long long, long long>, long long>;  // (A, M) -> rank
using ByAlexander = std::map<long long, long long>;

ByAlexander collapse_maslov(const Bigraded& r);

// Shift s making rank(a + s) = rank(-(n-1) - (a + s)), or nullopt.
std::optional<long long> symmetric_shift(const ByAlexander& r, int n);
Bigraded shift_alexander(const Bigraded& r, long long s);

// Divide by V^(n-1), V with generators at (A, M) = (0, 0) and (-1, -1).
// Throws FloerError when the division is not exact and nonnegative.
Bigraded divide_by_v(const Bigraded& tilde, int n);

// Laurent polynomial as exponent -> coefficient.
using Laurent = std::map<long long, BigInt>;

struct AlexanderData {
  Laurent polynomial;
  BigInt determinant;
};
// Graded Euler characteristic divided by (1 - t^-1)^(n-1), normalized with
// Delta(1) = 1 and Delta(t) = Delta(1/t).
AlexanderData alexander_polynomial(const Bigraded& tilde, int n);
std::string to_string(const Laurent& p);

}  // namespace hfkb

#pragma once

// Double branched cover of a genus-0 diagram, branched at its basepoints,
// with the deck involution tau.

#include "hfkb/diagram.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hfkb {

class CoverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One bit per base edge; an edge with bit 1 crosses a branch cut.
using Monodromy = std::vector<std::uint8_t>;

// Solves the per-region parity system over GF(2): the bits around a region
// sum to 1 iff the region holds a basepoint. Free variables are set to 0.
Monodromy solve_monodromy(const Diagram& d);

// Empty string when m satisfies the region parities and gives every curve
// even total monodromy; otherwise a description of the first violation.
std::string check_monodromy(const Diagram& d, const Monodromy& m);

// Flip the bits of the edges at one point (a coboundary); parities are kept.
Monodromy gauge_shift(const Diagram& d, const Monodromy& m, int point);

struct CoveredDiagram {
  Diagram base;
  Diagram cover;
  Monodromy monodromy;
  // Projection to the base and sheet label of each cover cell. Regions over
  // a basepoint region have sheet -1.
  std::vector<int> point_base, point_sheet;
  std::vector<int> edge_base, edge_sheet;
  std::vector<int> region_base, region_sheet;
  std::vector<int> curve_base;
  // The deck involution.
  std::vector<int> tau_point, tau_edge, tau_region, tau_curve;
};

// Throws CoverError when the base is not genus 0 or m is inconsistent.
CoveredDiagram lift_diagram(const Diagram& d, const Monodromy& m);
CoveredDiagram lift_diagram(const Diagram& d);

// The cover in the diagram file format plus a [tau] section.
std::string serialize_cover(const CoveredDiagram& c);

}  // namespace hfkb

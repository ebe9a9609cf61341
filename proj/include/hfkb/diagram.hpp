#pragma once

// Combinatorial multi-pointed Heegaard diagrams: data model, validation,
// niceness and admissibility checks, grid and two-bridge constructors, and
// the line-oriented text format.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hfkb {

enum class CurveKind : std::uint8_t { alpha, beta };

// Sector at an intersection point, named by orienting the alpha curve east
// and the beta curve north: NE lies between alpha-forward and beta-forward.
enum class Quadrant : std::uint8_t { NE = 0, NW = 1, SW = 2, SE = 3 };

std::string_view to_string(Quadrant q);
std::optional<Quadrant> parse_quadrant(std::string_view s);

// A half-edge leaving an intersection point: along the alpha or beta curve,
// forward or backward relative to the curve's orientation.
struct HalfEdge {
  CurveKind kind;
  bool forward;
  bool operator==(const HalfEdge&) const = default;
};

// The sector bounded by two half-edges at the same point (one alpha, one beta).
std::optional<Quadrant> quadrant_between(HalfEdge a, HalfEdge b);

struct Curve {
  CurveKind kind;
  std::string name;
  std::vector<int> points;  // cyclic; edge k joins points[k] -> points[k+1]
  bool operator==(const Curve&) const = default;
};

struct IntersectionPoint {
  int alpha_curve = -1;
  int alpha_pos = -1;
  int beta_curve = -1;
  int beta_pos = -1;
};

struct BoundarySlot {
  int edge;
  bool forward;  // traversed along the curve orientation
  bool operator==(const BoundarySlot&) const = default;
};

struct Corner {
  int point;
  Quadrant quadrant;
  bool operator==(const Corner&) const = default;
};

// A disk region. The boundary is traversed with the region on the left;
// corners[k] sits between boundary[k] and boundary[k+1].
struct Region {
  std::vector<BoundarySlot> boundary;
  std::vector<Corner> corners;
  bool operator==(const Region&) const = default;
};

struct BasepointLabel {
  bool is_z = false;
  int index = 0;  // 1-based
  bool operator==(const BasepointLabel&) const = default;
  bool operator<(const BasepointLabel& o) const { return is_z != o.is_z ? !is_z : index < o.index; }
};

std::string to_string(const BasepointLabel& b);

struct EdgeInfo {
  int curve;
  int index;
  int from;
  int to;
};

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Curves determine the intersection points and edges; regions and
// basepoints are stored as given and checked by validate().
class Diagram {
 public:
  Diagram() = default;
  // Throws DiagramError when a point id is out of range or does not lie on
  // exactly one alpha and one beta curve.
  Diagram(std::vector<Curve> curves, std::vector<Region> regions,
          std::map<int, BasepointLabel> basepoints);

  const std::vector<Curve>& curves() const { return curves_; }
  const std::vector<IntersectionPoint>& points() const { return points_; }
  const std::vector<Region>& regions() const { return regions_; }
  const std::map<int, BasepointLabel>& basepoints() const { return basepoints_; }

  int num_points() const { return static_cast<int>(points_.size()); }
  int num_edges() const { return num_edges_; }
  int num_regions() const { return static_cast<int>(regions_.size()); }
  int euler_characteristic() const { return num_points() - num_edges() + num_regions(); }

  const std::vector<int>& alpha_curves() const { return alpha_curves_; }
  const std::vector<int>& beta_curves() const { return beta_curves_; }
  // Position of a curve within alpha_curves() or beta_curves().
  int curve_rank(int curve) const { return curve_rank_[curve]; }

  int edge_id(int curve, int index) const { return edge_offset_[curve] + index; }
  EdgeInfo edge(int id) const;
  int num_basepoint_pairs() const;
  bool has_basepoint(int region) const { return basepoints_.contains(region); }

  std::optional<int> region_with_label(const BasepointLabel& label) const;

  bool operator==(const Diagram& o) const {
    return curves_ == o.curves_ && regions_ == o.regions_ && basepoints_ == o.basepoints_;
  }

 private:
  std::vector<Curve> curves_;
  std::vector<Region> regions_;
  std::map<int, BasepointLabel> basepoints_;
  std::vector<IntersectionPoint> points_;
  std::vector<int> edge_offset_;
  std::vector<int> edge_curve_;
  std::vector<int> alpha_curves_;
  std::vector<int> beta_curves_;
  std::vector<int> curve_rank_;
  int num_edges_ = 0;
};

// Integer basis of periodic domains (2-chains whose boundary is a sum of
// whole curves), optionally restricted to those avoiding basepoint regions.
std::vector<std::vector<long long>> periodic_domain_basis(const Diagram& d, bool avoid_basepoints);

// Left and right region of each edge; -1 where the side is missing.
struct EdgeSides {
  std::vector<int> left;
  std::vector<int> right;
};
EdgeSides edge_sides(const Diagram& d);

// Region holding each quadrant of each point; -1 where missing.
std::vector<std::array<int, 4>> corner_regions(const Diagram& d);

// Components of S minus the curves of one kind: regions merged across edges
// of the other kind. Returns a component index per region.
std::vector<int> complement_components(const Diagram& d, CurveKind removed);

struct ValidationIssue {
  std::string code;  // e.g. "edge-side count"
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  int euler_characteristic = 0;
  int genus = -1;
  int basepoint_pairs = 0;
  std::vector<ValidationIssue> issues;
  std::string summary() const;
};

ValidationReport validate(const Diagram& d);

struct NiceReport {
  bool nice = true;
  std::vector<int> offending_regions;
};
NiceReport is_nice(const Diagram& d);

struct AdmissibilityReport {
  bool weakly_admissible = true;
  int lattice_rank = 0;          // rank of basepoint-avoiding periodic domains
  bool basis_mixed_signs = true; // every basis vector has both signs
  std::vector<long long> witness;  // a nonnegative periodic domain, if found
};
// Bounded search over the basepoint-avoiding periodic lattice. coefficient
// bound <= 0 means "number of regions".
AdmissibilityReport is_weakly_admissible(const Diagram& d, int coefficient_bound = 0);

// Build a diagram from curves and a counter-clockwise rotation system: for
// each point, the four half-edges in counter-clockwise order. Regions are
// traced as faces; basepoints are attached afterwards.
Diagram diagram_from_rotation(std::vector<Curve> curves,
                              const std::vector<std::array<HalfEdge, 4>>& rotation);
Diagram with_basepoints(const Diagram& d, std::map<int, BasepointLabel> basepoints);

// n x n toroidal grid; x_rows[c] and o_rows[c] give the (1-based) row of the
// X and O marking in column c.
struct GridSpec {
  int size = 0;
  std::vector<int> x_rows;
  std::vector<int> o_rows;
};

Diagram from_grid(const GridSpec& g);
// Region of the grid square whose lower-left corner is point (row, col).
int grid_square(const Diagram& grid, int row, int col);

// Two-bridge knot b(p, q): p odd, 0 < q < p, gcd(p, q) = 1.
struct BridgeSpec {
  int p = 1;
  int q = 1;
};

Diagram two_bridge(const BridgeSpec& b);

// Text format, see README.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Diagram parse_diagram(std::string_view text);
std::string serialize_diagram(const Diagram& d);
GridSpec parse_grid(std::string_view text);
std::string serialize_grid(const GridSpec& g);

}  // namespace hfkb

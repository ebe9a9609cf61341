#include "hfkb/diagram.hpp"

#include "hfkb/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace hfkb {

std::string_view to_string(Quadrant q) {
  switch (q) {
    case Quadrant::NE: return "NE";
    case Quadrant::NW: return "NW";
    case Quadrant::SW: return "SW";
    case Quadrant::SE: return "SE";
  }
  return "?";
}

std::optional<Quadrant> parse_quadrant(std::string_view s) {
  if (s == "NE") return Quadrant::NE;
  if (s == "NW") return Quadrant::NW;
  if (s == "SW") return Quadrant::SW;
  if (s == "SE") return Quadrant::SE;
  return std::nullopt;
}

std::optional<Quadrant> quadrant_between(HalfEdge a, HalfEdge b) {
  if (a.kind == b.kind) return std::nullopt;
  const HalfEdge alpha = a.kind == CurveKind::alpha ? a : b;
  const HalfEdge beta = a.kind == CurveKind::alpha ? b : a;
  if (alpha.forward) return beta.forward ? Quadrant::NE : Quadrant::SE;
  return beta.forward ? Quadrant::NW : Quadrant::SW;
}

std::string to_string(const BasepointLabel& b) {
  return (b.is_z ? "z" : "w") + std::to_string(b.index);
}

// ---------------------------------------------------------------------------
// Diagram

Diagram::Diagram(std::vector<Curve> curves, std::vector<Region> regions,
                 std::map<int, BasepointLabel> basepoints)
    : curves_(std::move(curves)), regions_(std::move(regions)), basepoints_(std::move(basepoints)) {
  int max_point = -1;
  for (const auto& c : curves_) {
    if (c.points.empty()) throw DiagramError("curve " + c.name + " has no intersection points");
    for (int p : c.points) {
      if (p < 0) throw DiagramError("negative point id on curve " + c.name);
      max_point = std::max(max_point, p);
    }
  }
  points_.assign(static_cast<std::size_t>(max_point + 1), IntersectionPoint{});
  curve_rank_.assign(curves_.size(), -1);
  edge_offset_.assign(curves_.size(), 0);
  for (std::size_t ci = 0; ci < curves_.size(); ++ci) {
    const auto& c = curves_[ci];
    const int cid = static_cast<int>(ci);
    if (c.kind == CurveKind::alpha) {
      curve_rank_[ci] = static_cast<int>(alpha_curves_.size());
      alpha_curves_.push_back(cid);
    } else {
      curve_rank_[ci] = static_cast<int>(beta_curves_.size());
      beta_curves_.push_back(cid);
    }
    edge_offset_[ci] = num_edges_;
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      auto& pt = points_[static_cast<std::size_t>(c.points[k])];
      int& curve_slot = c.kind == CurveKind::alpha ? pt.alpha_curve : pt.beta_curve;
      int& pos_slot = c.kind == CurveKind::alpha ? pt.alpha_pos : pt.beta_pos;
      if (curve_slot != -1) {
        throw DiagramError("point " + std::to_string(c.points[k]) + " lies on two " +
                           (c.kind == CurveKind::alpha ? "alpha" : "beta") + " curves (or twice on one)");
      }
      curve_slot = cid;
      pos_slot = static_cast<int>(k);
      edge_curve_.push_back(cid);
    }
    num_edges_ += static_cast<int>(c.points.size());
  }
  for (std::size_t p = 0; p < points_.size(); ++p) {
    if (points_[p].alpha_curve < 0 || points_[p].beta_curve < 0) {
      throw DiagramError("point " + std::to_string(p) + " is not on exactly one alpha and one beta curve");
    }
  }
}

EdgeInfo Diagram::edge(int id) const {
  const int c = edge_curve_[static_cast<std::size_t>(id)];
  const int k = id - edge_offset_[static_cast<std::size_t>(c)];
  const auto& pts = curves_[static_cast<std::size_t>(c)].points;
  return {c, k, pts[static_cast<std::size_t>(k)], pts[(static_cast<std::size_t>(k) + 1) % pts.size()]};
}

int Diagram::num_basepoint_pairs() const {
  int w = 0;
  for (const auto& [r, b] : basepoints_) w += b.is_z ? 0 : 1;
  return w;
}

std::optional<int> Diagram::region_with_label(const BasepointLabel& label) const {
  for (const auto& [r, b] : basepoints_) {
    if (b == label) return r;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Derived structure

EdgeSides edge_sides(const Diagram& d) {
  EdgeSides s{std::vector<int>(static_cast<std::size_t>(d.num_edges()), -1),
              std::vector<int>(static_cast<std::size_t>(d.num_edges()), -1)};
  for (int r = 0; r < d.num_regions(); ++r) {
    for (const auto& slot : d.regions()[static_cast<std::size_t>(r)].boundary) {
      if (slot.edge < 0 || slot.edge >= d.num_edges()) continue;
      (slot.forward ? s.left : s.right)[static_cast<std::size_t>(slot.edge)] = r;
    }
  }
  return s;
}

std::vector<std::array<int, 4>> corner_regions(const Diagram& d) {
  std::vector<std::array<int, 4>> out(static_cast<std::size_t>(d.num_points()), {-1, -1, -1, -1});
  for (int r = 0; r < d.num_regions(); ++r) {
    for (const auto& c : d.regions()[static_cast<std::size_t>(r)].corners) {
      if (c.point < 0 || c.point >= d.num_points()) continue;
      out[static_cast<std::size_t>(c.point)][static_cast<std::size_t>(c.quadrant)] = r;
    }
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

CurveKind edge_kind(const Diagram& d, int edge) {
  return d.curves()[static_cast<std::size_t>(d.edge(edge).curve)].kind;
}

}  // namespace

std::vector<int> complement_components(const Diagram& d, CurveKind removed) {
  UnionFind uf(d.num_regions());
  const auto sides = edge_sides(d);
  for (int e = 0; e < d.num_edges(); ++e) {
    if (edge_kind(d, e) == removed) continue;
    const int l = sides.left[static_cast<std::size_t>(e)];
    const int r = sides.right[static_cast<std::size_t>(e)];
    if (l >= 0 && r >= 0) uf.unite(l, r);
  }
  std::vector<int> comp(static_cast<std::size_t>(d.num_regions()), -1);
  std::map<int, int> ids;
  for (int r = 0; r < d.num_regions(); ++r) {
    const int root = uf.find(r);
    auto [it, inserted] = ids.emplace(root, static_cast<int>(ids.size()));
    comp[static_cast<std::size_t>(r)] = it->second;
  }
  return comp;
}

// ---------------------------------------------------------------------------
// Validation

std::string ValidationReport::summary() const {
  std::ostringstream os;
  if (ok) {
    os << "valid: chi=" << euler_characteristic << " genus=" << genus << " n=" << basepoint_pairs;
    return os.str();
  }
  os << issues.size() << " issue(s):";
  for (const auto& i : issues) os << "\n  [" << i.code << "] " << i.message;
  return os.str();
}

ValidationReport validate(const Diagram& d) {
  ValidationReport rep;
  auto fail = [&](std::string code, std::string msg) {
    rep.ok = false;
    rep.issues.push_back({std::move(code), std::move(msg)});
  };
  const auto& regions = d.regions();
  const auto& curves = d.curves();

  // Per-region shape, edge range, alternation, corner consistency.
  for (std::size_t r = 0; r < regions.size(); ++r) {
    const auto& reg = regions[r];
    const std::string rid = "region " + std::to_string(r);
    if (reg.boundary.empty() || reg.boundary.size() != reg.corners.size()) {
      fail("region shape", rid + " must have one corner per boundary slot");
      continue;
    }
    bool in_range = true;
    for (const auto& s : reg.boundary) {
      if (s.edge < 0 || s.edge >= d.num_edges()) {
        fail("edge range", rid + " references edge " + std::to_string(s.edge));
        in_range = false;
      }
    }
    for (const auto& c : reg.corners) {
      if (c.point < 0 || c.point >= d.num_points()) {
        fail("corner range", rid + " references point " + std::to_string(c.point));
        in_range = false;
      }
    }
    if (!in_range) continue;
    const std::size_t len = reg.boundary.size();
    for (std::size_t k = 0; k < len; ++k) {
      const auto& cur = reg.boundary[k];
      const auto& nxt = reg.boundary[(k + 1) % len];
      const CurveKind ck = edge_kind(d, cur.edge);
      const CurveKind nk = edge_kind(d, nxt.edge);
      if (ck == nk) {
        fail("alternation", rid + " has consecutive edges " + std::to_string(cur.edge) + ", " +
                                std::to_string(nxt.edge) + " on the same curve family");
        continue;
      }
      const EdgeInfo ce = d.edge(cur.edge);
      const EdgeInfo ne = d.edge(nxt.edge);
      const int end = cur.forward ? ce.to : ce.from;
      const int start = nxt.forward ? ne.from : ne.to;
      const Corner& corner = reg.corners[k];
      const auto expected = quadrant_between(HalfEdge{ck, !cur.forward}, HalfEdge{nk, nxt.forward});
      if (end != start || corner.point != end || !expected || *expected != corner.quadrant) {
        fail("corner consistency", rid + " corner " + std::to_string(k) + " (point " +
                                       std::to_string(corner.point) + " " +
                                       std::string(to_string(corner.quadrant)) +
                                       ") does not match its boundary word");
      }
    }
  }

  // Edge sides.
  std::vector<int> fwd(static_cast<std::size_t>(d.num_edges()), 0);
  std::vector<int> bwd(static_cast<std::size_t>(d.num_edges()), 0);
  for (const auto& reg : regions) {
    for (const auto& s : reg.boundary) {
      if (s.edge < 0 || s.edge >= d.num_edges()) continue;
      ++(s.forward ? fwd : bwd)[static_cast<std::size_t>(s.edge)];
    }
  }
  for (int e = 0; e < d.num_edges(); ++e) {
    if (fwd[static_cast<std::size_t>(e)] != 1 || bwd[static_cast<std::size_t>(e)] != 1) {
      const auto info = d.edge(e);
      fail("edge-side count", "edge " + curves[static_cast<std::size_t>(info.curve)].name + "." +
                                  std::to_string(info.index) + " used " +
                                  std::to_string(fwd[static_cast<std::size_t>(e)]) + " time(s) forward and " +
                                  std::to_string(bwd[static_cast<std::size_t>(e)]) + " time(s) backward");
    }
  }

  // Corner slots.
  std::vector<std::array<int, 4>> seen(static_cast<std::size_t>(d.num_points()), {0, 0, 0, 0});
  for (const auto& reg : regions) {
    for (const auto& c : reg.corners) {
      if (c.point < 0 || c.point >= d.num_points()) continue;
      ++seen[static_cast<std::size_t>(c.point)][static_cast<std::size_t>(c.quadrant)];
    }
  }
  for (int p = 0; p < d.num_points(); ++p) {
    for (int q = 0; q < 4; ++q) {
      const int n = seen[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
      if (n != 1) {
        fail("corner count", "point " + std::to_string(p) + " quadrant " +
                                 std::string(to_string(static_cast<Quadrant>(q))) + " appears " +
                                 std::to_string(n) + " time(s)");
      }
    }
  }

  // Euler characteristic and curve counts.
  rep.euler_characteristic = d.euler_characteristic();
  const int chi = rep.euler_characteristic;
  if (chi > 2 || chi % 2 != 0) {
    fail("euler characteristic", "V - E + F = " + std::to_string(chi) + " is not 2 - 2g");
  } else {
    rep.genus = (2 - chi) / 2;
  }

  // Basepoint labels.
  std::set<int> w_labels, z_labels;
  for (const auto& [r, b] : d.basepoints()) {
    if (r < 0 || r >= d.num_regions()) {
      fail("basepoint labels", "basepoint " + to_string(b) + " placed in missing region " + std::to_string(r));
      continue;
    }
    auto& set = b.is_z ? z_labels : w_labels;
    if (!set.insert(b.index).second) fail("basepoint labels", "duplicate label " + to_string(b));
  }
  const int n = static_cast<int>(w_labels.size());
  rep.basepoint_pairs = n;
  auto contiguous = [](const std::set<int>& s) {
    int k = 1;
    for (int v : s) {
      if (v != k++) return false;
    }
    return true;
  };
  if (n == 0 || static_cast<int>(z_labels.size()) != n || !contiguous(w_labels) || !contiguous(z_labels)) {
    fail("basepoint labels", "basepoints must be w1..wn and z1..zn with n >= 1");
  }
  const int na = static_cast<int>(d.alpha_curves().size());
  const int nb = static_cast<int>(d.beta_curves().size());
  if (rep.genus >= 0 && (na != nb || na != rep.genus + n - 1)) {
    fail("curve count", std::to_string(na) + " alpha and " + std::to_string(nb) +
                            " beta curves; expected g + n - 1 = " + std::to_string(rep.genus + n - 1));
  }

  // Components of the complement of each curve family.
  if (rep.ok) {
    for (CurveKind removed : {CurveKind::alpha, CurveKind::beta}) {
      const auto comp = complement_components(d, removed);
      const int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
      std::vector<int> ws(static_cast<std::size_t>(ncomp), 0), zs(static_cast<std::size_t>(ncomp), 0);
      for (const auto& [r, b] : d.basepoints()) ++(b.is_z ? zs : ws)[static_cast<std::size_t>(comp[static_cast<std::size_t>(r)])];
      const std::string code = removed == CurveKind::alpha ? "alpha component basepoints" : "beta component basepoints";
      for (int c = 0; c < ncomp; ++c) {
        if (ws[static_cast<std::size_t>(c)] != 1 || zs[static_cast<std::size_t>(c)] != 1) {
          fail(code, "component " + std::to_string(c) + " holds " + std::to_string(ws[static_cast<std::size_t>(c)]) +
                         " w and " + std::to_string(zs[static_cast<std::size_t>(c)]) + " z basepoints");
        }
      }
    }
  }
  return rep;
}

NiceReport is_nice(const Diagram& d) {
  NiceReport rep;
  for (int r = 0; r < d.num_regions(); ++r) {
    if (d.has_basepoint(r)) continue;
    const std::size_t c = d.regions()[static_cast<std::size_t>(r)].corners.size();
    if (c != 2 && c != 4) {
      rep.nice = false;
      rep.offending_regions.push_back(r);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Periodic domains and admissibility

std::vector<std::vector<long long>> periodic_domain_basis(const Diagram& d, bool avoid_basepoints) {
  std::vector<int> region_cols;
  for (int r = 0; r < d.num_regions(); ++r) {
    if (!(avoid_basepoints && d.has_basepoint(r))) region_cols.push_back(r);
  }
  const auto sides = edge_sides(d);
  const std::size_t nr = region_cols.size();
  const std::size_t nc = d.curves().size();
  ZMatrix b(static_cast<std::size_t>(d.num_edges()), nr + nc);
  std::vector<int> col_of(static_cast<std::size_t>(d.num_regions()), -1);
  for (std::size_t i = 0; i < nr; ++i) col_of[static_cast<std::size_t>(region_cols[i])] = static_cast<int>(i);
  for (int e = 0; e < d.num_edges(); ++e) {
    const auto ue = static_cast<std::size_t>(e);
    const int l = sides.left[ue];
    const int r = sides.right[ue];
    if (l >= 0 && col_of[static_cast<std::size_t>(l)] >= 0) b(ue, static_cast<std::size_t>(col_of[static_cast<std::size_t>(l)])) += 1;
    if (r >= 0 && col_of[static_cast<std::size_t>(r)] >= 0) b(ue, static_cast<std::size_t>(col_of[static_cast<std::size_t>(r)])) -= 1;
    b(ue, nr + static_cast<std::size_t>(d.edge(e).curve)) -= 1;
  }
  const SmithForm snf = smith_form(b);
  std::vector<std::vector<long long>> basis;
  for (std::size_t j = snf.rank; j < nr + nc; ++j) {
    std::vector<long long> v(static_cast<std::size_t>(d.num_regions()), 0);
    for (std::size_t i = 0; i < nr; ++i) {
      const BigInt& x = snf.right(i, j);
      if (x > BigInt(std::numeric_limits<long long>::max()) || x < BigInt(std::numeric_limits<long long>::min())) {
        throw AlgebraError("periodic domain coefficient exceeds 64 bits");
      }
      v[static_cast<std::size_t>(region_cols[i])] = static_cast<long long>(x);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

// Depth-first search over coefficient vectors in [-bound, bound]^k for a
// nonzero combination with all entries >= 0. Coordinates not touched by the
// remaining basis vectors are checked as soon as they are final.
bool search_nonnegative(const std::vector<std::vector<long long>>& basis, int bound,
                        std::vector<long long>& witness) {
  const std::size_t k = basis.size();
  if (k == 0) return false;
  const std::size_t len = basis[0].size();
  // last[i] = index of the last basis vector with a nonzero entry at i.
  std::vector<int> last(len, -1);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < len; ++i) {
      if (basis[j][i] != 0) last[i] = static_cast<int>(j);
    }
  }
  std::vector<long long> acc(len, 0);
  std::vector<long long> coeff(k, 0);
  bool found = false;
  auto rec = [&](auto&& self, std::size_t j, bool nonzero) -> void {
    if (found) return;
    if (j == k) {
      if (nonzero && std::any_of(acc.begin(), acc.end(), [](long long v) { return v != 0; })) {
        found = true;
        witness = acc;
      }
      return;
    }
    for (long long c = -bound; c <= bound && !found; ++c) {
      for (std::size_t i = 0; i < len; ++i) acc[i] += c * basis[j][i];
      bool ok = true;
      for (std::size_t i = 0; i < len && ok; ++i) {
        if (last[i] == static_cast<int>(j) && acc[i] < 0) ok = false;
      }
      if (ok) {
        coeff[j] = c;
        self(self, j + 1, nonzero || c != 0);
      }
      for (std::size_t i = 0; i < len; ++i) acc[i] -= c * basis[j][i];
    }
  };
  rec(rec, 0, false);
  return found;
}

}  // namespace

AdmissibilityReport is_weakly_admissible(const Diagram& d, int coefficient_bound) {
  AdmissibilityReport rep;
  const auto basis = periodic_domain_basis(d, true);
  rep.lattice_rank = static_cast<int>(basis.size());
  for (const auto& v : basis) {
    const bool pos = std::any_of(v.begin(), v.end(), [](long long x) { return x > 0; });
    const bool neg = std::any_of(v.begin(), v.end(), [](long long x) { return x < 0; });
    if (!(pos && neg)) rep.basis_mixed_signs = false;
  }
  const int bound = coefficient_bound > 0 ? coefficient_bound : d.num_regions();
  std::vector<long long> witness;
  if (search_nonnegative(basis, bound, witness)) {
    rep.weakly_admissible = false;
    rep.witness = std::move(witness);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Face tracing

Diagram diagram_from_rotation(std::vector<Curve> curves,
                              const std::vector<std::array<HalfEdge, 4>>& rotation) {
  const Diagram skeleton(curves, {}, {});
  const int ne = skeleton.num_edges();
  if (static_cast<int>(rotation.size()) != skeleton.num_points()) {
    throw DiagramError("rotation system size does not match point count");
  }
  auto rot_index = [&](int p, HalfEdge h) {
    const auto& rot = rotation[static_cast<std::size_t>(p)];
    for (int i = 0; i < 4; ++i) {
      if (rot[static_cast<std::size_t>(i)] == h) return i;
    }
    throw DiagramError("rotation at point " + std::to_string(p) + " misses a half-edge");
  };
  // The edge leaving point p along half-edge h.
  auto slot_from = [&](int p, HalfEdge h) {
    const auto& pt = skeleton.points()[static_cast<std::size_t>(p)];
    const int c = h.kind == CurveKind::alpha ? pt.alpha_curve : pt.beta_curve;
    const int pos = h.kind == CurveKind::alpha ? pt.alpha_pos : pt.beta_pos;
    const int len = static_cast<int>(skeleton.curves()[static_cast<std::size_t>(c)].points.size());
    const int idx = h.forward ? pos : (pos + len - 1) % len;
    return BoundarySlot{skeleton.edge_id(c, idx), h.forward};
  };
  std::vector<std::array<bool, 2>> visited(static_cast<std::size_t>(ne), {false, false});
  std::vector<Region> regions;
  for (int e = 0; e < ne; ++e) {
    for (bool dir : {true, false}) {
      if (visited[static_cast<std::size_t>(e)][dir ? 0 : 1]) continue;
      Region reg;
      BoundarySlot slot{e, dir};
      do {
        visited[static_cast<std::size_t>(slot.edge)][slot.forward ? 0 : 1] = true;
        reg.boundary.push_back(slot);
        const EdgeInfo info = skeleton.edge(slot.edge);
        const CurveKind kind = skeleton.curves()[static_cast<std::size_t>(info.curve)].kind;
        const int end = slot.forward ? info.to : info.from;
        const HalfEdge in{kind, !slot.forward};
        const HalfEdge out = rotation[static_cast<std::size_t>(end)][static_cast<std::size_t>((rot_index(end, in) + 3) % 4)];
        const auto q = quadrant_between(in, out);
        if (!q) throw DiagramError("rotation at point " + std::to_string(end) + " is not alternating");
        reg.corners.push_back({end, *q});
        slot = slot_from(end, out);
      } while (!(slot.edge == e && slot.forward == dir));
      regions.push_back(std::move(reg));
    }
  }
  return Diagram(std::move(curves), std::move(regions), {});
}

Diagram with_basepoints(const Diagram& d, std::map<int, BasepointLabel> basepoints) {
  return Diagram(d.curves(), d.regions(), std::move(basepoints));
}

// ---------------------------------------------------------------------------
// Grid diagrams

namespace {

bool is_permutation_of_1_to_n(const std::vector<int>& v, int n) {
  if (static_cast<int>(v.size()) != n) return false;
  std::vector<int> s = v;
  std::sort(s.begin(), s.end());
  for (int i = 0; i < n; ++i) {
    if (s[static_cast<std::size_t>(i)] != i + 1) return false;
  }
  return true;
}

}  // namespace

Diagram from_grid(const GridSpec& g) {
  const int n = g.size;
  if (n < 2) throw DiagramError("grid size must be at least 2");
  if (!is_permutation_of_1_to_n(g.x_rows, n) || !is_permutation_of_1_to_n(g.o_rows, n)) {
    throw DiagramError("grid markings must be permutations of 1.." + std::to_string(n));
  }
  for (int c = 0; c < n; ++c) {
    if (g.x_rows[static_cast<std::size_t>(c)] == g.o_rows[static_cast<std::size_t>(c)]) {
      throw DiagramError("column " + std::to_string(c + 1) + " has X and O in the same square");
    }
  }
  auto pid = [n](int row, int col) { return row * n + col; };
  std::vector<Curve> curves;
  for (int r = 0; r < n; ++r) {
    Curve c{CurveKind::alpha, "a" + std::to_string(r), {}};
    for (int col = 0; col < n; ++col) c.points.push_back(pid(r, col));
    curves.push_back(std::move(c));
  }
  for (int col = 0; col < n; ++col) {
    Curve c{CurveKind::beta, "b" + std::to_string(col), {}};
    for (int r = 0; r < n; ++r) c.points.push_back(pid(r, col));
    curves.push_back(std::move(c));
  }
  const std::array<HalfEdge, 4> rot{HalfEdge{CurveKind::alpha, true}, HalfEdge{CurveKind::beta, true},
                                    HalfEdge{CurveKind::alpha, false}, HalfEdge{CurveKind::beta, false}};
  Diagram bare = diagram_from_rotation(std::move(curves), std::vector<std::array<HalfEdge, 4>>(static_cast<std::size_t>(n * n), rot));

  // Label markings along the knot: O in a column, up to the X in that
  // column, across to the O in that row, and so on.
  std::map<int, BasepointLabel> bps;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  int col = 0;
  for (int k = 1; k <= n; ++k) {
    if (used[static_cast<std::size_t>(col)]) throw DiagramError("grid markings describe a link, not a knot");
    used[static_cast<std::size_t>(col)] = true;
    const int orow = g.o_rows[static_cast<std::size_t>(col)] - 1;
    const int xrow = g.x_rows[static_cast<std::size_t>(col)] - 1;
    bps[grid_square(bare, orow, col)] = {false, k};
    bps[grid_square(bare, xrow, col)] = {true, k};
    const auto it = std::find(g.o_rows.begin(), g.o_rows.end(), xrow + 1);
    col = static_cast<int>(it - g.o_rows.begin());
  }
  if (col != 0) throw DiagramError("grid markings describe a link, not a knot");
  return with_basepoints(bare, std::move(bps));
}

int grid_square(const Diagram& grid, int row, int col) {
  const int n = static_cast<int>(grid.alpha_curves().size());
  const int p = row * n + col;
  const auto corners = corner_regions(grid);
  return corners[static_cast<std::size_t>(p)][static_cast<std::size_t>(Quadrant::NE)];
}

// ---------------------------------------------------------------------------
// Two-bridge diagrams
//
// The pillowcase picture: on the torus R^2/Z^2 take the horizontal lines
// y = 1/4, 3/4 and the lines p*x - q*y = 1/4, 3/4 of direction (q, p). The
// involution v -> -v swaps the two lines of each family; its four fixed
// points become the basepoints of the quotient sphere. Coordinates are
// scaled by 4p so all positions are integers.

Diagram two_bridge(const BridgeSpec& b) {
  const int p = b.p;
  const int q = b.q;
  if (p < 1 || p % 2 == 0) throw DiagramError("two-bridge p must be odd and positive");
  if (q < 1 || (q >= p && !(p == 1 && q == 1))) throw DiagramError("two-bridge q must satisfy 0 < q < p");
  if (std::gcd(p, q) != 1) throw DiagramError("two-bridge p and q must be coprime");
  const int scale = 4 * p;

  struct TorusPoint {
    int line;   // horizontal line: 0 for y = 1/4, 1 for y = 3/4
    int slope;  // sloped line: 0 for value 1/4, 1 for 3/4
    int t;      // position along the sloped line, in [0, 4p)
    int x;      // scaled x coordinate, in [0, 4p)
  };
  std::vector<TorusPoint> torus;
  for (int line = 0; line < 2; ++line) {
    for (int slope = 0; slope < 2; ++slope) {
      for (int m = 0; m < p; ++m) {
        const int t = (1 + 2 * line) + 4 * m;
        const int x = ((1 + 2 * slope) + q * t) % scale;
        torus.push_back({line, slope, t, x});
      }
    }
  }
  auto find_torus = [&](int line, int x) {
    for (std::size_t i = 0; i < torus.size(); ++i) {
      if (torus[i].line == line && torus[i].x == x) return i;
    }
    throw DiagramError("two-bridge construction: involution image not found");
  };
  auto involution = [&](std::size_t i) {
    return find_torus(1 - torus[i].line, (scale - torus[i].x) % scale);
  };

  // Orbit representatives are the points on the line y = 1/4, numbered by x.
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < torus.size(); ++i) {
    if (torus[i].line == 0) reps.push_back(i);
  }
  std::sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t c) { return torus[a].x < torus[c].x; });
  std::vector<int> base_id(torus.size(), -1);
  for (std::size_t k = 0; k < reps.size(); ++k) base_id[reps[k]] = static_cast<int>(k);
  for (std::size_t i = 0; i < torus.size(); ++i) {
    if (base_id[i] < 0) base_id[i] = base_id[involution(i)];
  }

  Curve alpha{CurveKind::alpha, "a0", {}};
  for (std::size_t k = 0; k < reps.size(); ++k) alpha.points.push_back(static_cast<int>(k));
  std::vector<std::size_t> along;
  for (std::size_t i = 0; i < torus.size(); ++i) {
    if (torus[i].slope == 0) along.push_back(i);
  }
  std::sort(along.begin(), along.end(), [&](std::size_t a, std::size_t c) { return torus[a].t < torus[c].t; });
  Curve beta{CurveKind::beta, "b0", {}};
  for (std::size_t i : along) beta.points.push_back(base_id[i]);

  // Representatives on the second sloped line see the quotient beta curve
  // running backwards.
  std::vector<std::array<HalfEdge, 4>> rotation(reps.size());
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const bool same = torus[reps[k]].slope == 0;
    rotation[k] = {HalfEdge{CurveKind::alpha, true}, HalfEdge{CurveKind::beta, same},
                   HalfEdge{CurveKind::alpha, false}, HalfEdge{CurveKind::beta, !same}};
  }
  Diagram bare = diagram_from_rotation({alpha, beta}, rotation);

  // The four bigons are the basepoint regions. Label them so that each side
  // of alpha and each side of beta holds one w and one z.
  std::vector<int> bigons;
  for (int r = 0; r < bare.num_regions(); ++r) {
    if (bare.regions()[static_cast<std::size_t>(r)].corners.size() == 2) bigons.push_back(r);
  }
  if (bigons.size() != 4) throw DiagramError("two-bridge construction: expected four bigons");
  const auto acomp = complement_components(bare, CurveKind::alpha);
  const auto bcomp = complement_components(bare, CurveKind::beta);
  auto other = [&](int r, bool same_alpha_side) {
    for (int s : bigons) {
      if (s == r) continue;
      if (same_alpha_side && acomp[static_cast<std::size_t>(s)] == acomp[static_cast<std::size_t>(r)]) return s;
      if (!same_alpha_side && bcomp[static_cast<std::size_t>(s)] == bcomp[static_cast<std::size_t>(r)]) return s;
    }
    throw DiagramError("two-bridge construction: basepoint regions are not separated");
  };
  const int w1 = bigons[0];
  const int z1 = other(w1, true);
  const int w2 = other(z1, false);
  const int z2 = other(w2, true);
  std::map<int, BasepointLabel> bps{{w1, {false, 1}}, {z1, {true, 1}}, {w2, {false, 2}}, {z2, {true, 2}}};
  if (bps.size() != 4) throw DiagramError("two-bridge construction: basepoint regions collide");
  return with_basepoints(bare, std::move(bps));
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

int parse_int(std::string_view tok, int line, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(std::string(tok), &used);
    if (used != tok.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer " + what + ", got '" + std::string(tok) + "'");
  }
}

struct Line {
  int number;
  std::string_view text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (!raw.empty()) out.push_back({number, raw});
  }
  return out;
}

}  // namespace

Diagram parse_diagram(std::string_view text) {
  enum class Section { none, curves, regions, basepoints, other };
  Section section = Section::none;
  bool saw_curves = false;
  std::vector<Curve> curves;
  std::map<std::string, int> curve_ids;
  struct PendingRegion {
    int line;
    int id;
    std::vector<std::pair<std::string, bool>> edges;  // (curve.index, forward)
    std::vector<int> edge_lines;
    std::vector<Corner> corners;
  };
  std::vector<PendingRegion> pending;
  std::vector<std::pair<int, std::pair<int, BasepointLabel>>> bps;

  for (const auto& [number, line] : content_lines(text)) {
    if (line.front() == '[') {
      if (line == "[curves]") section = Section::curves, saw_curves = true;
      else if (line == "[regions]") section = Section::regions;
      else if (line == "[basepoints]") section = Section::basepoints;
      else if (line.back() == ']') section = Section::other;  // e.g. [tau], read elsewhere
      else throw ParseError(number, "malformed section header");
      continue;
    }
    switch (section) {
      case Section::none:
        throw ParseError(number, "content before any section header");
      case Section::other:
        break;
      case Section::curves: {
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(number, "curve line needs ':'");
        const auto head = tokens(line.substr(0, colon));
        if (head.size() != 2 || (head[0] != "alpha" && head[0] != "beta")) {
          throw ParseError(number, "curve line must start with 'alpha <name>' or 'beta <name>'");
        }
        Curve c{head[0] == "alpha" ? CurveKind::alpha : CurveKind::beta, head[1], {}};
        for (const auto& t : tokens(line.substr(colon + 1))) c.points.push_back(parse_int(t, number, "point id"));
        if (c.points.empty()) throw ParseError(number, "curve " + c.name + " lists no points");
        if (!curve_ids.emplace(c.name, static_cast<int>(curves.size())).second) {
          throw ParseError(number, "duplicate curve name " + c.name);
        }
        curves.push_back(std::move(c));
        break;
      }
      case Section::regions: {
        const auto colon = line.find(':');
        const auto bar = line.find('|');
        if (colon == std::string_view::npos || bar == std::string_view::npos || bar < colon) {
          throw ParseError(number, "region line must look like '<id> : <edges> | corners: <corners>'");
        }
        PendingRegion reg{number, parse_int(trim(line.substr(0, colon)), number, "region id"), {}, {}, {}};
        const auto edge_toks = tokens(line.substr(colon + 1, bar - colon - 1));
        if (edge_toks.size() % 2 != 0) throw ParseError(number, "edge list must be pairs '<curve>.<k> <+|->'");
        for (std::size_t i = 0; i < edge_toks.size(); i += 2) {
          if (edge_toks[i + 1] != "+" && edge_toks[i + 1] != "-") {
            throw ParseError(number, "edge direction must be + or -, got '" + edge_toks[i + 1] + "'");
          }
          reg.edges.emplace_back(edge_toks[i], edge_toks[i + 1] == "+");
        }
        std::string_view rest = trim(line.substr(bar + 1));
        if (rest.substr(0, 8) != "corners:") throw ParseError(number, "expected 'corners:' after '|'");
        const auto corner_toks = tokens(rest.substr(8));
        if (corner_toks.size() % 2 != 0) throw ParseError(number, "corner list must be pairs '<point> <quadrant>'");
        for (std::size_t i = 0; i < corner_toks.size(); i += 2) {
          const auto q = parse_quadrant(corner_toks[i + 1]);
          if (!q) throw ParseError(number, "unknown quadrant '" + corner_toks[i + 1] + "'");
          reg.corners.push_back({parse_int(corner_toks[i], number, "point id"), *q});
        }
        pending.push_back(std::move(reg));
        break;
      }
      case Section::basepoints: {
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(number, "basepoint line must be '<region> = w<k>|z<k>'");
        const int region = parse_int(trim(line.substr(0, eq)), number, "region id");
        const std::string_view label = trim(line.substr(eq + 1));
        if (label.size() < 2 || (label[0] != 'w' && label[0] != 'z')) {
          throw ParseError(number, "basepoint label must be w<k> or z<k>");
        }
        bps.push_back({number, {region, BasepointLabel{label[0] == 'z', parse_int(label.substr(1), number, "basepoint index")}}});
        break;
      }
    }
  }
  if (!saw_curves || curves.empty()) throw ParseError(1, "missing curves section");

  // Resolve edges.
  std::vector<int> offset(curves.size(), 0);
  for (std::size_t i = 1; i < curves.size(); ++i) offset[i] = offset[i - 1] + static_cast<int>(curves[i - 1].points.size());
  std::sort(pending.begin(), pending.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::vector<Region> regions;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (pending[i].id != static_cast<int>(i)) {
      throw ParseError(pending[i].line, "region ids must be 0..F-1 without gaps or repeats");
    }
    Region reg;
    for (const auto& [ref, fwd] : pending[i].edges) {
      const auto dot = ref.rfind('.');
      if (dot == std::string::npos) throw ParseError(pending[i].line, "edge reference '" + ref + "' must be <curve>.<k>");
      const auto it = curve_ids.find(ref.substr(0, dot));
      if (it == curve_ids.end()) throw ParseError(pending[i].line, "unknown curve in edge reference '" + ref + "'");
      const int k = parse_int(ref.substr(dot + 1), pending[i].line, "edge index");
      const auto& c = curves[static_cast<std::size_t>(it->second)];
      if (k < 0 || k >= static_cast<int>(c.points.size())) {
        throw ParseError(pending[i].line, "edge index out of range in '" + ref + "'");
      }
      reg.boundary.push_back({offset[static_cast<std::size_t>(it->second)] + k, fwd});
    }
    reg.corners = pending[i].corners;
    regions.push_back(std::move(reg));
  }
  std::map<int, BasepointLabel> basepoints;
  for (const auto& [line, entry] : bps) {
    if (!basepoints.emplace(entry.first, entry.second).second) {
      throw ParseError(line, "region " + std::to_string(entry.first) + " already holds a basepoint");
    }
  }
  try {
    return Diagram(std::move(curves), std::move(regions), std::move(basepoints));
  } catch (const DiagramError& e) {
    throw ParseError(1, e.what());
  }
}

std::string serialize_diagram(const Diagram& d) {
  std::ostringstream os;
  os << "[curves]\n";
  for (const auto& c : d.curves()) {
    os << (c.kind == CurveKind::alpha ? "alpha " : "beta ") << c.name << " :";
    for (int p : c.points) os << ' ' << p;
    os << '\n';
  }
  os << "[regions]\n";
  for (int r = 0; r < d.num_regions(); ++r) {
    const auto& reg = d.regions()[static_cast<std::size_t>(r)];
    os << r << " :";
    for (const auto& s : reg.boundary) {
      const auto info = d.edge(s.edge);
      os << ' ' << d.curves()[static_cast<std::size_t>(info.curve)].name << '.' << info.index << ' '
         << (s.forward ? '+' : '-');
    }
    os << " | corners:";
    for (const auto& c : reg.corners) os << ' ' << c.point << ' ' << to_string(c.quadrant);
    os << '\n';
  }
  os << "[basepoints]\n";
  for (const auto& [r, b] : d.basepoints()) os << r << " = " << to_string(b) << '\n';
  return os.str();
}

GridSpec parse_grid(std::string_view text) {
  GridSpec g;
  bool have_size = false, have_x = false, have_o = false;
  for (const auto& [number, line] : content_lines(text)) {
    const auto toks = tokens(line);
    if (toks[0] == "grid") {
      if (toks.size() != 2) throw ParseError(number, "expected 'grid <n>'");
      g.size = parse_int(toks[1], number, "grid size");
      have_size = true;
    } else if (toks[0] == "X:" || toks[0] == "O:") {
      auto& dst = toks[0] == "X:" ? g.x_rows : g.o_rows;
      dst.clear();
      for (std::size_t i = 1; i < toks.size(); ++i) dst.push_back(parse_int(toks[i], number, "marking row"));
      (toks[0] == "X:" ? have_x : have_o) = true;
    } else {
      throw ParseError(number, "unexpected line '" + std::string(line) + "'");
    }
  }
  if (!have_size) throw ParseError(1, "missing 'grid <n>' line");
  if (!have_x || !have_o) throw ParseError(1, "missing X: or O: line");
  if (static_cast<int>(g.x_rows.size()) != g.size || static_cast<int>(g.o_rows.size()) != g.size) {
    throw ParseError(1, "X and O lines must list exactly n rows");
  }
  return g;
}

std::string serialize_grid(const GridSpec& g) {
  std::ostringstream os;
  os << "grid " << g.size << "\nX:";
  for (int v : g.x_rows) os << ' ' << v;
  os << "\nO:";
  for (int v : g.o_rows) os << ' ' << v;
  os << '\n';
  return os.str();
}

}  // namespace hfkb

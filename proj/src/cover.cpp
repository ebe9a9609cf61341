#include "hfkb/cover.hpp"

#include "hfkb/algebra.hpp"

#include <sstream>

namespace hfkb {

namespace {

void require_genus_zero(const Diagram& d) {
  const auto rep = validate(d);
  if (!rep.ok) throw CoverError("base diagram is invalid: " + rep.summary());
  if (rep.genus != 0) throw CoverError("cover requires genus-0 base");
}

int region_parity(const Region& r, const Monodromy& m) {
  int s = 0;
  for (const auto& slot : r.boundary) s ^= m[static_cast<std::size_t>(slot.edge)];
  return s;
}

}  // namespace

Monodromy solve_monodromy(const Diagram& d) {
  require_genus_zero(d);
  const auto nr = static_cast<std::size_t>(d.num_regions());
  const auto ne = static_cast<std::size_t>(d.num_edges());
  F2Matrix a(nr, ne);
  std::vector<std::uint8_t> rhs(nr, 0);
  for (std::size_t r = 0; r < nr; ++r) {
    for (const auto& slot : d.regions()[r].boundary) a.flip(r, static_cast<std::size_t>(slot.edge));
    rhs[r] = d.has_basepoint(static_cast<int>(r)) ? 1 : 0;
  }
  auto [ok, m] = a.solve(rhs);
  if (!ok) throw CoverError("internal error: monodromy parity system is infeasible");
  return m;
}

std::string check_monodromy(const Diagram& d, const Monodromy& m) {
  if (m.size() != static_cast<std::size_t>(d.num_edges())) return "monodromy has the wrong number of edges";
  for (int r = 0; r < d.num_regions(); ++r) {
    const int want = d.has_basepoint(r) ? 1 : 0;
    if (region_parity(d.regions()[static_cast<std::size_t>(r)], m) != want) {
      return "region " + std::to_string(r) + " has monodromy parity " + std::to_string(1 - want) +
             ", expected " + std::to_string(want);
    }
  }
  for (std::size_t c = 0; c < d.curves().size(); ++c) {
    int s = 0;
    for (std::size_t k = 0; k < d.curves()[c].points.size(); ++k) s ^= m[static_cast<std::size_t>(d.edge_id(static_cast<int>(c), static_cast<int>(k)))];
    if (s != 0) return "curve " + d.curves()[c].name + " has odd total monodromy";
  }
  return {};
}

Monodromy gauge_shift(const Diagram& d, const Monodromy& m, int point) {
  Monodromy out = m;
  const auto& pt = d.points()[static_cast<std::size_t>(point)];
  for (auto [c, pos] : {std::pair{pt.alpha_curve, pt.alpha_pos}, std::pair{pt.beta_curve, pt.beta_pos}}) {
    const int len = static_cast<int>(d.curves()[static_cast<std::size_t>(c)].points.size());
    out[static_cast<std::size_t>(d.edge_id(c, pos))] ^= 1;
    out[static_cast<std::size_t>(d.edge_id(c, (pos + len - 1) % len))] ^= 1;
  }
  return out;
}

CoveredDiagram lift_diagram(const Diagram& d) { return lift_diagram(d, solve_monodromy(d)); }

CoveredDiagram lift_diagram(const Diagram& d, const Monodromy& m) {
  require_genus_zero(d);
  if (const auto err = check_monodromy(d, m); !err.empty()) throw CoverError(err);

  CoveredDiagram c;
  c.base = d;
  c.monodromy = m;
  const std::size_t nc = d.curves().size();

  // sheet[c][k]: sheet of the k-th point of the sheet-0 lift of curve c.
  std::vector<std::vector<int>> sheet(nc);
  for (std::size_t ci = 0; ci < nc; ++ci) {
    const auto& pts = d.curves()[ci].points;
    sheet[ci].resize(pts.size());
    int s = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      sheet[ci][k] = s;
      s ^= m[static_cast<std::size_t>(d.edge_id(static_cast<int>(ci), static_cast<int>(k)))];
    }
  }

  std::vector<Curve> curves;
  for (std::size_t ci = 0; ci < nc; ++ci) {
    const auto& base = d.curves()[ci];
    for (int s = 0; s < 2; ++s) {
      Curve lift{base.kind, base.name + "_" + std::to_string(s), {}};
      for (std::size_t k = 0; k < base.points.size(); ++k) lift.points.push_back(2 * base.points[k] + (sheet[ci][k] ^ s));
      curves.push_back(std::move(lift));
      c.curve_base.push_back(static_cast<int>(ci));
      c.tau_curve.push_back(static_cast<int>(2 * ci + static_cast<std::size_t>(1 - s)));
    }
  }

  // Cover edge over base edge e starting on sheet t.
  auto cover_edge = [&](int e, int t, const std::vector<int>& offsets) {
    const auto info = d.edge(e);
    const int s = t ^ sheet[static_cast<std::size_t>(info.curve)][static_cast<std::size_t>(info.index)];
    return offsets[static_cast<std::size_t>(2 * info.curve + s)] + info.index;
  };
  std::vector<int> offsets(curves.size(), 0);
  for (std::size_t i = 1; i < curves.size(); ++i) offsets[i] = offsets[i - 1] + static_cast<int>(curves[i - 1].points.size());

  std::vector<Region> regions;
  std::map<int, BasepointLabel> basepoints;
  auto walk = [&](const Region& r, int start, int laps, Region& out) {
    int t = start;
    for (int lap = 0; lap < laps; ++lap) {
      for (std::size_t k = 0; k < r.boundary.size(); ++k) {
        const auto& slot = r.boundary[k];
        const int flip = m[static_cast<std::size_t>(slot.edge)];
        out.boundary.push_back({cover_edge(slot.edge, slot.forward ? t : t ^ flip, offsets), slot.forward});
        t ^= flip;
        out.corners.push_back({2 * r.corners[k].point + t, r.corners[k].quadrant});
      }
    }
  };
  for (int r = 0; r < d.num_regions(); ++r) {
    const auto& reg = d.regions()[static_cast<std::size_t>(r)];
    if (region_parity(reg, m) == 1) {
      Region lift;
      walk(reg, 0, 2, lift);
      const int id = static_cast<int>(regions.size());
      regions.push_back(std::move(lift));
      c.region_base.push_back(r);
      c.region_sheet.push_back(-1);
      c.tau_region.push_back(id);
      const auto bp = d.basepoints().find(r);
      if (bp != d.basepoints().end()) basepoints[id] = bp->second;
    } else {
      const int id = static_cast<int>(regions.size());
      for (int s = 0; s < 2; ++s) {
        Region lift;
        walk(reg, s, 1, lift);
        regions.push_back(std::move(lift));
        c.region_base.push_back(r);
        c.region_sheet.push_back(s);
        c.tau_region.push_back(id + 1 - s);
      }
    }
  }

  c.cover = Diagram(std::move(curves), std::move(regions), std::move(basepoints));
  for (int p = 0; p < c.cover.num_points(); ++p) {
    c.point_base.push_back(p / 2);
    c.point_sheet.push_back(p % 2);
    c.tau_point.push_back(p ^ 1);
  }
  for (int e = 0; e < c.cover.num_edges(); ++e) {
    const auto info = c.cover.edge(e);
    const int bc = c.curve_base[static_cast<std::size_t>(info.curve)];
    c.edge_base.push_back(d.edge_id(bc, info.index));
    c.edge_sheet.push_back(info.from % 2);
    c.tau_edge.push_back(c.cover.edge_id(c.tau_curve[static_cast<std::size_t>(info.curve)], info.index));
  }
  const auto rep = validate(c.cover);
  if (!rep.ok) throw CoverError("lifted diagram is invalid: " + rep.summary());
  return c;
}

std::string serialize_cover(const CoveredDiagram& c) {
  std::ostringstream os;
  os << serialize_diagram(c.cover) << "[tau]\n";
  for (std::size_t p = 0; p < c.tau_point.size(); ++p) {
    if (static_cast<int>(p) < c.tau_point[p]) os << "point " << p << ' ' << c.tau_point[p] << '\n';
  }
  auto edge_name = [&](int e) {
    const auto info = c.cover.edge(e);
    return c.cover.curves()[static_cast<std::size_t>(info.curve)].name + "." + std::to_string(info.index);
  };
  for (std::size_t e = 0; e < c.tau_edge.size(); ++e) {
    if (static_cast<int>(e) < c.tau_edge[e]) os << "edge " << edge_name(static_cast<int>(e)) << ' ' << edge_name(c.tau_edge[e]) << '\n';
  }
  for (std::size_t r = 0; r < c.tau_region.size(); ++r) {
    if (static_cast<int>(r) <= c.tau_region[r]) os << "region " << r << ' ' << c.tau_region[r] << '\n';
  }
  return os.str();
}

}  // namespace hfkb

#include "hfkb/cover.hpp"
#include "hfkb/floer.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace hfkb;

namespace {

std::map<std::pair<long long, long long>, std::size_t> collapse(const GradedRanks& r) {
  std::map<std::pair<long long, long long>, std::size_t> out;
  for (const auto& [k, v] : r) out[{std::get<1>(k), std::get<2>(k)}] += v;
  return out;
}

template <class V>
bool is_involution(const V& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[static_cast<std::size_t>(t[i])] != static_cast<int>(i)) return false;
  return true;
}

}  // namespace

TEST_CASE("monodromy satisfies region parities") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {3, 1}, {5, 3}, {7, 3}}) {
    const Diagram d = two_bridge({p, q});
    const Monodromy m = solve_monodromy(d);
    REQUIRE(static_cast<int>(m.size()) == d.num_edges());
    for (int r = 0; r < d.num_regions(); ++r) {
      int s = 0;
      for (const auto& slot : d.regions()[static_cast<std::size_t>(r)].boundary) s ^= m[static_cast<std::size_t>(slot.edge)];
      CHECK(s == (d.has_basepoint(r) ? 1 : 0));
    }
    for (std::size_t c = 0; c < d.curves().size(); ++c) {
      int s = 0;
      for (std::size_t k = 0; k < d.curves()[c].points.size(); ++k) s ^= m[static_cast<std::size_t>(d.edge_id(static_cast<int>(c), static_cast<int>(k)))];
      CHECK(s == 0);
    }
    CHECK(check_monodromy(d, m).empty());
    auto bad = m;
    bad[0] ^= 1;
    CHECK_FALSE(check_monodromy(d, bad).empty());
    CHECK_THROWS_AS(lift_diagram(d, bad), CoverError);
    CHECK(check_monodromy(d, gauge_shift(d, m, 0)).empty());
  }
}

TEST_CASE("lifted diagrams") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {3, 1}, {5, 3}, {9, 2}}) {
    CAPTURE(p);
    const Diagram base = two_bridge({p, q});
    const CoveredDiagram c = lift_diagram(base);
    const auto v = validate(c.cover);
    CHECK(v.ok);
    CHECK(v.genus == 1);
    CHECK(v.basepoint_pairs == 2);
    CHECK(c.cover.alpha_curves().size() == 2);
    CHECK(c.cover.beta_curves().size() == 2);
    CHECK(c.cover.euler_characteristic() == 2 * base.euler_characteristic() - static_cast<int>(base.basepoints().size()));
    CHECK(c.cover.num_points() == 2 * base.num_points());
    CHECK(is_nice(c.cover).nice);
    CHECK(is_weakly_admissible(c.cover).weakly_admissible);
    for (const auto& [r, label] : c.cover.basepoints()) {
      CHECK(base.basepoints().at(c.region_base[static_cast<std::size_t>(r)]) == label);
    }

    CHECK(is_involution(c.tau_point));
    CHECK(is_involution(c.tau_edge));
    CHECK(is_involution(c.tau_region));
    CHECK(is_involution(c.tau_curve));
    for (std::size_t i = 0; i < c.tau_point.size(); ++i) {
      CHECK(c.tau_point[i] != static_cast<int>(i));
      CHECK(c.point_base[static_cast<std::size_t>(c.tau_point[i])] == c.point_base[i]);
    }
    for (std::size_t i = 0; i < c.tau_edge.size(); ++i) {
      CHECK(c.tau_edge[i] != static_cast<int>(i));
      CHECK(c.edge_base[static_cast<std::size_t>(c.tau_edge[i])] == c.edge_base[i]);
    }
    for (std::size_t r = 0; r < c.tau_region.size(); ++r) {
      const bool fixed = c.tau_region[r] == static_cast<int>(r);
      CHECK(fixed == base.has_basepoint(c.region_base[r]));
      CHECK(c.region_base[static_cast<std::size_t>(c.tau_region[r])] == c.region_base[r]);
      const auto corners = c.cover.regions()[r].corners.size();
      const auto base_corners = base.regions()[static_cast<std::size_t>(c.region_base[r])].corners.size();
      CHECK(corners == (fixed ? 2 : 1) * base_corners);
    }
    for (std::size_t k = 0; k < c.cover.curves().size(); ++k) {
      CHECK(c.tau_curve[k] != static_cast<int>(k));
      CHECK(c.curve_base[static_cast<std::size_t>(c.tau_curve[k])] == c.curve_base[k]);
    }

    const std::string text = serialize_cover(c);
    CHECK(text.find("[tau]") != std::string::npos);
    CHECK(parse_diagram(text) == c.cover);
  }
}

TEST_CASE("grids have no cover") {
  const Diagram g = from_grid({2, {1, 2}, {2, 1}});
  CHECK_THROWS_WITH_AS(lift_diagram(g), "cover requires genus-0 base", CoverError);
}

TEST_CASE("gauge changes leave the lifted homology unchanged") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{3, 1}, {5, 3}}) {
    const Diagram d = two_bridge({p, q});
    const Monodromy m = solve_monodromy(d);
    const auto ref = build_complex(lift_diagram(d, m).cover);
    const auto ref_ranks = collapse(homology_ranks(ref));
    for (int point = 0; point < d.num_points(); point += 2) {
      Monodromy g = gauge_shift(d, m, point);
      if (point + 1 < d.num_points()) g = gauge_shift(d, g, point + 1);
      REQUIRE(g != m);
      const auto c = build_complex(lift_diagram(d, g).cover);
      CHECK(c.num_classes() == ref.num_classes());
      CHECK(c.generators.size() == ref.generators.size());
      std::size_t a = 0, b = 0;
      for (const auto& [k, v] : homology_ranks(c)) a += v;
      for (const auto& [k, v] : ref_ranks) b += v;
      CHECK(a == b);
    }
  }
}

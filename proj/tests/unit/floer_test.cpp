#include "hfkb/floer.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

using namespace hfkb;

namespace {

GridSpec grid_file(const std::string& name) {
  std::ifstream in(std::string(HFKB_DATA_DIR) + "/" + name);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_grid(os.str());
}

// a_L(e) - a_R(e) - gamma_e must be constant along each curve.
bool satisfies_jumps(const Diagram& d, const std::vector<long long>& a, const std::vector<long long>& gamma) {
  const auto sides = edge_sides(d);
  std::map<int, long long> per_curve;
  for (int e = 0; e < d.num_edges(); ++e) {
    const long long v = a[static_cast<std::size_t>(sides.left[static_cast<std::size_t>(e)])] -
                        a[static_cast<std::size_t>(sides.right[static_cast<std::size_t>(e)])] - gamma[static_cast<std::size_t>(e)];
    const int c = d.edge(e).curve;
    if (per_curve.contains(c) && per_curve[c] != v) return false;
    per_curve[c] = v;
  }
  return true;
}

std::vector<long long> add(std::vector<long long> a, const std::vector<long long>& b, long long k = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
  return a;
}

// Grid complex from empty rectangles avoiding markings; entry (y, x).
F2Matrix grid_rectangles(const Diagram& d, const GridSpec& g, const FloerComplex& c) {
  const int n = g.size;
  auto marked = [&](int r, int col) { return d.has_basepoint(grid_square(d, ((r % n) + n) % n, ((col % n) + n) % n)); };
  const std::size_t N = c.generators.size();
  F2Matrix m(N, N);
  for (std::size_t xi = 0; xi < N; ++xi) {
    std::vector<int> col(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) col[static_cast<std::size_t>(r)] = c.generators[xi].points[static_cast<std::size_t>(r)] % n;
    for (int r1 = 0; r1 < n; ++r1) {
      for (int r2 = 0; r2 < n; ++r2) {
        if (r1 == r2) continue;
        // Lower-left corner at (r1, col[r1]), upper-right at (r2, col[r2]).
        const int c1 = col[static_cast<std::size_t>(r1)], c2 = col[static_cast<std::size_t>(r2)];
        const int h = ((r2 - r1) % n + n) % n, w = ((c2 - c1) % n + n) % n;
        bool empty = true;
        for (int i = 0; i < h && empty; ++i)
          for (int j = 0; j < w && empty; ++j) empty = !marked(r1 + i, c1 + j);
        for (int i = 1; i < h && empty; ++i) {
          const int r = (r1 + i) % n;
          const int off = ((col[static_cast<std::size_t>(r)] - c1) % n + n) % n;
          if (off > 0 && off < w) empty = false;
        }
        if (!empty) continue;
        Generator y = c.generators[xi];
        y.points[static_cast<std::size_t>(r1)] = r1 * n + c2;
        y.points[static_cast<std::size_t>(r2)] = r2 * n + c1;
        m.flip(static_cast<std::size_t>(c.index_of(y)), xi);
      }
    }
  }
  return m;
}

std::size_t total_homology(const F2Matrix& d) { return d.rows() - 2 * d.rank(); }

}  // namespace

TEST_CASE("generator counts") {
  CHECK(enumerate_generators(from_grid(grid_file("unknot2.grid"))).size() == 2);
  CHECK(enumerate_generators(from_grid(grid_file("trefoil5.grid"))).size() == 120);
  CHECK(enumerate_generators(two_bridge({3, 1})).size() == 3 * 2);
  const auto gens = enumerate_generators(two_bridge({5, 3}));
  CHECK(gens.size() == 10);
  CHECK(std::is_sorted(gens.begin(), gens.end()));
}

TEST_CASE("epsilon and spin^c classes") {
  const Diagram d = two_bridge({5, 3});
  const auto gens = enumerate_generators(d);
  for (const auto& x : gens) {
    const auto e = epsilon(d, x, x);
    CHECK(std::all_of(e.begin(), e.end(), [](const BigInt& v) { return v == 0; }));
  }
  const auto c = build_complex(d);
  CHECK(c.num_classes() == 1);
  CHECK(c.torsion.empty());
}

TEST_CASE("domains satisfy the jump equations") {
  for (const Diagram& d : {two_bridge({3, 1}), from_grid(grid_file("trefoil5.grid"))}) {
    const auto gens = enumerate_generators(d);
    std::mt19937 rng(1);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int t = 0; t < 40; ++t) {
      const auto& x = gens[pick(rng)];
      const auto& y = gens[pick(rng)];
      const auto dom = domain_between(d, x, y);
      REQUIRE(dom.has_value());
      CHECK(satisfies_jumps(d, dom->multiplicity, connecting_chain(d, x, y)));
    }
    const auto self = domain_between(d, gens[0], gens[0]);
    REQUIRE(self.has_value());
    CHECK(satisfies_jumps(d, self->multiplicity, std::vector<long long>(static_cast<std::size_t>(d.num_edges()), 0)));
  }
}

TEST_CASE("explicit chain and potential give domains differing by a periodic domain") {
  const Diagram d = from_grid(grid_file("trefoil5.grid"));
  const DomainSolver s(d, false);
  const auto gens = enumerate_generators(d);
  const std::vector<long long> zero(static_cast<std::size_t>(d.num_edges()), 0);
  for (std::size_t i = 0; i < gens.size(); i += 7) {
    const auto& x = gens[0];
    const auto& y = gens[i];
    const auto via_chain = s.solve_chain(connecting_chain(d, x, y));
    REQUIRE(via_chain.has_value());
    const auto via_pot = s.domain_from_potentials(s.potential(x), s.potential(y));
    CHECK(s.label(x) == s.label(y));
    CHECK(satisfies_jumps(d, add(via_pot, *via_chain, -1), zero));
  }
}

TEST_CASE("size-2 grid: generators joined by single squares") {
  const Diagram d = from_grid(grid_file("unknot2.grid"));
  const auto gens = enumerate_generators(d);
  const auto dom = domain_between(d, gens[0], gens[1]);
  REQUIRE(dom.has_value());
  const auto basis = periodic_domain_basis(d, false);
  int singles = 0;
  std::vector<long long> coeff(basis.size(), -2);
  // All translates with basis coefficients in [-2, 2].
  for (;;) {
    auto a = dom->multiplicity;
    for (std::size_t k = 0; k < basis.size(); ++k) a = add(a, basis[k], coeff[k]);
    if (std::count(a.begin(), a.end(), 1) == 1 && std::count(a.begin(), a.end(), 0) == 3) {
      ++singles;
      CHECK(maslov_index(d, {gens[0], gens[1], a}) == 1);
    }
    std::size_t k = 0;
    while (k < coeff.size() && ++coeff[k] > 2) coeff[k++] = -2;
    if (k == coeff.size()) break;
  }
  CHECK(singles == 2);
  const auto c = build_complex(d);
  CHECK(c.differential.is_zero());
  CHECK(total_homology(c.differential) == 2);
}

TEST_CASE("maslov index of trivial and fundamental domains") {
  const Diagram d = two_bridge({3, 1});
  const auto gens = enumerate_generators(d);
  const std::vector<long long> zero(static_cast<std::size_t>(d.num_regions()), 0);
  const std::vector<long long> ones(static_cast<std::size_t>(d.num_regions()), 1);
  for (const auto& x : gens) {
    CHECK(maslov_index(d, {x, x, zero}) == 0);
    CHECK(maslov_index(d, {x, x, ones}) == 2 * d.num_basepoint_pairs());
    const auto b = basepoint_counts(d, ones);
    CHECK(maslov_index(d, {x, x, ones}) - 2 * b.w == 0);
    CHECK(b.z - b.w == 0);
  }
}

TEST_CASE("relative gradings are invariant under periodic translates") {
  for (const Diagram& d : {from_grid(grid_file("trefoil5.grid")), two_bridge({5, 3})}) {
    const auto basis = periodic_domain_basis(d, false);
    REQUIRE_FALSE(basis.empty());
    const auto gens = enumerate_generators(d);
    for (std::size_t i = 0; i < gens.size(); i += 5) {
      const auto& x = gens[i];
      const auto& y = gens[(i * 31 + 3) % gens.size()];
      const auto dom = domain_between(d, x, y);
      REQUIRE(dom.has_value());
      const auto grade = [&](const std::vector<long long>& a) {
        const auto b = basepoint_counts(d, a);
        return std::make_pair(maslov_index(d, {x, y, a}) - 2 * b.w, b.z - b.w);
      };
      const auto base = grade(dom->multiplicity);
      for (const auto& p : basis) {
        CHECK(grade(add(dom->multiplicity, p, 1)) == base);
        CHECK(grade(add(dom->multiplicity, p, -3)) == base);
      }
      const auto rel = relative_gradings(d, x, y);
      REQUIRE(rel.has_value());
      CHECK(*rel == base);
    }
  }
}

TEST_CASE("relative gradings are additive") {
  const Diagram d = from_grid(grid_file("figure_eight6.grid"));
  const auto gens = enumerate_generators(d);
  for (std::size_t i = 0; i + 2 < gens.size(); i += 97) {
    const auto xy = *relative_gradings(d, gens[i], gens[i + 1]);
    const auto yz = *relative_gradings(d, gens[i + 1], gens[i + 2]);
    const auto xz = *relative_gradings(d, gens[i], gens[i + 2]);
    CHECK(xz.first == xy.first + yz.first);
    CHECK(xz.second == xy.second + yz.second);
  }
}

TEST_CASE("grid differential matches empty marking-free rectangles") {
  for (const char* name : {"unknot2.grid", "trefoil5.grid", "figure_eight6.grid"}) {
    CAPTURE(name);
    const auto g = grid_file(name);
    const Diagram d = from_grid(g);
    const auto c = build_complex(d);
    const F2Matrix oracle = grid_rectangles(d, g, c);
    CHECK((c.differential == oracle || c.differential == oracle.transposed()));
    CHECK((c.differential * c.differential).is_zero());
    CHECK(c.bigons == 0);
    for (const auto& [y, x] : c.differential.entries()) {
      CHECK(c.maslov[x] - c.maslov[y] == 1);
      CHECK(c.alexander[x] == c.alexander[y]);
    }
  }
}

TEST_CASE("tilde ranks and Alexander polynomials") {
  struct Case {
    Diagram d;
    long long tilde;
    long long hat;
    std::string poly;
    long long det;
  };
  const std::vector<Case> cases{
      {two_bridge({1, 1}), 2, 1, "1", 1},
      {two_bridge({3, 1}), 6, 3, "t - 1 + t^-1", 3},
      {two_bridge({5, 3}), 10, 5, "-t + 3 - t^-1", 5},
      {from_grid(grid_file("trefoil5.grid")), 48, 3, "t - 1 + t^-1", 3},
      {from_grid(grid_file("figure_eight6.grid")), 160, 5, "-t + 3 - t^-1", 5},
  };
  for (const auto& k : cases) {
    const auto c = build_complex(k.d);
    Bigraded tilde;
    for (const auto& [key, v] : homology_ranks(c)) tilde[{std::get<1>(key), std::get<2>(key)}] += static_cast<long long>(v);
    const int n = k.d.num_basepoint_pairs();
    const auto s = symmetric_shift(collapse_maslov(tilde), n);
    REQUIRE(s.has_value());
    tilde = shift_alexander(tilde, *s);
    const auto by_a = collapse_maslov(tilde);
    long long total = 0;
    for (const auto& [a, r] : by_a) {
      total += r;
      CHECK(by_a.at(a) == (by_a.contains(-(n - 1) - a) ? by_a.at(-(n - 1) - a) : 0));
    }
    CHECK(total == k.tilde);
    long long hat = 0;
    for (const auto& [key, r] : divide_by_v(tilde, n)) hat += r;
    CHECK(hat == k.hat);
    const auto alex = alexander_polynomial(tilde, n);
    CHECK(to_string(alex.polynomial) == k.poly);
    CHECK(alex.determinant == k.det);
  }
}

TEST_CASE("hat ranks of the trefoil by Alexander grading") {
  const auto c = build_complex(two_bridge({3, 1}));
  Bigraded tilde;
  for (const auto& [key, v] : homology_ranks(c)) tilde[{std::get<1>(key), std::get<2>(key)}] += static_cast<long long>(v);
  tilde = shift_alexander(tilde, *symmetric_shift(collapse_maslov(tilde), 2));
  const auto hat = collapse_maslov(divide_by_v(tilde, 2));
  CHECK(hat == ByAlexander{{-1, 1}, {0, 1}, {1, 1}});
  CHECK(collapse_maslov(tilde) == ByAlexander{{-2, 1}, {-1, 2}, {0, 2}, {1, 1}});
}

TEST_CASE("V division rejects non-multiples") {
  const Bigraded bad{{{0, 0}, 1}};
  CHECK_THROWS_AS(divide_by_v(bad, 2), FloerError);
  const Bigraded v{{{0, 0}, 1}, {{-1, -1}, 1}};
  CHECK(divide_by_v(v, 2) == Bigraded{{{0, 0}, 1}});
  CHECK_FALSE(symmetric_shift(ByAlexander{{0, 1}, {1, 2}}, 1).has_value());
}

TEST_CASE("non-nice diagrams are refused") {
  std::vector<Curve> cs{{CurveKind::alpha, "a", {0, 1, 2, 3, 4, 5}}, {CurveKind::beta, "b", {0, 1, 2, 3, 4, 5}}};
  std::vector<std::array<HalfEdge, 4>> rot;
  for (int i = 0; i < 6; ++i) {
    const bool up = i % 2 == 0;
    rot.push_back({HalfEdge{CurveKind::alpha, true}, HalfEdge{CurveKind::beta, up}, HalfEdge{CurveKind::alpha, false},
                   HalfEdge{CurveKind::beta, !up}});
  }
  const Diagram raw = diagram_from_rotation(cs, rot);
  std::map<int, BasepointLabel> labels;
  int k = 0;
  for (int r = 0; r < raw.num_regions() && k < 4; ++r) {
    if (raw.regions()[static_cast<std::size_t>(r)].corners.size() == 2) labels[r] = {k % 2 == 1, k / 2 + 1}, ++k;
  }
  try {
    build_complex(with_basepoints(raw, labels));
    FAIL("expected NotNiceError");
  } catch (const NotNiceError& e) {
    CHECK(e.regions().size() == 2);
  }
}
